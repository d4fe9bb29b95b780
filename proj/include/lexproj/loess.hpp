#pragma once

#include <cstddef>
#include <vector>

namespace lexproj {

struct LoessConfig {
    double span = 0.75;   // fraction of points in each local neighborhood
    int degree = 1;       // local polynomial degree, 0..2
    int robustIters = 3;  // bisquare robustness refits
};

// Local polynomial regression with tricube weights. The fitted object keeps
// the (sorted) data plus final robustness weights; evaluation performs the
// local weighted fit at the query point. Outside the observed x range the
// curve continues linearly with the slope of the boundary fit.
class LoessCurve {
public:
    static LoessCurve fit(std::vector<double> x, std::vector<double> y, const LoessConfig& cfg);

    double operator()(double x) const;

    double minX() const { return x_.front(); }
    double maxX() const { return x_.back(); }
    size_t size() const { return x_.size(); }

    const std::vector<double>& xs() const { return x_; }
    const std::vector<double>& ys() const { return y_; }
    const std::vector<double>& robustnessWeights() const { return robustW_; }
    const LoessConfig& config() const { return cfg_; }

    // Rebuilds a fitted curve from stored state (deserialization).
    static LoessCurve restore(std::vector<double> x, std::vector<double> y,
                              std::vector<double> robustW, const LoessConfig& cfg);

private:
    LoessCurve() = default;

    struct LocalFit {
        double value;
        double slope;
    };
    LocalFit fitAt(double x) const;

    std::vector<double> x_, y_, robustW_;
    LoessConfig cfg_;
    size_t neighborhood_ = 0;
};

}  // namespace lexproj
