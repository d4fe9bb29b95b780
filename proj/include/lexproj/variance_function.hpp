#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lexproj/covariate.hpp"
#include "lexproj/dataset.hpp"
#include "lexproj/double_logistic.hpp"
#include "lexproj/loess.hpp"

namespace lexproj {

// One absolute residual of the deterministic mean-model projection, located
// at the projected life expectancy where it occurred.
struct ResidualPoint {
    bool epidemic = false;
    double ell = 0.0;
    double absResidual = 0.0;
};

// Noise-scale function f(ell, epidemic). Either a constant (bootstrap for the
// first estimation pass) or a pair of loess curves fitted to absolute
// residuals, with the epidemic curve spliced:
//   ell <= spliceEll : max(nonEpidemic(ell), epidemicRaw(ell))
//   ell >  spliceEll : nonEpidemic(ell) + spliceOffset
// where spliceOffset = epidemicRaw(spliceEll) - nonEpidemic(spliceEll).
// Every evaluation is floored at fMin.
class VarianceFunction {
public:
    static VarianceFunction constant(double value);
    static VarianceFunction fitted(LoessCurve nonEpidemic, LoessCurve epidemicRaw,
                                   double spliceEll, double fMin);
    // Pooled fallback: one curve serves both strata (spliceOffset 0).
    static VarianceFunction pooled(LoessCurve curve, double spliceEll, double fMin);

    double operator()(double ell, bool epidemic) const;

    bool isConstant() const { return constant_.has_value(); }
    double constantValue() const { return *constant_; }
    bool isPooled() const { return pooled_; }
    double spliceEll() const { return spliceEll_; }
    double spliceOffset() const { return spliceOffset_; }
    double fMin() const { return fMin_; }
    const LoessCurve& nonEpidemicCurve() const { return *blue_; }
    const LoessCurve& epidemicRawCurve() const { return *red_; }

    // Raw (unfloored) curve values, mainly for diagnostics and tests.
    double nonEpidemicRaw(double ell) const;
    double epidemicSplicedRaw(double ell) const;

private:
    VarianceFunction() = default;

    std::optional<double> constant_;
    std::optional<LoessCurve> blue_;  // non-epidemic stratum
    std::optional<LoessCurve> red_;   // epidemic stratum, before splicing
    bool pooled_ = false;
    double spliceEll_ = 78.1;
    double spliceOffset_ = 0.0;
    double fMin_ = 0.01;
};

// Default splice point: the highest life expectancy observed in an epidemic
// country so far.
inline constexpr double kDefaultSpliceEll = 78.1;
inline constexpr double kDefaultFMin = 0.01;

// Projects every country forward with the mean model only (no noise): from
// its first usable period, ellHat[t+1] = ellHat[t] + gain(ellHat[t]) +
// beta * dHnA. Emits |ellHat - observed| at each later usable period, tagged
// with the epidemic flag and located at the projected ellHat.
std::vector<ResidualPoint> meanModelResiduals(const Dataset& ds,
                                              const std::map<std::string, CountryParams>& means,
                                              double betaMean, const LogisticConstants& consts,
                                              int covariateLag = 1,
                                              MissingCovariatePolicy policy = MissingCovariatePolicy::Zero);

// Convenience wrapper around LoessCurve::fit for (x, y) pairs.
LoessCurve fitLoess(const std::vector<std::pair<double, double>>& points, double span, int degree,
                    int robustIters = 3);

// Fits the two strata and splices. Throws when a stratum has fewer than 10
// points (callers may then fall back to a pooled single-stratum fit).
VarianceFunction buildVarianceFunction(const std::vector<ResidualPoint>& residuals,
                                       const LoessConfig& cfg,
                                       double spliceEll = kDefaultSpliceEll,
                                       double fMin = kDefaultFMin);

// buildVarianceFunction with automatic pooled fallback when a stratum is too
// small; never fails on non-empty input of at least 10 points.
VarianceFunction buildVarianceFunctionWithFallback(const std::vector<ResidualPoint>& residuals,
                                                   const LoessConfig& cfg,
                                                   double spliceEll = kDefaultSpliceEll,
                                                   double fMin = kDefaultFMin,
                                                   bool* pooledOut = nullptr);

inline double evalF(const VarianceFunction& vf, double ell, bool epidemic) {
    return vf(ell, epidemic);
}

// Writes `ell,f_nonepidemic,f_epidemic` on a 0.5-year grid.
void writeFCurves(const VarianceFunction& vf, const std::filesystem::path& path,
                  double ellMin = 20.0, double ellMax = 110.0, double step = 0.5);

// JSON (de)serialization of the fitted state, so projections can reuse the
// exact curves from a fit.
std::string varianceFunctionToJson(const VarianceFunction& vf);
VarianceFunction varianceFunctionFromJson(const std::string& json);
void saveVarianceFunction(const VarianceFunction& vf, const std::filesystem::path& path);
VarianceFunction loadVarianceFunction(const std::filesystem::path& path);

}  // namespace lexproj
