#pragma once

#include <array>
#include <cmath>
#include <utility>
#include <vector>

namespace lexproj {

// Country-level parameters of the expected five-year gain curve: four phase
// widths (years of life expectancy over which gains rise and decline), the
// peak-gain parameter k and the asymptotic gain z.
struct CountryParams {
    std::array<double, 4> delta{};  // each in [0, 100]
    double k = 0.0;                 // in [0, 10]
    double z = 0.0;                 // in [0, 0.653]

    bool operator==(const CountryParams&) const = default;

    static constexpr int kNumParams = 6;

    double component(int j) const {
        return j < 4 ? delta[static_cast<size_t>(j)] : (j == 4 ? k : z);
    }
    void setComponent(int j, double v) {
        if (j < 4)
            delta[static_cast<size_t>(j)] = v;
        else if (j == 4)
            k = v;
        else
            z = v;
    }
    static constexpr double lowerBound(int) { return 0.0; }
    static constexpr double upperBound(int j) { return j < 4 ? 100.0 : (j == 4 ? 10.0 : 0.653); }
    static const char* componentName(int j) {
        constexpr const char* names[] = {"delta1", "delta2", "delta3", "delta4", "k", "z"};
        return names[j];
    }
};

// Slope and centering constants shared by both logistic terms. The defaults
// make each term rise from 10% to 90% of its height across its delta width,
// centered on the midpoint of that width.
struct LogisticConstants {
    double a1 = 2.0 * 2.1972245773362196;  // 2*ln(9)
    double a2 = 0.5;

    bool operator==(const LogisticConstants&) const = default;
};

namespace detail {

// 1/(1+exp(-t)) without overflow for any finite t.
inline double stableSigmoid(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    double e = std::exp(t);
    return e / (1.0 + e);
}

// One logistic term of height `height`, width `width` and midpoint `mid`.
// width == 0 degenerates to a step: 0 below, height above, half at the midpoint.
inline double logisticTerm(double ell, double height, double width, double mid, double a1) {
    if (width == 0.0) {
        if (ell > mid) return height;
        if (ell < mid) return 0.0;
        return 0.5 * height;
    }
    return height * stableSigmoid((a1 / width) * (ell - mid));
}

}  // namespace detail

// Expected five-year gain in life expectancy at current level `ell`: a double
// logistic in ell. Tends to 0 as ell -> -inf and to theta.z as ell -> +inf.
inline double gain(double ell, const CountryParams& theta, const LogisticConstants& c) {
    double mid1 = theta.delta[0] + c.a2 * theta.delta[1];
    double mid2 = theta.delta[0] + theta.delta[1] + theta.delta[2] + c.a2 * theta.delta[3];
    return detail::logisticTerm(ell, theta.k, theta.delta[1], mid1, c.a1) +
           detail::logisticTerm(ell, theta.z - theta.k, theta.delta[3], mid2, c.a1);
}

// Tabulates the gain curve on [ellMin, ellMax] with the given step, for
// diagnostics and plotting.
inline std::vector<std::pair<double, double>> gainGridTable(const CountryParams& theta,
                                                            const LogisticConstants& c,
                                                            double ellMin, double ellMax,
                                                            double step) {
    std::vector<std::pair<double, double>> table;
    for (double ell = ellMin; ell <= ellMax + 1e-12; ell += step)
        table.emplace_back(ell, gain(ell, theta, c));
    return table;
}

}  // namespace lexproj
