#include "lexproj/loess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lexproj/errors.hpp"

namespace lexproj {

namespace {

inline double tricube(double u) {
    if (u >= 1.0) return 0.0;
    double t = 1.0 - u * u * u;
    return t * t * t;
}

// Solves the (degree+1)x(degree+1) weighted normal equations for a local
// polynomial in (x - x0). Returns false when the system is singular.
bool solveLocal(const std::vector<double>& t, const std::vector<double>& y,
                const std::vector<double>& w, int degree, double* value, double* slope) {
    int p = degree + 1;
    double m[3][3] = {};
    double rhs[3] = {};
    for (size_t i = 0; i < t.size(); ++i) {
        if (w[i] <= 0.0) continue;
        double pw[5] = {1, 0, 0, 0, 0};
        for (int j = 1; j < 2 * p - 1; ++j) pw[j] = pw[j - 1] * t[i];
        for (int r = 0; r < p; ++r) {
            for (int c = 0; c < p; ++c) m[r][c] += w[i] * pw[r + c];
            rhs[r] += w[i] * pw[r] * y[i];
        }
    }
    // Gaussian elimination with partial pivoting on the tiny system.
    int idx[3] = {0, 1, 2};
    for (int col = 0; col < p; ++col) {
        int piv = col;
        for (int r = col + 1; r < p; ++r)
            if (std::fabs(m[idx[r]][col]) > std::fabs(m[idx[piv]][col])) piv = r;
        std::swap(idx[col], idx[piv]);
        double d = m[idx[col]][col];
        if (std::fabs(d) < 1e-300) return false;
        for (int r = col + 1; r < p; ++r) {
            double f = m[idx[r]][col] / d;
            for (int c = col; c < p; ++c) m[idx[r]][c] -= f * m[idx[col]][c];
            rhs[idx[r]] -= f * rhs[idx[col]];
        }
    }
    double coef[3] = {};
    for (int r = p - 1; r >= 0; --r) {
        double s = rhs[idx[r]];
        for (int c = r + 1; c < p; ++c) s -= m[idx[r]][c] * coef[c];
        coef[r] = s / m[idx[r]][r];
    }
    *value = coef[0];
    *slope = p > 1 ? coef[1] : 0.0;
    return true;
}

double median(std::vector<double> v) {
    size_t n = v.size();
    std::sort(v.begin(), v.end());
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

LoessCurve::LocalFit LoessCurve::fitAt(double x0) const {
    size_t n = x_.size();
    size_t q = neighborhood_;

    // Window of the q nearest x values; data is sorted, so slide a window.
    size_t lo = std::lower_bound(x_.begin(), x_.end(), x0) - x_.begin();
    size_t left = lo > 0 ? lo - 1 : 0;
    size_t right = left + 1;  // window is [left, right)
    while (right - left < q) {
        bool canLeft = left > 0;
        bool canRight = right < n;
        if (canLeft && (!canRight || x0 - x_[left - 1] <= x_[right] - x0))
            --left;
        else
            ++right;
    }

    double dmax = 0.0;
    for (size_t i = left; i < right; ++i) dmax = std::max(dmax, std::fabs(x_[i] - x0));

    std::vector<double> t, yv, w;
    t.reserve(q);
    yv.reserve(q);
    w.reserve(q);
    if (dmax == 0.0) {
        // Every neighbor sits exactly at x0; fall back to the weighted mean.
        double sw = 0.0, sy = 0.0;
        for (size_t i = left; i < right; ++i) {
            sw += robustW_[i];
            sy += robustW_[i] * y_[i];
        }
        if (sw <= 0.0) {
            for (size_t i = left; i < right; ++i) {
                sw += 1.0;
                sy += y_[i];
            }
        }
        return {sy / sw, 0.0};
    }
    for (size_t i = left; i < right; ++i) {
        t.push_back(x_[i] - x0);
        yv.push_back(y_[i]);
        w.push_back(tricube(std::fabs(x_[i] - x0) / dmax) * robustW_[i]);
    }

    double value = 0.0, slope = 0.0;
    int degree = cfg_.degree;
    while (degree >= 0 && !solveLocal(t, yv, w, degree, &value, &slope)) --degree;
    if (degree < 0) {
        // All usable weight vanished (robustness zeroed the window); plain mean.
        double sy = std::accumulate(yv.begin(), yv.end(), 0.0);
        return {sy / static_cast<double>(yv.size()), 0.0};
    }
    return {value, slope};
}

LoessCurve LoessCurve::fit(std::vector<double> x, std::vector<double> y, const LoessConfig& cfg) {
    if (x.size() != y.size()) throw ValidationError("loess: x and y lengths differ");
    size_t n = x.size();
    size_t needed = std::max<size_t>(10, static_cast<size_t>(cfg.degree) + 2);
    if (n < needed)
        throw ValidationError("loess: need at least " + std::to_string(needed) + " points, got " +
                              std::to_string(n));
    if (cfg.degree < 0 || cfg.degree > 2) throw ValidationError("loess: degree must be 0, 1 or 2");
    if (!(cfg.span > 0.0 && cfg.span <= 1.0)) throw ValidationError("loess: span must be in (0, 1]");

    // Canonical order makes the fit independent of input permutation.
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
    });

    LoessCurve curve;
    curve.cfg_ = cfg;
    curve.x_.reserve(n);
    curve.y_.reserve(n);
    for (size_t i : idx) {
        curve.x_.push_back(x[i]);
        curve.y_.push_back(y[i]);
    }
    if (curve.x_.front() == curve.x_.back())
        throw ValidationError("loess: all x values identical, cannot fit a curve");
    curve.robustW_.assign(n, 1.0);
    curve.neighborhood_ = std::clamp<size_t>(
        static_cast<size_t>(std::ceil(cfg.span * static_cast<double>(n))), 2, n);

    for (int iter = 0; iter < cfg.robustIters; ++iter) {
        std::vector<double> resid(n);
        for (size_t i = 0; i < n; ++i) resid[i] = std::fabs(curve.y_[i] - curve.fitAt(curve.x_[i]).value);
        double s = median(resid);
        if (s <= 0.0) {
            curve.robustW_.assign(n, 1.0);
            break;
        }
        for (size_t i = 0; i < n; ++i) {
            double u = resid[i] / (6.0 * s);
            curve.robustW_[i] = u < 1.0 ? (1.0 - u * u) * (1.0 - u * u) : 0.0;
        }
    }
    return curve;
}

LoessCurve LoessCurve::restore(std::vector<double> x, std::vector<double> y,
                               std::vector<double> robustW, const LoessConfig& cfg) {
    if (x.size() != y.size() || x.size() != robustW.size() || x.empty())
        throw ValidationError("loess: inconsistent stored curve state");
    if (!std::is_sorted(x.begin(), x.end()))
        throw ValidationError("loess: stored curve x values not sorted");
    LoessCurve curve;
    curve.cfg_ = cfg;
    curve.x_ = std::move(x);
    curve.y_ = std::move(y);
    curve.robustW_ = std::move(robustW);
    curve.neighborhood_ = std::clamp<size_t>(
        static_cast<size_t>(std::ceil(cfg.span * static_cast<double>(curve.x_.size()))), 2,
        curve.x_.size());
    return curve;
}

double LoessCurve::operator()(double x) const {
    if (x < x_.front()) {
        LocalFit f = fitAt(x_.front());
        return f.value + f.slope * (x - x_.front());
    }
    if (x > x_.back()) {
        LocalFit f = fitAt(x_.back());
        return f.value + f.slope * (x - x_.back());
    }
    return fitAt(x).value;
}

}  // namespace lexproj
