#include "lexproj/variance_function.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "lexproj/csv.hpp"
#include "lexproj/errors.hpp"

namespace lexproj {

VarianceFunction VarianceFunction::constant(double value) {
    if (!(value > 0.0)) throw ValidationError("variance function constant must be positive");
    VarianceFunction vf;
    vf.constant_ = value;
    return vf;
}

VarianceFunction VarianceFunction::fitted(LoessCurve nonEpidemic, LoessCurve epidemicRaw,
                                          double spliceEll, double fMin) {
    VarianceFunction vf;
    vf.blue_ = std::move(nonEpidemic);
    vf.red_ = std::move(epidemicRaw);
    vf.spliceEll_ = spliceEll;
    vf.fMin_ = fMin;
    vf.spliceOffset_ = (*vf.red_)(spliceEll) - (*vf.blue_)(spliceEll);
    return vf;
}

VarianceFunction VarianceFunction::pooled(LoessCurve curve, double spliceEll, double fMin) {
    VarianceFunction vf;
    vf.blue_ = curve;
    vf.red_ = std::move(curve);
    vf.pooled_ = true;
    vf.spliceEll_ = spliceEll;
    vf.fMin_ = fMin;
    vf.spliceOffset_ = 0.0;
    return vf;
}

double VarianceFunction::nonEpidemicRaw(double ell) const {
    if (constant_) return *constant_;
    return (*blue_)(ell);
}

double VarianceFunction::epidemicSplicedRaw(double ell) const {
    if (constant_) return *constant_;
    if (ell > spliceEll_) return (*blue_)(ell) + spliceOffset_;
    return std::max((*blue_)(ell), (*red_)(ell));
}

double VarianceFunction::operator()(double ell, bool epidemic) const {
    if (constant_) return *constant_;
    double raw = epidemic ? epidemicSplicedRaw(ell) : nonEpidemicRaw(ell);
    return std::max(raw, fMin_);
}

std::vector<ResidualPoint> meanModelResiduals(const Dataset& ds,
                                              const std::map<std::string, CountryParams>& means,
                                              double betaMean, const LogisticConstants& consts,
                                              int covariateLag, MissingCovariatePolicy policy) {
    std::vector<ResidualPoint> out;
    for (const auto& cs : ds.countries) {
        auto thetaIt = means.find(cs.code);
        if (thetaIt == means.end())
            throw ValidationError("no posterior mean parameters for country " + cs.code);
        const CountryParams& theta = thetaIt->second;
        auto start = cs.firstUsable();
        auto last = cs.lastUsable();
        if (!start || !last || *start == *last) continue;

        HnASeries hna = buildHnA(cs);
        double ellHat = cs.e0.at(*start);
        for (Period t = *start; t < *last; t = t.next()) {
            auto x = covariateForObservation(hna, t, covariateLag);
            double dhna = x.value_or(0.0);
            if (!x && policy == MissingCovariatePolicy::Exclude) dhna = 0.0;
            ellHat += gain(ellHat, theta, consts) + betaMean * dhna;
            Period u = t.next();
            if (cs.usable(u))
                out.push_back({cs.epidemic, ellHat, std::fabs(ellHat - cs.e0.at(u))});
        }
    }
    return out;
}

LoessCurve fitLoess(const std::vector<std::pair<double, double>>& points, double span, int degree,
                    int robustIters) {
    std::vector<double> x, y;
    x.reserve(points.size());
    y.reserve(points.size());
    for (const auto& [px, py] : points) {
        x.push_back(px);
        y.push_back(py);
    }
    return LoessCurve::fit(std::move(x), std::move(y), LoessConfig{span, degree, robustIters});
}

namespace {

LoessCurve fitStratum(const std::vector<ResidualPoint>& residuals, bool epidemic,
                      const LoessConfig& cfg, const char* name) {
    std::vector<double> x, y;
    for (const auto& r : residuals) {
        if (r.epidemic == epidemic) {
            x.push_back(r.ell);
            y.push_back(r.absResidual);
        }
    }
    if (x.size() < 10)
        throw ValidationError(std::string("variance function: ") + name + " stratum has " +
                              std::to_string(x.size()) +
                              " residuals (< 10); consider a pooled single-stratum fit");
    return LoessCurve::fit(std::move(x), std::move(y), cfg);
}

}  // namespace

VarianceFunction buildVarianceFunction(const std::vector<ResidualPoint>& residuals,
                                       const LoessConfig& cfg, double spliceEll, double fMin) {
    LoessCurve blue = fitStratum(residuals, false, cfg, "non-epidemic");
    LoessCurve red = fitStratum(residuals, true, cfg, "epidemic");
    return VarianceFunction::fitted(std::move(blue), std::move(red), spliceEll, fMin);
}

VarianceFunction buildVarianceFunctionWithFallback(const std::vector<ResidualPoint>& residuals,
                                                   const LoessConfig& cfg, double spliceEll,
                                                   double fMin, bool* pooledOut) {
    if (pooledOut) *pooledOut = false;
    size_t epi = 0, non = 0;
    for (const auto& r : residuals) (r.epidemic ? epi : non)++;
    if (epi >= 10 && non >= 10)
        return buildVarianceFunction(residuals, cfg, spliceEll, fMin);

    std::vector<double> x, y;
    for (const auto& r : residuals) {
        x.push_back(r.ell);
        y.push_back(r.absResidual);
    }
    if (pooledOut) *pooledOut = true;
    return VarianceFunction::pooled(LoessCurve::fit(std::move(x), std::move(y), cfg), spliceEll,
                                    fMin);
}

void writeFCurves(const VarianceFunction& vf, const std::filesystem::path& path, double ellMin,
                  double ellMax, double step) {
    std::ofstream os(path);
    if (!os) throw ValidationError("cannot open " + path.string());
    csv::writeRow(os, {"ell", "f_nonepidemic", "f_epidemic"});
    for (double ell = ellMin; ell <= ellMax + 1e-9; ell += step) {
        csv::writeRow(os, {csv::formatDouble(ell), csv::formatDouble(vf(ell, false)),
                           csv::formatDouble(vf(ell, true))});
    }
}

namespace {

nlohmann::json curveToJson(const LoessCurve& c) {
    return {{"x", c.xs()},
            {"y", c.ys()},
            {"robustness_weights", c.robustnessWeights()},
            {"span", c.config().span},
            {"degree", c.config().degree},
            {"robust_iters", c.config().robustIters}};
}

LoessCurve curveFromJson(const nlohmann::json& j) {
    LoessConfig cfg{j.at("span").get<double>(), j.at("degree").get<int>(),
                    j.at("robust_iters").get<int>()};
    return LoessCurve::restore(j.at("x").get<std::vector<double>>(),
                               j.at("y").get<std::vector<double>>(),
                               j.at("robustness_weights").get<std::vector<double>>(), cfg);
}

}  // namespace

std::string varianceFunctionToJson(const VarianceFunction& vf) {
    nlohmann::json j;
    if (vf.isConstant()) {
        j["type"] = "constant";
        j["value"] = vf.constantValue();
    } else {
        j["type"] = vf.isPooled() ? "pooled" : "stratified";
        j["splice_ell"] = vf.spliceEll();
        j["f_min"] = vf.fMin();
        j["non_epidemic"] = curveToJson(vf.nonEpidemicCurve());
        if (!vf.isPooled()) j["epidemic"] = curveToJson(vf.epidemicRawCurve());
    }
    return j.dump(2);
}

VarianceFunction varianceFunctionFromJson(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::string type = j.at("type").get<std::string>();
    if (type == "constant") return VarianceFunction::constant(j.at("value").get<double>());
    double spliceEll = j.at("splice_ell").get<double>();
    double fMin = j.at("f_min").get<double>();
    if (type == "pooled")
        return VarianceFunction::pooled(curveFromJson(j.at("non_epidemic")), spliceEll, fMin);
    return VarianceFunction::fitted(curveFromJson(j.at("non_epidemic")),
                                    curveFromJson(j.at("epidemic")), spliceEll, fMin);
}

void saveVarianceFunction(const VarianceFunction& vf, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw ValidationError("cannot open " + path.string());
    os << varianceFunctionToJson(vf) << '\n';
}

VarianceFunction loadVarianceFunction(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return varianceFunctionFromJson(text);
}

}  // namespace lexproj
