#include "lexproj/covariate.hpp"

#include "lexproj/csv.hpp"
#include "lexproj/errors.hpp"

namespace lexproj {

HnASeries buildHnA(const CountrySeries& cs) {
    HnASeries out;
    out.epidemic = cs.epidemic;
    if (!cs.epidemic) {
        for (const auto& [t, v] : cs.e0) {
            out.values.emplace(t, 0.0);
            if (out.values.contains(t.prev())) out.diffs.emplace(t, 0.0);
        }
        return out;
    }
    for (const auto& [t, prev] : cs.hivPrev) {
        if (prev < 0.0 || prev > 100.0)
            throw ValidationError("HIV prevalence " + csv::formatDouble(prev) +
                                  " out of range for " + cs.code + " period " + t.label());
        auto artIt = cs.artCov.find(t);
        double art = artIt == cs.artCov.end() ? 0.0 : artIt->second;
        if (art < 0.0 || art > 100.0)
            throw ValidationError("ART coverage " + csv::formatDouble(art) + " out of range for " +
                                  cs.code + " period " + t.label());
        out.values.emplace(t, prev * (100.0 - art));
    }
    for (const auto& [t, v] : out.values) {
        auto prevIt = out.values.find(t.prev());
        if (prevIt != out.values.end()) out.diffs.emplace(t, v - prevIt->second);
    }
    return out;
}

std::optional<double> covariateForObservation(const HnASeries& hna, Period t, int lag) {
    if (!hna.epidemic) return 0.0;
    Period diffAt = (lag == 1) ? t : t.next();
    auto it = hna.diffs.find(diffAt);
    if (it == hna.diffs.end()) return std::nullopt;
    return it->second;
}

}  // namespace lexproj
