#include "lexproj/dataset.hpp"

#include <algorithm>
#include <fstream>

#include "lexproj/csv.hpp"
#include "lexproj/errors.hpp"

namespace lexproj {

namespace {

void checkRange(double v, double lo, double hi, bool exclusive, const std::string& what,
                const std::string& country, Period t) {
    bool ok = exclusive ? (v > lo && v < hi) : (v >= lo && v <= hi);
    if (!ok) {
        throw ValidationError(what + " " + csv::formatDouble(v) + " out of range for " + country +
                              " period " + t.label());
    }
}

}  // namespace

std::optional<Period> CountrySeries::firstUsable() const {
    for (const auto& [t, v] : e0)
        if (!masked.contains(t)) return t;
    return std::nullopt;
}

std::optional<Period> CountrySeries::lastUsable() const {
    for (auto it = e0.rbegin(); it != e0.rend(); ++it)
        if (!masked.contains(it->first)) return it->first;
    return std::nullopt;
}

const CountrySeries* Dataset::find(const std::string& code) const {
    for (const auto& c : countries)
        if (c.code == code) return &c;
    return nullptr;
}

Dataset loadDataset(const std::filesystem::path& e0Path,
                    const std::filesystem::path& hivPath,
                    const std::filesystem::path& artPath,
                    const std::optional<std::filesystem::path>& maskPath) {
    std::map<std::string, CountrySeries> byCode;
    std::vector<std::string> order;

    for (const auto& row : csv::readFile(e0Path, {"country", "name", "year", "e0"})) {
        std::string where = e0Path.string() + ":" + std::to_string(row.line);
        const std::string& code = row.fields[0];
        Period t = Period::checked(static_cast<int>(csv::parseLong(row.fields[2], where)), where);
        double v = csv::parseDouble(row.fields[3], where);
        checkRange(v, 0.0, 120.0, /*exclusive=*/true, "life expectancy", code, t);
        auto [it, inserted] = byCode.try_emplace(code);
        if (inserted) {
            it->second.code = code;
            it->second.name = row.fields[1];
            order.push_back(code);
        }
        if (!it->second.e0.emplace(t, v).second) {
            throw ValidationError(where + ": duplicate life expectancy row for " + code +
                                  " period " + t.label());
        }
    }
    if (byCode.empty()) throw ValidationError(e0Path.string() + ": no observation rows");

    for (const auto& row : csv::readFile(hivPath, {"country", "year", "prevalence"})) {
        std::string where = hivPath.string() + ":" + std::to_string(row.line);
        auto it = byCode.find(row.fields[0]);
        if (it == byCode.end())
            throw ValidationError(where + ": prevalence for unknown country " + row.fields[0]);
        Period t = Period::checked(static_cast<int>(csv::parseLong(row.fields[1], where)), where);
        double v = csv::parseDouble(row.fields[2], where);
        checkRange(v, 0.0, 100.0, false, "HIV prevalence", it->first, t);
        it->second.epidemic = true;
        if (!it->second.hivPrev.emplace(t, v).second)
            throw ValidationError(where + ": duplicate prevalence row for " + it->first +
                                  " period " + t.label());
    }

    for (const auto& row : csv::readFile(artPath, {"country", "year", "coverage"})) {
        std::string where = artPath.string() + ":" + std::to_string(row.line);
        auto it = byCode.find(row.fields[0]);
        if (it == byCode.end())
            throw ValidationError(where + ": ART coverage for unknown country " + row.fields[0]);
        Period t = Period::checked(static_cast<int>(csv::parseLong(row.fields[1], where)), where);
        double v = csv::parseDouble(row.fields[2], where);
        checkRange(v, 0.0, 100.0, false, "ART coverage", it->first, t);
        if (!it->second.artCov.emplace(t, v).second)
            throw ValidationError(where + ": duplicate coverage row for " + it->first +
                                  " period " + t.label());
    }

    if (maskPath) {
        for (const auto& row : csv::readFile(*maskPath, {"country", "year"})) {
            std::string where = maskPath->string() + ":" + std::to_string(row.line);
            auto it = byCode.find(row.fields[0]);
            if (it == byCode.end())
                throw ValidationError(where + ": mask for unknown country " + row.fields[0]);
            Period t = Period::checked(static_cast<int>(csv::parseLong(row.fields[1], where)), where);
            it->second.masked.insert(t);
        }
    }

    Dataset ds;
    for (const auto& code : order) {
        CountrySeries& cs = byCode[code];
        // Interior gaps in the observation range are only representable as masks.
        Period t = cs.e0.begin()->first;
        Period last = cs.e0.rbegin()->first;
        for (; t < last; t = t.next()) {
            if (!cs.e0.contains(t) && !cs.masked.contains(t)) {
                throw ValidationError("country " + code + " is missing period " + t.label() +
                                      " inside its observation range (mask it if intentional)");
            }
        }
        if (cs.epidemic) {
            // Fill unreported periods with zero prevalence / zero coverage.
            for (const auto& [p, v] : cs.e0) {
                cs.hivPrev.try_emplace(p, 0.0);
                cs.artCov.try_emplace(p, 0.0);
            }
            for (const auto& [p, v] : cs.hivPrev) cs.artCov.try_emplace(p, 0.0);
        } else {
            for (const auto& [p, v] : cs.e0) {
                cs.hivPrev.emplace(p, 0.0);
                cs.artCov.emplace(p, 0.0);
            }
        }
        ds.countries.push_back(std::move(cs));
    }

    Period lo = ds.countries.front().e0.begin()->first;
    Period hi = ds.countries.front().e0.rbegin()->first;
    for (const auto& c : ds.countries) {
        lo = std::min(lo, c.e0.begin()->first);
        hi = std::max(hi, c.e0.rbegin()->first);
    }
    for (Period t = lo; t <= hi; t = t.next()) ds.periods.push_back(t);
    return ds;
}

void writeDataset(const Dataset& ds,
                  const std::filesystem::path& e0Path,
                  const std::filesystem::path& hivPath,
                  const std::filesystem::path& artPath,
                  const std::optional<std::filesystem::path>& maskPath) {
    std::ofstream e0f(e0Path), hivf(hivPath), artf(artPath);
    if (!e0f || !hivf || !artf)
        throw ValidationError("cannot open output files for dataset");
    csv::writeRow(e0f, {"country", "name", "year", "e0"});
    csv::writeRow(hivf, {"country", "year", "prevalence"});
    csv::writeRow(artf, {"country", "year", "coverage"});
    std::ofstream maskf;
    if (maskPath) {
        maskf.open(*maskPath);
        csv::writeRow(maskf, {"country", "year"});
    }
    for (const auto& c : ds.countries) {
        for (const auto& [t, v] : c.e0)
            csv::writeRow(e0f, {c.code, c.name, std::to_string(t.startYear), csv::formatDouble(v)});
        if (c.epidemic) {
            for (const auto& [t, v] : c.hivPrev)
                csv::writeRow(hivf, {c.code, std::to_string(t.startYear), csv::formatDouble(v)});
            for (const auto& [t, v] : c.artCov)
                csv::writeRow(artf, {c.code, std::to_string(t.startYear), csv::formatDouble(v)});
        }
        if (maskPath) {
            for (const auto& t : c.masked)
                csv::writeRow(maskf, {c.code, std::to_string(t.startYear)});
        }
    }
}

std::map<Period, double> deltaE0(const CountrySeries& cs) {
    std::map<Period, double> gains;
    for (const auto& [t, v] : cs.e0) {
        Period u = t.next();
        if (cs.usable(t) && cs.usable(u)) gains.emplace(t, cs.e0.at(u) - v);
    }
    return gains;
}

Dataset truncateDataset(const Dataset& ds, Period lastPeriod) {
    Dataset out;
    for (const auto& c : ds.countries) {
        CountrySeries cc;
        cc.code = c.code;
        cc.name = c.name;
        cc.epidemic = c.epidemic;
        auto keep = [&](const std::map<Period, double>& m) {
            std::map<Period, double> r;
            for (const auto& [t, v] : m)
                if (t <= lastPeriod) r.emplace(t, v);
            return r;
        };
        cc.e0 = keep(c.e0);
        cc.hivPrev = keep(c.hivPrev);
        cc.artCov = keep(c.artCov);
        for (const auto& t : c.masked)
            if (t <= lastPeriod) cc.masked.insert(t);
        if (!cc.e0.empty()) out.countries.push_back(std::move(cc));
    }
    if (out.countries.empty())
        throw ValidationError("no observations at or before period " + lastPeriod.label());
    for (const auto& t : ds.periods)
        if (t <= lastPeriod) out.periods.push_back(t);
    return out;
}

Dataset zeroCovariates(const Dataset& ds) {
    Dataset out = ds;
    for (auto& c : out.countries) {
        for (auto& [t, v] : c.hivPrev) v = 0.0;
        for (auto& [t, v] : c.artCov) v = 0.0;
    }
    return out;
}

}  // namespace lexproj
