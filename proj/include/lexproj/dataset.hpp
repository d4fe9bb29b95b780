#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lexproj/period.hpp"

namespace lexproj {

// Per-country observation series on the five-year period grid.
//
// Values: female life expectancy at birth (years), HIV prevalence (percent
// of population) and ART coverage (percent of the infected population).
// Countries without a generalized HIV epidemic carry prevalence identically
// zero. Masked periods hold data we refuse to use (they are excluded from
// every likelihood term and residual computation).
struct CountrySeries {
    std::string code;
    std::string name;
    bool epidemic = false;
    std::map<Period, double> e0;
    std::map<Period, double> hivPrev;
    std::map<Period, double> artCov;
    std::set<Period> masked;

    bool operator==(const CountrySeries&) const = default;

    bool usable(Period t) const { return e0.contains(t) && !masked.contains(t); }

    std::optional<Period> firstUsable() const;
    std::optional<Period> lastUsable() const;
};

struct Dataset {
    std::vector<CountrySeries> countries;
    std::vector<Period> periods;  // contiguous grid spanning all countries

    bool operator==(const Dataset&) const = default;

    const CountrySeries* find(const std::string& code) const;
};

// Loads and validates the observation files.
//
// e0 CSV:   country,name,year,e0         one row per (country, period start year)
// hiv CSV:  country,year,prevalence      presence of a country marks it epidemic
// art CSV:  country,year,coverage
// mask CSV: country,year                 optional
//
// Countries absent from the hiv file are non-epidemic with prevalence coded
// zero. For epidemic countries, periods without a prevalence or coverage row
// are imputed as zero (no surveillance / no treatment programme yet).
Dataset loadDataset(const std::filesystem::path& e0Path,
                    const std::filesystem::path& hivPath,
                    const std::filesystem::path& artPath,
                    const std::optional<std::filesystem::path>& maskPath = std::nullopt);

// Writes a dataset back out in the loadDataset schemas.
void writeDataset(const Dataset& ds,
                  const std::filesystem::path& e0Path,
                  const std::filesystem::path& hivPath,
                  const std::filesystem::path& artPath,
                  const std::optional<std::filesystem::path>& maskPath = std::nullopt);

// Five-year gains: entry at t is e0[t+5] - e0[t], for consecutive unmasked
// observed pairs. Pairs touching a masked or missing period are omitted.
std::map<Period, double> deltaE0(const CountrySeries& cs);

// Restriction of a dataset to periods <= lastPeriod (values and masks beyond
// are dropped; countries left without any e0 data are removed).
Dataset truncateDataset(const Dataset& ds, Period lastPeriod);

// Copy with every covariate series zeroed and all countries left flagged as
// loaded. Used for the no-covariate model variant.
Dataset zeroCovariates(const Dataset& ds);

}  // namespace lexproj
