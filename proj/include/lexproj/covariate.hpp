#pragma once

#include <map>
#include <optional>

#include "lexproj/dataset.hpp"
#include "lexproj/period.hpp"

namespace lexproj {

// HnA = prevalence * (100 - coverage): roughly the percentage of the
// population infected with HIV but not receiving ART, in percent*percent
// units (0..10000). diffs[t] = values[t] - values[t-1].
struct HnASeries {
    bool epidemic = false;
    std::map<Period, double> values;
    std::map<Period, double> diffs;
};

// Builds the covariate series for one country. Identically zero (values and
// diffs) for non-epidemic countries.
HnASeries buildHnA(const CountrySeries& cs);

// Regressor paired with the gain observed at period t. Under the default lag
// the gain over [t, t+5) is regressed on the HnA change over the preceding
// period, diffs[t]; lag 0 pairs it with the contemporaneous change diffs[t+5].
// Returns 0 for non-epidemic countries and nullopt where the required diff
// does not exist (start of an epidemic series).
std::optional<double> covariateForObservation(const HnASeries& hna, Period t, int lag = 1);

// How observations with a missing regressor enter the likelihood.
enum class MissingCovariatePolicy {
    Zero,     // keep the observation with regressor 0
    Exclude,  // drop the observation entirely
};

}  // namespace lexproj
