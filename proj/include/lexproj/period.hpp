#pragma once

#include <compare>
#include <string>

#include "lexproj/errors.hpp"

namespace lexproj {

// A five-year calendar period identified by its start year. Period{1950}
// covers [1950, 1955). Start years sit on a contiguous multiple-of-5 grid.
struct Period {
    int startYear = 0;

    auto operator<=>(const Period&) const = default;

    Period next() const { return Period{startYear + 5}; }
    Period prev() const { return Period{startYear - 5}; }
    int endYear() const { return startYear + 5; }

    // Period containing calendar year y.
    static Period ofYear(int y) {
        int s = y - ((y % 5) + 5) % 5;
        return Period{s};
    }

    static Period checked(int startYear, const std::string& context) {
        if (startYear % 5 != 0) {
            throw ValidationError(context + ": year " + std::to_string(startYear) +
                                  " is not the start of a five-year period");
        }
        return Period{startYear};
    }

    std::string label() const {
        return std::to_string(startYear) + "-" + std::to_string(endYear());
    }
};

}  // namespace lexproj
