#pragma once

#include <cmath>
#include <map>

#include "conetail/regvar.hpp"
#include "conetail/rng.hpp"

namespace conetail::testing {

// Random rectangular set in dimension d with |S| >= min_level.
inline RectSet random_rect(RngStream& rng, int d, int min_level, bool diagonal = false) {
    const int size = min_level + static_cast<int>(rng.uniform() * (d - min_level + 0.999));
    std::map<int, double> x;
    const double diag = 0.5 + 4.0 * rng.uniform();
    while (static_cast<int>(x.size()) < size) {
        const int j = static_cast<int>(rng.uniform() * d);
        if (!x.count(j)) x[j] = diagonal ? diag : 0.5 + 4.0 * rng.uniform();
    }
    return RectSet(d, std::move(x));
}

inline bool close(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace conetail::testing
