#pragma once

#include <random>

#include "cyvhs/matrix.hpp"

namespace cyvhs::testing {

inline Rational random_small(std::mt19937_64& rng, int range = 3) {
    std::uniform_int_distribution<int> d(-range, range);
    return Rational(d(rng));
}

// Sparse-ish random integer matrix; density in percent.
inline Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int density = 60, int range = 3) {
    std::uniform_int_distribution<int> pct(0, 99);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (pct(rng) < density) m(i, j) = random_small(rng, range);
    return m;
}

}  // namespace cyvhs::testing
