#ifndef MSCS_RANDOM_PARAMS_HPP
#define MSCS_RANDOM_PARAMS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "mscs/constructions.hpp"

namespace mscs {

using Rng = std::mt19937_64;

/// Draws pi, g_i, g and h uniformly for the given structural parameters.
PrimeBlockParams random_block(Rng& rng, int p, int m, int s, int modulus);

/// Re-draws every free choice of `shape` (pi, coefficients, head table),
/// keeping p, m and s.
Theorem1Params randomize(Rng& rng, Theorem1Params shape);
Theorem2Params randomize(Rng& rng, Theorem2Params shape);
Theorem3Params randomize(Rng& rng, Theorem3Params shape);

// Worked parameter sets.

/// p = 3, m = 3, s = 2, lambda = 6, f = 2 v2 v3 + 5: a (3, 27, 3)-MSCS.
Theorem1Params example1_params();
/// Base prime 3 (m = 3, s = 1) with
/// f1 = 2(v2 v3 + v3 v1) + 2 v1 + 5 v2 + v3, extension prime 2 with
/// f2 = 3 v: a (3, 54, 2)-MSCS.
Theorem3Params example2_params();
/// Primes 2 and 3, m = s = 1, lambda = 6, all coefficients zero: a
/// (6, 6, 1) complementary set.
Theorem2Params gcs6_params();

} // namespace mscs

#endif
