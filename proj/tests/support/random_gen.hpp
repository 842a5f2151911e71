#ifndef DSTOCH_TESTS_RANDOM_GEN_HPP_
#define DSTOCH_TESTS_RANDOM_GEN_HPP_

#include <random>

#include "dstoch/core.hpp"

namespace dstoch::testing {

using Rng = std::mt19937_64;

Permutation random_permutation(int n, Rng& rng);

// Convex combination of `terms` random permutations with denominator-bounded
// coefficients; entries have denominators dividing denom_bound.
DSMatrix random_doubly_stochastic(int n, int terms, long denom_bound, Rng& rng);

// (1/2) J + (1/2) B for a random doubly stochastic B: the margin is at most
// 1 - 1/(2n), so the result is (2n)^-1-domestic by construction.
DSMatrix random_domestic(int n, Rng& rng);

SimplexVector random_simplex_vector(int n, long coord_bound, Rng& rng);

}  // namespace dstoch::testing

#endif  // DSTOCH_TESTS_RANDOM_GEN_HPP_
