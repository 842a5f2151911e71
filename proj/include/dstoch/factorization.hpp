#ifndef DSTOCH_FACTORIZATION_HPP_
#define DSTOCH_FACTORIZATION_HPP_

#include <optional>
#include <vector>

#include "dstoch/core.hpp"
#include "dstoch/domestic.hpp"

namespace dstoch {

struct PermutationFactorization {
  Permutation P;
  DSMatrix Mprime;               // P^-1 * M; all of its tight pairs have X = Y
  std::optional<Rational> eps;   // min((2n)^-1, 1 - margin(Mprime)); absent if skipped
};

struct BirkhoffTerm {
  Rational coeff;
  Permutation perm;
};

struct BirkhoffDecomposition {
  std::vector<BirkhoffTerm> terms;  // coefficients in (0,1], summing to exactly 1
};

// All pairs (X, Y), |X| = |Y|, X != Y, whose block sum equals |X| exactly.
// Exponential enumeration; the oracle for support_components.
std::vector<SubsetPair> tight_pairs(const DSMatrix& m, int dim_cap = kBruteForceDimCap);

// Connected components of the bipartite support graph (edge (i, j) iff
// M[i,j] > 0), as (row set, column set) pairs ordered by lowest row. Unions of
// components generate exactly the tight pairs.
std::vector<SubsetPair> support_components(const DSMatrix& m);

// M = P * Mprime with Mprime eps-domestic. P pairs each component's columns
// with its rows in ascending order. with_eps = false skips the margin
// computation (needed above the margin dimension cap).
PermutationFactorization factor_permutation(const DSMatrix& m, bool with_eps = true,
                                            int threads = 1);

// Greedy extraction: perfect matching on the support, subtract the minimum
// matched entry, repeat. At most n^2 - 2n + 2 terms; exact reconstruction.
BirkhoffDecomposition birkhoff_decompose(const DSMatrix& m);

// Row permutation: result[i][j] = m[p(i)][j], i.e. permutation_matrix(p)^-1 * m.
DSMatrix permute_rows(const Permutation& p, const DSMatrix& m);

// Conjugate p^-1 * m * p, computed entrywise.
DSMatrix conjugate(const Permutation& p, const DSMatrix& m);

}  // namespace dstoch

#endif  // DSTOCH_FACTORIZATION_HPP_
