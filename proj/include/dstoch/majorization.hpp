#ifndef DSTOCH_MAJORIZATION_HPP_
#define DSTOCH_MAJORIZATION_HPP_

#include "dstoch/core.hpp"

namespace dstoch {

struct MajorizationWitness {
  DSMatrix M;  // exact: M * p = q
};

struct SandwichReport {
  Rational lhs;  // |p_sorted - q_sorted|_inf
  Rational rhs;  // 2n * |p_sorted - r_sorted|_inf
  bool holds = false;
};

// Descending rearrangement; ties keep original index order.
SimplexVector sort_desc(const SimplexVector& p);

// Prefix-sum dominance of the descending rearrangements.
bool majorizes(const SimplexVector& p, const SimplexVector& q);

// Constructive witness: a doubly stochastic M with M p = q, built from at most
// n-1 T-transforms in the sorted frame and conjugated back by the two sorting
// permutations. Throws NotMajorized when majorizes(p, q) fails.
MajorizationWitness majorization_witness(const SimplexVector& p, const SimplexVector& q);

// Requires p majorizes q majorizes r (else ChainNotMajorized).
SandwichReport sandwich_bound_check(const SimplexVector& p, const SimplexVector& q,
                                    const SimplexVector& r);

// q = M * p, exact.
SimplexVector apply(const DSMatrix& m, const SimplexVector& p);

}  // namespace dstoch

#endif  // DSTOCH_MAJORIZATION_HPP_
