#ifndef DSTOCH_DOMESTIC_HPP_
#define DSTOCH_DOMESTIC_HPP_

#include <optional>
#include <utility>

#include "dstoch/core.hpp"
#include "dstoch/majorization.hpp"

namespace dstoch {

inline constexpr int kMarginDimCap = 14;      // incremental kernel
inline constexpr int kBruteForceDimCap = 8;   // naive pair enumeration

struct MarginReport {
  // max over pairs (X, Y), |X| = |Y|, X != Y, of (1/|X|) * sum_{i in X, j in Y} M[i,j].
  Rational margin;
  // Pair attaining the maximum; absent only for n = 1 where no valid pair exists.
  std::optional<SubsetPair> witness;
};

struct DomesticityCheck {
  bool domestic = false;
  std::optional<SubsetPair> violation;  // block sum > (1-eps)|X| when not domestic
};

struct ContractionDiagnostic {
  Rational displacement;         // |p - Mp|_inf
  Rational sorted_displacement;  // |p_sorted - (Mp)_sorted|_inf
};

// Exact domesticity margin. Enumerates row sets in Gray-code order, updating
// the column-sum vector by one row per step; the best column set of each size
// is a top-k selection. threads > 1 splits the Gray-code range; the reduction
// uses a total order on (value, X, Y) so the result is schedule-independent.
MarginReport domesticity_margin(const DSMatrix& m, int threads = 1,
                                int dim_cap = kMarginDimCap);

// Serial reference for the kernel above (same algorithm, no OpenMP).
MarginReport domesticity_margin_serial(const DSMatrix& m, int dim_cap = kMarginDimCap);

// Naive enumeration of every (X, Y) pair; the oracle the fast kernel is
// tested against.
MarginReport domesticity_margin_bruteforce(const DSMatrix& m, int dim_cap = kBruteForceDimCap);

// Largest eps for which m is eps-domestic: min((2n)^-1, 1 - margin), or absent
// when the margin is 1 (permutation-like mass transport).
std::optional<Rational> largest_admissible_eps(const MarginReport& report, int n);

// eps must lie in (0, (2n)^-1]; throws EpsilonOutOfRange otherwise.
DomesticityCheck is_domestic(const DSMatrix& m, const Rational& eps, int threads = 1);

// With q = Mp, returns (|p-q|_inf, |p_sorted-q_sorted|_inf). Requires m to be
// eps-domestic (NotDomestic otherwise); the bound asserted by the test suite
// is displacement <= 2n/eps * sorted_displacement.
ContractionDiagnostic contraction_diagnostic(const DSMatrix& m, const SimplexVector& p,
                                             const Rational& eps);

}  // namespace dstoch

#endif  // DSTOCH_DOMESTIC_HPP_
