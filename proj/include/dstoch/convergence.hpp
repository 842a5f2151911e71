#ifndef DSTOCH_CONVERGENCE_HPP_
#define DSTOCH_CONVERGENCE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dstoch/core.hpp"

namespace dstoch {

struct ProductSchedule {
  enum class Rule { kRoundRobin, kRepeatWord, kPseudoRandom };

  GeneratorSet generators;
  Rule rule = Rule::kRoundRobin;
  Word word;          // for kRepeatWord
  uint64_t seed = 0;  // for kPseudoRandom

  static ProductSchedule round_robin(GeneratorSet gens);
  static ProductSchedule repeat_word(GeneratorSet gens, Word word);
  static ProductSchedule pseudo_random(GeneratorSet gens, uint64_t seed);

  // The set of generators that occur infinitely often.
  std::vector<std::string> recurring_names() const;
};

struct LimitReport {
  int n = 0;
  std::vector<double> value;     // last partial product, row-major
  std::vector<double> previous;  // the one before it
  size_t iterations = 0;         // factors consumed
  double residual = 0.0;         // |last - previous|_inf
  bool converged = false;
  std::optional<Partition> matched_averaging;
  std::optional<double> match_error;
  std::vector<double> residual_history;  // residual after each factor from the 2nd on
};

struct CoreSubsetResult {
  std::vector<std::string> subset;
  Partition predicted;
  double distance = 0.0;  // |numeric limit - averaging(predicted)|_inf
  size_t iterations = 0;
  bool converged = false;
};

struct CoreReport {
  std::vector<CoreSubsetResult> rows;  // nonempty subsets in canonical order
  double max_distance = 0.0;
  bool all_within = false;
  double tolerance = 0.0;
};

// Partition of the equivalence closure of {i ~ j : some tail matrix has
// M[i,j] > 0}. The tail-limit of any schedule using exactly these matrices
// infinitely often is averaging(result). Requires every matrix to be
// eps-domestic for a common eps (margin < 1); throws NotDomestic otherwise.
Partition predict_limit_partition(const GeneratorSet& tail, int threads = 1);

// Right partial products S0...Si in binary64. Stops once the successive
// difference stays <= tol for n consecutive factors (guards against slow
// plateaus); reports NonConvergence through converged = false after max_iter.
// On success the limit is matched to an exact averaging by rounding its
// support pattern at threshold sqrt(tol).
LimitReport iterate_product(const ProductSchedule& schedule, double tol = 1e-10,
                            size_t max_iter = 100000);

// For every nonempty subset of the generators: predicted partition vs the
// numeric round-robin limit. Subsets beyond 2^12 are refused
// (SubsetBudgetExceeded). Evaluation is subset-parallel; the report order is
// canonical regardless of the thread count.
CoreReport verify_convergence_core(const GeneratorSet& gens, double match_tol = 1e-8,
                                   double iter_tol = 1e-10, size_t max_iter = 100000,
                                   int threads = 1);

// Least set of averagings closed under taking predicted limits of finite
// subsets of generators and already-found averagings: the pairwise-join fixed
// point over the partition lattice, seeded with each generator's support
// partition.
std::vector<Partition> averaging_core(const GeneratorSet& gens, int threads = 1);

// Row-major binary64 copy, and the |.|_inf distance used on such grids.
std::vector<double> to_doubles(const DSMatrix& m);
double inf_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace dstoch

#endif  // DSTOCH_CONVERGENCE_HPP_
