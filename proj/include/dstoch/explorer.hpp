#ifndef DSTOCH_EXPLORER_HPP_
#define DSTOCH_EXPLORER_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dstoch/core.hpp"
#include "dstoch/factorization.hpp"

namespace dstoch {

inline constexpr size_t kDefaultElementBudget = 1000000;

struct SnapshotElement {
  DSMatrix matrix;
  std::string key;
  int parent = -1;     // index of the element this was reached from, -1 for a generator
  int gen_index = -1;  // index into the sorted generator name list
  int word_length = 0;
};

// Depth-bounded exact enumeration of the generated semigroup. Elements are in
// BFS discovery order, which makes each element's reconstructed witness word
// the lexicographically least among the shortest.
struct SemigroupSnapshot {
  GeneratorSet generators;
  int depth = 0;
  bool truncated = false;  // element budget hit; deeper products may be missing
  std::vector<SnapshotElement> elements;

  Word word_of(size_t index) const;
};

struct GapReport {
  std::vector<Rational> entries;                     // sorted, distinct
  std::vector<std::pair<Rational, Rational>> gaps;   // maximal empty open intervals
};

struct GapLawReport {
  Rational x;  // largest generator entry strictly below 1
  bool holds = false;
  std::optional<std::pair<Word, Rational>> counterexample;
  bool truncated = false;
};

struct NormalForm {
  Permutation P;
  std::vector<DSMatrix> domestic_word;  // conjugated domestic parts, identities dropped
};

struct BilinearReduction {
  GeneratorSet augmented;  // original generators plus A and B^T
  std::string p_name;      // name of A,  A e1 = p
  std::string q_name;      // name of B^T, B e1 = q
};

struct ContainmentProbe {
  Word word;
  int power = 0;
  double distance = 0.0;  // min |.|_inf distance from (prod w)^power to the enumeration
  Word nearest;
};

struct ContainmentReport {
  std::vector<ContainmentProbe> probes;
  size_t enumerated = 0;
  bool truncated = false;
};

// BFS over words, frontier x generators, deduplicated by canonical_key. Level
// expansion is data-parallel; candidates are merged in word order afterwards,
// so the snapshot is identical at any thread count. On budget exhaustion the
// snapshot is returned truncated.
SemigroupSnapshot generate(const GeneratorSet& gens, int depth,
                           size_t budget = kDefaultElementBudget, int threads = 1);

// Plain serial BFS with the same contract; the reference generate() is tested
// against.
SemigroupSnapshot generate_reference(const GeneratorSet& gens, int depth,
                                     size_t budget = kDefaultElementBudget);

// Sorted distinct entry values over all snapshot elements.
std::vector<Rational> entry_set(const SemigroupSnapshot& snapshot);

// Maximal empty open intervals of length >= min_gap between consecutive
// entries; 0 and 1 act as virtual endpoints when absent from the list.
GapReport gap_report(const std::vector<Rational>& entries, const Rational& min_gap);

// Checks that every enumerated entry is exactly 1 or at most x, where x is the
// largest generator entry strictly below 1. A counterexample would contradict
// the closure law, so holds = false signals an implementation bug.
GapLawReport entry_gap_law_check(const GeneratorSet& gens, int depth,
                                 size_t budget = kDefaultElementBudget, int threads = 1);

// Rewrites the word's product as P * C_1 ... C_k where each C_i is the
// permutation-conjugated domestic part of one letter. Exact identity letters
// are dropped; conjugation preserves the margin, so every C_i stays domestic.
NormalForm normal_form(const GeneratorSet& gens, const Word& word);

// Doubly stochastic completion with first column p: A[i][0] = p[i] and the
// remaining mass spread evenly across each row.
DSMatrix complete_to_ds(const SimplexVector& p);

// Augments the generators with A = complete_to_ds(p) and B^T for
// B = complete_to_ds(q); then q^T (prod w) p equals entry [1,1] of
// B^T (prod w) A for every word w over the original set.
BilinearReduction bilinear_reduction(const GeneratorSet& gens, const SimplexVector& p,
                                     const SimplexVector& q);

// q^T (prod word) p, exact.
Rational bilinear_value(const GeneratorSet& gens, const SimplexVector& p, const SimplexVector& q,
                        const Word& word);

// The embedding M_a: [1,1] entry a, first row/column padding (1-a)/(n-1),
// interior (1 - (1-a)/(n-1))/(n-1).
DSMatrix entry_embed(const Rational& a, int n);

// For each probe word, the minimum distance from (prod w)^power (binary64) to
// the exact enumeration of the semigroup generated by gens plus its averaging
// core. The distance must shrink as power grows.
ContainmentReport closure_containment_check(const GeneratorSet& gens,
                                            const std::vector<Word>& probe_words, int power,
                                            int depth, size_t budget = kDefaultElementBudget,
                                            int threads = 1);

}  // namespace dstoch

#endif  // DSTOCH_EXPLORER_HPP_
