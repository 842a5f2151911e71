#ifndef DSTOCH_CORE_HPP_
#define DSTOCH_CORE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dstoch/rational.hpp"

namespace dstoch {

struct unchecked_t {};
inline constexpr unchecked_t unchecked{};

// n x n doubly stochastic matrix over exact rationals: entries >= 0, every row
// and every column sums to exactly 1. Immutable after construction.
class DSMatrix {
 public:
  // Validating constructor; throws NotSquare / NegativeEntry / RowSumNotOne /
  // ColSumNotOne. Row and column indices in error messages are 1-based.
  static DSMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  static DSMatrix identity(int n);

  // Trusts the caller: used by operations whose results are doubly stochastic
  // by construction (products, averagings, permutation matrices).
  DSMatrix(int n, std::vector<Rational> flat, unchecked_t);

  int dim() const { return n_; }
  const Rational& at(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }

  DSMatrix transpose() const;
  bool is_permutation() const;

  bool operator==(const DSMatrix& o) const = default;

  // Exact lexicographic entry order; the independent dedup oracle in tests.
  friend bool operator<(const DSMatrix& a, const DSMatrix& b);

 private:
  int n_ = 0;
  std::vector<Rational> e_;
};

// Element of S_n. Internally 0-based: image(j) is the image of j.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);  // validates bijection on {0..n-1}
  static Permutation identity(int n);
  static Permutation transposition(int n, int a, int b);

  int dim() const { return static_cast<int>(map_.size()); }
  int image(int j) const { return map_[j]; }
  bool is_identity() const;
  Permutation inverse() const;

  bool operator==(const Permutation& o) const = default;

 private:
  std::vector<int> map_;
};

// p after q: compose(p, q)(j) = p(q(j)). Matches matrix multiplication of the
// corresponding permutation matrices.
Permutation compose(const Permutation& p, const Permutation& q);

// Point of the standard simplex: nonnegative coordinates summing to exactly 1.
class SimplexVector {
 public:
  explicit SimplexVector(std::vector<Rational> coords);  // validating

  int dim() const { return static_cast<int>(c_.size()); }
  const Rational& at(int i) const { return c_[i]; }
  const std::vector<Rational>& coords() const { return c_; }

  bool operator==(const SimplexVector& o) const = default;

 private:
  std::vector<Rational> c_;
};

// Set partition of {1..n}, canonical form: indices ascending within a block,
// blocks ordered by smallest element. Stored 0-based.
class Partition {
 public:
  Partition(int n, std::vector<std::vector<int>> blocks);  // validating
  static Partition singletons(int n);

  int n() const { return n_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }

  bool operator==(const Partition& o) const = default;
  friend bool operator<(const Partition& a, const Partition& b);

 private:
  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
};

// Coarsest common refinement bound: smallest partition refined by neither
// argument (the join in the partition lattice).
Partition join(const Partition& a, const Partition& b);

// Pair of equal-size index subsets X != Y as bitmasks over {0..n-1}.
struct SubsetPair {
  uint32_t X = 0;
  uint32_t Y = 0;

  bool operator==(const SubsetPair&) const = default;
  friend bool operator<(const SubsetPair& a, const SubsetPair& b) {
    return a.X != b.X ? a.X < b.X : a.Y < b.Y;
  }
};

std::vector<int> mask_to_indices(uint32_t mask);      // ascending, 0-based
uint32_t indices_to_mask(const std::vector<int>& v);  // 0-based

// Named finite set of equal-dimension doubly stochastic matrices. Names are
// unique and iterate in sorted order.
class GeneratorSet {
 public:
  GeneratorSet() = default;

  void add(const std::string& name, DSMatrix m);
  bool contains(const std::string& name) const { return gens_.count(name) > 0; }
  const DSMatrix& at(const std::string& name) const;

  int n() const { return n_; }
  size_t size() const { return gens_.size(); }
  bool empty() const { return gens_.empty(); }
  std::vector<std::string> names() const;

  auto begin() const { return gens_.begin(); }
  auto end() const { return gens_.end(); }

 private:
  int n_ = 0;
  std::map<std::string, DSMatrix> gens_;
};

// Sequence of generator names; products read left to right.
using Word = std::vector<std::string>;

// --- operations ---------------------------------------------------------

DSMatrix ds_from_rows(const std::vector<std::vector<Rational>>& rows);

DSMatrix multiply(const DSMatrix& a, const DSMatrix& b);
inline DSMatrix operator*(const DSMatrix& a, const DSMatrix& b) { return multiply(a, b); }

// Averaging over a partition: 1/|P_t| inside each block, 0 elsewhere.
DSMatrix averaging(const Partition& p);

// 0/1 matrix with M[i,j] = 1 iff i is the image of j.
DSMatrix permutation_matrix(const Permutation& p);

// Injective encoding of the matrix value (row-major reduced fractions).
std::string canonical_key(const DSMatrix& m);

// max |a[i,j] - b[i,j]| over all entries.
Rational inf_distance(const DSMatrix& a, const DSMatrix& b);
Rational inf_distance(const std::vector<Rational>& a, const std::vector<Rational>& b);

// Resolves a word against its generator set and multiplies out.
DSMatrix word_product(const GeneratorSet& gens, const Word& word);

}  // namespace dstoch

#endif  // DSTOCH_CORE_HPP_
