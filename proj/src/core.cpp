#include "dstoch/core.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <utility>

#include "dstoch/error.hpp"

namespace dstoch {

DSMatrix DSMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const int n = static_cast<int>(rows.size());
  if (n == 0) {
    fail("NotSquare", "empty matrix");
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      fail("NotSquare", "row " + std::to_string(i + 1) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(n));
    }
  }
  std::vector<Rational> flat;
  flat.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    Rational row_sum;
    for (int j = 0; j < n; ++j) {
      if (rows[i][j].sign() < 0) {
        fail("NegativeEntry", "entry (" + std::to_string(i + 1) + "," +
                                  std::to_string(j + 1) + ") = " + rows[i][j].str());
      }
      row_sum += rows[i][j];
      flat.push_back(rows[i][j]);
    }
    if (!row_sum.is_one()) {
      fail("RowSumNotOne", "row " + std::to_string(i + 1) + " sums to " + row_sum.str());
    }
  }
  for (int j = 0; j < n; ++j) {
    Rational col_sum;
    for (int i = 0; i < n; ++i) {
      col_sum += rows[i][j];
    }
    if (!col_sum.is_one()) {
      fail("ColSumNotOne", "column " + std::to_string(j + 1) + " sums to " + col_sum.str());
    }
  }
  return DSMatrix(n, std::move(flat), unchecked);
}

DSMatrix DSMatrix::identity(int n) {
  std::vector<Rational> flat(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    flat[static_cast<size_t>(i) * n + i] = 1;
  }
  return DSMatrix(n, std::move(flat), unchecked);
}

DSMatrix::DSMatrix(int n, std::vector<Rational> flat, unchecked_t) : n_(n), e_(std::move(flat)) {}

DSMatrix DSMatrix::transpose() const {
  std::vector<Rational> flat(e_.size());
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      flat[static_cast<size_t>(j) * n_ + i] = at(i, j);
    }
  }
  return DSMatrix(n_, std::move(flat), unchecked);
}

bool DSMatrix::is_permutation() const {
  for (const Rational& x : e_) {
    if (!x.is_zero() && !x.is_one()) {
      return false;
    }
  }
  return true;
}

bool operator<(const DSMatrix& a, const DSMatrix& b) {
  if (a.n_ != b.n_) {
    return a.n_ < b.n_;
  }
  return std::lexicographical_compare(a.e_.begin(), a.e_.end(), b.e_.begin(), b.e_.end());
}

Permutation::Permutation(std::vector<int> images) : map_(std::move(images)) {
  const int n = dim();
  std::vector<bool> seen(n, false);
  for (int v : map_) {
    if (v < 0 || v >= n || seen[v]) {
      fail("InvalidPermutation", "image list is not a bijection on {1.." +
                                     std::to_string(n) + "}");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  return Permutation(std::move(m));
}

Permutation Permutation::transposition(int n, int a, int b) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  std::swap(m[a], m[b]);
  return Permutation(std::move(m));
}

bool Permutation::is_identity() const {
  for (int j = 0; j < dim(); ++j) {
    if (map_[j] != j) {
      return false;
    }
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(map_.size());
  for (int j = 0; j < dim(); ++j) {
    inv[map_[j]] = j;
  }
  return Permutation(std::move(inv));
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.dim() != q.dim()) {
    fail("DimensionMismatch", "composing permutations of size " + std::to_string(p.dim()) +
                                  " and " + std::to_string(q.dim()));
  }
  std::vector<int> m(p.dim());
  for (int j = 0; j < p.dim(); ++j) {
    m[j] = p.image(q.image(j));
  }
  return Permutation(std::move(m));
}

SimplexVector::SimplexVector(std::vector<Rational> coords) : c_(std::move(coords)) {
  if (c_.empty()) {
    fail("InvalidVector", "empty vector");
  }
  Rational sum;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].sign() < 0) {
      fail("NegativeEntry", "coordinate " + std::to_string(i + 1) + " = " + c_[i].str());
    }
    sum += c_[i];
  }
  if (!sum.is_one()) {
    fail("InvalidVector", "coordinates sum to " + sum.str());
  }
}

Partition::Partition(int n, std::vector<std::vector<int>> blocks) : n_(n), blocks_(std::move(blocks)) {
  std::vector<bool> seen(n, false);
  int covered = 0;
  for (auto& block : blocks_) {
    if (block.empty()) {
      fail("InvalidPartition", "empty block");
    }
    std::sort(block.begin(), block.end());
    for (int i : block) {
      if (i < 0 || i >= n || seen[i]) {
        fail("InvalidPartition", "blocks must partition {1.." + std::to_string(n) + "}");
      }
      seen[i] = true;
      ++covered;
    }
  }
  if (covered != n) {
    fail("InvalidPartition", "blocks cover " + std::to_string(covered) + " of " +
                                 std::to_string(n) + " indices");
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

Partition Partition::singletons(int n) {
  std::vector<std::vector<int>> blocks(n);
  for (int i = 0; i < n; ++i) {
    blocks[i] = {i};
  }
  return Partition(n, std::move(blocks));
}

bool operator<(const Partition& a, const Partition& b) {
  if (a.n_ != b.n_) {
    return a.n_ < b.n_;
  }
  return a.blocks_ < b.blocks_;
}

namespace {

struct UnionFind {
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  std::vector<int> parent;
};

Partition partition_from_uf(int n, UnionFind& uf) {
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) {
    groups[uf.find(i)].push_back(i);
  }
  std::vector<std::vector<int>> blocks;
  blocks.reserve(groups.size());
  for (auto& [root, members] : groups) {
    blocks.push_back(std::move(members));
  }
  return Partition(n, std::move(blocks));
}

}  // namespace

Partition join(const Partition& a, const Partition& b) {
  if (a.n() != b.n()) {
    fail("DimensionMismatch", "joining partitions of different ground sets");
  }
  UnionFind uf(a.n());
  for (const auto* p : {&a, &b}) {
    for (const auto& block : p->blocks()) {
      for (size_t t = 1; t < block.size(); ++t) {
        uf.unite(block[0], block[t]);
      }
    }
  }
  return partition_from_uf(a.n(), uf);
}

std::vector<int> mask_to_indices(uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) {
      out.push_back(i);
    }
  }
  return out;
}

uint32_t indices_to_mask(const std::vector<int>& v) {
  uint32_t mask = 0;
  for (int i : v) {
    mask |= 1u << i;
  }
  return mask;
}

void GeneratorSet::add(const std::string& name, DSMatrix m) {
  if (name.empty()) {
    fail("InvalidGeneratorSet", "empty generator name");
  }
  if (gens_.empty()) {
    n_ = m.dim();
  } else if (m.dim() != n_) {
    fail("DimensionMismatch", "generator \"" + name + "\" has dimension " +
                                  std::to_string(m.dim()) + ", set has " + std::to_string(n_));
  }
  if (!gens_.emplace(name, std::move(m)).second) {
    fail("InvalidGeneratorSet", "duplicate generator name \"" + name + "\"");
  }
}

const DSMatrix& GeneratorSet::at(const std::string& name) const {
  auto it = gens_.find(name);
  if (it == gens_.end()) {
    fail("UnknownGenerator", "no generator named \"" + name + "\"");
  }
  return it->second;
}

std::vector<std::string> GeneratorSet::names() const {
  std::vector<std::string> out;
  out.reserve(gens_.size());
  for (const auto& [name, m] : gens_) {
    out.push_back(name);
  }
  return out;
}

DSMatrix ds_from_rows(const std::vector<std::vector<Rational>>& rows) {
  return DSMatrix::from_rows(rows);
}

DSMatrix multiply(const DSMatrix& a, const DSMatrix& b) {
  if (a.dim() != b.dim()) {
    fail("DimensionMismatch", "multiplying " + std::to_string(a.dim()) + "x" +
                                  std::to_string(a.dim()) + " by " + std::to_string(b.dim()) +
                                  "x" + std::to_string(b.dim()));
  }
  const int n = a.dim();
  std::vector<Rational> flat(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Rational& aik = a.at(i, k);
      if (aik.is_zero()) {
        continue;
      }
      for (int j = 0; j < n; ++j) {
        const Rational& bkj = b.at(k, j);
        if (!bkj.is_zero()) {
          flat[static_cast<size_t>(i) * n + j].add_mul(aik, bkj);
        }
      }
    }
  }
  return DSMatrix(n, std::move(flat), unchecked);
}

DSMatrix averaging(const Partition& p) {
  const int n = p.n();
  std::vector<Rational> flat(static_cast<size_t>(n) * n);
  for (const auto& block : p.blocks()) {
    Rational w = Rational(1, static_cast<long>(block.size()));
    for (int i : block) {
      for (int j : block) {
        flat[static_cast<size_t>(i) * n + j] = w;
      }
    }
  }
  return DSMatrix(n, std::move(flat), unchecked);
}

DSMatrix permutation_matrix(const Permutation& p) {
  const int n = p.dim();
  std::vector<Rational> flat(static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    flat[static_cast<size_t>(p.image(j)) * n + j] = 1;
  }
  return DSMatrix(n, std::move(flat), unchecked);
}

std::string canonical_key(const DSMatrix& m) {
  std::string key = std::to_string(m.dim());
  key.reserve(static_cast<size_t>(m.dim()) * m.dim() * 8);
  key += ':';
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      key += m.at(i, j).str();
      key += ',';
    }
  }
  return key;
}

Rational inf_distance(const DSMatrix& a, const DSMatrix& b) {
  if (a.dim() != b.dim()) {
    fail("DimensionMismatch", "comparing matrices of different dimension");
  }
  Rational best;
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      Rational d = (a.at(i, j) - b.at(i, j)).abs();
      if (d > best) {
        best = d;
      }
    }
  }
  return best;
}

Rational inf_distance(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) {
    fail("DimensionMismatch", "comparing vectors of different dimension");
  }
  Rational best;
  for (size_t i = 0; i < a.size(); ++i) {
    Rational d = (a[i] - b[i]).abs();
    if (d > best) {
      best = d;
    }
  }
  return best;
}

DSMatrix word_product(const GeneratorSet& gens, const Word& word) {
  if (word.empty()) {
    fail("InvalidWord", "empty word");
  }
  DSMatrix acc = gens.at(word.front());
  for (size_t i = 1; i < word.size(); ++i) {
    acc = multiply(acc, gens.at(word[i]));
  }
  return acc;
}

}  // namespace dstoch
