#include "dstoch/factorization.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "dstoch/error.hpp"

namespace dstoch {

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

bool kuhn_augment(int row, const std::vector<std::vector<int>>& adj, std::vector<bool>& used,
                  std::vector<int>& match_row_of_col) {
  for (int col : adj[row]) {
    if (used[col]) {
      continue;
    }
    used[col] = true;
    if (match_row_of_col[col] < 0 ||
        kuhn_augment(match_row_of_col[col], adj, used, match_row_of_col)) {
      match_row_of_col[col] = row;
      return true;
    }
  }
  return false;
}

bool rest_matchable(int start, const std::vector<std::vector<int>>& adj,
                    const std::vector<bool>& col_taken, int n) {
  std::vector<int> match_row_of_col(n, -1);
  for (int row = start; row < n; ++row) {
    std::vector<bool> used = col_taken;
    if (!kuhn_augment(row, adj, used, match_row_of_col)) {
      return false;
    }
  }
  return true;
}

// Lexicographically least perfect matching on the support of r: each row in
// turn takes its lowest column that still leaves the rest matchable. Returns
// images-of-columns, i.e. a Permutation map.
std::vector<int> support_matching(const std::vector<Rational>& r, int n) {
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (r[static_cast<size_t>(i) * n + j].sign() > 0) {
        adj[i].push_back(j);
      }
    }
  }
  std::vector<bool> col_taken(n, false);
  std::vector<int> match_row_of_col(n, -1);
  for (int row = 0; row < n; ++row) {
    bool placed = false;
    for (int col : adj[row]) {
      if (col_taken[col]) {
        continue;
      }
      col_taken[col] = true;
      if (rest_matchable(row + 1, adj, col_taken, n)) {
        match_row_of_col[col] = row;
        placed = true;
        break;
      }
      col_taken[col] = false;
    }
    if (!placed) {
      fail("InternalError", "support of a doubly stochastic matrix lost its perfect matching");
    }
  }
  return match_row_of_col;
}

}  // namespace

std::vector<SubsetPair> tight_pairs(const DSMatrix& m, int dim_cap) {
  if (m.dim() > dim_cap) {
    fail("DimensionTooLarge", "n = " + std::to_string(m.dim()) + " exceeds the cap " +
                                  std::to_string(dim_cap));
  }
  const int n = m.dim();
  const uint32_t total = 1u << n;
  std::vector<SubsetPair> out;
  for (uint32_t x = 1; x + 1 < total; ++x) {
    const int k = std::popcount(x);
    for (uint32_t y = 1; y + 1 < total; ++y) {
      if (y == x || std::popcount(y) != k) {
        continue;
      }
      Rational sum;
      for (int i = 0; i < n; ++i) {
        if (!(x >> i & 1u)) {
          continue;
        }
        for (int j = 0; j < n; ++j) {
          if (y >> j & 1u) {
            sum += m.at(i, j);
          }
        }
      }
      if (sum == Rational(k)) {
        out.push_back(SubsetPair{x, y});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SubsetPair> support_components(const DSMatrix& m) {
  const int n = m.dim();
  UnionFind uf(2 * n);  // rows 0..n-1, columns n..2n-1
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (m.at(i, j).sign() > 0) {
        uf.unite(i, n + j);
      }
    }
  }
  std::map<int, SubsetPair> comps;
  for (int i = 0; i < n; ++i) {
    comps[uf.find(i)].X |= 1u << i;
  }
  for (int j = 0; j < n; ++j) {
    comps[uf.find(n + j)].Y |= 1u << j;
  }
  std::vector<SubsetPair> out;
  out.reserve(comps.size());
  for (const auto& [root, pair] : comps) {
    if (std::popcount(pair.X) != std::popcount(pair.Y)) {
      fail("InternalError", "support component with unequal row and column counts");
    }
    out.push_back(pair);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PermutationFactorization factor_permutation(const DSMatrix& m, bool with_eps, int threads) {
  const int n = m.dim();
  std::vector<int> images(n, -1);
  for (const SubsetPair& comp : support_components(m)) {
    std::vector<int> rows = mask_to_indices(comp.X);
    std::vector<int> cols = mask_to_indices(comp.Y);
    for (size_t t = 0; t < cols.size(); ++t) {
      images[cols[t]] = rows[t];
    }
  }
  Permutation p{std::move(images)};
  DSMatrix mprime = permute_rows(p, m);
  std::optional<Rational> eps;
  if (with_eps) {
    eps = largest_admissible_eps(domesticity_margin(mprime, threads), n);
    if (!eps) {
      fail("InternalError", "factored remainder still has margin 1");
    }
  }
  return PermutationFactorization{std::move(p), std::move(mprime), std::move(eps)};
}

BirkhoffDecomposition birkhoff_decompose(const DSMatrix& m) {
  const int n = m.dim();
  std::vector<Rational> r(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      r[static_cast<size_t>(i) * n + j] = m.at(i, j);
    }
  }

  BirkhoffDecomposition out;
  Rational extracted;
  while (extracted < Rational(1)) {
    std::vector<int> match = support_matching(r, n);
    Rational lam;
    bool first = true;
    for (int col = 0; col < n; ++col) {
      const Rational& entry = r[static_cast<size_t>(match[col]) * n + col];
      if (first || entry < lam) {
        lam = entry;
        first = false;
      }
    }
    for (int col = 0; col < n; ++col) {
      r[static_cast<size_t>(match[col]) * n + col] -= lam;
    }
    extracted += lam;
    out.terms.push_back(BirkhoffTerm{lam, Permutation(std::move(match))});
  }
  for (const Rational& entry : r) {
    if (!entry.is_zero()) {
      fail("InternalError", "Birkhoff extraction left a nonzero remainder");
    }
  }
  return out;
}

DSMatrix permute_rows(const Permutation& p, const DSMatrix& m) {
  const int n = m.dim();
  std::vector<Rational> flat(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      flat[static_cast<size_t>(i) * n + j] = m.at(p.image(i), j);
    }
  }
  return DSMatrix(n, std::move(flat), unchecked);
}

DSMatrix conjugate(const Permutation& p, const DSMatrix& m) {
  const int n = m.dim();
  std::vector<Rational> flat(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      flat[static_cast<size_t>(i) * n + j] = m.at(p.image(i), p.image(j));
    }
  }
  return DSMatrix(n, std::move(flat), unchecked);
}

}  // namespace dstoch
