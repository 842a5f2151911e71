#include "support/random_gen.hpp"

#include <algorithm>
#include <numeric>

namespace dstoch::testing {

Permutation random_permutation(int n, Rng& rng) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 0);
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(std::move(images));
}

DSMatrix random_doubly_stochastic(int n, int terms, long denom_bound, Rng& rng) {
  // Random composition of D into `terms` positive parts, D <= denom_bound.
  long d = 2 + static_cast<long>(rng() % static_cast<uint64_t>(denom_bound - 1));
  terms = std::min<long>(terms, d);
  std::vector<long> parts(terms, 1);
  for (long rest = d - terms; rest > 0; --rest) {
    parts[rng() % parts.size()] += 1;
  }

  std::vector<Rational> flat(static_cast<size_t>(n) * n);
  for (long part : parts) {
    Permutation p = random_permutation(n, rng);
    Rational coeff(part, d);
    for (int j = 0; j < n; ++j) {
      flat[static_cast<size_t>(p.image(j)) * n + j] += coeff;
    }
  }
  return DSMatrix(n, std::move(flat), unchecked);
}

DSMatrix random_domestic(int n, Rng& rng) {
  DSMatrix b = random_doubly_stochastic(n, 3, 12, rng);
  Rational half(1, 2);
  Rational uniform(1, n);
  std::vector<Rational> flat(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      flat[static_cast<size_t>(i) * n + j] = half * uniform + half * b.at(i, j);
    }
  }
  return DSMatrix(n, std::move(flat), unchecked);
}

SimplexVector random_simplex_vector(int n, long coord_bound, Rng& rng) {
  std::vector<long> raw(n);
  long total = 0;
  for (long& v : raw) {
    v = static_cast<long>(rng() % static_cast<uint64_t>(coord_bound + 1));
    total += v;
  }
  if (total == 0) {
    raw[rng() % raw.size()] = 1;
    total = 1;
  }
  std::vector<Rational> coords;
  coords.reserve(n);
  for (long v : raw) {
    coords.emplace_back(v, total);
  }
  return SimplexVector(std::move(coords));
}

}  // namespace dstoch::testing
