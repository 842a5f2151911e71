#include "dstoch/majorization.hpp"

#include <algorithm>
#include <numeric>

#include "dstoch/error.hpp"

namespace dstoch {

namespace {

// Stable argsort by descending value; ties fall back to ascending index.
std::vector<int> desc_order(const std::vector<Rational>& v) {
  std::vector<int> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return v[a] > v[b]; });
  return order;
}

// Permutation matrix S with (S * x)[i] = x[order[i]].
DSMatrix sorting_matrix(const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  std::vector<int> images(n);
  for (int i = 0; i < n; ++i) {
    images[order[i]] = i;
  }
  return permutation_matrix(Permutation(std::move(images)));
}

// One T-transform: identity mixed with the (j,k) transposition by weight lam.
DSMatrix t_transform(int n, int j, int k, const Rational& lam) {
  std::vector<Rational> flat(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    flat[static_cast<size_t>(i) * n + i] = 1;
  }
  Rational one_minus = Rational(1) - lam;
  flat[static_cast<size_t>(j) * n + j] = lam;
  flat[static_cast<size_t>(k) * n + k] = lam;
  flat[static_cast<size_t>(j) * n + k] = one_minus;
  flat[static_cast<size_t>(k) * n + j] = one_minus;
  return DSMatrix(n, std::move(flat), unchecked);
}

}  // namespace

SimplexVector sort_desc(const SimplexVector& p) {
  std::vector<int> order = desc_order(p.coords());
  std::vector<Rational> sorted;
  sorted.reserve(order.size());
  for (int idx : order) {
    sorted.push_back(p.at(idx));
  }
  return SimplexVector(std::move(sorted));
}

bool majorizes(const SimplexVector& p, const SimplexVector& q) {
  if (p.dim() != q.dim()) {
    fail("DimensionMismatch", "majorizes on vectors of dimension " + std::to_string(p.dim()) +
                                  " and " + std::to_string(q.dim()));
  }
  SimplexVector ps = sort_desc(p);
  SimplexVector qs = sort_desc(q);
  Rational psum, qsum;
  for (int k = 0; k < p.dim() - 1; ++k) {  // the full sum is 1 on both sides
    psum += ps.at(k);
    qsum += qs.at(k);
    if (psum < qsum) {
      return false;
    }
  }
  return true;
}

MajorizationWitness majorization_witness(const SimplexVector& p, const SimplexVector& q) {
  if (!majorizes(p, q)) {
    fail("NotMajorized", "p does not majorize q");
  }
  const int n = p.dim();
  std::vector<int> p_order = desc_order(p.coords());
  std::vector<int> q_order = desc_order(q.coords());

  std::vector<Rational> a;  // current vector, starts at p sorted, stays sorted
  std::vector<Rational> b;  // q sorted, fixed target
  for (int i = 0; i < n; ++i) {
    a.push_back(p.at(p_order[i]));
    b.push_back(q.at(q_order[i]));
  }

  DSMatrix w = DSMatrix::identity(n);
  for (int step = 0; step < n; ++step) {
    int j = -1;
    for (int i = n - 1; i >= 0; --i) {
      if (a[i] > b[i]) {
        j = i;
        break;
      }
    }
    if (j < 0) {
      break;  // a == b
    }
    int k = -1;
    for (int i = j + 1; i < n; ++i) {
      if (a[i] < b[i]) {
        k = i;
        break;
      }
    }
    // Equal totals guarantee a deficit to the right of the last surplus.
    if (k < 0) {
      fail("InternalError", "majorization witness lost the surplus/deficit pairing");
    }
    Rational delta = std::min(a[j] - b[j], b[k] - a[k]);
    Rational lam = Rational(1) - delta / (a[j] - a[k]);
    w = multiply(t_transform(n, j, k, lam), w);
    a[j] -= delta;
    a[k] += delta;
  }

  DSMatrix sp = sorting_matrix(p_order);
  DSMatrix sq = sorting_matrix(q_order);
  return MajorizationWitness{multiply(sq.transpose(), multiply(w, sp))};
}

SandwichReport sandwich_bound_check(const SimplexVector& p, const SimplexVector& q,
                                    const SimplexVector& r) {
  if (!majorizes(p, q) || !majorizes(q, r)) {
    fail("ChainNotMajorized", "need p majorizes q majorizes r");
  }
  SimplexVector ps = sort_desc(p);
  SimplexVector qs = sort_desc(q);
  SimplexVector rs = sort_desc(r);
  SandwichReport report;
  report.lhs = inf_distance(ps.coords(), qs.coords());
  report.rhs = Rational(2 * p.dim()) * inf_distance(ps.coords(), rs.coords());
  report.holds = report.lhs <= report.rhs;
  return report;
}

SimplexVector apply(const DSMatrix& m, const SimplexVector& p) {
  if (m.dim() != p.dim()) {
    fail("DimensionMismatch", "applying " + std::to_string(m.dim()) + "-dim matrix to " +
                                  std::to_string(p.dim()) + "-dim vector");
  }
  std::vector<Rational> out(p.dim());
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      if (!m.at(i, j).is_zero()) {
        out[i] += m.at(i, j) * p.at(j);
      }
    }
  }
  return SimplexVector(std::move(out));
}

}  // namespace dstoch
