#include "dstoch/domestic.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include <omp.h>

#include "dstoch/error.hpp"

namespace dstoch {

namespace {

constexpr uint32_t gray(uint64_t t) { return static_cast<uint32_t>(t ^ (t >> 1)); }

// Running best under the total order: larger value, then smaller X, then
// smaller Y. Merging bests commutes, which keeps parallel runs deterministic.
struct Best {
  Rational value;
  uint32_t X = 0;
  uint32_t Y = 0;
  bool valid = false;

  void offer(const Rational& v, uint32_t x, uint32_t y) {
    if (!valid || v > value || (v == value && (x < X || (x == X && y < Y)))) {
      value = v;
      X = x;
      Y = y;
      valid = true;
    }
  }

  void merge(const Best& o) {
    if (o.valid) {
      offer(o.value, o.X, o.Y);
    }
  }
};

// Scans Gray-code positions [lo, hi). colsum holds, for the current row set X,
// the per-column sums of the selected rows; a Gray-code step changes X by one
// row, so the update is O(n).
Best margin_scan(const DSMatrix& m, uint64_t lo, uint64_t hi) {
  const int n = m.dim();
  std::vector<Rational> colsum(n);
  uint32_t x = gray(lo);
  for (int i = 0; i < n; ++i) {
    if (x >> i & 1u) {
      for (int j = 0; j < n; ++j) {
        colsum[j] += m.at(i, j);
      }
    }
  }

  std::vector<int> order(n);
  Best best;
  for (uint64_t t = lo; t < hi; ++t) {
    x = gray(t);
    const int k = std::popcount(x);
    if (k >= 1 && k < n) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return colsum[a] > colsum[b]; });
      uint32_t sel = 0;
      Rational sum;
      for (int r = 0; r < k; ++r) {
        sel |= 1u << order[r];
        sum += colsum[order[r]];
      }
      if (sel != x) {
        best.offer(sum / k, x, sel);
      } else {
        // X itself is the unique tie-broken top-k set. Swap the weakest
        // selected column for the strongest unselected one; with ties this
        // reproduces the best alternative top-k set exactly.
        Rational alt = sum - colsum[order[k - 1]] + colsum[order[k]];
        uint32_t y = (sel & ~(1u << order[k - 1])) | (1u << order[k]);
        best.offer(alt / k, x, y);
      }
    }
    if (t + 1 < hi) {
      const int bit = std::countr_zero(t + 1);
      const int sign = (x >> bit & 1u) ? -1 : 1;
      const int row = bit;
      for (int j = 0; j < n; ++j) {
        if (sign > 0) {
          colsum[j] += m.at(row, j);
        } else {
          colsum[j] -= m.at(row, j);
        }
      }
    }
  }
  return best;
}

MarginReport report_from(const Best& best) {
  MarginReport report;
  if (best.valid) {
    report.margin = best.value;
    report.witness = SubsetPair{best.X, best.Y};
  }
  return report;
}

void check_dim_cap(const DSMatrix& m, int dim_cap) {
  if (m.dim() > dim_cap) {
    fail("DimensionTooLarge", "n = " + std::to_string(m.dim()) + " exceeds the cap " +
                                  std::to_string(dim_cap));
  }
}

}  // namespace

MarginReport domesticity_margin_serial(const DSMatrix& m, int dim_cap) {
  check_dim_cap(m, dim_cap);
  return report_from(margin_scan(m, 0, uint64_t{1} << m.dim()));
}

MarginReport domesticity_margin(const DSMatrix& m, int threads, int dim_cap) {
  check_dim_cap(m, dim_cap);
  const uint64_t total = uint64_t{1} << m.dim();
  if (threads <= 1 || total < 1024) {
    return report_from(margin_scan(m, 0, total));
  }
  std::vector<Best> partial(threads);
#pragma omp parallel num_threads(threads)
  {
    const int id = omp_get_thread_num();
    const int nt = omp_get_num_threads();
    const uint64_t chunk = (total + nt - 1) / nt;
    const uint64_t lo = std::min<uint64_t>(chunk * id, total);
    const uint64_t hi = std::min<uint64_t>(lo + chunk, total);
    if (lo < hi) {
      partial[id] = margin_scan(m, lo, hi);
    }
  }
  Best best;
  for (const Best& b : partial) {
    best.merge(b);
  }
  return report_from(best);
}

MarginReport domesticity_margin_bruteforce(const DSMatrix& m, int dim_cap) {
  check_dim_cap(m, dim_cap);
  const int n = m.dim();
  const uint32_t total = 1u << n;
  Best best;
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
      best.offer(sum / k, x, y);
    }
  }
  return report_from(best);
}

std::optional<Rational> largest_admissible_eps(const MarginReport& report, int n) {
  if (report.margin >= Rational(1)) {
    return std::nullopt;
  }
  return std::min(Rational(1, 2L * n), Rational(1) - report.margin);
}

DomesticityCheck is_domestic(const DSMatrix& m, const Rational& eps, int threads) {
  const int n = m.dim();
  if (eps <= Rational(0) || eps > Rational(1, 2L * n)) {
    fail("EpsilonOutOfRange",
         "eps = " + eps.str() + " outside (0, 1/" + std::to_string(2 * n) + "]");
  }
  MarginReport report = domesticity_margin(m, threads);
  DomesticityCheck check;
  check.domestic = report.margin <= Rational(1) - eps;
  if (!check.domestic) {
    check.violation = report.witness;
  }
  return check;
}

ContractionDiagnostic contraction_diagnostic(const DSMatrix& m, const SimplexVector& p,
                                             const Rational& eps) {
  if (m.dim() != p.dim()) {
    fail("DimensionMismatch", "matrix and vector dimensions disagree");
  }
  if (!is_domestic(m, eps).domestic) {
    fail("NotDomestic", "matrix is not " + eps.str() + "-domestic");
  }
  SimplexVector q = apply(m, p);
  ContractionDiagnostic diag;
  diag.displacement = inf_distance(p.coords(), q.coords());
  diag.sorted_displacement = inf_distance(sort_desc(p).coords(), sort_desc(q).coords());
  return diag;
}

}  // namespace dstoch
