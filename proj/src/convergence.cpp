#include "dstoch/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "dstoch/domestic.hpp"
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

// Equivalence closure of the support relation of a single matrix.
Partition support_partition(const DSMatrix& m) {
  UnionFind uf(m.dim());
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      if (m.at(i, j).sign() > 0) {
        uf.unite(i, j);
      }
    }
  }
  return partition_from_uf(m.dim(), uf);
}

std::string indices_str(uint32_t mask) {
  std::string out = "{";
  for (int i : mask_to_indices(mask)) {
    if (out.size() > 1) {
      out += ",";
    }
    out += std::to_string(i + 1);
  }
  return out + "}";
}

void require_domestic(const GeneratorSet& gens, int threads) {
  for (const auto& [name, m] : gens) {
    MarginReport report = domesticity_margin(m, threads);
    if (report.margin >= Rational(1)) {
      std::string witness =
          report.witness ? " (witness X=" + indices_str(report.witness->X) +
                               ", Y=" + indices_str(report.witness->Y) + ")"
                         : "";
      fail("NotDomestic",
           "generator \"" + name + "\" has margin 1" + witness + "; no common eps exists");
    }
  }
}

void multiply_right(std::vector<double>& acc, const std::vector<double>& factor, int n,
                    std::vector<double>& scratch) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double sum = 0.0;
      for (int k = 0; k < n; ++k) {
        sum += acc[static_cast<size_t>(i) * n + k] * factor[static_cast<size_t>(k) * n + j];
      }
      scratch[static_cast<size_t>(i) * n + j] = sum;
    }
  }
  acc.swap(scratch);
}

Partition rounded_support_partition(const std::vector<double>& grid, int n, double threshold) {
  UnionFind uf(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (grid[static_cast<size_t>(i) * n + j] > threshold) {
        uf.unite(i, j);
      }
    }
  }
  return partition_from_uf(n, uf);
}

}  // namespace

ProductSchedule ProductSchedule::round_robin(GeneratorSet gens) {
  return ProductSchedule{std::move(gens), Rule::kRoundRobin, {}, 0};
}

ProductSchedule ProductSchedule::repeat_word(GeneratorSet gens, Word word) {
  if (word.empty()) {
    fail("InvalidWord", "repeat-word schedule needs a nonempty word");
  }
  for (const std::string& name : word) {
    if (!gens.contains(name)) {
      fail("UnknownGenerator", "word letter \"" + name + "\" missing from the generator set");
    }
  }
  return ProductSchedule{std::move(gens), Rule::kRepeatWord, std::move(word), 0};
}

ProductSchedule ProductSchedule::pseudo_random(GeneratorSet gens, uint64_t seed) {
  return ProductSchedule{std::move(gens), Rule::kPseudoRandom, {}, seed};
}

std::vector<std::string> ProductSchedule::recurring_names() const {
  if (rule == Rule::kRepeatWord) {
    std::set<std::string> letters(word.begin(), word.end());
    return {letters.begin(), letters.end()};
  }
  return generators.names();
}

Partition predict_limit_partition(const GeneratorSet& tail, int threads) {
  require_domestic(tail, threads);
  UnionFind uf(tail.n());
  for (const auto& [name, m] : tail) {
    for (int i = 0; i < m.dim(); ++i) {
      for (int j = 0; j < m.dim(); ++j) {
        if (m.at(i, j).sign() > 0) {
          uf.unite(i, j);
        }
      }
    }
  }
  return partition_from_uf(tail.n(), uf);
}

LimitReport iterate_product(const ProductSchedule& schedule, double tol, size_t max_iter) {
  if (tol <= 0.0) {
    fail("InvalidTolerance", "tol must be positive");
  }
  if (max_iter < 1) {
    fail("InvalidIterationBudget", "max_iter must be at least 1");
  }
  const GeneratorSet& gens = schedule.generators;
  if (gens.empty()) {
    fail("InvalidGeneratorSet", "schedule over an empty generator set");
  }
  if (schedule.rule == ProductSchedule::Rule::kRepeatWord) {
    if (schedule.word.empty()) {
      fail("InvalidWord", "repeat-word schedule needs a nonempty word");
    }
    for (const std::string& name : schedule.word) {
      gens.at(name);  // throws UnknownGenerator
    }
  }
  const int n = gens.n();
  std::vector<std::string> names = gens.names();

  std::vector<std::vector<double>> factors;
  factors.reserve(names.size());
  std::map<std::string, size_t> factor_index;
  for (const std::string& name : names) {
    factor_index[name] = factors.size();
    factors.push_back(to_doubles(gens.at(name)));
  }

  std::mt19937_64 rng(schedule.seed);
  auto next_factor = [&](size_t i) -> const std::vector<double>& {
    switch (schedule.rule) {
      case ProductSchedule::Rule::kRepeatWord:
        return factors[factor_index.at(schedule.word[i % schedule.word.size()])];
      case ProductSchedule::Rule::kPseudoRandom:
        return factors[rng() % factors.size()];
      case ProductSchedule::Rule::kRoundRobin:
      default:
        return factors[i % factors.size()];
    }
  };

  LimitReport report;
  report.n = n;
  report.value = next_factor(0);
  report.previous.assign(static_cast<size_t>(n) * n, 0.0);
  report.iterations = 1;

  std::vector<double> scratch(static_cast<size_t>(n) * n);
  int quiet_steps = 0;
  for (size_t i = 1; i < max_iter; ++i) {
    report.previous = report.value;
    multiply_right(report.value, next_factor(i), n, scratch);
    report.iterations = i + 1;
    report.residual = inf_distance(report.value, report.previous);
    report.residual_history.push_back(report.residual);
    quiet_steps = report.residual <= tol ? quiet_steps + 1 : 0;
    if (quiet_steps >= n) {
      report.converged = true;
      break;
    }
  }

  if (report.converged) {
    Partition candidate = rounded_support_partition(report.value, n, std::sqrt(tol));
    report.match_error = inf_distance(report.value, to_doubles(averaging(candidate)));
    report.matched_averaging = std::move(candidate);
  }
  return report;
}

CoreReport verify_convergence_core(const GeneratorSet& gens, double match_tol, double iter_tol,
                                   size_t max_iter, int threads) {
  require_domestic(gens, threads);
  const std::vector<std::string> names = gens.names();
  const size_t m = names.size();
  if (m > 12) {
    fail("SubsetBudgetExceeded", std::to_string(m) + " generators give 2^" + std::to_string(m) +
                                     " subsets; the cap is 2^12");
  }
  const uint32_t total = 1u << m;
  std::vector<std::optional<CoreSubsetResult>> rows(total);

#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (uint32_t mask = 1; mask < total; ++mask) {
    GeneratorSet subset;
    std::vector<std::string> subset_names;
    for (size_t t = 0; t < m; ++t) {
      if (mask >> t & 1u) {
        subset.add(names[t], gens.at(names[t]));
        subset_names.push_back(names[t]);
      }
    }
    Partition predicted = predict_limit_partition(subset, 1);
    LimitReport limit = iterate_product(ProductSchedule::round_robin(subset), iter_tol, max_iter);
    CoreSubsetResult row{std::move(subset_names), std::move(predicted), 0.0, limit.iterations,
                         limit.converged};
    row.distance = inf_distance(limit.value, to_doubles(averaging(row.predicted)));
    rows[mask] = std::move(row);
  }

  CoreReport report;
  report.tolerance = match_tol;
  report.all_within = true;
  for (uint32_t mask = 1; mask < total; ++mask) {
    CoreSubsetResult& row = *rows[mask];
    report.max_distance = std::max(report.max_distance, row.distance);
    report.all_within = report.all_within && row.converged && row.distance <= match_tol;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<Partition> averaging_core(const GeneratorSet& gens, int threads) {
  require_domestic(gens, threads);
  std::set<Partition> closed;
  for (const auto& [name, m] : gens) {
    closed.insert(support_partition(m));
  }
  // Pairwise-join fixed point; joins of larger subsets are iterated pairwise
  // joins, and the averaging of a partition has that partition as support.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Partition> snapshot(closed.begin(), closed.end());
    for (size_t a = 0; a < snapshot.size(); ++a) {
      for (size_t b = a + 1; b < snapshot.size(); ++b) {
        if (closed.insert(join(snapshot[a], snapshot[b])).second) {
          grew = true;
        }
      }
    }
  }
  return {closed.begin(), closed.end()};
}

std::vector<double> to_doubles(const DSMatrix& m) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(m.dim()) * m.dim());
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      out.push_back(m.at(i, j).to_double());
    }
  }
  return out;
}

double inf_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double best = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    best = std::max(best, std::abs(a[i] - b[i]));
  }
  return best;
}

}  // namespace dstoch
