#include "dstoch/explorer.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "dstoch/convergence.hpp"
#include "dstoch/error.hpp"

namespace dstoch {

namespace {

struct Candidate {
  DSMatrix matrix;
  std::string key;
};

std::vector<const DSMatrix*> generator_pointers(const GeneratorSet& gens) {
  std::vector<const DSMatrix*> out;
  out.reserve(gens.size());
  for (const auto& [name, m] : gens) {
    out.push_back(&m);
  }
  return out;
}

// Seeds the snapshot with the generators themselves (words of length 1),
// deduplicated in name order. Returns false if the budget is already full.
bool seed_roots(SemigroupSnapshot& snapshot, size_t budget,
                std::unordered_map<std::string, size_t>& seen) {
  int gen_index = 0;
  for (const auto& [name, m] : snapshot.generators) {
    std::string key = canonical_key(m);
    if (!seen.count(key)) {
      if (snapshot.elements.size() >= budget) {
        snapshot.truncated = true;
        return false;
      }
      seen.emplace(key, snapshot.elements.size());
      snapshot.elements.push_back(SnapshotElement{m, std::move(key), -1, gen_index, 1});
    }
    ++gen_index;
  }
  return true;
}

}  // namespace

Word SemigroupSnapshot::word_of(size_t index) const {
  std::vector<std::string> names = generators.names();
  Word word;
  int cursor = static_cast<int>(index);
  while (cursor >= 0) {
    const SnapshotElement& e = elements[cursor];
    word.push_back(names[e.gen_index]);
    cursor = e.parent;
  }
  std::reverse(word.begin(), word.end());
  return word;
}

SemigroupSnapshot generate(const GeneratorSet& gens, int depth, size_t budget, int threads) {
  if (depth < 1) {
    fail("InvalidDepth", "depth must be at least 1");
  }
  if (gens.empty()) {
    fail("InvalidGeneratorSet", "cannot enumerate an empty generator set");
  }
  SemigroupSnapshot snapshot;
  snapshot.generators = gens;
  snapshot.depth = depth;

  std::unordered_map<std::string, size_t> seen;
  if (!seed_roots(snapshot, budget, seen)) {
    return snapshot;
  }

  const std::vector<const DSMatrix*> gptr = generator_pointers(gens);
  const size_t gcount = gptr.size();
  constexpr size_t kBlock = 8192;  // bounds candidate memory per merge round

  size_t level_begin = 0;
  for (int length = 1; length < depth && !snapshot.truncated; ++length) {
    const size_t level_end = snapshot.elements.size();
    if (level_begin == level_end) {
      break;  // previous level added nothing new
    }
    const size_t candidates = (level_end - level_begin) * gcount;
    for (size_t block = 0; block < candidates && !snapshot.truncated; block += kBlock) {
      const size_t hi = std::min(candidates, block + kBlock);
      std::vector<std::optional<Candidate>> batch(hi - block);
      // Candidate c corresponds to frontier element level_begin + c / gcount
      // multiplied by generator c % gcount; merging in c order below keeps the
      // result independent of the schedule.
#pragma omp parallel for schedule(static) num_threads(threads)
      for (size_t c = block; c < hi; ++c) {
        const size_t parent = level_begin + c / gcount;
        DSMatrix product = multiply(snapshot.elements[parent].matrix, *gptr[c % gcount]);
        std::string key = canonical_key(product);
        batch[c - block] = Candidate{std::move(product), std::move(key)};
      }
      for (size_t c = block; c < hi; ++c) {
        Candidate& cand = *batch[c - block];
        if (seen.count(cand.key)) {
          continue;
        }
        if (snapshot.elements.size() >= budget) {
          snapshot.truncated = true;
          break;
        }
        seen.emplace(cand.key, snapshot.elements.size());
        snapshot.elements.push_back(SnapshotElement{std::move(cand.matrix), std::move(cand.key),
                                                    static_cast<int>(level_begin + c / gcount),
                                                    static_cast<int>(c % gcount), length + 1});
      }
    }
    level_begin = level_end;
  }
  return snapshot;
}

SemigroupSnapshot generate_reference(const GeneratorSet& gens, int depth, size_t budget) {
  if (depth < 1) {
    fail("InvalidDepth", "depth must be at least 1");
  }
  if (gens.empty()) {
    fail("InvalidGeneratorSet", "cannot enumerate an empty generator set");
  }
  SemigroupSnapshot snapshot;
  snapshot.generators = gens;
  snapshot.depth = depth;

  std::unordered_map<std::string, size_t> seen;
  if (!seed_roots(snapshot, budget, seen)) {
    return snapshot;
  }

  const std::vector<const DSMatrix*> gptr = generator_pointers(gens);
  size_t level_begin = 0;
  for (int length = 1; length < depth && !snapshot.truncated; ++length) {
    const size_t level_end = snapshot.elements.size();
    for (size_t parent = level_begin; parent < level_end && !snapshot.truncated; ++parent) {
      for (size_t g = 0; g < gptr.size(); ++g) {
        DSMatrix product = multiply(snapshot.elements[parent].matrix, *gptr[g]);
        std::string key = canonical_key(product);
        if (seen.count(key)) {
          continue;
        }
        if (snapshot.elements.size() >= budget) {
          snapshot.truncated = true;
          break;
        }
        seen.emplace(key, snapshot.elements.size());
        snapshot.elements.push_back(SnapshotElement{std::move(product), std::move(key),
                                                    static_cast<int>(parent),
                                                    static_cast<int>(g), length + 1});
      }
    }
    level_begin = level_end;
  }
  return snapshot;
}

std::vector<Rational> entry_set(const SemigroupSnapshot& snapshot) {
  std::set<Rational> values;
  for (const SnapshotElement& e : snapshot.elements) {
    for (int i = 0; i < e.matrix.dim(); ++i) {
      for (int j = 0; j < e.matrix.dim(); ++j) {
        values.insert(e.matrix.at(i, j));
      }
    }
  }
  return {values.begin(), values.end()};
}

GapReport gap_report(const std::vector<Rational>& entries, const Rational& min_gap) {
  if (entries.empty()) {
    fail("OutOfRange", "entry list is empty");
  }
  std::set<Rational> points(entries.begin(), entries.end());
  if (*points.begin() < Rational(0) || *points.rbegin() > Rational(1)) {
    fail("OutOfRange", "entries must lie in [0,1]");
  }
  GapReport report;
  report.entries.assign(points.begin(), points.end());
  points.insert(Rational(0));  // virtual sentinels when absent
  points.insert(Rational(1));
  auto it = points.begin();
  Rational prev = *it;
  for (++it; it != points.end(); ++it) {
    if (*it - prev >= min_gap && *it > prev) {
      report.gaps.emplace_back(prev, *it);
    }
    prev = *it;
  }
  return report;
}

GapLawReport entry_gap_law_check(const GeneratorSet& gens, int depth, size_t budget,
                                 int threads) {
  bool have_x = false;
  Rational x;
  for (const auto& [name, m] : gens) {
    for (int i = 0; i < m.dim(); ++i) {
      for (int j = 0; j < m.dim(); ++j) {
        const Rational& e = m.at(i, j);
        if (e < Rational(1) && (!have_x || e > x)) {
          x = e;
          have_x = true;
        }
      }
    }
  }
  bool all_permutations = true;
  for (const auto& [name, m] : gens) {
    all_permutations = all_permutations && m.is_permutation();
  }
  if (all_permutations || !have_x) {
    fail("NoSubUnitEntry", "all generators are permutation matrices; x is undefined");
  }

  SemigroupSnapshot snapshot = generate(gens, depth, budget, threads);
  GapLawReport report;
  report.x = x;
  report.holds = true;
  report.truncated = snapshot.truncated;
  for (size_t idx = 0; idx < snapshot.elements.size() && report.holds; ++idx) {
    const DSMatrix& m = snapshot.elements[idx].matrix;
    for (int i = 0; i < m.dim() && report.holds; ++i) {
      for (int j = 0; j < m.dim(); ++j) {
        const Rational& e = m.at(i, j);
        if (!e.is_one() && e > x) {
          report.holds = false;
          report.counterexample = {snapshot.word_of(idx), e};
          break;
        }
      }
    }
  }
  return report;
}

NormalForm normal_form(const GeneratorSet& gens, const Word& word) {
  if (word.empty()) {
    fail("InvalidWord", "empty word");
  }
  const size_t k = word.size();
  std::vector<Permutation> perms;
  std::vector<DSMatrix> domestic;
  perms.reserve(k);
  domestic.reserve(k);
  for (const std::string& name : word) {
    PermutationFactorization f = factor_permutation(gens.at(name), /*with_eps=*/false);
    perms.push_back(std::move(f.P));
    domestic.push_back(std::move(f.Mprime));
  }

  Permutation total = perms.front();
  for (size_t i = 1; i < k; ++i) {
    total = compose(total, perms[i]);
  }

  // suffix[i] = P_{i+1} ... P_k conjugates the i-th domestic part to the right
  NormalForm out{std::move(total), {}};
  Permutation suffix = Permutation::identity(gens.n());
  std::vector<DSMatrix> conjugated(k, DSMatrix::identity(gens.n()));
  for (size_t i = k; i-- > 0;) {
    conjugated[i] = conjugate(suffix, domestic[i]);
    suffix = compose(perms[i], suffix);
  }
  const DSMatrix id = DSMatrix::identity(gens.n());
  for (size_t i = 0; i < k; ++i) {
    if (!(conjugated[i] == id)) {
      out.domestic_word.push_back(std::move(conjugated[i]));
    }
  }
  return out;
}

DSMatrix complete_to_ds(const SimplexVector& p) {
  const int n = p.dim();
  if (n == 1) {
    return DSMatrix::identity(1);  // the only simplex point is (1)
  }
  std::vector<Rational> flat(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    flat[static_cast<size_t>(i) * n] = p.at(i);
    Rational rest = (Rational(1) - p.at(i)) / (n - 1);
    for (int j = 1; j < n; ++j) {
      flat[static_cast<size_t>(i) * n + j] = rest;
    }
  }
  return DSMatrix(n, std::move(flat), unchecked);
}

namespace {

std::string fresh_name(const GeneratorSet& gens, const std::string& base) {
  if (!gens.contains(base)) {
    return base;
  }
  for (int suffix = 2;; ++suffix) {
    std::string name = base + "_" + std::to_string(suffix);
    if (!gens.contains(name)) {
      return name;
    }
  }
}

}  // namespace

BilinearReduction bilinear_reduction(const GeneratorSet& gens, const SimplexVector& p,
                                     const SimplexVector& q) {
  if (p.dim() != gens.n() || q.dim() != gens.n()) {
    fail("DimensionMismatch", "vectors and generators must share one dimension");
  }
  BilinearReduction out;
  out.augmented = gens;
  out.p_name = fresh_name(out.augmented, "p_completion");
  out.augmented.add(out.p_name, complete_to_ds(p));
  out.q_name = fresh_name(out.augmented, "qT_completion");
  out.augmented.add(out.q_name, complete_to_ds(q).transpose());
  return out;
}

Rational bilinear_value(const GeneratorSet& gens, const SimplexVector& p, const SimplexVector& q,
                        const Word& word) {
  if (p.dim() != gens.n() || q.dim() != gens.n()) {
    fail("DimensionMismatch", "vectors and generators must share one dimension");
  }
  DSMatrix w = word_product(gens, word);
  Rational value;
  for (int i = 0; i < w.dim(); ++i) {
    if (q.at(i).is_zero()) {
      continue;
    }
    Rational row;
    for (int j = 0; j < w.dim(); ++j) {
      if (!w.at(i, j).is_zero()) {
        row += w.at(i, j) * p.at(j);
      }
    }
    value += q.at(i) * row;
  }
  return value;
}

DSMatrix entry_embed(const Rational& a, int n) {
  if (a < Rational(0) || a > Rational(1)) {
    fail("OutOfRange", "a = " + a.str() + " outside [0,1]");
  }
  if (n < 2) {
    fail("OutOfRange", "n must be at least 2");
  }
  std::vector<Rational> flat(static_cast<size_t>(n) * n);
  Rational edge = (Rational(1) - a) / (n - 1);
  Rational interior = (Rational(1) - edge) / (n - 1);
  flat[0] = a;
  for (int i = 1; i < n; ++i) {
    flat[i] = edge;
    flat[static_cast<size_t>(i) * n] = edge;
    for (int j = 1; j < n; ++j) {
      flat[static_cast<size_t>(i) * n + j] = interior;
    }
  }
  return DSMatrix(n, std::move(flat), unchecked);
}

ContainmentReport closure_containment_check(const GeneratorSet& gens,
                                            const std::vector<Word>& probe_words, int power,
                                            int depth, size_t budget, int threads) {
  if (probe_words.empty()) {
    fail("InvalidWord", "need at least one probe word");
  }
  if (power < 1) {
    fail("OutOfRange", "power must be at least 1");
  }
  GeneratorSet augmented = gens;
  for (const Partition& part : averaging_core(gens, threads)) {  // throws NotDomestic
    augmented.add(fresh_name(augmented, "avg"), averaging(part));
  }
  SemigroupSnapshot snapshot = generate(augmented, depth, budget, threads);
  if (snapshot.elements.empty()) {
    fail("BudgetExceeded", "element budget too small to hold even the generators");
  }

  const int n = gens.n();
  std::vector<std::vector<double>> grids;
  grids.reserve(snapshot.elements.size());
  for (const SnapshotElement& e : snapshot.elements) {
    grids.push_back(to_doubles(e.matrix));
  }

  ContainmentReport report;
  report.enumerated = snapshot.elements.size();
  report.truncated = snapshot.truncated;
  for (const Word& word : probe_words) {
    std::vector<double> base = to_doubles(word_product(gens, word));
    std::vector<double> acc = base;
    std::vector<double> scratch(acc.size());
    for (int t = 1; t < power; ++t) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          double sum = 0.0;
          for (int l = 0; l < n; ++l) {
            sum += acc[static_cast<size_t>(i) * n + l] * base[static_cast<size_t>(l) * n + j];
          }
          scratch[static_cast<size_t>(i) * n + j] = sum;
        }
      }
      acc.swap(scratch);
    }
    size_t best_index = 0;
    double best = inf_distance(acc, grids[0]);
    for (size_t idx = 1; idx < grids.size(); ++idx) {
      double d = inf_distance(acc, grids[idx]);
      if (d < best) {
        best = d;
        best_index = idx;
      }
    }
    report.probes.push_back(ContainmentProbe{word, power, best, snapshot.word_of(best_index)});
  }
  return report;
}

}  // namespace dstoch
