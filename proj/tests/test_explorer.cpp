#include <doctest.h>

#include <functional>
#include <set>

#include "dstoch/convergence.hpp"
#include "dstoch/domestic.hpp"
#include "dstoch/error.hpp"
#include "dstoch/explorer.hpp"
#include "support/random_gen.hpp"

using namespace dstoch;

namespace {

Rational R(const char* text) { return Rational::parse(text); }

Partition blocks(int n, std::vector<std::vector<int>> one_based) {
  for (auto& block : one_based) {
    for (int& i : block) {
      --i;
    }
  }
  return Partition(n, std::move(one_based));
}

std::string error_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

GeneratorSet adjacent_averagings(int n) {
  GeneratorSet gens;
  for (int i = 1; i < n; ++i) {
    std::vector<std::vector<int>> bl = {{i, i + 1}};
    for (int k = 1; k <= n; ++k) {
      if (k != i && k != i + 1) {
        bl.push_back({k});
      }
    }
    gens.add("a" + std::to_string(i) + std::to_string(i + 1), averaging(blocks(n, bl)));
  }
  return gens;
}

std::vector<Rational> rationals(const std::vector<const char*>& texts) {
  std::vector<Rational> out;
  for (const char* t : texts) {
    out.push_back(R(t));
  }
  return out;
}

}  // namespace

TEST_CASE("generate examples") {
  GeneratorSet id_only;
  id_only.add("id", DSMatrix::identity(3));
  CHECK(generate(id_only, 5).elements.size() == 1);

  GeneratorSet proj;
  proj.add("a", averaging(blocks(2, {{1, 2}})));
  CHECK(generate(proj, 5).elements.size() == 1);

  GeneratorSet two;
  two.add("a12", averaging(blocks(3, {{1, 2}, {3}})));
  two.add("a13", averaging(blocks(3, {{1, 3}, {2}})));
  SemigroupSnapshot snapshot = generate(two, 2);
  CHECK(snapshot.elements.size() == 4);
  CHECK_FALSE(snapshot.truncated);
  CHECK(snapshot.word_of(0) == Word{"a12"});
  CHECK(snapshot.word_of(1) == Word{"a13"});
  CHECK(snapshot.word_of(2) == Word{"a12", "a13"});
  CHECK(snapshot.word_of(3) == Word{"a13", "a12"});
}

TEST_CASE("budget truncation flags the snapshot") {
  SemigroupSnapshot snapshot = generate(adjacent_averagings(4), 6, 10);
  CHECK(snapshot.truncated);
  CHECK(snapshot.elements.size() == 10);
}

TEST_CASE("parallel generate matches the serial reference") {
  GeneratorSet gens = adjacent_averagings(4);
  gens.add("s", permutation_matrix(Permutation({1, 2, 3, 0})));
  for (size_t budget : {size_t{5000}, size_t{137}}) {  // full and truncated
    SemigroupSnapshot parallel = generate(gens, 6, budget, 2);
    SemigroupSnapshot reference = generate_reference(gens, 6, budget);
    REQUIRE(parallel.elements.size() == reference.elements.size());
    CHECK(parallel.truncated == reference.truncated);
    for (size_t i = 0; i < parallel.elements.size(); ++i) {
      CHECK(parallel.elements[i].key == reference.elements[i].key);
      CHECK(parallel.word_of(i) == reference.word_of(i));
    }
  }
}

TEST_CASE("witness words reproduce their elements") {
  GeneratorSet gens = adjacent_averagings(3);
  gens.add("s", permutation_matrix(Permutation::transposition(3, 0, 1)));
  SemigroupSnapshot snapshot = generate(gens, 4);
  for (size_t i = 0; i < snapshot.elements.size(); ++i) {
    Word word = snapshot.word_of(i);
    CHECK(static_cast<int>(word.size()) == snapshot.elements[i].word_length);
    CHECK(word_product(gens, word) == snapshot.elements[i].matrix);
    if (i > 0) {
      // discovery order is (length, lex) order, which is what makes each
      // witness the lexicographically least among the shortest
      Word prev = snapshot.word_of(i - 1);
      CHECK((prev.size() < word.size() || (prev.size() == word.size() && prev < word)));
    }
  }
  // dedup soundness: any two elements differ in at least one exact entry
  std::set<DSMatrix> values;
  for (const SnapshotElement& e : snapshot.elements) {
    values.insert(e.matrix);
  }
  CHECK(values.size() == snapshot.elements.size());
}

TEST_CASE("entry_set examples") {
  GeneratorSet id_only;
  id_only.add("id", DSMatrix::identity(2));
  CHECK(entry_set(generate(id_only, 3)) == rationals({"0", "1"}));

  GeneratorSet half;
  half.add("a", averaging(blocks(2, {{1, 2}})));
  CHECK(entry_set(generate(half, 3)) == rationals({"1/2"}));

  GeneratorSet two;
  two.add("a12", averaging(blocks(3, {{1, 2}, {3}})));
  two.add("a13", averaging(blocks(3, {{1, 3}, {2}})));
  CHECK(entry_set(generate(two, 2)) == rationals({"0", "1/4", "1/2", "1"}));
}

TEST_CASE("gap_report follows its definition") {
  GapReport four = gap_report(rationals({"0", "1/4", "1/2", "1"}), R("1/5"));
  REQUIRE(four.gaps.size() == 3);  // (0,1/4) qualifies: length 1/4 >= 1/5
  CHECK(four.gaps[0] == std::pair{R("0"), R("1/4")});
  CHECK(four.gaps[1] == std::pair{R("1/4"), R("1/2")});
  CHECK(four.gaps[2] == std::pair{R("1/2"), R("1")});

  GapReport ends = gap_report(rationals({"0", "1"}), R("1/2"));
  REQUIRE(ends.gaps.size() == 1);
  CHECK(ends.gaps[0] == std::pair{R("0"), R("1")});

  GapReport single = gap_report(rationals({"1/2"}), R("1/4"));
  REQUIRE(single.gaps.size() == 2);  // 0 and 1 act as virtual endpoints
  CHECK(single.gaps[0] == std::pair{R("0"), R("1/2")});
  CHECK(single.gaps[1] == std::pair{R("1/2"), R("1")});

  CHECK(error_kind([] { gap_report({}, Rational(0)); }) == "OutOfRange");
  CHECK(error_kind([] { gap_report({Rational(2)}, Rational(0)); }) == "OutOfRange");
}

TEST_CASE("entry gap law examples") {
  GeneratorSet half;
  half.add("a", averaging(blocks(2, {{1, 2}})));
  GapLawReport basic = entry_gap_law_check(half, 4);
  CHECK(basic.x == R("1/2"));
  CHECK(basic.holds);

  GeneratorSet mixed;
  mixed.add("a", averaging(blocks(2, {{1, 2}})));
  mixed.add("s", permutation_matrix(Permutation::transposition(2, 0, 1)));
  GapLawReport with_swap = entry_gap_law_check(mixed, 6);
  CHECK(with_swap.x == R("1/2"));
  CHECK(with_swap.holds);

  GapLawReport chain = entry_gap_law_check(adjacent_averagings(3), 4);
  CHECK(chain.x == R("1/2"));
  CHECK(chain.holds);

  GeneratorSet perms;
  perms.add("s", permutation_matrix(Permutation::transposition(3, 0, 1)));
  CHECK(error_kind([&] { entry_gap_law_check(perms, 3); }) == "NoSubUnitEntry");
}

TEST_CASE("entry gap law on random generator sets") {
  testing::Rng rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    GeneratorSet gens;
    gens.add("a", testing::random_doubly_stochastic(n, 2, 12, rng));
    gens.add("b", testing::random_doubly_stochastic(n, 3, 12, rng));
    if (gens.at("a").is_permutation() && gens.at("b").is_permutation()) {
      continue;
    }
    CHECK(entry_gap_law_check(gens, 5).holds);
  }
}

TEST_CASE("normal form examples") {
  GeneratorSet gens;
  gens.add("a", averaging(blocks(2, {{1, 2}})));
  gens.add("s", permutation_matrix(Permutation::transposition(2, 0, 1)));

  NormalForm single = normal_form(gens, {"a"});
  CHECK(single.P.is_identity());
  REQUIRE(single.domestic_word.size() == 1);
  CHECK(single.domestic_word[0] == gens.at("a"));

  NormalForm cancel = normal_form(gens, {"s", "s"});
  CHECK(cancel.P.is_identity());
  CHECK(cancel.domestic_word.empty());

  NormalForm mixedw = normal_form(gens, {"s", "a"});
  CHECK(mixedw.P == Permutation::transposition(2, 0, 1));
  REQUIRE(mixedw.domestic_word.size() == 1);
  CHECK(mixedw.domestic_word[0] == gens.at("a"));  // swap-conjugation fixes it
}

TEST_CASE("normal form preserves products and stays domestic") {
  testing::Rng rng(107);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    GeneratorSet gens;
    gens.add("p", permutation_matrix(testing::random_permutation(n, rng)));
    gens.add("m", multiply(permutation_matrix(testing::random_permutation(n, rng)),
                           testing::random_domestic(n, rng)));
    gens.add("d", testing::random_domestic(n, rng));
    Word word;
    std::vector<std::string> names = gens.names();
    int len = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < len; ++i) {
      word.push_back(names[rng() % names.size()]);
    }
    NormalForm nf = normal_form(gens, word);
    DSMatrix rebuilt = permutation_matrix(nf.P);
    for (const DSMatrix& letter : nf.domestic_word) {
      CHECK(domesticity_margin(letter).margin < R("1"));
      rebuilt = multiply(rebuilt, letter);
    }
    CHECK(rebuilt == word_product(gens, word));
  }
}

TEST_CASE("complete_to_ds examples") {
  CHECK(complete_to_ds(SimplexVector({R("1"), R("0")})) == DSMatrix::identity(2));
  CHECK(complete_to_ds(SimplexVector({R("1/2"), R("1/2")})) ==
        averaging(blocks(2, {{1, 2}})));
  DSMatrix a = complete_to_ds(SimplexVector({R("1/2"), R("1/3"), R("1/6")}));
  CHECK(a == ds_from_rows({{R("1/2"), R("1/4"), R("1/4")},
                           {R("1/3"), R("1/3"), R("1/3")},
                           {R("1/6"), R("5/12"), R("5/12")}}));
}

TEST_CASE("bilinear reduction examples and contract") {
  GeneratorSet swap2;
  swap2.add("s", permutation_matrix(Permutation::transposition(2, 0, 1)));
  SimplexVector p({R("3/4"), R("1/4")});
  SimplexVector e1({R("1"), R("0")});
  CHECK(bilinear_value(swap2, p, e1, {"s"}) == R("1/4"));

  BilinearReduction red = bilinear_reduction(swap2, p, e1);
  DSMatrix sandwich = multiply(red.augmented.at(red.q_name),
                               multiply(word_product(swap2, {"s"}), red.augmented.at(red.p_name)));
  CHECK(sandwich.at(0, 0) == R("1/4"));

  // uniform q^T M p is constant 1/n
  testing::Rng rng(109);
  int n = 4;
  std::vector<Rational> u(n, Rational(1, n));
  SimplexVector uniform(u);
  GeneratorSet gens;
  gens.add("m", testing::random_doubly_stochastic(n, 3, 12, rng));
  CHECK(bilinear_value(gens, uniform, uniform, {"m"}) == Rational(1, n));
}

TEST_CASE("bilinear contract on random words") {
  testing::Rng rng(113);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    GeneratorSet gens;
    gens.add("a", testing::random_doubly_stochastic(n, 3, 12, rng));
    gens.add("b", testing::random_doubly_stochastic(n, 3, 12, rng));
    SimplexVector p = testing::random_simplex_vector(n, 12, rng);
    SimplexVector q = testing::random_simplex_vector(n, 12, rng);
    Word word;
    int len = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < len; ++i) {
      word.push_back(rng() % 2 == 0 ? "a" : "b");
    }
    BilinearReduction red = bilinear_reduction(gens, p, q);
    DSMatrix sandwich =
        multiply(red.augmented.at(red.q_name),
                 multiply(word_product(gens, word), red.augmented.at(red.p_name)));
    CHECK(sandwich.at(0, 0) == bilinear_value(gens, p, q, word));
  }
}

TEST_CASE("entry_embed examples") {
  CHECK(entry_embed(R("1"), 2) == DSMatrix::identity(2));
  CHECK(entry_embed(R("0"), 2) ==
        permutation_matrix(Permutation::transposition(2, 0, 1)));
  CHECK(entry_embed(R("1/2"), 3) == ds_from_rows({{R("1/2"), R("1/4"), R("1/4")},
                                                  {R("1/4"), R("3/8"), R("3/8")},
                                                  {R("1/4"), R("3/8"), R("3/8")}}));
  CHECK(error_kind([] { entry_embed(Rational(2), 3); }) == "OutOfRange");
  CHECK(error_kind([] { entry_embed(Rational(1, 2), 1); }) == "OutOfRange");
}

TEST_CASE("entry_embed is conjugation by the 1|rest averaging") {
  testing::Rng rng(127);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    DSMatrix m = testing::random_doubly_stochastic(n, 3, 12, rng);
    std::vector<std::vector<int>> bl = {{1}};
    std::vector<int> rest;
    for (int i = 2; i <= n; ++i) {
      rest.push_back(i);
    }
    if (!rest.empty()) {
      bl.push_back(rest);
    }
    DSMatrix aprime = averaging(blocks(n, bl));
    CHECK(entry_embed(m.at(0, 0), n) == multiply(aprime, multiply(m, aprime)));
  }
}

TEST_CASE("closure containment examples") {
  GeneratorSet single;
  single.add("a", averaging(blocks(2, {{1, 2}})));
  ContainmentReport self = closure_containment_check(single, {{"a"}}, 7, 2);
  REQUIRE(self.probes.size() == 1);
  CHECK(self.probes[0].distance == 0.0);

  ContainmentReport chain =
      closure_containment_check(adjacent_averagings(3), {{"a12", "a23"}}, 20, 3, 100000, 2);
  REQUIRE(chain.probes.size() == 1);
  CHECK(chain.probes[0].distance <= 1e-8);  // the proxy contracts onto A_{1,2,3}

  GeneratorSet disjoint;
  disjoint.add("a12", averaging(blocks(4, {{1, 2}, {3}, {4}})));
  disjoint.add("a34", averaging(blocks(4, {{1}, {2}, {3, 4}})));
  ContainmentReport commuting =
      closure_containment_check(disjoint, {{"a12", "a34"}}, 1, 2);
  REQUIRE(commuting.probes.size() == 1);
  CHECK(commuting.probes[0].distance == 0.0);  // the product is the join averaging
}

TEST_CASE("the three-averaging product realizes entries 1/(2k) and 1/(2(n-k))") {
  // B = A_{1,k+1} A_{1..k} A_{k+1..n} for n = 5, k = 2; its first row carries
  // 1/(2k) on {1..k} and 1/(2(n-k)) on {k+1..n}.
  const int n = 5;
  const int k = 2;
  DSMatrix b = multiply(averaging(blocks(n, {{1, 3}, {2}, {4}, {5}})),
                        multiply(averaging(blocks(n, {{1, 2}, {3}, {4}, {5}})),
                                 averaging(blocks(n, {{1}, {2}, {3, 4, 5}}))));
  CHECK(b.at(0, 0) == Rational(1, 2 * k));
  CHECK(b.at(0, 1) == Rational(1, 2 * k));
  CHECK(b.at(0, 2) == Rational(1, 2 * (n - k)));
  CHECK(b.at(0, 4) == Rational(1, 2 * (n - k)));
  // (1/k + 1/(n-k))/2 = 5/12 is the sum b[1,1] + b[1,3], not an entry of B
  std::set<Rational> entries;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      entries.insert(b.at(i, j));
    }
  }
  CHECK(entries.count(R("5/12")) == 0);
  CHECK(b.at(0, 0) + b.at(0, 2) == R("5/12"));
}
