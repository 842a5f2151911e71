#include <doctest.h>

#include <functional>

#include "dstoch/error.hpp"
#include "dstoch/majorization.hpp"
#include "support/random_gen.hpp"

using namespace dstoch;

namespace {

Rational R(const char* text) { return Rational::parse(text); }

SimplexVector vec(const std::vector<const char*>& coords) {
  std::vector<Rational> parsed;
  for (const char* cell : coords) {
    parsed.push_back(R(cell));
  }
  return SimplexVector(std::move(parsed));
}

std::string error_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

}  // namespace

TEST_CASE("sort_desc examples") {
  CHECK(sort_desc(vec({"1/3", "1/3", "1/3"})) == vec({"1/3", "1/3", "1/3"}));
  CHECK(sort_desc(vec({"0", "1", "0"})) == vec({"1", "0", "0"}));
  CHECK(sort_desc(vec({"1/6", "1/2", "1/3"})) == vec({"1/2", "1/3", "1/6"}));
}

TEST_CASE("sort_desc is idempotent and permutation-invariant") {
  testing::Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    SimplexVector p = testing::random_simplex_vector(n, 20, rng);
    SimplexVector sorted = sort_desc(p);
    CHECK(sort_desc(sorted) == sorted);
    Permutation perm = testing::random_permutation(n, rng);
    CHECK(sort_desc(apply(permutation_matrix(perm), p)) == sorted);
  }
}

TEST_CASE("majorizes examples") {
  CHECK(majorizes(vec({"1", "0", "0"}), vec({"1/3", "1/3", "1/3"})));
  CHECK(majorizes(vec({"1/2", "1/2", "0"}), vec({"1/2", "1/2", "0"})));
  CHECK_FALSE(majorizes(vec({"1/2", "1/2", "0"}), vec({"2/3", "1/6", "1/6"})));
  CHECK(error_kind([] { majorizes(vec({"1"}), vec({"1/2", "1/2"})); }) == "DimensionMismatch");
}

TEST_CASE("majorization witness examples") {
  SimplexVector p = vec({"3/4", "1/4"});
  CHECK(majorization_witness(p, p).M == DSMatrix::identity(2));

  MajorizationWitness w = majorization_witness(p, vec({"5/8", "3/8"}));
  CHECK(w.M == ds_from_rows({{R("3/4"), R("1/4")}, {R("1/4"), R("3/4")}}));

  MajorizationWitness extreme = majorization_witness(vec({"1", "0"}), vec({"1/2", "1/2"}));
  CHECK(extreme.M == ds_from_rows({{R("1/2"), R("1/2")}, {R("1/2"), R("1/2")}}));

  CHECK(error_kind([&] {
          majorization_witness(vec({"1/2", "1/2", "0"}), vec({"2/3", "1/6", "1/6"}));
        }) == "NotMajorized");
}

TEST_CASE("soundness: M p is always majorized by p") {
  testing::Rng rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    DSMatrix m = testing::random_doubly_stochastic(n, 3, 12, rng);
    SimplexVector p = testing::random_simplex_vector(n, 20, rng);
    CHECK(majorizes(p, apply(m, p)));
  }
}

TEST_CASE("completeness: witness reproduces q exactly on random majorizing pairs") {
  testing::Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    SimplexVector p = testing::random_simplex_vector(n, 20, rng);
    SimplexVector q = apply(testing::random_doubly_stochastic(n, 3, 12, rng), p);
    MajorizationWitness w = majorization_witness(p, q);
    CHECK(apply(w.M, p) == q);
  }
}

TEST_CASE("sandwich bound examples") {
  SimplexVector p = vec({"1", "0"});
  SandwichReport degenerate = sandwich_bound_check(p, p, p);
  CHECK(degenerate.lhs == R("0"));
  CHECK(degenerate.rhs == R("0"));
  CHECK(degenerate.holds);

  SandwichReport two = sandwich_bound_check(p, vec({"3/4", "1/4"}), vec({"1/2", "1/2"}));
  CHECK(two.lhs == R("1/4"));
  CHECK(two.rhs == R("2"));
  CHECK(two.holds);

  SandwichReport three = sandwich_bound_check(vec({"1", "0", "0"}), vec({"1/2", "1/2", "0"}),
                                              vec({"1/3", "1/3", "1/3"}));
  CHECK(three.lhs == R("1/2"));
  CHECK(three.rhs == R("4"));
  CHECK(three.holds);

  CHECK(error_kind([&] {
          sandwich_bound_check(vec({"1/2", "1/2"}), vec({"1", "0"}), vec({"1", "0"}));
        }) == "ChainNotMajorized");
}

TEST_CASE("sandwich bound holds along random chains") {
  testing::Rng rng(37);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    SimplexVector p = testing::random_simplex_vector(n, 20, rng);
    SimplexVector q = apply(testing::random_doubly_stochastic(n, 3, 12, rng), p);
    SimplexVector r = apply(testing::random_doubly_stochastic(n, 3, 12, rng), q);
    CHECK(sandwich_bound_check(p, q, r).holds);
  }
}
