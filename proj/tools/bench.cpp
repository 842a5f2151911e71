// Compares the serial reference implementations against the OpenMP kernels
// (and the brute-force margin oracle where it is feasible).

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include <omp.h>

#include "dstoch/domestic.hpp"
#include "dstoch/explorer.hpp"
#include "support/random_gen.hpp"

using namespace dstoch;

namespace {

double seconds(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Partition blocks(int n, std::vector<std::vector<int>> one_based) {
  for (auto& block : one_based) {
    for (int& i : block) {
      --i;
    }
  }
  return Partition(n, std::move(one_based));
}

}  // namespace

int main(int argc, char** argv) {
  const int threads = argc > 1 ? std::stoi(argv[1]) : omp_get_max_threads();
  testing::Rng rng(4242);

  std::printf("domesticity margin (threads = %d)\n", threads);
  std::printf("%4s %12s %12s %12s\n", "n", "brute", "serial", "parallel");
  for (int n = 6; n <= 14; n += 2) {
    DSMatrix m = testing::random_doubly_stochastic(n, 6, 12, rng);
    double brute = n <= 8 ? seconds([&] { domesticity_margin_bruteforce(m); }) : -1.0;
    MarginReport serial_report, parallel_report;
    double serial = seconds([&] { serial_report = domesticity_margin_serial(m); });
    double parallel = seconds([&] { parallel_report = domesticity_margin(m, threads); });
    if (serial_report.margin != parallel_report.margin) {
      std::printf("MISMATCH at n = %d\n", n);
      return 1;
    }
    if (brute >= 0.0) {
      std::printf("%4d %12.6f %12.6f %12.6f\n", n, brute, serial, parallel);
    } else {
      std::printf("%4d %12s %12.6f %12.6f\n", n, "-", serial, parallel);
    }
  }

  std::printf("\nsemigroup enumeration (threads = %d)\n", threads);
  std::printf("%6s %10s %12s %12s\n", "depth", "elements", "reference", "parallel");
  GeneratorSet gens;
  gens.add("a12", averaging(blocks(4, {{1, 2}, {3}, {4}})));
  gens.add("a23", averaging(blocks(4, {{1}, {2, 3}, {4}})));
  gens.add("a34", averaging(blocks(4, {{1}, {2}, {3, 4}})));
  gens.add("s", permutation_matrix(Permutation({1, 2, 3, 0})));
  for (int depth = 6; depth <= 10; depth += 2) {
    SemigroupSnapshot ref, par;
    double reference = seconds([&] { ref = generate_reference(gens, depth, 2000000); });
    double parallel = seconds([&] { par = generate(gens, depth, 2000000, threads); });
    if (ref.elements.size() != par.elements.size()) {
      std::printf("MISMATCH at depth = %d\n", depth);
      return 1;
    }
    std::printf("%6d %10zu %12.6f %12.6f\n", depth, ref.elements.size(), reference, parallel);
  }
  return 0;
}
