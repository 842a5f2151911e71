#include "dstoch/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dstoch/convergence.hpp"
#include "dstoch/domestic.hpp"
#include "dstoch/error.hpp"
#include "dstoch/explorer.hpp"
#include "dstoch/factorization.hpp"
#include "dstoch/json_io.hpp"
#include "dstoch/majorization.hpp"

namespace dstoch {

namespace {

int exit_code_for(const std::string& kind) {
  if (kind == "NotDomestic" || kind == "NotMajorized" || kind == "ChainNotMajorized" ||
      kind == "NonConvergent") {
    return kExitNegative;
  }
  if (kind == "BudgetExceeded" || kind == "SubsetBudgetExceeded") {
    return kExitBudget;
  }
  return kExitInputError;
}

size_t default_budget() {
  if (const char* env = std::getenv("DSTOCH_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) {
      return static_cast<size_t>(v);
    }
  }
  return kDefaultElementBudget;
}

Word split_word(const std::string& text) {
  Word word;
  std::stringstream ss(text);
  std::string letter;
  while (std::getline(ss, letter, ',')) {
    if (!letter.empty()) {
      word.push_back(letter);
    }
  }
  if (word.empty()) {
    fail("InvalidWord", "empty word \"" + text + "\"");
  }
  return word;
}

json word_to_json(const Word& word) {
  json out = json::array();
  for (const std::string& name : word) {
    out.push_back(name);
  }
  return out;
}

json grid_to_json(const std::vector<double>& grid, int n) {
  json rows = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int j = 0; j < n; ++j) {
      row.push_back(grid[static_cast<size_t>(i) * n + j]);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

struct Options {
  std::string input;
  std::string input_p;
  std::string input_q;
  std::string eps;
  std::string min_gap = "1/10";
  std::string schedule = "round-robin";
  std::vector<std::string> words;
  double tol = 1e-10;
  double match_tol = 1e-8;
  size_t max_iter = 100000;
  uint64_t seed = 0;
  int depth = 4;
  int power = 20;
  int threads = 1;
  int margin_cap = kMarginDimCap;
  size_t budget = 0;  // resolved against the env default in run()
  bool with_witness = false;
  bool no_eps = false;
  bool no_matrices = false;
  bool tol_given = false;
};

int cmd_check_domestic(const Options& opt, std::ostream& out) {
  DSMatrix m = matrix_from_json(load_json_file(opt.input));
  MarginReport report = domesticity_margin(m, opt.threads, opt.margin_cap);
  std::optional<Rational> best_eps = largest_admissible_eps(report, m.dim());
  json result{{"margin", rational_to_json(report.margin)},
              {"witness", report.witness ? subset_pair_to_json(*report.witness) : json(nullptr)},
              {"domestic_for_eps", best_eps ? rational_to_json(*best_eps) : json(nullptr)}};
  int code = kExitOk;
  if (!opt.eps.empty()) {
    Rational eps = Rational::parse(opt.eps);
    DomesticityCheck check = is_domestic(m, eps, opt.threads);
    result["eps"] = rational_to_json(eps);
    result["domestic"] = check.domestic;
    if (check.violation) {
      result["violation"] = subset_pair_to_json(*check.violation);
    }
    code = check.domestic ? kExitOk : kExitNegative;
  }
  out << result.dump(2) << "\n";
  return code;
}

int cmd_factor(const Options& opt, std::ostream& out) {
  DSMatrix m = matrix_from_json(load_json_file(opt.input));
  PermutationFactorization f = factor_permutation(m, !opt.no_eps, opt.threads);
  json result{{"P", permutation_to_json(f.P)},
              {"M_prime", matrix_to_json(f.Mprime)},
              {"eps", f.eps ? rational_to_json(*f.eps) : json(nullptr)}};
  out << result.dump(2) << "\n";
  return kExitOk;
}

int cmd_birkhoff(const Options& opt, std::ostream& out) {
  DSMatrix m = matrix_from_json(load_json_file(opt.input));
  BirkhoffDecomposition d = birkhoff_decompose(m);
  json terms = json::array();
  for (const BirkhoffTerm& t : d.terms) {
    terms.push_back(json{{"coeff", rational_to_json(t.coeff)},
                         {"perm", permutation_to_json(t.perm)}});
  }
  out << json{{"terms", std::move(terms)}}.dump(2) << "\n";
  return kExitOk;
}

int cmd_majorize(const Options& opt, std::ostream& out) {
  SimplexVector p = vector_from_json(load_json_file(opt.input));
  SimplexVector q = vector_from_json(load_json_file(opt.input_p));
  bool result = majorizes(p, q);
  json report{{"majorizes", result}};
  if (result && opt.with_witness) {
    report["witness"] = matrix_to_json(majorization_witness(p, q).M);
  }
  out << report.dump(2) << "\n";
  return result ? kExitOk : kExitNegative;
}

int cmd_core(const Options& opt, std::ostream& out) {
  GeneratorSet gens = generators_from_json(load_json_file(opt.input));
  std::vector<Partition> core = averaging_core(gens, opt.threads);
  CoreReport verification =
      verify_convergence_core(gens, opt.match_tol, opt.tol, opt.max_iter, opt.threads);
  json core_json = json::array();
  for (const Partition& part : core) {
    core_json.push_back(partition_to_json(part));
  }
  json subsets = json::array();
  for (const CoreSubsetResult& row : verification.rows) {
    subsets.push_back(json{{"subset", word_to_json(row.subset)},
                           {"predicted", partition_to_json(row.predicted)},
                           {"distance", row.distance},
                           {"iterations", row.iterations},
                           {"converged", row.converged}});
  }
  json report{{"core", std::move(core_json)},
              {"subsets", std::move(subsets)},
              {"max_distance", verification.max_distance},
              {"all_within", verification.all_within}};
  out << report.dump(2) << "\n";
  return verification.all_within ? kExitOk : kExitNegative;
}

int cmd_limit(const Options& opt, std::ostream& out) {
  GeneratorSet gens = generators_from_json(load_json_file(opt.input));
  ProductSchedule schedule = ProductSchedule::round_robin(gens);
  if (opt.schedule == "word") {
    if (opt.words.empty()) {
      fail("InvalidWord", "--schedule word needs --word");
    }
    schedule = ProductSchedule::repeat_word(gens, split_word(opt.words.front()));
  } else if (opt.schedule == "random") {
    schedule = ProductSchedule::pseudo_random(gens, opt.seed);
  } else if (opt.schedule != "round-robin") {
    fail("ParseError", "unknown schedule \"" + opt.schedule + "\"");
  }
  LimitReport report = iterate_product(schedule, opt.tol, opt.max_iter);
  json result{
      {"converged", report.converged},
      {"iterations", report.iterations},
      {"residual", report.residual},
      {"matched_partition",
       report.matched_averaging ? partition_to_json(*report.matched_averaging) : json(nullptr)},
      {"match_error", report.match_error ? json(*report.match_error) : json(nullptr)},
      {"value", grid_to_json(report.value, report.n)}};
  out << result.dump(2) << "\n";
  return report.converged ? kExitOk : kExitNegative;
}

int cmd_explore(const Options& opt, std::ostream& out) {
  GeneratorSet gens = generators_from_json(load_json_file(opt.input));
  SemigroupSnapshot snapshot = generate(gens, opt.depth, opt.budget, opt.threads);
  std::vector<Rational> entries = entry_set(snapshot);
  GapReport gaps = gap_report(entries, Rational::parse(opt.min_gap));

  json elements = json::array();
  for (size_t idx = 0; idx < snapshot.elements.size(); ++idx) {
    json element{{"key", snapshot.elements[idx].key},
                 {"word", word_to_json(snapshot.word_of(idx))}};
    if (!opt.no_matrices) {
      element["matrix"] = matrix_to_json(snapshot.elements[idx].matrix);
    }
    elements.push_back(std::move(element));
  }
  json entries_json = json::array();
  for (const Rational& e : gaps.entries) {
    entries_json.push_back(rational_to_json(e));
  }
  json gaps_json = json::array();
  for (const auto& [a, b] : gaps.gaps) {
    gaps_json.push_back(json::array({rational_to_json(a), rational_to_json(b)}));
  }
  json report{{"snapshot",
               json{{"n", gens.n()},
                    {"depth", snapshot.depth},
                    {"count", snapshot.elements.size()},
                    {"truncated", snapshot.truncated},
                    {"elements", std::move(elements)}}},
              {"gap_report",
               json{{"entries", std::move(entries_json)},
                    {"gaps", std::move(gaps_json)},
                    {"evidence", snapshot.truncated ? "truncated" : "exhaustive"}}}};
  out << report.dump(2) << "\n";
  return snapshot.truncated ? kExitBudget : kExitOk;
}

int cmd_gap_law(const Options& opt, std::ostream& out) {
  GeneratorSet gens = generators_from_json(load_json_file(opt.input));
  GapLawReport report = entry_gap_law_check(gens, opt.depth, opt.budget, opt.threads);
  json counterexample(nullptr);
  if (report.counterexample) {
    counterexample = json{{"word", word_to_json(report.counterexample->first)},
                          {"entry", rational_to_json(report.counterexample->second)}};
  }
  json result{{"x", rational_to_json(report.x)},
              {"holds", report.holds},
              {"counterexample", std::move(counterexample)},
              {"evidence", report.truncated ? "truncated" : "exhaustive"}};
  out << result.dump(2) << "\n";
  if (!report.holds) {
    return kExitNegative;
  }
  return report.truncated ? kExitBudget : kExitOk;
}

int cmd_reduce(const Options& opt, std::ostream& out) {
  GeneratorSet gens = generators_from_json(load_json_file(opt.input));
  SimplexVector p = vector_from_json(load_json_file(opt.input_p));
  SimplexVector q = vector_from_json(load_json_file(opt.input_q));
  BilinearReduction reduction = bilinear_reduction(gens, p, q);

  Word word = opt.words.empty() ? Word(gens.names()) : split_word(opt.words.front());
  Rational value = bilinear_value(gens, p, q, word);
  DSMatrix sandwich = multiply(reduction.augmented.at(reduction.q_name),
                               multiply(word_product(gens, word),
                                        reduction.augmented.at(reduction.p_name)));
  bool agree = sandwich.at(0, 0) == value;

  json result{{"augmented", generators_to_json(reduction.augmented)},
              {"p_name", reduction.p_name},
              {"q_name", reduction.q_name},
              {"word", word_to_json(word)},
              {"value", rational_to_json(value)},
              {"entry11", rational_to_json(sandwich.at(0, 0))},
              {"agree", agree},
              {"embed", gens.n() >= 2 ? matrix_to_json(entry_embed(value, gens.n()))
                                      : json(nullptr)}};
  out << result.dump(2) << "\n";
  return agree ? kExitOk : kExitNegative;
}

int cmd_contain(const Options& opt, std::ostream& out) {
  GeneratorSet gens = generators_from_json(load_json_file(opt.input));
  std::vector<Word> words;
  for (const std::string& text : opt.words) {
    words.push_back(split_word(text));
  }
  if (words.empty()) {
    words.push_back(Word(gens.names()));
  }
  ContainmentReport report =
      closure_containment_check(gens, words, opt.power, opt.depth, opt.budget, opt.threads);
  json probes = json::array();
  bool within = true;
  for (const ContainmentProbe& probe : report.probes) {
    within = within && (!opt.tol_given || probe.distance <= opt.tol);
    probes.push_back(json{{"word", word_to_json(probe.word)},
                          {"power", probe.power},
                          {"distance", probe.distance},
                          {"nearest", word_to_json(probe.nearest)}});
  }
  json result{{"probes", std::move(probes)},
              {"enumerated", report.enumerated},
              {"truncated", report.truncated}};
  out << result.dump(2) << "\n";
  if (report.truncated) {
    return kExitBudget;
  }
  return within ? kExitOk : kExitNegative;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact analysis of finitely generated semigroups of doubly stochastic matrices"};
  app.require_subcommand(1);

  Options opt;
  opt.budget = default_budget();

  auto add_threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", opt.threads, "parallel workers (default 1)");
  };

  CLI::App* check = app.add_subcommand("check-domestic", "domesticity margin and eps test");
  check->add_option("matrix", opt.input, "matrix JSON file")->required();
  check->add_option("--eps", opt.eps, "eps as a fraction, in (0, 1/(2n)]");
  check->add_option("--margin-cap", opt.margin_cap, "dimension cap for the margin kernel");
  add_threads(check);

  CLI::App* factor = app.add_subcommand("factor", "permutation/domestic factorization M = P M'");
  factor->add_option("matrix", opt.input, "matrix JSON file")->required();
  factor->add_flag("--no-eps", opt.no_eps, "skip the margin computation for eps");
  add_threads(factor);

  CLI::App* birkhoff = app.add_subcommand("birkhoff", "convex combination of permutations");
  birkhoff->add_option("matrix", opt.input, "matrix JSON file")->required();

  CLI::App* majorize = app.add_subcommand("majorize", "majorization test p > q");
  majorize->add_option("p", opt.input, "vector JSON file")->required();
  majorize->add_option("q", opt.input_p, "vector JSON file")->required();
  majorize->add_flag("--witness", opt.with_witness, "emit a doubly stochastic M with Mp = q");

  CLI::App* core = app.add_subcommand("core", "averaging core and per-subset verification");
  core->add_option("generators", opt.input, "generator set JSON file")->required();
  core->add_option("--tol", opt.match_tol, "match tolerance (default 1e-8)");
  core->add_option("--iter-tol", opt.tol, "iteration tolerance (default 1e-10)");
  core->add_option("--max-iter", opt.max_iter, "iteration budget");
  add_threads(core);

  CLI::App* limit = app.add_subcommand("limit", "iterate an infinite product schedule");
  limit->add_option("generators", opt.input, "generator set JSON file")->required();
  limit->add_option("--schedule", opt.schedule, "round-robin | word | random");
  limit->add_option("--word", opt.words, "comma-separated letters for --schedule word");
  limit->add_option("--seed", opt.seed, "seed for --schedule random");
  limit->add_option("--tol", opt.tol, "stopping tolerance (default 1e-10)");
  limit->add_option("--max-iter", opt.max_iter, "iteration budget");

  CLI::App* explore = app.add_subcommand("explore", "enumerate the semigroup, entries and gaps");
  explore->add_option("generators", opt.input, "generator set JSON file")->required();
  explore->add_option("--depth", opt.depth, "word length bound")->required();
  explore->add_option("--budget", opt.budget, "element budget (env DSTOCH_BUDGET)");
  explore->add_option("--min-gap", opt.min_gap, "minimum reported gap length (default 1/10)");
  explore->add_flag("--no-matrices", opt.no_matrices, "omit matrices from the element list");
  add_threads(explore);

  CLI::App* gap_law = app.add_subcommand("gap-law", "verify entries are 1 or at most x");
  gap_law->add_option("generators", opt.input, "generator set JSON file")->required();
  gap_law->add_option("--depth", opt.depth, "word length bound")->required();
  gap_law->add_option("--budget", opt.budget, "element budget (env DSTOCH_BUDGET)");
  add_threads(gap_law);

  CLI::App* reduce = app.add_subcommand("reduce", "bilinear form to [1,1]-entry reduction");
  reduce->add_option("generators", opt.input, "generator set JSON file")->required();
  reduce->add_option("p", opt.input_p, "vector JSON file")->required();
  reduce->add_option("q", opt.input_q, "vector JSON file")->required();
  reduce->add_option("--word", opt.words, "probe word (default: all generators once)");

  CLI::App* contain = app.add_subcommand("contain", "closure containment probes");
  contain->add_option("generators", opt.input, "generator set JSON file")->required();
  contain->add_option("--word", opt.words, "probe word, repeatable");
  contain->add_option("--power", opt.power, "proxy power (default 20)");
  contain->add_option("--depth", opt.depth, "enumeration depth")->required();
  auto* contain_tol = contain->add_option("--tol", opt.tol, "distance threshold");
  contain->add_option("--budget", opt.budget, "element budget (env DSTOCH_BUDGET)");
  add_threads(contain);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return kExitOk;
    }
    err << e.what() << "\n";
    return kExitInputError;
  }
  opt.tol_given = contain_tol->count() > 0;

  try {
    if (check->parsed()) return cmd_check_domestic(opt, out);
    if (factor->parsed()) return cmd_factor(opt, out);
    if (birkhoff->parsed()) return cmd_birkhoff(opt, out);
    if (majorize->parsed()) return cmd_majorize(opt, out);
    if (core->parsed()) return cmd_core(opt, out);
    if (limit->parsed()) return cmd_limit(opt, out);
    if (explore->parsed()) return cmd_explore(opt, out);
    if (gap_law->parsed()) return cmd_gap_law(opt, out);
    if (reduce->parsed()) return cmd_reduce(opt, out);
    if (contain->parsed()) return cmd_contain(opt, out);
  } catch (const Error& e) {
    out << json{{"error", {{"kind", e.kind()}, {"detail", e.what()}}}}.dump(2) << "\n";
    return exit_code_for(e.kind());
  }
  err << "no subcommand\n";
  return kExitInputError;
}

}  // namespace dstoch
