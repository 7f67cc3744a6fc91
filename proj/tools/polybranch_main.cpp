// Command-line front end: solve score files for optimal k-branchings,
// verify candidate networks, and generate instances.
//
// Exit codes: 0 success (verify: network is a k-branching), 1 verify
// negative, 2 input parse error, 3 invalid mode/k combination, 4 brute
// force cap exceeded, 5 CNF violates the 3-SAT-2 restrictions.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "polybranch/branching.hpp"
#include "polybranch/errors.hpp"
#include "polybranch/generators.hpp"
#include "polybranch/io.hpp"
#include "polybranch/model.hpp"
#include "polybranch/oracle.hpp"
#include "polybranch/solver.hpp"

namespace {

using namespace polybranch;

constexpr int kExitParse = 2;
constexpr int kExitMode = 3;
constexpr int kExitCap = 4;
constexpr int kExitNotSat3 = 5;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

Instance load_instance(const std::string& path) {
  std::vector<std::string> warnings;
  Instance instance = parse_scores(read_file(path), &warnings);
  for (const std::string& w : warnings)
    std::cerr << "warning: " << w << "\n";
  return instance;
}

std::string format_score(double score) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", score);
  return buf;
}

void print_solution(const Instance& instance, const Solution& solution,
                    const std::string& output) {
  if (output == "json") {
    std::cout << network_json(solution.arcs, solution.score,
                              solution.deletion_set);
  } else if (output == "dot") {
    std::cout << to_dot(instance, solution.arcs);
  } else {
    std::cout << "mode: " << to_string(solution.mode) << "\n";
    std::cout << "score: " << format_score(solution.score) << "\n";
    std::cout << "arcs:";
    for (const Arc& a : solution.arcs.arcs())
      std::cout << ' ' << instance.name(a.tail) << "->"
                << instance.name(a.head);
    std::cout << "\n";
    std::cout << "deletion_set:";
    for (const Arc& a : solution.deletion_set)
      std::cout << ' ' << instance.name(a.tail) << "->"
                << instance.name(a.head);
    std::cout << "\n";
  }
}

Solution solve_edmonds(const Instance& instance) {
  // k = 0 never fixes any arc: the problem is a plain maximum
  // branching over the positive singleton weights.
  std::vector<WeightedArc> candidates;
  for (int v = 0; v < instance.node_count(); ++v) {
    const double base = instance.empty_set_score(v);
    for (const ParentSetEntry& entry : instance.table(v)) {
      if (entry.parents.size() != 1) continue;
      const double w = entry.score - base;
      if (w > 0.0) candidates.push_back({{entry.parents[0], v}, w});
    }
  }
  Solution solution;
  solution.arcs = max_weight_branching(instance.node_count(), candidates);
  solution.score = evaluate_score(instance, solution.arcs);
  solution.deletion_set = canonical_deletion_set(solution.arcs);
  solution.mode = SolverMode::Edmonds;
  return solution;
}

int run_solve(const std::string& scores_path, int k, std::string mode,
              int jobs, const std::string& output) {
  const Instance instance = load_instance(scores_path);
  if (mode == "auto") mode = k == 0 ? "edmonds" : "exhaustive";
  if (mode == "edmonds" && k != 0) {
    std::cerr << "error: mode 'edmonds' solves the k = 0 case only\n";
    return kExitMode;
  }

  const auto start = std::chrono::steady_clock::now();
  SolveStats stats;
  Solution solution;
  if (mode == "edmonds")
    solution = solve_edmonds(instance);
  else if (mode == "intree")
    solution = solve_intree_fpt(instance, k, &stats);
  else
    solution = solve_k_branching(instance, k, jobs, &stats);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();

  print_solution(instance, solution, output);
  std::cerr << "{\"mode\":\"" << to_string(solution.mode)
            << "\",\"guess_count\":" << stats.guess_count
            << ",\"wall_time_ms\":" << elapsed << "}\n";
  return 0;
}

int run_brute(const std::string& scores_path, int k, long long cap,
              const std::string& output) {
  const Instance instance = load_instance(scores_path);
  const auto start = std::chrono::steady_clock::now();
  Solution solution;
  try {
    solution = brute_force_optimum(instance, k, cap);
  } catch (const SearchSpaceTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  print_solution(instance, solution, output);
  std::cerr << "{\"mode\":\"brute\",\"guess_count\":0,\"wall_time_ms\":"
            << elapsed << "}\n";
  return 0;
}

int run_verify(const std::string& scores_path, const std::string& network_path,
               int k) {
  const Instance instance = load_instance(scores_path);
  const ArcSet arcs =
      network_arcs_from_json(instance.node_count(), read_file(network_path));

  const bool polytree = skeleton_is_acyclic(arcs);
  const int deletions = min_deletion_size(arcs);
  const bool valid = is_k_branching(arcs, k);
  std::string score = "null";
  try {
    score = format_score(evaluate_score(instance, arcs));
  } catch (const UnlistedParentSet&) {
    // Some node uses a parent set the instance does not offer; the
    // network has no defined score but the structural report stands.
  }
  std::cout << "{\"is_polytree\":" << (polytree ? "true" : "false")
            << ",\"min_deletion_size\":" << deletions
            << ",\"is_k_branching\":" << (valid ? "true" : "false")
            << ",\"score\":" << score << "}\n";
  return valid ? 0 : 1;
}

int run_gen_random(const std::string& out_path, int nodes, int max_set_size,
                   int sets_per_node, std::uint64_t seed) {
  try {
    const Instance instance =
        random_instance(nodes, max_set_size, sets_per_node, seed);
    write_file(out_path, write_scores(instance));
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return 0;
}

int run_gen_sat3(const std::string& cnf_path, const std::string& out_path) {
  const CnfFormula phi = parse_dimacs(read_file(cnf_path));
  try {
    const auto [instance, meta] = sat_to_instance(phi);
    write_file(out_path, write_scores(instance));
    std::cout << "{\"k\":" << meta.k
              << ",\"threshold\":" << format_score(meta.threshold) << "}\n";
  } catch (const NotThreeSatTwo& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotSat3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Score-optimal k-branchings over listed parent sets"};
  app.require_subcommand(1);

  std::string scores_path, network_path, out_path, cnf_path;
  std::string mode = "auto", output = "json";
  int k = 0, jobs = 1;
  int nodes = 10, max_set_size = 2, sets_per_node = 3;
  std::uint64_t seed = 1;
  long long cap = kDefaultAssignmentCap;

  CLI::App* solve = app.add_subcommand(
      "solve", "Find a score-optimal k-branching");
  solve->add_option("scores", scores_path, "score file")->required();
  solve->add_option("--k", k, "deletion budget")->required();
  solve->add_option("--mode", mode, "exhaustive|intree|edmonds|auto")
      ->check(CLI::IsMember({"exhaustive", "intree", "edmonds", "auto"}));
  solve->add_option("--jobs", jobs, "worker threads for the guess sweep")
      ->check(CLI::PositiveNumber);
  solve->add_option("--output", output, "json|dot|text")
      ->check(CLI::IsMember({"json", "dot", "text"}));

  CLI::App* brute = app.add_subcommand(
      "brute", "Exhaustive ground-truth optimum");
  brute->add_option("scores", scores_path, "score file")->required();
  brute->add_option("--k", k, "deletion budget")->required();
  brute->add_option("--cap", cap, "assignment-count cap");
  brute->add_option("--output", output, "json|dot|text")
      ->check(CLI::IsMember({"json", "dot", "text"}));

  CLI::App* verify = app.add_subcommand(
      "verify", "Check a network JSON against a score file");
  verify->add_option("scores", scores_path, "score file")->required();
  verify->add_option("network", network_path, "network JSON file")->required();
  verify->add_option("--k", k, "deletion budget")->required();

  CLI::App* gen = app.add_subcommand("gen", "Generate instances");
  gen->require_subcommand(1);
  CLI::App* gen_random = gen->add_subcommand("random", "Seeded random instance");
  gen_random->add_option("out", out_path, "output score file")->required();
  gen_random->add_option("--nodes", nodes, "node count");
  gen_random->add_option("--max-set-size", max_set_size, "largest parent set");
  gen_random->add_option("--sets-per-node", sets_per_node, "listed sets per node");
  gen_random->add_option("--seed", seed, "RNG seed");
  CLI::App* gen_sat3 = gen->add_subcommand(
      "sat3", "Hardness-reduction instance from a 3-SAT-2 DIMACS file");
  gen_sat3->add_option("cnf", cnf_path, "DIMACS CNF input")->required();
  gen_sat3->add_option("out", out_path, "output score file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed() || brute->parsed()) {
      if (k < 0) {
        std::cerr << "error: k must be non-negative\n";
        return kExitMode;
      }
    }
    if (solve->parsed())
      return run_solve(scores_path, k, mode, jobs, output);
    if (brute->parsed()) return run_brute(scores_path, k, cap, output);
    if (verify->parsed()) {
      if (k < 0) {
        std::cerr << "error: k must be non-negative\n";
        return kExitMode;
      }
      return run_verify(scores_path, network_path, k);
    }
    if (gen_random->parsed())
      return run_gen_random(out_path, nodes, max_set_size, sets_per_node, seed);
    if (gen_sat3->parsed()) return run_gen_sat3(cnf_path, out_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
