// Command-line surface: solving, generation, verification, benchmarking,
// and structural dual reports.
//
// Exit codes: 0 success, 1 input error, 2 infeasible, 3 internal
// consistency failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "multicut/multicut.hpp"

namespace fs = std::filesystem;
using namespace multicut;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw parse_error("cannot write " + out_path);
  out << content;
}

struct CommonFlags {
  std::string out;
  bool trace = false;
  int pi_max = kDefaultPiMax;
  int oracle_max_edges = kOracleMaxEdges;
  bool draw_tiny = false;
};

Solution dispatch_solve(const std::string& solver, const Instance& inst,
                        const CommonFlags& flags) {
  if (solver == "oracle") return oracle_min_multicut(inst, flags.oracle_max_edges);
  if (solver == "planar") return planar_multicut_exact(inst);
  if (solver == "kplanar") {
    SolveOptions opts;
    opts.pi_max = flags.pi_max;
    if (flags.trace) opts.trace = &std::cerr;
    return solve_kplanar(inst, opts);
  }
  if (solver == "crossing") {
    CrossingOptions opts;
    opts.draw_tiny = flags.draw_tiny;
    return solve_crossing(inst, opts);
  }
  throw parse_error("unknown solver '" + solver + "'");
}

// One line per instance, key=value, ordered by file name.
std::string bench_dir(const std::string& dir, const CommonFlags& flags,
                      bool with_times) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".mc")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::ostringstream os;
  int agree = 0, compared = 0, failures = 0;
  for (const fs::path& file : files) {
    os << "instance=" << file.filename().string();
    try {
      Instance inst = parse_instance(read_file(file.string()));
      os << " n=" << inst.n << " m=" << inst.edges.size()
         << " t=" << inst.t();
      bool crossing_mode = !inst.crossings.empty() || !inst.unweighted();
      if (crossing_mode) {
        os << " crbar=" << drawing_of(inst).cr_bar();
        if (vset_size(inst.vertex_set()) <= kTinyDrawMaxN) {
          auto certified = tiny_min_crossing_drawing(inst, kTinyDrawMaxCr);
          if (certified)
            os << " cr=" << certified->crossing_pairs.size();
          else
            os << " cr=>" << kTinyDrawMaxCr;
        }
      } else {
        auto pi = find_planarizing_edges(inst, flags.pi_max);
        os << " pi=" << (pi ? std::to_string(pi->size()) : std::string("?"));
      }
      os << " mu=" << extended_biclique_distance(inst).mu;
      auto start = std::chrono::steady_clock::now();
      Solution got = crossing_mode
                         ? solve_crossing(inst, {flags.draw_tiny, kTinyDrawMaxCr})
                         : solve_kplanar(inst, [&] {
                             SolveOptions o;
                             o.pi_max = flags.pi_max;
                             return o;
                           }());
      auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
      os << " weight=" << got.weight;
      int finite = 0;
      for (const Edge& e : inst.edges) finite += !is_inf(e.w);
      if (finite <= flags.oracle_max_edges) {
        Solution oracle = oracle_min_multicut(inst, flags.oracle_max_edges);
        os << " oracle=" << oracle.weight
           << " agree=" << (oracle.weight == got.weight ? "yes" : "no");
        ++compared;
        agree += (oracle.weight == got.weight);
      } else {
        os << " oracle=skipped";
      }
      if (!inst.crossings.empty() && finite <= flags.oracle_max_edges) {
        try {
          Drawing d = drawing_of(inst);
          DualReport rep =
              dual_report(normalize(inst, d, {}), flags.oracle_max_edges);
          os << " tw_c_minus_fstar=" << rep.tw_c_minus_fstar;
        } catch (const std::exception&) {
          os << " tw_c_minus_fstar=?";
        }
      }
      if (with_times) os << " time_ms=" << elapsed;
    } catch (const std::exception& e) {
      os << " error=\"" << e.what() << '"';
      ++failures;
    }
    os << '\n';
  }
  os << "summary instances=" << files.size() << " compared=" << compared
     << " agreement=" << agree << "/" << compared << " failures=" << failures
     << '\n';
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact multicut solvers for near-planar graphs"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::uint64_t seed = 1;

  auto* solve = app.add_subcommand("solve", "solve an instance file");
  std::string solver, instance_path;
  solve->add_option("solver", solver, "kplanar | crossing | planar | oracle")
      ->required();
  solve->add_option("instance", instance_path, "instance file")->required();
  solve->add_option("--out", flags.out, "write the solution here");
  solve->add_flag("--trace", flags.trace, "emit the search trace on stderr");
  solve->add_option("--pi-max", flags.pi_max, "planarization budget");
  solve->add_option("--oracle-max-edges", flags.oracle_max_edges,
                    "enumeration bound for the oracle");
  solve->add_flag("--draw-tiny", flags.draw_tiny,
                  "search a minimum-crossing drawing for small graphs");

  auto* gen = app.add_subcommand("gen", "generate a deterministic instance");
  GenParams gp;
  gen->add_option("--seed", seed, "64-bit seed")->required();
  gen->add_option("--n", gp.n, "vertex count (<= 64)");
  gen->add_option("--density", gp.density, "fraction of the planar budget");
  gen->add_option("--t", gp.t, "terminal count");
  gen->add_option("--pi", gp.pi, "extra pi-marked edges (<= 4)");
  gen->add_option("--crossings", gp.crossings, "crossing pairs (<= 3)");
  gen->add_flag("--weighted", gp.weighted, "weights in 1..w-max");
  gen->add_option("--w-max", gp.w_max, "maximum finite weight");
  gen->add_option("--inf-prob", gp.inf_prob, "chance of an inf weight");
  gen->add_option("--max-edges", gp.max_edges, "cap on finite edges");
  gen->add_option("--out", flags.out, "write the instance here");

  auto* verify = app.add_subcommand("verify", "check a solution file");
  std::string verify_instance, verify_solution;
  verify->add_option("instance", verify_instance, "instance file")->required();
  verify->add_option("solution", verify_solution, "solution file")->required();

  auto* bench = app.add_subcommand("bench", "run a corpus directory");
  std::string corpus;
  bool with_times = false;
  bench->add_option("corpus", corpus, "directory of .mc files")->required();
  bench->add_option("--out", flags.out, "write the report here");
  bench->add_flag("--times", with_times,
                  "include wall-clock fields (breaks byte determinism)");
  bench->add_option("--pi-max", flags.pi_max, "planarization budget");
  bench->add_option("--oracle-max-edges", flags.oracle_max_edges,
                    "enumeration bound for the oracle");
  bench->add_flag("--draw-tiny", flags.draw_tiny,
                  "allow drawing search for undrawn nonplanar inputs");

  auto* report = app.add_subcommand("dual-report",
                                    "structural record of one instance");
  std::string report_path;
  report->add_option("instance", report_path, "instance file")->required();
  report->add_option("--out", flags.out, "write the report here");
  report->add_option("--oracle-max-edges", flags.oracle_max_edges,
                     "enumeration bound for the witness oracle");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      Instance inst = parse_instance(read_file(instance_path));
      Solution s = dispatch_solve(solver, inst, flags);
      if (!verify_multicut(inst, s.edges) ||
          s.weight != inst.weight_of(s.edges))
        throw internal_error("solver output failed re-verification");
      write_output(flags.out, serialize_solution(inst, s));
    } else if (gen->parsed()) {
      gp.seed = seed;
      write_output(flags.out, serialize_instance(generate_instance(gp)));
    } else if (verify->parsed()) {
      Instance inst = parse_instance(read_file(verify_instance));
      Solution s = parse_solution(inst, read_file(verify_solution));
      if (!verify_multicut(inst, s.edges)) {
        std::cerr << "solution does not separate all demands\n";
        return kExitInfeasible;
      }
      if (inst.weight_of(s.edges) != s.weight) {
        std::cerr << "weight header does not match the cut edges\n";
        return kExitInfeasible;
      }
      std::cout << "ok\n";
    } else if (bench->parsed()) {
      write_output(flags.out, bench_dir(corpus, flags, with_times));
    } else if (report->parsed()) {
      Instance inst = parse_instance(read_file(report_path));
      Drawing d = drawing_of(inst);
      DualReport rep =
          dual_report(normalize(inst, d, {}), flags.oracle_max_edges);
      std::ostringstream os;
      os << "mu=" << rep.mu << " fstar=" << rep.f_star_size
         << " tw_c_minus_fstar=" << rep.tw_c_minus_fstar
         << " dominating_size=" << rep.dominating_size
         << " dominating_ok=" << (rep.dominating_ok ? "yes" : "no")
         << " claim_xbar_face=" << (rep.claim_xbar_face ? "pass" : "fail")
         << " claim_degree3=" << (rep.claim_degree3 ? "pass" : "fail")
         << '\n';
      write_output(flags.out, os.str());
    }
  } catch (const infeasible_error& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const internal_error& e) {
    std::cerr << "internal consistency failure: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
