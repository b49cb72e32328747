#include "flagcert/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "flagcert/certify.hpp"
#include "flagcert/density.hpp"
#include "flagcert/extremal.hpp"
#include "flagcert/flags.hpp"
#include "flagcert/graph.hpp"
#include "flagcert/sdpgen.hpp"
#include "flagcert/solverio.hpp"

namespace flagcert {

void PipelineConfig::validate() const {
  rounding.validate();
  if (workdir.empty()) throw std::invalid_argument("workdir must not be empty");
}

namespace {

// Missing inputs and similar caller mistakes; mapped to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::filesystem::path in_workdir(const PipelineConfig& cfg, const std::string& given,
                                 const char* fallback) {
  if (!given.empty()) return given;
  return cfg.workdir / fallback;
}

void require_file(const std::filesystem::path& p) {
  if (!std::filesystem::is_regular_file(p)) throw UsageError("missing file: " + p.string());
}

std::ofstream open_output(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw UsageError("cannot write " + p.string());
  return out;
}

void prepare_workdir(const PipelineConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.workdir, ec);
  if (!std::filesystem::is_directory(cfg.workdir)) {
    throw UsageError("workdir is not a directory: " + cfg.workdir.string());
  }
}

TypeGraph type_by_name(const std::string& name) {
  if (name == "sigma0") return sigma0();
  if (name == "sigma1") return sigma1();
  if (name == "sigma2") return sigma2();
  throw UsageError("unknown type " + name + " (expected sigma0, sigma1 or sigma2)");
}

std::string edge_list(const Graph& g) {
  std::string s;
  for (int u = 0; u < g.order(); ++u) {
    for (int v = u + 1; v < g.order(); ++v) {
      if (g.adjacent(u, v)) s += (s.empty() ? "" : ",") + std::to_string(u) + "-" + std::to_string(v);
    }
  }
  return s.empty() ? "-" : s;
}

int cmd_enumerate(const PipelineConfig& cfg, int size, std::ostream& out) {
  if (size < 1 || size > kMaxCanonicalOrder) throw UsageError("--size must be in 1..8");
  prepare_workdir(cfg);
  const auto& catalog = admissible_catalog(size);
  const auto path = cfg.workdir / ("classes_" + std::to_string(size) + ".txt");
  auto file = open_output(path);
  for (int i = 0; i < catalog.size(); ++i) {
    file << i << ' ' << catalog.forms[i].hex() << ' ' << edge_list(catalog.graphs[i]) << '\n';
  }
  out << catalog.size() << '\n';
  out << "classes written to " << path.string() << '\n';
  return kExitOk;
}

int cmd_flags(const PipelineConfig& cfg, const std::string& type, int size, std::ostream& out) {
  const TypeGraph sigma = type_by_name(type);
  if (size < sigma.size() || size > kMaxCanonicalOrder) throw UsageError("--size out of range for the type");
  prepare_workdir(cfg);
  const auto basis = enumerate_flags(sigma, size);
  const auto path = cfg.workdir / ("flags_" + type + "_" + std::to_string(size) + ".txt");
  auto file = open_output(path);
  for (int i = 0; i < basis.dimension(); ++i) {
    file << i << ' ' << basis.forms[i].hex() << ' ' << edge_list(basis.flags[i].graph()) << '\n';
  }
  out << basis.dimension() << '\n';
  out << "flags written to " << path.string() << '\n';
  return kExitOk;
}

void emit_tables(const PipelineConfig& cfg, const FlagTables& tables, std::ostream& out) {
  const std::pair<const char*, const PairDensityTable*> list[] = {
      {"table_sigma0.txt", &tables.table0},
      {"table_sigma1.txt", &tables.table1},
      {"table_sigma2.txt", &tables.table2}};
  for (const auto& [name, table] : list) {
    auto file = open_output(cfg.workdir / name);
    write_table(*table, file);
    out << name << ": " << table->classes() << " classes, dimension " << table->dimension()
        << ", denominator " << table->denominator().get_str() << '\n';
  }
}

int cmd_tables(const PipelineConfig& cfg, std::ostream& out) {
  prepare_workdir(cfg);
  emit_tables(cfg, build_flag_tables(), out);
  return kExitOk;
}

std::filesystem::path generate(const PipelineConfig& cfg, const FlagTables& tables,
                               const std::string& output, std::ostream& out) {
  const auto problem = build_reduced_problem(tables);
  const auto path = in_workdir(cfg, output, "problem.dat-s");
  write_sdpa(to_sdpa(problem), path);
  out << "representatives: " << problem.constraints() << '\n';
  out << "variables: " << problem.variable_count() << '\n';
  out << "problem written to " << path.string() << '\n';
  return path;
}

int cmd_gen_sdp(const PipelineConfig& cfg, const std::string& output, std::ostream& out) {
  prepare_workdir(cfg);
  const auto tables = build_flag_tables();
  if (cfg.emit_tables) emit_tables(cfg, tables, out);
  generate(cfg, tables, output, out);
  return kExitOk;
}

NumericalSolution run_solver(const PipelineConfig& cfg, const std::filesystem::path& problem,
                             const std::filesystem::path& solution, int timeout, std::ostream& out) {
  require_file(problem);
  SolverOptions options;
  options.solver = resolve_solver(cfg.solver_path);
  options.timeout = std::chrono::seconds(timeout);
  options.log = cfg.workdir / "solver.log";
  out << "solver: " << options.solver.string() << '\n';
  auto numeric = solve_external(problem, solution, options);
  out << "numerical objective: " << std::setprecision(12) << numeric.objective << '\n';
  return numeric;
}

int cmd_solve(const PipelineConfig& cfg, const std::string& problem, const std::string& solution,
              int timeout, std::ostream& out) {
  prepare_workdir(cfg);
  run_solver(cfg, in_workdir(cfg, problem, "problem.dat-s"), in_workdir(cfg, solution, "numerical.sol"),
             timeout, out);
  return kExitOk;
}

ReducedProblem load_problem(const std::filesystem::path& path) {
  require_file(path);
  return reduced_problem_from_sdpa(read_sdpa(path), reduce_classes(admissible_catalog(7)));
}

bool round_and_write(const PipelineConfig& cfg, const ReducedProblem& problem, const FlagTables& tables,
                     const NumericalSolution& numeric, const std::filesystem::path& output,
                     std::ostream& out) {
  const auto result = round_solution(problem, tables, numeric, cfg.rounding);
  {
    auto log = open_output(cfg.workdir / "rounding.log");
    write_rounding_log(result, cfg.rounding, log);
  }
  write_rounding_log(result, cfg.rounding, out);
  if (!result.success) return false;
  write_solution(result.solution, output);
  out << "exact solution written to " << output.string() << '\n';
  return true;
}

int cmd_round(const PipelineConfig& cfg, const std::string& problem_arg, const std::string& numeric_arg,
              const std::string& output, std::ostream& out) {
  prepare_workdir(cfg);
  const auto problem_path = in_workdir(cfg, problem_arg, "problem.dat-s");
  const auto numeric_path = in_workdir(cfg, numeric_arg, "numerical.sol");
  const auto problem = load_problem(problem_path);
  require_file(numeric_path);
  const auto numeric = parse_solution(numeric_path, read_sdpa(problem_path));
  const auto tables = build_flag_tables();
  return round_and_write(cfg, problem, tables, numeric, in_workdir(cfg, output, "exact_solution.txt"), out)
             ? kExitOk
             : kExitVerificationFailed;
}

bool certify_and_report(const PipelineConfig& cfg, const ReducedProblem& problem,
                        const SolutionVectorFile& solution, const std::string& expected_order,
                        std::ostream& out) {
  if (!solution.order.empty() && !expected_order.empty() && solution.order != expected_order) {
    throw CertificateError("solution ordering digest does not match this build's flag ordering");
  }
  const auto& classes = admissible_catalog(7);
  const auto cert = certify(problem, classes, solution);
  {
    auto report = open_output(cfg.workdir / "certificate.txt");
    write_certificate(cert, problem, classes, report);
  }
  out << "bound = " << cert.bound.get_str() << " (scaled " << cert.bound_scaled.get_str() << ")\n";
  out << "blocks PSD: " << (cert.psd() ? "yes" : "no") << '\n';
  out << "tight representatives: " << cert.tight_set.size() << '\n';
  out << (cert.certified() ? "CERTIFIED" : "NOT CERTIFIED") << '\n';
  return cert.certified();
}

int cmd_certify(const PipelineConfig& cfg, const std::string& problem_arg, const std::string& solution_arg,
                std::ostream& out) {
  prepare_workdir(cfg);
  const auto problem = load_problem(in_workdir(cfg, problem_arg, "problem.dat-s"));
  const auto solution_path = in_workdir(cfg, solution_arg, "exact_solution.txt");
  require_file(solution_path);
  const auto solution = load_solution(solution_path);
  const auto digest = ordering_digest(build_flag_tables());
  return certify_and_report(cfg, problem, solution, digest, out) ? kExitOk : kExitVerificationFailed;
}

int cmd_extremal(const PipelineConfig& cfg, int n, const std::string& csv, std::ostream& out) {
  if (n < 4) throw UsageError("--n must be at least 4");
  const auto bound = lower_bound_formula(n);
  const auto tau = count_monotone4(tau_k(n, 3));
  out << "lower bound: " << bound.get_str() << '\n';
  out << "m3(tau3(" << n << ")): " << tau.total() << '\n';
  bool ok = Integer(tau.total()) == bound && mk_formula(n, 3) == bound;
  if (n >= 15) {
    const auto family = enumerate_W3(n);
    bool all = true;
    for (const auto& p : family) {
      const auto c = count_monotone4(p);
      all = all && Integer(c.total()) == bound && (c.increasing == 0 || c.decreasing == 0);
    }
    out << "|W3| = " << family.size() << " (all attain the bound in one direction: " << (all ? "yes" : "no")
        << ")\n";
    ok = ok && all;
  }
  if (!csv.empty()) {
    prepare_workdir(cfg);
    const auto path = in_workdir(cfg, csv, "extremal.csv");
    auto file = open_output(path);
    write_extremal_report(4, n, file);
    out << "report written to " << path.string() << '\n';
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_minimum(int n, std::ostream& out) {
  if (n < 1 || n > kMaxBruteForceOrder) throw UsageError("--n must be in 1..10");
  const auto best = brute_force_minimum(n);
  out << "minimum over S_" << n << ": " << best << '\n';
  if (n >= 4) out << "lower bound formula: " << lower_bound_formula(n).get_str() << '\n';
  return kExitOk;
}

int cmd_pipeline(const PipelineConfig& cfg, int timeout, std::ostream& out) {
  prepare_workdir(cfg);
  const auto tables = build_flag_tables();
  if (cfg.emit_tables) emit_tables(cfg, tables, out);
  const auto problem_path = generate(cfg, tables, "", out);
  const auto numeric = run_solver(cfg, problem_path, cfg.workdir / "numerical.sol", timeout, out);
  const auto problem = build_reduced_problem(tables);
  const auto exact_path = cfg.workdir / "exact_solution.txt";
  if (!round_and_write(cfg, problem, tables, numeric, exact_path, out)) return kExitVerificationFailed;
  return certify_and_report(cfg, problem, load_solution(exact_path), ordering_digest(tables), out)
             ? kExitOk
             : kExitVerificationFailed;
}

}  // namespace

int run_subcommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flag-algebra certificate toolkit for monotone 4-subsequences", "flagcert"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "plain key = value file; command-line flags win");

  PipelineConfig cfg;
  std::string workdir = ".";
  std::string solver;
  app.add_option("--workdir", workdir, "directory for all artifacts");
  app.add_option("--solver", solver, "SDPA-format solver executable (CSDP calling convention)");
  app.add_option("--eps1", cfg.rounding.eps1, "small-eigenvalue threshold");
  app.add_option("--eps2", cfg.rounding.eps2, "tight-constraint threshold");
  app.add_option("--eps3", cfg.rounding.eps3, "truncation step for free entries");
  app.add_option("--max_retries", cfg.rounding.max_retries, "rounding retries");
  app.add_option("--denom_bound", cfg.rounding.denom_bound, "largest denominator when guessing");
  app.add_option("--guess_tolerance", cfg.rounding.guess_tolerance, "residual allowed when guessing");
  app.add_flag("--emit_tables", cfg.emit_tables, "also write the pair density tables");

  int size = 7;
  int n = 17;
  int timeout = 1500;
  std::string type = "sigma0";
  std::string problem, solution, numeric, output, csv;

  auto* enumerate = app.add_subcommand("enumerate", "admissible graph classes on --size vertices");
  enumerate->add_option("--size", size, "number of vertices")->capture_default_str();

  auto* flags = app.add_subcommand("flags", "flag basis of a type");
  flags->add_option("--type", type, "sigma0, sigma1 or sigma2")->capture_default_str();
  flags->add_option("--size", size, "flag order");

  auto* tables = app.add_subcommand("tables", "pair density tables at 7 vertices");

  auto* gen = app.add_subcommand("gen-sdp", "write the SDPA problem");
  gen->add_option("--output", output, "default: WORKDIR/problem.dat-s");

  auto* solve = app.add_subcommand("solve", "run the external solver");
  solve->add_option("--problem", problem, "default: WORKDIR/problem.dat-s");
  solve->add_option("--solution", solution, "default: WORKDIR/numerical.sol");
  solve->add_option("--timeout", timeout, "seconds")->capture_default_str();

  auto* round = app.add_subcommand("round", "round a numerical solution to exact rationals");
  round->add_option("--problem", problem, "default: WORKDIR/problem.dat-s");
  round->add_option("--numerical", numeric, "default: WORKDIR/numerical.sol");
  round->add_option("--output", output, "default: WORKDIR/exact_solution.txt");

  auto* cert = app.add_subcommand("certify", "verify an exact solution");
  cert->add_option("--problem", problem, "default: WORKDIR/problem.dat-s");
  cert->add_option("--solution", solution, "default: WORKDIR/exact_solution.txt");

  auto* extremal = app.add_subcommand("extremal", "extremal constructions at --n");
  extremal->add_option("--n", n, "permutation length")->capture_default_str();
  extremal->add_option("--csv", csv, "also write a CSV report for 4..n to this path");

  auto* minimum = app.add_subcommand("minimum", "exhaustive minimum over S_n (n <= 10)");
  minimum->add_option("--n", n, "permutation length");

  auto* pipeline = app.add_subcommand("pipeline", "gen-sdp, solve, round and certify");
  pipeline->add_option("--timeout", timeout, "solver timeout in seconds")->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    cfg.workdir = workdir;
    cfg.solver_path = solver;
    cfg.validate();
    if (*enumerate) return cmd_enumerate(cfg, size, out);
    if (*flags) return cmd_flags(cfg, type, flags->count("--size") ? size : (type == "sigma0" ? 4 : 5), out);
    if (*tables) return cmd_tables(cfg, out);
    if (*gen) return cmd_gen_sdp(cfg, output, out);
    if (*solve) return cmd_solve(cfg, problem, solution, timeout, out);
    if (*round) return cmd_round(cfg, problem, numeric, output, out);
    if (*cert) return cmd_certify(cfg, problem, solution, out);
    if (*extremal) return cmd_extremal(cfg, n, csv, out);
    if (*minimum) return cmd_minimum(n, out);
    if (*pipeline) return cmd_pipeline(cfg, timeout, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitVerificationFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
  return kExitUsage;
}

}  // namespace flagcert
