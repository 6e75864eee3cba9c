// Command-line front end: solve / verify / gradcheck / oracle on JSON problem
// files.  Exit codes: 0 success, 2 invalid input, 3 solver non-convergence,
// 4 verification failure.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "yamabe/problem_io.hpp"

namespace {

using namespace yamabe;

std::string real17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void print_report(const VerificationReport& report) {
  for (const Check& c : report.checks) {
    std::printf("%-22s %-14s measured=%s bound=%s slack=%s\n", c.name.c_str(),
                to_string(c.status), real17(c.measured).c_str(),
                real17(c.bound).c_str(), real17(c.slack).c_str());
  }
}

int run_solve(const std::string& problem_path, const SolveOptions& opts,
              std::string out_path) {
  const std::string text = read_text_file(problem_path);
  const ProblemInstance inst = parse_problem_json(text, problem_path);
  if (out_path.empty()) {
    out_path = problem_path + ".cert.json";
  }

  SolveResult result = solve(inst.graph, inst.spec, inst.lambda, opts);
  VerificationReport report =
      certify(inst.graph, inst.spec, result.u, result.lambda, result.mu,
              result.energy, opts.tol);

  Certificate cert = make_certificate(inst.graph, inst.spec, result, report,
                                      problem_digest(text), opts.tol);
  write_text_file(out_path, certificate_to_json(cert));

  std::printf(
      "solve %s mode=%s lambda=%s mu=%s energy=%s residual_max=%s "
      "iterations=%ld restarts_used=%d -> %s\n",
      report.all_passed() ? "ok" : "FAILED", to_string(result.mode),
      real17(result.lambda).c_str(), real17(result.mu).c_str(),
      real17(result.energy).c_str(), real17(report.residual_max).c_str(),
      result.iterations, result.restarts_used, out_path.c_str());
  return report.all_passed() ? 0 : 4;
}

int run_verify(const std::string& problem_path,
               const std::string& solution_path) {
  const std::string text = read_text_file(problem_path);
  const ProblemInstance inst = parse_problem_json(text, problem_path);
  const Certificate cert = load_certificate_file(solution_path);

  bool ok = true;
  if (cert.input_digest != problem_digest(text)) {
    std::printf("digest mismatch: certificate was not produced from %s\n",
                problem_path.c_str());
    ok = false;
  }

  if (cert.solution.size() != inst.graph.vertex_count()) {
    throw ParseError(solution_path + ": solution does not cover the vertex set");
  }
  std::vector<double> values(inst.graph.vertex_count());
  for (const auto& [id, value] : cert.solution) {
    values[inst.graph.index_of(id)] = value;  // throws on unknown id
  }
  const VertexFunction u{values};

  const VerificationReport report =
      certify(inst.graph, inst.spec, u, cert.lambda, cert.mu, cert.energy,
              cert.tol);
  print_report(report);

  const double rep_tol = 1e-12 * std::max(1.0, std::abs(cert.residual_max));
  if (std::abs(report.residual_max - cert.residual_max) > rep_tol) {
    std::printf("residual_max not reproduced: certificate %s, recomputed %s\n",
                real17(cert.residual_max).c_str(),
                real17(report.residual_max).c_str());
    ok = false;
  }
  if (report.checks.size() != cert.checks.size()) {
    std::printf("check list mismatch: certificate has %zu, recomputed %zu\n",
                cert.checks.size(), report.checks.size());
    ok = false;
  } else {
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
      if (report.checks[i].name != cert.checks[i].name ||
          report.checks[i].status != cert.checks[i].status) {
        std::printf("check '%s' not reproduced (certificate %s, recomputed %s)\n",
                    cert.checks[i].name.c_str(),
                    to_string(cert.checks[i].status),
                    to_string(report.checks[i].status));
        ok = false;
      }
    }
  }
  ok = ok && report.all_passed();
  std::printf("verify %s residual_max=%s\n", ok ? "ok" : "FAILED",
              real17(report.residual_max).c_str());
  return ok ? 0 : 4;
}

int run_gradcheck(const std::string& problem_path, double step,
                  std::uint64_t seed) {
  const ProblemInstance inst = load_problem_file(problem_path);
  const double lambda = inst.lambda_raw.value_or(-1.0);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> point(inst.graph.vertex_count());
  for (double& v : point) {
    v = std::exp(0.3 * normal(rng));
  }

  const GradientCheckReport report = gradient_check(
      inst.graph, inst.spec, VertexFunction{point}, lambda, step, seed);
  if (!report.step_valid) {
    std::printf("gradcheck error: %s\n", report.message.c_str());
    return 2;
  }
  const bool ok = report.max_energy_discrepancy <= 1e-6 &&
                  report.max_constraint_discrepancy <= 1e-6;
  std::printf("gradcheck %s step=%s energy_discrepancy=%s "
              "constraint_discrepancy=%s\n",
              ok ? "ok" : "FAILED", real17(step).c_str(),
              real17(report.max_energy_discrepancy).c_str(),
              real17(report.max_constraint_discrepancy).c_str());
  return ok ? 0 : 4;
}

int run_oracle(const std::string& problem_path) {
  const ProblemInstance inst = load_problem_file(problem_path);
  const double lambda = inst.lambda_raw.value_or(inst.lambda);
  const auto solutions = oracle_solve_small(inst.graph, inst.spec, lambda);
  std::printf("oracle lambda=%s solutions=%zu\n", real17(lambda).c_str(),
              solutions.size());
  for (std::size_t k = 0; k < solutions.size(); ++k) {
    std::printf("solution %zu: mu=%s u={", k,
                real17(solutions[k].multiplier).c_str());
    for (std::size_t i = 0; i < inst.graph.vertex_count(); ++i) {
      std::printf("%s%s: %s", i == 0 ? "" : ", ",
                  inst.graph.vertex_id(i).c_str(),
                  real17(solutions[k].u[i]).c_str());
    }
    std::printf("}\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"positive solutions of p-th Yamabe type equations on finite "
               "weighted graphs"};
  app.require_subcommand(1);

  std::string problem_path;
  std::string out_path;
  std::string solution_path;
  SolveOptions opts;
  double step = 1e-6;
  std::uint64_t seed = 0;

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve a problem file and "
                                           "emit a certificate");
  solve_cmd->add_option("problem", problem_path, "problem JSON file")
      ->required();
  solve_cmd->add_option("--tol", opts.tol, "residual tolerance");
  solve_cmd->add_option("--max-iter", opts.max_iter, "iteration budget per start");
  solve_cmd->add_option("--restarts", opts.restarts, "perturbed restarts");
  solve_cmd->add_option("--seed", opts.seed, "restart perturbation seed");
  solve_cmd->add_option("--out", out_path, "certificate output path");

  CLI::App* verify_cmd = app.add_subcommand("verify", "re-verify a certificate "
                                            "against its problem file");
  verify_cmd->add_option("problem", problem_path, "problem JSON file")
      ->required();
  verify_cmd->add_option("--solution", solution_path, "certificate file")
      ->required();

  CLI::App* grad_cmd = app.add_subcommand("gradcheck", "centered-difference "
                                          "check of the analytic gradients");
  grad_cmd->add_option("problem", problem_path, "problem JSON file")
      ->required();
  grad_cmd->add_option("--step", step, "difference step");
  grad_cmd->add_option("--seed", seed, "seed for the base point and directions");

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "enumerate stationary "
                                            "points of a tiny instance");
  oracle_cmd->add_option("problem", problem_path, "problem JSON file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (solve_cmd->parsed()) {
      return run_solve(problem_path, opts, out_path);
    }
    if (verify_cmd->parsed()) {
      return run_verify(problem_path, solution_path);
    }
    if (grad_cmd->parsed()) {
      return run_gradcheck(problem_path, step, seed);
    }
    if (oracle_cmd->parsed()) {
      return run_oracle(problem_path);
    }
  } catch (const NoConvergence& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
