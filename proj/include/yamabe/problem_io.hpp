#pragma once

#include <optional>
#include <string>
#include <vector>

#include "yamabe/solver.hpp"
#include "yamabe/verification.hpp"

namespace yamabe {

inline constexpr const char* kToolName = "yamabe";
inline constexpr const char* kToolVersion = "0.1.0";

/// A problem file: graph, coefficients, exponents and solve configuration.
struct ProblemInstance {
  WeightedGraph graph;
  ProblemSpec spec;
  std::optional<double> lambda_raw;  // the file's lambda field, if present
  double lambda = 0.0;               // resolved solve input (see resolve rules)
};

/// Parses and validates a problem from JSON text.  Unknown fields are
/// rejected; errors carry the field path (and the origin label).  The lambda
/// field is required in mu_form mode, defaults to -1 in rescale mode, and is
/// ignored in normalized mode.  q may be omitted in normalized mode.
ProblemInstance parse_problem_json(const std::string& text,
                                   const std::string& origin);

ProblemInstance load_problem_file(const std::string& path);

/// SHA-256 hex digest of the canonicalized problem text (parsed and re-dumped
/// with sorted keys and no whitespace, so formatting does not matter).
std::string problem_digest(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// A machine-checkable solve certificate bound to its problem file.
struct Certificate {
  std::string tool = kToolName;
  std::string tool_version = kToolVersion;
  std::string input_digest;
  SolveMode mode = SolveMode::rescale;
  LaplacianVariant variant = LaplacianVariant::edge;
  double lambda = 0.0;
  double mu = 0.0;
  double energy = 0.0;
  double tol = 0.0;
  long iterations = 0;
  int restarts_used = 0;
  double residual_max = 0.0;
  std::vector<std::pair<std::string, double>> solution;  // (vertex id, value)
  std::vector<Check> checks;
};

Certificate make_certificate(const WeightedGraph& g, const ProblemSpec& prob,
                             const SolveResult& result,
                             const VerificationReport& report,
                             const std::string& input_digest, double tol);

/// Deterministic serialization: fixed field order, reals with 17 significant
/// digits (round-trip exact), no locale dependence.
std::string certificate_to_json(const Certificate& cert);

Certificate parse_certificate_json(const std::string& text,
                                   const std::string& origin);

Certificate load_certificate_file(const std::string& path);

}  // namespace yamabe
