#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "yamabe/functionals.hpp"
#include "yamabe/verification.hpp"

namespace yamabe {

struct SolveOptions {
  double tol = 1e-10;             // Euler-Lagrange residual target (relative)
  long max_iter = 200000;         // per start
  int restarts = 4;               // perturbed starts beyond the first
  std::uint64_t seed = 0;         // drives restart perturbations
  double armijo_c = 1e-4;         // sufficient-decrease coefficient, in (0,1)
  double armijo_shrink = 0.5;     // backtracking factor, in (0,1)
  double initial_step = 1.0;
  double positivity_floor = 0.0;  // iterates are clamped at this value

  void validate() const;  // throws InvalidArgument
};

/// One accepted iterate, for tests and diagnostics.  start counts attempts
/// (0 = unperturbed); iteration 0 is the retracted initial point.  Armijo
/// steps decrease the objective relative to their predecessor; polish jumps
/// (Newton corrections) may move anywhere on the constraint set.
enum class IterateKind { initial, armijo_step, polish_jump };

struct IterateRecord {
  int start = 0;
  long iteration = 0;
  IterateKind kind = IterateKind::initial;
  double objective = 0.0;
  double constraint_abs = 0.0;
  double min_value = 0.0;
};

using TraceSink = std::function<void(const IterateRecord&)>;

/// Output of the constrained minimization on the h-level set.
struct ConstrainedMinimum {
  VertexFunction u;        // strictly positive, on the constraint set
  double multiplier = 0.0; // closed-form multiplier at (u, lambda)
  double energy = 0.0;     // converged objective value
  double residual_max = 0.0;
  long iterations = 0;     // total across all starts
  int winning_start = 0;   // start index whose solution is reported
};

/// Projected-gradient minimization of the energy over the h-level set
/// intersected with the nonnegative cone: radial retraction, Armijo
/// backtracking on the constraint-tangential gradient direction, seeded
/// multi-start, lowest-energy success wins.  Throws NoConvergence when no
/// start reaches the residual target with a strictly positive iterate.
ConstrainedMinimum minimize_energy_on_constraint(const WeightedGraph& g,
                                                 const ProblemSpec& prob,
                                                 double lambda,
                                                 const SolveOptions& opts,
                                                 const TraceSink& trace = {});

/// The scaling step: u = mu^{1/(q-p)} * u_hat and
/// lambda = mu^{(p-alpha)/(q-p)} * lambda_tilde.  Throws DegenerateScaling at
/// q = p and NonPositiveMultiplier for mu <= 0.
std::pair<VertexFunction, double> rescale_solution(const VertexFunction& u_hat,
                                                   double mu,
                                                   double lambda_tilde,
                                                   double p, double q,
                                                   double alpha);

struct SolveResult {
  VertexFunction u;          // strictly positive solution
  double lambda = 0.0;       // lambda in the final equation
  double mu = 0.0;           // multiplier (1 when consumed by the mode)
  double energy = 0.0;       // converged objective value
  long iterations = 0;       // total across all starts
  double residual_max = 0.0; // recomputed final-equation residual
  SolveMode mode = SolveMode::rescale;
  int restarts_used = 0;     // start index that produced the solution
};

/// Mode dispatch.
///   mu_form:    lambda_input is the equation's lambda; reports mu.
///   rescale:    lambda_input is lambda_tilde < 0 (BadLambdaSign otherwise);
///               minimizes, then rescales so the h coefficient becomes 1.
///   normalized: lambda_input is ignored; minimizes the q = p objective on
///               the f-normalization set and reports lambda, mu = 1.
/// The returned residual_max is recomputed through the verification module.
SolveResult solve(const WeightedGraph& g, const ProblemSpec& prob,
                  double lambda_input, const SolveOptions& opts,
                  const TraceSink& trace = {});

/// Positivity certificate: the minimum value and, when some value is <= 0 on
/// a connected graph with u not constant, a witness edge on the boundary of
/// the minimal level set where -(Delta_p u) is strictly negative.
struct PositivityCertificate {
  double min_value = 0.0;
  std::size_t min_vertex = 0;
  bool has_witness = false;
  std::size_t witness_vertex = 0;
  std::size_t witness_neighbor = 0;
  double witness_laplacian = 0.0;  // -(Delta_p u) at witness_vertex
};

PositivityCertificate positivity_certificate(const WeightedGraph& g,
                                             const VertexFunction& u,
                                             double p);

}  // namespace yamabe
