#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "yamabe/functionals.hpp"

namespace yamabe {

enum class CheckStatus { pass, fail, not_applicable };

const char* to_string(CheckStatus s);

/// One certified inequality or residual condition.  For upper bounds the
/// slack is bound - measured, for lower bounds measured - bound; pass means
/// slack >= -1e-12 * max(1, |bound|) unless the check is strict.
struct Check {
  std::string name;
  CheckStatus status = CheckStatus::not_applicable;
  double measured = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  std::string source;  // which inequality this instantiates
};

struct VerificationReport {
  std::vector<Check> checks;
  VertexFunction residual;
  double residual_max = 0.0;

  bool all_passed() const;
  const Check* find(const std::string& name) const;
};

/// Pointwise Euler-Lagrange residual
///   r_i = -(Delta_p u)_i - lambda f_i u_i^{alpha-1} + mu h_i u_i^{q-1}
/// and its max norm.  For final-equation checks callers pass mu = 1.
std::pair<VertexFunction, double> residual(const WeightedGraph& g,
                                           const ProblemSpec& prob,
                                           const VertexFunction& u,
                                           double lambda, double mu);

/// max(1, sup_i |lambda f_i u_i^{alpha-1}|): the size of the equation's right
/// side, used to make residual tolerances relative.
double residual_scale(const WeightedGraph& g, const ProblemSpec& prob,
                      const VertexFunction& u, double lambda);

/// Evaluates the q-norm bounds on the h-level set, the Hoelder bound on the
/// f-moment, the energy lower bound and the Sobolev-power bound, each as a
/// named check.  Checks that require membership in the h-level set or
/// strictly negative h are reported not_applicable when those premises fail.
VerificationReport check_bounds(const WeightedGraph& g, const ProblemSpec& prob,
                                const VertexFunction& u, double lambda,
                                double energy_value);

/// Full certification of a claimed solution: stationarity residual at
/// tolerance tol, strict positivity, constraint membership for the mode, and
/// every bound from check_bounds.
VerificationReport certify(const WeightedGraph& g, const ProblemSpec& prob,
                           const VertexFunction& u, double lambda, double mu,
                           double energy_value, double tol);

/// Centered-difference validation of the analytic energy and constraint
/// gradients along every basis direction plus 8 seeded random directions.
struct GradientCheckReport {
  bool step_valid = false;
  std::string message;
  double max_energy_discrepancy = 0.0;      // relative
  double max_constraint_discrepancy = 0.0;  // relative
};

GradientCheckReport gradient_check(const WeightedGraph& g,
                                   const ProblemSpec& prob,
                                   const VertexFunction& u, double lambda,
                                   double step, std::uint64_t seed = 0);

/// One positive stationary point of the constrained problem, found
/// independently of the minimizer.
struct OracleSolution {
  VertexFunction u;
  double multiplier = 0.0;
};

/// Multi-start damped Newton on the stationarity system in log coordinates,
/// for instances with at most 4 vertices.  Returns all distinct solutions
/// found (sup-distance 1e-8 dedup, discovery order).  Throws TooLarge above
/// 4 vertices.
std::vector<OracleSolution> oracle_solve_small(const WeightedGraph& g,
                                               const ProblemSpec& prob,
                                               double lambda);

}  // namespace yamabe
