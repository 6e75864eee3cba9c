#pragma once

#include "yamabe/operators.hpp"

namespace yamabe {

/// How the equation -Delta_p u + h u^{q-1} = lambda f u^{alpha-1} is reached.
///   mu_form:    minimize on the h-level set; report the multiplier mu with
///               the equation -Delta_p u + mu h u^{q-1} = lambda f u^{alpha-1}.
///   rescale:    mu_form with lambda_tilde < 0, then scale by a power of mu
///               so the h coefficient becomes 1 (needs q > p).
///   normalized: q = p; minimize over the f-normalization set and report
///               lambda as the multiplier.
enum class SolveMode { mu_form, rescale, normalized };

const char* to_string(SolveMode m);

/// Constraint sets reachable by radial scaling.
///   h_level_set: (1/q) * integral of h u^q = -1
///   f_level_set: (1/alpha) * integral of f u^alpha = 1
enum class ConstraintKind { h_level_set, f_level_set };

/// Exponents, coefficient functions and solve configuration for one problem
/// instance.  h <= 0 everywhere and < 0 somewhere; f > 0 everywhere.
struct ProblemSpec {
  double p = 2.0;
  double q = 2.0;
  double alpha = 2.0;
  VertexFunction h;
  VertexFunction f;
  LaplacianVariant variant = LaplacianVariant::edge;
  SolveMode mode = SolveMode::rescale;

  /// Throws InvalidProblem or UnsupportedExponent on any violated invariant.
  void validate(const WeightedGraph& g) const;
};

/// u^e for u >= 0 with the conventions used throughout: e = 0 gives 1 even at
/// u = 0, and 0 < e < 1 gives 0 at u = 0 (the limit value).
double nonneg_power(double u, double e);

/// (1/p) * dirichlet_energy - (lambda/alpha) * integral of f u^alpha.
double energy(const WeightedGraph& g, const ProblemSpec& prob,
              const VertexFunction& u, double lambda);

/// (1/q) * integral of h u^q + 1; zero on the h-level set.
double constraint(const WeightedGraph& g, const ProblemSpec& prob,
                  const VertexFunction& u);

/// Pointwise gradient representatives of the energy and the constraint under
/// the measure-weighted pairing <v, D> = integral of D*v:
///   energy_i     = -(Delta_p u)_i - lambda f_i u_i^{alpha-1}
///   constraint_i = h_i u_i^{q-1}
struct Gradients {
  VertexFunction energy;
  VertexFunction constraint;
};

Gradients gradients(const WeightedGraph& g, const ProblemSpec& prob,
                    const VertexFunction& u, double lambda);

/// Closed-form Lagrange multiplier:
/// (1/q) * (dirichlet_energy - lambda * integral of f u^alpha).
double multiplier(const WeightedGraph& g, const ProblemSpec& prob,
                  const VertexFunction& u, double lambda);

/// Scale-invariant quotient
/// (dirichlet_energy + integral of h u^p) * (integral of f u^alpha)^{-p/alpha}
/// whose critical points solve the q = p equation.
double rayleigh_quotient(const WeightedGraph& g, const ProblemSpec& prob,
                         const VertexFunction& u);

/// Radial scaling t*u onto the requested constraint set.  Throws
/// RetractInfeasible when the defining integral vanishes (h-level set with u
/// supported off the negativity set of h, or u identically zero).
VertexFunction retract(const WeightedGraph& g, const ProblemSpec& prob,
                       const VertexFunction& u, ConstraintKind kind);

}  // namespace yamabe
