#include "yamabe/functionals.hpp"

#include <cmath>
#include <vector>

namespace yamabe {

namespace {

void require_nonnegative(const VertexFunction& u) {
  for (double v : u) {
    if (v < 0.0) {
      throw NegativeInput("function must be nonnegative");
    }
  }
}

double f_moment(const WeightedGraph& g, const ProblemSpec& prob,
                const VertexFunction& u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    acc += g.measure(i) * prob.f[i] * std::pow(u[i], prob.alpha);
  }
  return acc;
}

double h_moment(const WeightedGraph& g, const ProblemSpec& prob,
                const VertexFunction& u, double exponent) {
  double acc = 0.0;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    acc += g.measure(i) * prob.h[i] * std::pow(u[i], exponent);
  }
  return acc;
}

}  // namespace

const char* to_string(SolveMode m) {
  switch (m) {
    case SolveMode::mu_form:
      return "mu_form";
    case SolveMode::rescale:
      return "rescale";
    case SolveMode::normalized:
      return "normalized";
  }
  return "?";
}

void ProblemSpec::validate(const WeightedGraph& g) const {
  if (!(p > 1.0)) {
    throw InvalidProblem("exponent p must be > 1");
  }
  if (!(alpha >= 1.0)) {
    throw InvalidProblem("exponent alpha must be >= 1");
  }
  if (mode == SolveMode::normalized) {
    if (q != p) {
      throw InvalidProblem("normalized mode requires q = p");
    }
  } else {
    if (!(alpha <= p)) {
      throw InvalidProblem("this mode requires alpha <= p");
    }
    if (!(p <= q)) {
      throw InvalidProblem("this mode requires p <= q");
    }
    if (mode == SolveMode::rescale && !(q > p)) {
      throw InvalidProblem("rescale mode requires q > p");
    }
  }
  if (variant == LaplacianVariant::gamma && p < 2.0) {
    throw UnsupportedExponent("gamma variant needs p >= 2");
  }
  require_same_domain(g, h);
  require_same_domain(g, f);
  bool h_negative_somewhere = false;
  for (double v : h) {
    if (v > 0.0) {
      throw InvalidProblem("h must be <= 0 everywhere");
    }
    if (v < 0.0) {
      h_negative_somewhere = true;
    }
  }
  if (!h_negative_somewhere) {
    throw InvalidProblem("h must be < 0 on at least one vertex");
  }
  for (double v : f) {
    if (!(v > 0.0)) {
      throw InvalidProblem("f must be > 0 everywhere");
    }
  }
}

double nonneg_power(double u, double e) {
  if (e == 0.0) {
    return 1.0;
  }
  return std::pow(u, e);
}

double energy(const WeightedGraph& g, const ProblemSpec& prob,
              const VertexFunction& u, double lambda) {
  require_same_domain(g, u);
  require_nonnegative(u);
  const double dir = dirichlet_energy(g, u, prob.p, prob.variant);
  return dir / prob.p - (lambda / prob.alpha) * f_moment(g, prob, u);
}

double constraint(const WeightedGraph& g, const ProblemSpec& prob,
                  const VertexFunction& u) {
  require_same_domain(g, u);
  require_nonnegative(u);
  return h_moment(g, prob, u, prob.q) / prob.q + 1.0;
}

Gradients gradients(const WeightedGraph& g, const ProblemSpec& prob,
                    const VertexFunction& u, double lambda) {
  require_same_domain(g, u);
  require_nonnegative(u);
  const VertexFunction lap = p_laplacian(g, u, prob.p, prob.variant);
  std::vector<double> de(g.vertex_count());
  std::vector<double> dg(g.vertex_count());
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    de[i] = -lap[i] - lambda * prob.f[i] * nonneg_power(u[i], prob.alpha - 1.0);
    dg[i] = prob.h[i] * std::pow(u[i], prob.q - 1.0);
  }
  return Gradients{VertexFunction(std::move(de)), VertexFunction(std::move(dg))};
}

double multiplier(const WeightedGraph& g, const ProblemSpec& prob,
                  const VertexFunction& u, double lambda) {
  require_same_domain(g, u);
  require_nonnegative(u);
  const double dir = dirichlet_energy(g, u, prob.p, prob.variant);
  return (dir - lambda * f_moment(g, prob, u)) / prob.q;
}

double rayleigh_quotient(const WeightedGraph& g, const ProblemSpec& prob,
                         const VertexFunction& u) {
  require_same_domain(g, u);
  require_nonnegative(u);
  bool all_zero = true;
  for (double v : u) {
    if (v != 0.0) {
      all_zero = false;
      break;
    }
  }
  if (all_zero) {
    throw ZeroFunction("rayleigh quotient of the zero function");
  }
  const double dir = dirichlet_energy(g, u, prob.p, prob.variant);
  const double numerator = dir + h_moment(g, prob, u, prob.p);
  return numerator * std::pow(f_moment(g, prob, u), -prob.p / prob.alpha);
}

VertexFunction retract(const WeightedGraph& g, const ProblemSpec& prob,
                       const VertexFunction& u, ConstraintKind kind) {
  require_same_domain(g, u);
  require_nonnegative(u);
  double t = 0.0;
  if (kind == ConstraintKind::h_level_set) {
    const double hq = h_moment(g, prob, u, prob.q);  // <= 0
    if (hq == 0.0) {
      throw RetractInfeasible("u vanishes wherever h is negative");
    }
    t = std::pow(prob.q / -hq, 1.0 / prob.q);
  } else {
    const double fa = f_moment(g, prob, u);  // >= 0, zero only for u == 0
    if (fa <= 0.0) {
      throw RetractInfeasible("u is identically zero");
    }
    t = std::pow(prob.alpha / fa, 1.0 / prob.alpha);
  }
  std::vector<double> out(g.vertex_count());
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    out[i] = t * u[i];
  }
  return VertexFunction(std::move(out));
}

}  // namespace yamabe
