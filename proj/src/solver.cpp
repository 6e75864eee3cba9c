#include "yamabe/solver.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace yamabe {

namespace {

double weighted_dot(const WeightedGraph& g, const VertexFunction& a,
                    const VertexFunction& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    acc += g.measure(i) * a[i] * b[i];
  }
  return acc;
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      return false;
    }
  }
  return true;
}

// Gaussian elimination with partial pivoting; A is m x m row-major.
bool solve_dense(std::vector<double> A, std::vector<double> b,
                 std::vector<double>& out) {
  const std::size_t m = b.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < m; ++row) {
      if (std::abs(A[row * m + col]) > std::abs(A[pivot * m + col])) {
        pivot = row;
      }
    }
    if (std::abs(A[pivot * m + col]) < 1e-300) {
      return false;
    }
    if (pivot != col) {
      for (std::size_t k = col; k < m; ++k) {
        std::swap(A[pivot * m + k], A[col * m + k]);
      }
      std::swap(b[pivot], b[col]);
    }
    for (std::size_t row = col + 1; row < m; ++row) {
      const double factor = A[row * m + col] / A[col * m + col];
      if (factor == 0.0) {
        continue;
      }
      for (std::size_t k = col; k < m; ++k) {
        A[row * m + k] -= factor * A[col * m + k];
      }
      b[row] -= factor * b[col];
    }
  }
  out.assign(m, 0.0);
  for (std::size_t row = m; row-- > 0;) {
    double acc = b[row];
    for (std::size_t k = row + 1; k < m; ++k) {
      acc -= A[row * m + k] * out[k];
    }
    out[row] = acc / A[row * m + row];
  }
  return all_finite(out);
}

// The two constrained problems share one iteration; this wraps their
// objective, gradient representatives, multiplier estimate and stationarity
// residual.  The h-level-set path pairs the energy with its multiplier as
// grad + m*cgrad; the f-level-set path pairs its objective as grad - m*cgrad.
struct Model {
  const WeightedGraph& g;
  const ProblemSpec& prob;
  double lambda;  // used by the h-level-set path only
  ConstraintKind kind;

  double multiplier_sign() const {
    return kind == ConstraintKind::h_level_set ? 1.0 : -1.0;
  }

  double objective(const VertexFunction& u) const {
    if (kind == ConstraintKind::h_level_set) {
      return energy(g, prob, u, lambda);
    }
    double hp = 0.0;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      hp += g.measure(i) * prob.h[i] * std::pow(u[i], prob.p);
    }
    return (dirichlet_energy(g, u, prob.p, prob.variant) + hp) / prob.p;
  }

  // Signed constraint value: zero on the feasible set.
  double constraint_value(const VertexFunction& u) const {
    if (kind == ConstraintKind::h_level_set) {
      return constraint(g, prob, u);
    }
    double fa = 0.0;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      fa += g.measure(i) * prob.f[i] * std::pow(u[i], prob.alpha);
    }
    return fa / prob.alpha - 1.0;
  }

  Gradients gradients_at(const VertexFunction& u) const {
    if (kind == ConstraintKind::h_level_set) {
      return gradients(g, prob, u, lambda);
    }
    const VertexFunction lap = p_laplacian(g, u, prob.p, prob.variant);
    std::vector<double> grad(g.vertex_count());
    std::vector<double> cgrad(g.vertex_count());
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      grad[i] = -lap[i] + prob.h[i] * std::pow(u[i], prob.p - 1.0);
      cgrad[i] = prob.f[i] * nonneg_power(u[i], prob.alpha - 1.0);
    }
    return Gradients{VertexFunction(std::move(grad)),
                     VertexFunction(std::move(cgrad))};
  }

  double multiplier_estimate(const VertexFunction& u) const {
    if (kind == ConstraintKind::h_level_set) {
      return multiplier(g, prob, u, lambda);
    }
    double hp = 0.0;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      hp += g.measure(i) * prob.h[i] * std::pow(u[i], prob.p);
    }
    return (dirichlet_energy(g, u, prob.p, prob.variant) + hp) / prob.alpha;
  }

  struct Evaluation {
    Gradients grads;
    double multiplier = 0.0;
    double residual_max = 0.0;
    double scale = 1.0;
  };

  Evaluation evaluate(const VertexFunction& u) const {
    Evaluation ev;
    ev.grads = gradients_at(u);
    ev.multiplier = multiplier_estimate(u);
    const double sign = multiplier_sign();
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      const double r =
          ev.grads.energy[i] + sign * ev.multiplier * ev.grads.constraint[i];
      ev.residual_max = std::max(ev.residual_max, std::abs(r));
      ev.scale =
          std::max(ev.scale, std::abs(ev.multiplier * ev.grads.constraint[i]));
    }
    if (kind == ConstraintKind::h_level_set) {
      ev.scale = residual_scale(g, prob, u, lambda);
    }
    return ev;
  }
};

// Stationarity system for the local polish, in log coordinates with the
// multiplier as the last unknown: x = (log u, m).
struct PolishSystem {
  const Model& model;

  std::size_t unknowns() const { return model.g.vertex_count() + 1; }

  VertexFunction point(const std::vector<double>& x) const {
    std::vector<double> u(model.g.vertex_count());
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = std::exp(x[i]);
    }
    return VertexFunction(std::move(u));
  }

  // Rows 0..n-1: pointwise stationarity; row n: constraint value.  Returns
  // nothing when the evaluation overflows.
  std::optional<std::vector<double>> residual_rows(
      const std::vector<double>& x) const {
    const std::size_t n = model.g.vertex_count();
    std::vector<double> F(n + 1);
    try {
      const VertexFunction u = point(x);
      const Gradients gr = model.gradients_at(u);
      const double sign = model.multiplier_sign();
      for (std::size_t i = 0; i < n; ++i) {
        F[i] = gr.energy[i] + sign * x[n] * gr.constraint[i];
      }
      F[n] = model.constraint_value(u);
    } catch (const Error&) {
      return std::nullopt;
    }
    if (!all_finite(F)) {
      return std::nullopt;
    }
    return F;
  }

  double scale(const std::vector<double>& x) const {
    const std::size_t n = model.g.vertex_count();
    try {
      const VertexFunction u = point(x);
      if (model.kind == ConstraintKind::h_level_set) {
        return residual_scale(model.g, model.prob, u, model.lambda);
      }
      const Gradients gr = model.gradients_at(u);
      double s = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        s = std::max(s, std::abs(x[n] * gr.constraint[i]));
      }
      return s;
    } catch (const Error&) {
      return 1.0;
    }
  }
};

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) {
    m = std::max(m, std::abs(x));
  }
  return m;
}

// Damped Newton on the stationarity system, seeded from the current iterate.
// Energy comparisons bottom out at sqrt(roundoff) residuals, so the last
// decades to the residual target are closed with a residual-driven method.
std::optional<VertexFunction> newton_polish(const Model& model,
                                            const VertexFunction& u_seed,
                                            double m_seed, double target_tol) {
  const std::size_t n = model.g.vertex_count();
  const PolishSystem sys{model};
  std::vector<double> x(n + 1);
  double u_max = u_seed.max();
  if (!(u_max > 0.0)) {
    return std::nullopt;
  }
  for (std::size_t i = 0; i < n; ++i) {
    // Clamped components sit at zero; nudge them into the chart.
    x[i] = std::log(std::max(u_seed[i], 1e-12 * u_max));
  }
  x[n] = m_seed;

  std::optional<std::vector<double>> F0 = sys.residual_rows(x);
  if (!F0) {
    return std::nullopt;
  }
  std::vector<double> F = std::move(*F0);
  const std::size_t m = n + 1;
  for (int iter = 0; iter < 60; ++iter) {
    double stat_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      stat_max = std::max(stat_max, std::abs(F[i]));
    }
    if (stat_max <= 0.5 * target_tol * sys.scale(x) &&
        std::abs(F[n]) <= 1e-13) {
      return sys.point(x);
    }

    std::vector<double> J(m * m, 0.0);
    const double delta = 1e-6;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> xp = x, xm = x;
      xp[k] += delta;
      xm[k] -= delta;
      const auto Fp = sys.residual_rows(xp);
      const auto Fm = sys.residual_rows(xm);
      if (!Fp || !Fm) {
        return std::nullopt;
      }
      for (std::size_t row = 0; row < m; ++row) {
        J[row * m + k] = ((*Fp)[row] - (*Fm)[row]) / (2.0 * delta);
      }
    }
    {  // multiplier column is linear
      const VertexFunction u = sys.point(x);
      const Gradients gr = model.gradients_at(u);
      const double sign = model.multiplier_sign();
      for (std::size_t row = 0; row < n; ++row) {
        J[row * m + n] = sign * gr.constraint[row];
      }
      J[n * m + n] = 0.0;
    }

    std::vector<double> rhs(m);
    for (std::size_t row = 0; row < m; ++row) {
      rhs[row] = -F[row];
    }
    std::vector<double> step;
    if (!solve_dense(std::move(J), std::move(rhs), step)) {
      return std::nullopt;
    }

    const double fnorm = sup_norm(F);
    double t = 1.0;
    bool moved = false;
    while (t > 1e-8) {
      std::vector<double> xt(m);
      bool in_range = true;
      for (std::size_t k = 0; k < m; ++k) {
        xt[k] = x[k] + t * step[k];
        // Exponents just above 1 produce components like B^{1/(alpha-1)},
        // so the chart must reach far below 1; stop only near overflow.
        if (k < n && std::abs(xt[k]) > 600.0) {
          in_range = false;
        }
      }
      if (in_range) {
        const auto Ft = sys.residual_rows(xt);
        if (Ft && sup_norm(*Ft) <= (1.0 - 1e-4 * t) * fnorm) {
          x = std::move(xt);
          F = *Ft;
          moved = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!moved) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

struct StartOutcome {
  bool success = false;
  VertexFunction u;
  double multiplier = 0.0;
  double objective = 0.0;
  double residual_max = 0.0;
  long iterations = 0;
};

// Accept a polished point if it survives the standard success test.
std::optional<StartOutcome> accept_polished(const Model& model,
                                            const VertexFunction& polished,
                                            const SolveOptions& opts) {
  try {
    const VertexFunction u =
        retract(model.g, model.prob, polished, model.kind);
    const Model::Evaluation ev = model.evaluate(u);
    if (ev.residual_max <= opts.tol * ev.scale && u.min() > 0.0) {
      StartOutcome out;
      out.success = true;
      out.u = u;
      out.multiplier = ev.multiplier;
      out.objective = model.objective(u);
      out.residual_max = ev.residual_max;
      return out;
    }
  } catch (const Error&) {
  }
  return std::nullopt;
}

// Exponents just above 1 can push the minimizer's smallest component below
// the range of doubles; the descent then pins against the boundary while
// interior stationary points in other basins remain representable.  Hunt for
// one with Newton from fresh feasible seeds.
std::optional<StartOutcome> stationary_point_search(const Model& model,
                                                    const SolveOptions& opts,
                                                    std::uint64_t seed) {
  const std::size_t n = model.g.vertex_count();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double sigmas[] = {0.5, 1.0, 2.0};
  for (int attempt = 0; attempt < 12; ++attempt) {
    std::vector<double> v(n);
    const double sigma = sigmas[attempt % 3];
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = std::exp(sigma * normal(rng));
    }
    VertexFunction u0;
    try {
      u0 = retract(model.g, model.prob, VertexFunction(std::move(v)),
                   model.kind);
    } catch (const Error&) {
      continue;
    }
    const auto polished =
        newton_polish(model, u0, model.multiplier_estimate(u0), opts.tol);
    if (!polished) {
      continue;
    }
    if (auto out = accept_polished(model, *polished, opts)) {
      return out;
    }
  }
  return std::nullopt;
}

StartOutcome run_start(const Model& model, const VertexFunction& u0,
                       const SolveOptions& opts, int start_index,
                       std::uint64_t fallback_seed, const TraceSink& trace) {
  const WeightedGraph& g = model.g;
  StartOutcome out;
  VertexFunction u = u0;
  double obj = model.objective(u);
  double next_step = opts.initial_step;
  double last_polish_at = std::numeric_limits<double>::infinity();

  if (trace) {
    trace(IterateRecord{start_index, 0, IterateKind::initial, obj,
                        std::abs(model.constraint_value(u)), u.min()});
  }

  for (long iter = 0; iter < opts.max_iter; ++iter) {
    const Model::Evaluation ev = model.evaluate(u);
    out.iterations = iter;
    if (ev.residual_max <= opts.tol * ev.scale && u.min() > 0.0) {
      out.success = true;
      out.u = u;
      out.multiplier = ev.multiplier;
      out.objective = obj;
      out.residual_max = ev.residual_max;
      return out;
    }

    // Local polish once the descent phase is inside the Newton basin, plus a
    // periodic attempt for instances whose tail convergence is slow.
    const bool basin_trigger = ev.residual_max <= 1e-3 * ev.scale &&
                               ev.residual_max < 0.5 * last_polish_at;
    const bool periodic_trigger = iter > 0 && iter % 250 == 0;
    if (basin_trigger || periodic_trigger) {
      last_polish_at = std::min(last_polish_at, ev.residual_max);
      if (auto polished =
              newton_polish(model, u, ev.multiplier, opts.tol)) {
        try {
          u = retract(g, model.prob, *polished, model.kind);
          obj = model.objective(u);
          if (trace) {
            trace(IterateRecord{start_index, iter + 1,
                                IterateKind::polish_jump, obj,
                                std::abs(model.constraint_value(u)), u.min()});
          }
          continue;  // the next evaluation applies the success test
        } catch (const Error&) {
          // fall through to a plain gradient step
        }
      }
    }

    // Direction: measure-orthogonal projection of the gradient onto the
    // tangent space of the constraint set.  Stepping along the raw gradient
    // stalls once it is dominated by its normal component, far above the
    // residual target.
    const double denom = weighted_dot(g, ev.grads.constraint,
                                      ev.grads.constraint);
    if (denom <= 0.0) {
      break;  // constraint gradient vanished; no usable direction
    }
    const double coeff =
        weighted_dot(g, ev.grads.constraint, ev.grads.energy) / denom;
    std::vector<double> dir(g.vertex_count());
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      dir[i] = ev.grads.energy[i] - coeff * ev.grads.constraint[i];
    }
    double dir_norm2 = 0.0;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      dir_norm2 += g.measure(i) * dir[i] * dir[i];
    }
    if (dir_norm2 <= 0.0) {
      break;  // stationary but the residual test did not fire
    }

    double t = next_step;
    bool accepted = false;
    int infeasible = 0;
    VertexFunction trial;
    double trial_obj = 0.0;
    for (int ls = 0; ls < 80 && !accepted; ++ls) {
      std::vector<double> raw(g.vertex_count());
      bool finite = true;
      bool moved = false;
      for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        raw[i] = std::max(u[i] - t * dir[i], opts.positivity_floor);
        finite = finite && std::isfinite(raw[i]);
        moved = moved || raw[i] != u[i];
      }
      if (!finite) {
        t *= opts.armijo_shrink;
        continue;
      }
      if (!moved) {
        break;  // below floating-point resolution; nothing to accept
      }
      try {
        trial = retract(g, model.prob, VertexFunction(std::move(raw)),
                        model.kind);
      } catch (const RetractInfeasible&) {
        t *= 0.5;
        if (++infeasible > 10) {
          return out;  // abandon this start, advance the restart counter
        }
        continue;
      } catch (const NonFiniteValue&) {
        t *= opts.armijo_shrink;
        continue;
      }
      trial_obj = model.objective(trial);
      if (trial_obj <= obj - opts.armijo_c * t * dir_norm2) {
        accepted = true;
        break;
      }
      t *= opts.armijo_shrink;
    }
    if (!accepted) {
      // Stagnation: the energy landscape is flat to roundoff.  Decide the
      // start with Newton, first from here, then from fresh seeds.
      out.iterations = iter + 1;
      if (auto polished = newton_polish(model, u, ev.multiplier, opts.tol)) {
        if (auto fin = accept_polished(model, *polished, opts)) {
          fin->iterations = out.iterations;
          return *fin;
        }
      }
      if (auto fin = stationary_point_search(model, opts, fallback_seed)) {
        fin->iterations = out.iterations;
        return *fin;
      }
      return out;
    }
    u = std::move(trial);
    obj = trial_obj;
    next_step = 2.0 * t;
    if (trace) {
      trace(IterateRecord{start_index, iter + 1, IterateKind::armijo_step, obj,
                          std::abs(model.constraint_value(u)), u.min()});
    }
  }
  out.iterations = opts.max_iter;
  if (auto fin = stationary_point_search(model, opts, fallback_seed)) {
    fin->iterations = out.iterations;
    return *fin;
  }
  return out;
}

VertexFunction initial_point(const Model& model, std::mt19937_64& rng,
                             bool perturb) {
  const std::size_t n = model.g.vertex_count();
  std::vector<double> v(n, 1.0);
  if (perturb) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = std::exp(0.5 * normal(rng));
    }
  }
  try {
    return retract(model.g, model.prob, VertexFunction(std::move(v)),
                   model.kind);
  } catch (const RetractInfeasible&) {
    throw InfeasibleProblem("no admissible starting point on the constraint");
  }
}

ConstrainedMinimum run_multistart(const Model& model, const SolveOptions& opts,
                                  const TraceSink& trace) {
  opts.validate();
  model.prob.validate(model.g);

  std::mt19937_64 rng(opts.seed);
  std::optional<StartOutcome> best;
  int best_start = 0;
  long total_iterations = 0;

  for (int start = 0; start <= opts.restarts; ++start) {
    const VertexFunction u0 = initial_point(model, rng, start > 0);
    const std::uint64_t fallback_seed =
        opts.seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(start + 1));
    StartOutcome outcome = run_start(model, u0, opts, start, fallback_seed, trace);
    total_iterations += outcome.iterations;
    if (outcome.success && (!best || outcome.objective < best->objective)) {
      best = std::move(outcome);
      best_start = start;
    }
  }
  if (!best) {
    throw NoConvergence("no start reached the residual target");
  }
  ConstrainedMinimum result;
  result.u = std::move(best->u);
  result.multiplier = best->multiplier;
  result.energy = best->objective;
  result.residual_max = best->residual_max;
  result.iterations = total_iterations;
  result.winning_start = best_start;
  return result;
}

}  // namespace

void SolveOptions::validate() const {
  if (!(tol > 0.0)) {
    throw InvalidArgument("tol must be positive");
  }
  if (max_iter <= 0) {
    throw InvalidArgument("max_iter must be positive");
  }
  if (restarts < 0) {
    throw InvalidArgument("restarts must be nonnegative");
  }
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) {
    throw InvalidArgument("armijo_c must lie in (0,1)");
  }
  if (!(armijo_shrink > 0.0 && armijo_shrink < 1.0)) {
    throw InvalidArgument("armijo_shrink must lie in (0,1)");
  }
  if (!(initial_step > 0.0)) {
    throw InvalidArgument("initial_step must be positive");
  }
  if (!(positivity_floor >= 0.0)) {
    throw InvalidArgument("positivity_floor must be nonnegative");
  }
}

ConstrainedMinimum minimize_energy_on_constraint(const WeightedGraph& g,
                                                 const ProblemSpec& prob,
                                                 double lambda,
                                                 const SolveOptions& opts,
                                                 const TraceSink& trace) {
  Model model{g, prob, lambda, ConstraintKind::h_level_set};
  return run_multistart(model, opts, trace);
}

std::pair<VertexFunction, double> rescale_solution(const VertexFunction& u_hat,
                                                   double mu,
                                                   double lambda_tilde,
                                                   double p, double q,
                                                   double alpha) {
  if (q == p) {
    throw DegenerateScaling("scaling exponent 1/(q-p) is singular at q = p");
  }
  if (!(q > p)) {
    throw InvalidArgument("rescaling requires q > p");
  }
  if (!(mu > 0.0)) {
    throw NonPositiveMultiplier("rescaling requires mu > 0");
  }
  const double factor = std::pow(mu, 1.0 / (q - p));
  std::vector<double> u(u_hat.size());
  for (std::size_t i = 0; i < u_hat.size(); ++i) {
    u[i] = factor * u_hat[i];
  }
  const double lambda = std::pow(mu, (p - alpha) / (q - p)) * lambda_tilde;
  return {VertexFunction(std::move(u)), lambda};
}

SolveResult solve(const WeightedGraph& g, const ProblemSpec& prob,
                  double lambda_input, const SolveOptions& opts,
                  const TraceSink& trace) {
  prob.validate(g);
  opts.validate();

  SolveResult result;
  result.mode = prob.mode;

  switch (prob.mode) {
    case SolveMode::mu_form: {
      ConstrainedMinimum m =
          minimize_energy_on_constraint(g, prob, lambda_input, opts, trace);
      result.u = std::move(m.u);
      result.lambda = lambda_input;
      result.mu = m.multiplier;
      result.energy = m.energy;
      result.iterations = m.iterations;
      result.restarts_used = m.winning_start;
      break;
    }
    case SolveMode::rescale: {
      if (!(lambda_input < 0.0)) {
        throw BadLambdaSign("rescale mode needs lambda_tilde < 0");
      }
      ConstrainedMinimum m =
          minimize_energy_on_constraint(g, prob, lambda_input, opts, trace);
      auto [u, lambda] = rescale_solution(m.u, m.multiplier, lambda_input,
                                          prob.p, prob.q, prob.alpha);
      result.u = std::move(u);
      result.lambda = lambda;
      result.mu = 1.0;  // consumed by the scaling
      result.energy = m.energy;
      result.iterations = m.iterations;
      result.restarts_used = m.winning_start;
      break;
    }
    case SolveMode::normalized: {
      Model model{g, prob, 0.0, ConstraintKind::f_level_set};
      ConstrainedMinimum m = run_multistart(model, opts, trace);
      result.u = std::move(m.u);
      result.lambda = m.multiplier;
      result.mu = 1.0;
      result.energy = m.energy;
      result.iterations = m.iterations;
      result.restarts_used = m.winning_start;
      break;
    }
  }

  const double mu_for_residual =
      prob.mode == SolveMode::mu_form ? result.mu : 1.0;
  auto [r, rmax] = residual(g, prob, result.u, result.lambda, mu_for_residual);
  (void)r;
  result.residual_max = rmax;
  return result;
}

PositivityCertificate positivity_certificate(const WeightedGraph& g,
                                             const VertexFunction& u,
                                             double p) {
  require_same_domain(g, u);
  PositivityCertificate cert;
  cert.min_value = u[0];
  cert.min_vertex = 0;
  for (std::size_t i = 1; i < u.size(); ++i) {
    if (u[i] < cert.min_value) {
      cert.min_value = u[i];
      cert.min_vertex = i;
    }
  }
  if (cert.min_value > 0.0) {
    return cert;
  }
  // Walk the minimal level set in vertex order; its boundary (if u is not
  // constant) carries a vertex where every neighbor is >= u_i and at least
  // one is strictly larger, forcing -(Delta_p u) < 0 there.
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != cert.min_value) {
      continue;
    }
    for (const auto& nb : g.neighbors(i)) {
      if (u[nb.vertex] > u[i]) {
        cert.has_witness = true;
        cert.witness_vertex = i;
        cert.witness_neighbor = nb.vertex;
        double acc = 0.0;
        for (const auto& nb2 : g.neighbors(i)) {
          acc += nb2.weight * signed_power(u[nb2.vertex] - u[i], p);
        }
        cert.witness_laplacian = -acc / g.measure(i);
        return cert;
      }
    }
  }
  return cert;  // constant nonpositive u: no witness exists
}

}  // namespace yamabe
