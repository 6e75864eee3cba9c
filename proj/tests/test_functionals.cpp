#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace yamabe;
using support::close;

TEST_SUITE_BEGIN("functionals");

namespace {

// Centered difference of a scalar functional along v.
template <typename F>
double centered(const F& func, const WeightedGraph& g, const VertexFunction& u,
                const VertexFunction& v, double t) {
  std::vector<double> up(g.vertex_count()), um(g.vertex_count());
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    up[i] = u[i] + t * v[i];
    um[i] = u[i] - t * v[i];
  }
  return (func(VertexFunction(up)) - func(VertexFunction(um))) / (2.0 * t);
}

}  // namespace

TEST_CASE("problem validation enforces the hypotheses") {
  const WeightedGraph g = support::k2();
  ProblemSpec prob = support::uniform_problem(g, 2.0, 4.0, 2.0);
  CHECK_NOTHROW(prob.validate(g));

  ProblemSpec bad = prob;
  bad.h = VertexFunction({-1.0, 0.5});
  CHECK_THROWS_AS(bad.validate(g), InvalidProblem);

  bad = prob;
  bad.h = VertexFunction::constant(2, 0.0);
  CHECK_THROWS_AS(bad.validate(g), InvalidProblem);

  bad = prob;
  bad.f = VertexFunction({1.0, 0.0});
  CHECK_THROWS_AS(bad.validate(g), InvalidProblem);

  bad = prob;
  bad.alpha = 3.0;  // alpha > p in a constrained mode
  CHECK_THROWS_AS(bad.validate(g), InvalidProblem);

  bad = prob;
  bad.q = 1.5;  // q < p
  CHECK_THROWS_AS(bad.validate(g), InvalidProblem);

  bad = prob;
  bad.mode = SolveMode::rescale;
  bad.q = 2.0;  // rescale needs q > p
  CHECK_THROWS_AS(bad.validate(g), InvalidProblem);

  bad = prob;
  bad.mode = SolveMode::normalized;
  bad.q = 4.0;  // normalized needs q = p
  CHECK_THROWS_AS(bad.validate(g), InvalidProblem);

  bad = prob;
  bad.variant = LaplacianVariant::gamma;
  bad.p = 1.5;
  bad.q = 1.5;
  bad.alpha = 1.2;
  bad.mode = SolveMode::normalized;
  CHECK_THROWS_AS(bad.validate(g), UnsupportedExponent);

  // normalized mode allows alpha > p
  ProblemSpec norm = support::uniform_problem(g, 2.0, 2.0, 3.0,
                                              SolveMode::normalized);
  CHECK_NOTHROW(norm.validate(g));
}

TEST_CASE("energy values match hand evaluation") {
  const WeightedGraph g = support::k2();
  const ProblemSpec prob = support::uniform_problem(g, 2.0, 4.0, 2.0);
  CHECK(energy(g, prob, VertexFunction({1.0, 1.0}), -2.0) == 2.0);
  CHECK(energy(g, prob, VertexFunction::constant(2, 0.0), -2.0) == 0.0);
  CHECK(close(energy(g, prob, VertexFunction({0.0, 1.0}), 0.0), 0.5, 1e-15));
  CHECK_THROWS_AS(energy(g, prob, VertexFunction({-0.1, 1.0}), 0.0),
                  NegativeInput);
}

TEST_CASE("constraint values match hand evaluation") {
  const WeightedGraph g = support::k2();
  const ProblemSpec prob = support::uniform_problem(g, 2.0, 4.0, 2.0);
  const double c = std::pow(2.0, 0.25);
  CHECK(close(constraint(g, prob, VertexFunction({c, c})), 0.0, 1e-15, 1e-15));
  CHECK(constraint(g, prob, VertexFunction::constant(2, 0.0)) == 1.0);

  const ProblemSpec prob2 = support::uniform_problem(g, 2.0, 2.0, 2.0);
  CHECK(constraint(g, prob2, VertexFunction({1.0, 1.0})) == 0.0);
}

TEST_CASE("gradient representatives match hand evaluation") {
  const WeightedGraph g = support::k2();
  const ProblemSpec prob = support::uniform_problem(g, 2.0, 4.0, 2.0);
  const Gradients gr = gradients(g, prob, VertexFunction({1.0, 1.0}), -1.0);
  CHECK(gr.energy[0] == 1.0);
  CHECK(gr.energy[1] == 1.0);
  CHECK(gr.constraint[0] == -1.0);
  CHECK(gr.constraint[1] == -1.0);

  const Gradients zero = gradients(g, prob, VertexFunction::constant(2, 0.0),
                                   -1.0);
  CHECK(zero.energy[0] == 0.0);
  CHECK(zero.energy[1] == 0.0);
  CHECK(zero.constraint[0] == 0.0);
  CHECK(zero.constraint[1] == 0.0);
}

TEST_CASE("gradients agree with centered differences on random instances") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> lam(-2.0, 2.0);
  const double t = 1e-6;
  for (int trial = 0; trial < 30; ++trial) {
    const WeightedGraph g = support::random_graph(rng, 2, 8);
    for (auto [p, q, alpha] : {std::tuple{2.0, 4.0, 2.0},
                               std::tuple{3.0, 4.0, 2.0},
                               std::tuple{2.5, 2.5, 1.5}}) {
      const ProblemSpec prob = support::random_problem(
          rng, g, p, q, alpha, SolveMode::mu_form);
      const VertexFunction u = support::random_positive(rng, g, 0.5, 2.0);
      const VertexFunction v = support::random_positive(rng, g, -1.0, 1.0);
      const double lambda = lam(rng);
      const Gradients gr = gradients(g, prob, u, lambda);

      std::vector<double> de_v(g.vertex_count()), dg_v(g.vertex_count());
      for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        de_v[i] = gr.energy[i] * v[i];
        dg_v[i] = gr.constraint[i] * v[i];
      }
      const double pair_e = integrate(g, VertexFunction(de_v));
      const double pair_g = integrate(g, VertexFunction(dg_v));
      const double cd_e = centered(
          [&](const VertexFunction& w) { return energy(g, prob, w, lambda); },
          g, u, v, t);
      const double cd_g = centered(
          [&](const VertexFunction& w) { return constraint(g, prob, w); },
          g, u, v, t);
      CHECK(std::abs(pair_e - cd_e) <= 1e-6 * std::max(1.0, std::abs(pair_e)));
      CHECK(std::abs(pair_g - cd_g) <= 1e-6 * std::max(1.0, std::abs(pair_g)));
    }
  }
}

TEST_CASE("pairing the energy gradient with u recovers the multiplier") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> lam(-2.0, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    const WeightedGraph g = support::random_graph(rng, 2, 8);
    const ProblemSpec prob = support::random_problem(
        rng, g, 2.5, 3.5, 1.5, SolveMode::mu_form);
    const VertexFunction u = support::random_positive(rng, g, 0.3, 2.0);
    const double lambda = lam(rng);
    const Gradients gr = gradients(g, prob, u, lambda);
    std::vector<double> du(g.vertex_count());
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      du[i] = gr.energy[i] * u[i];
    }
    const double pairing = integrate(g, VertexFunction(du));
    double fa = 0.0;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      fa += g.measure(i) * prob.f[i] * std::pow(u[i], prob.alpha);
    }
    const double direct =
        dirichlet_energy(g, u, prob.p, prob.variant) - lambda * fa;
    CHECK(close(pairing, direct, 1e-10));
    CHECK(close(multiplier(g, prob, u, lambda), direct / prob.q, 1e-12));
  }
}

TEST_CASE("multiplier values match hand evaluation") {
  const WeightedGraph g = support::k2();
  const ProblemSpec prob = support::uniform_problem(g, 2.0, 4.0, 2.0);
  const double c = std::pow(2.0, 0.25);
  CHECK(close(multiplier(g, prob, VertexFunction({c, c}), -1.0),
              std::sqrt(2.0) / 2.0, 1e-12));
  CHECK(multiplier(g, prob, VertexFunction::constant(2, 2.0), 0.0) == 0.0);
}

TEST_CASE("multiplier is positive on the constraint set for negative lambda") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> lam(-3.0, -0.05);
  for (int trial = 0; trial < 50; ++trial) {
    const WeightedGraph g = support::random_graph(rng, 2, 8);
    const ProblemSpec prob = support::random_problem(
        rng, g, 2.0, 3.0, 1.5, SolveMode::mu_form);
    const VertexFunction u0 = support::random_positive(rng, g, 0.2, 2.0);
    const VertexFunction u = retract(g, prob, u0, ConstraintKind::h_level_set);
    CHECK(multiplier(g, prob, u, lam(rng)) > 0.0);
  }
}

TEST_CASE("rayleigh quotient: hand value, scale invariance, identity") {
  const WeightedGraph g = support::k2();
  const ProblemSpec prob = support::uniform_problem(g, 2.0, 2.0, 2.0,
                                                    SolveMode::normalized);
  CHECK(close(rayleigh_quotient(g, prob, VertexFunction({1.0, 1.0})), -1.0,
              1e-15));
  CHECK_THROWS_AS(rayleigh_quotient(g, prob, VertexFunction::constant(2, 0.0)),
                  ZeroFunction);

  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    const WeightedGraph rg = support::random_graph(rng, 2, 8);
    const ProblemSpec rp = support::random_problem(rng, rg, 2.5, 2.5, 2.0,
                                                   SolveMode::normalized);
    const VertexFunction u = support::random_positive(rng, rg, 0.2, 2.0);
    const double base = rayleigh_quotient(rg, rp, u);
    std::vector<double> scaled(rg.vertex_count());
    for (std::size_t i = 0; i < rg.vertex_count(); ++i) {
      scaled[i] = 7.3 * u[i];
    }
    CHECK(close(rayleigh_quotient(rg, rp, VertexFunction(scaled)), base,
                1e-12));

    // On the f-normalization set the quotient is p * alpha^{-p/alpha} times
    // the normalized-mode objective.
    const VertexFunction un = retract(rg, rp, u, ConstraintKind::f_level_set);
    double hp = 0.0;
    for (std::size_t i = 0; i < rg.vertex_count(); ++i) {
      hp += rg.measure(i) * rp.h[i] * std::pow(un[i], rp.p);
    }
    const double objective =
        (dirichlet_energy(rg, un, rp.p, rp.variant) + hp) / rp.p;
    const double expected =
        rp.p * std::pow(rp.alpha, -rp.p / rp.alpha) * objective;
    CHECK(close(rayleigh_quotient(rg, rp, un), expected, 1e-11));
  }
}

TEST_CASE("retraction reaches the constraint sets") {
  const WeightedGraph g = support::k2();
  const ProblemSpec prob = support::uniform_problem(g, 2.0, 4.0, 2.0);
  const VertexFunction r =
      retract(g, prob, VertexFunction({1.0, 1.0}), ConstraintKind::h_level_set);
  const double c = std::pow(2.0, 0.25);
  CHECK(close(r[0], c, 1e-15));
  CHECK(close(r[1], c, 1e-15));
  CHECK(std::abs(constraint(g, prob, r)) <= 1e-14);

  // idempotence
  const VertexFunction r2 = retract(g, prob, r, ConstraintKind::h_level_set);
  CHECK(close(r2[0], r[0], 1e-14));
  CHECK(close(r2[1], r[1], 1e-14));

  // infeasible: u vanishes wherever h < 0
  ProblemSpec partial = support::uniform_problem(g, 2.0, 2.0, 2.0);
  partial.h = VertexFunction({-1.0, 0.0});
  CHECK_THROWS_AS(retract(g, partial, VertexFunction({0.0, 1.0}),
                          ConstraintKind::h_level_set),
                  RetractInfeasible);
}

TEST_CASE("retraction is invariant along rays and idempotent at random") {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> td(0.05, 20.0);
  for (int trial = 0; trial < 40; ++trial) {
    const WeightedGraph g = support::random_graph(rng, 2, 8);
    const ProblemSpec prob = support::random_problem(
        rng, g, 2.0, 3.0, 1.5, SolveMode::mu_form);
    const VertexFunction u = support::random_positive(rng, g, 0.1, 2.0);
    for (ConstraintKind kind :
         {ConstraintKind::h_level_set, ConstraintKind::f_level_set}) {
      const VertexFunction r = retract(g, prob, u, kind);
      const double t = td(rng);
      std::vector<double> scaled(g.vertex_count());
      for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        scaled[i] = t * u[i];
      }
      const VertexFunction r_ray =
          retract(g, prob, VertexFunction(scaled), kind);
      const VertexFunction r_again = retract(g, prob, r, kind);
      for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        CHECK(close(r_ray[i], r[i], 1e-12));
        CHECK(close(r_again[i], r[i], 1e-14));
      }
    }
  }
}

TEST_CASE("q-norm and alpha-moment bounds hold for retracted functions") {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 50; ++trial) {
    const WeightedGraph g = support::random_graph(rng, 2, 8);
    const ProblemSpec prob = support::random_problem(
        rng, g, 2.0, 3.0, 1.5, SolveMode::mu_form);
    const VertexFunction u = retract(
        g, prob, support::random_positive(rng, g, 0.05, 2.0),
        ConstraintKind::h_level_set);

    double neg_h_min = -prob.h[0];
    double f_max = prob.f[0];
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      neg_h_min = std::min(neg_h_min, -prob.h[i]);
      f_max = std::max(f_max, prob.f[i]);
    }
    const double cap = prob.q / neg_h_min;
    const double uq = lp_norm(g, u, prob.q);
    CHECK(std::pow(uq, prob.q) <= cap + 1e-12 * std::max(1.0, cap));
    const double cap_alpha = std::pow(cap, prob.alpha / prob.q);
    CHECK(std::pow(uq, prob.alpha) <=
          cap_alpha + 1e-12 * std::max(1.0, cap_alpha));

    double fa = 0.0;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      fa += g.measure(i) * prob.f[i] * std::pow(u[i], prob.alpha);
    }
    const double holder = f_max *
                          std::pow(g.volume(), 1.0 - prob.alpha / prob.q) *
                          std::pow(uq, prob.alpha);
    CHECK(fa >= 0.0);
    CHECK(fa <= holder + 1e-12 * std::max(1.0, holder));
  }
}

TEST_SUITE_END();
