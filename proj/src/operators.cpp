#include "yamabe/operators.hpp"

#include <cmath>
#include <vector>

namespace yamabe {

namespace {

void require_p_above_one(double p) {
  if (!(p > 1.0)) {
    throw UnsupportedExponent("p must be > 1");
  }
}

// |g|^{p-2} with the p = 2 convention 0^0 = 1.
double grad_power(double gn, double p) {
  if (p == 2.0) {
    return 1.0;
  }
  return std::pow(gn, p - 2.0);
}

std::vector<double> gamma_gradient(const WeightedGraph& g,
                                   const VertexFunction& u) {
  std::vector<double> gn(g.vertex_count(), 0.0);
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    double acc = 0.0;
    for (const auto& nb : g.neighbors(i)) {
      const double d = u[nb.vertex] - u[i];
      acc += nb.weight * d * d;
    }
    gn[i] = std::sqrt(acc / (2.0 * g.measure(i)));
  }
  return gn;
}

}  // namespace

const char* to_string(LaplacianVariant v) {
  return v == LaplacianVariant::edge ? "edge" : "gamma";
}

double signed_power(double x, double p) {
  if (x > 0.0) {
    return std::pow(x, p - 1.0);
  }
  if (x < 0.0) {
    return -std::pow(-x, p - 1.0);
  }
  return 0.0;
}

VertexFunction p_laplacian(const WeightedGraph& g, const VertexFunction& u,
                           double p, LaplacianVariant variant) {
  require_same_domain(g, u);
  require_p_above_one(p);
  std::vector<double> out(g.vertex_count(), 0.0);

  if (variant == LaplacianVariant::edge) {
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      double acc = 0.0;
      for (const auto& nb : g.neighbors(i)) {
        acc += nb.weight * signed_power(u[nb.vertex] - u[i], p);
      }
      out[i] = acc / g.measure(i);
    }
  } else {
    if (p < 2.0) {
      throw UnsupportedExponent(
          "gamma variant needs p >= 2 (|grad u|^{p-2} is singular below 2)");
    }
    const std::vector<double> gn = gamma_gradient(g, u);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      double acc = 0.0;
      for (const auto& nb : g.neighbors(i)) {
        const double coeff =
            grad_power(gn[nb.vertex], p) + grad_power(gn[i], p);
        acc += coeff * nb.weight * (u[nb.vertex] - u[i]);
      }
      out[i] = acc / (2.0 * g.measure(i));
    }
  }
  return VertexFunction(std::move(out));
}

VertexFunction gradient_norm(const WeightedGraph& g, const VertexFunction& u,
                             double p, LaplacianVariant variant) {
  require_same_domain(g, u);
  if (variant == LaplacianVariant::gamma) {
    return VertexFunction(gamma_gradient(g, u));
  }
  require_p_above_one(p);
  std::vector<double> out(g.vertex_count(), 0.0);
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    double acc = 0.0;
    for (const auto& nb : g.neighbors(i)) {
      acc += nb.weight * std::pow(std::abs(u[nb.vertex] - u[i]), p);
    }
    out[i] = std::pow(acc / (2.0 * g.measure(i)), 1.0 / p);
  }
  return VertexFunction(std::move(out));
}

double dirichlet_energy(const WeightedGraph& g, const VertexFunction& u,
                        double p, LaplacianVariant variant) {
  require_same_domain(g, u);
  require_p_above_one(p);
  if (variant == LaplacianVariant::edge) {
    double acc = 0.0;
    for (const auto& e : g.edges()) {
      acc += e.weight * std::pow(std::abs(u[e.b] - u[e.a]), p);
    }
    return acc;
  }
  const std::vector<double> gn = gamma_gradient(g, u);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    acc += g.measure(i) * std::pow(gn[i], p);
  }
  return acc;
}

double lp_norm(const WeightedGraph& g, const VertexFunction& u, double r) {
  require_same_domain(g, u);
  if (!(r >= 1.0)) {
    throw UnsupportedExponent("lp_norm needs r >= 1");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    acc += g.measure(i) * std::pow(std::abs(u[i]), r);
  }
  return std::pow(acc, 1.0 / r);
}

double sobolev_norm(const WeightedGraph& g, const VertexFunction& u, double p,
                    LaplacianVariant variant) {
  double mass = 0.0;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    mass += g.measure(i) * std::pow(std::abs(u[i]), p);
  }
  return std::pow(dirichlet_energy(g, u, p, variant) + mass, 1.0 / p);
}

}  // namespace yamabe
