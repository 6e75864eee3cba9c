#pragma once

// Shared fixtures: tiny named graphs, seeded random instances and helper
// predicates used across the unit and acceptance suites.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "yamabe/problem_io.hpp"
#include "yamabe/solver.hpp"

namespace support {

using namespace yamabe;

inline bool close(double a, double b, double rel = 1e-12, double abs = 0.0) {
  return std::abs(a - b) <= std::max(abs, rel * std::max(std::abs(a), std::abs(b)));
}

/// K2 with unit data: ids "a","b", mu = (mu1, mu2), one edge of weight w.
inline WeightedGraph k2(double mu1 = 1.0, double mu2 = 1.0, double w = 1.0) {
  return WeightedGraph::build({{"a", mu1}, {"b", mu2}}, {{"a", "b", w}});
}

/// Complete graph on n vertices ("v0".."v9"), all measures and weights 1.
inline WeightedGraph complete(std::size_t n) {
  std::vector<WeightedGraph::VertexRecord> vr;
  std::vector<WeightedGraph::EdgeRecord> er;
  for (std::size_t i = 0; i < n; ++i) {
    vr.emplace_back("v" + std::to_string(i), 1.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      er.emplace_back("v" + std::to_string(i), "v" + std::to_string(j), 1.0);
    }
  }
  return WeightedGraph::build(vr, er);
}

/// Random connected graph: spanning tree plus extra edges, measures and
/// weights in [0.5, 2].
inline WeightedGraph random_graph(std::mt19937_64& rng, std::size_t n_min = 2,
                                  std::size_t n_max = 8) {
  std::uniform_int_distribution<std::size_t> size(n_min, n_max);
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const std::size_t n = size(rng);

  std::vector<WeightedGraph::VertexRecord> vr;
  for (std::size_t i = 0; i < n; ++i) {
    vr.emplace_back("v" + std::to_string(i), weight(rng));
  }
  std::vector<WeightedGraph::EdgeRecord> er;
  std::vector<std::vector<char>> present(n, std::vector<char>(n, 0));
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> parent(0, i - 1);
    const std::size_t j = parent(rng);
    er.emplace_back("v" + std::to_string(j), "v" + std::to_string(i),
                    weight(rng));
    present[j][i] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!present[i][j] && coin(rng) < 0.35) {
        er.emplace_back("v" + std::to_string(i), "v" + std::to_string(j),
                        weight(rng));
        present[i][j] = 1;
      }
    }
  }
  return WeightedGraph::build(vr, er);
}

inline VertexFunction random_h(std::mt19937_64& rng, const WeightedGraph& g) {
  std::uniform_real_distribution<double> dist(-2.0, -0.1);
  std::vector<double> v(g.vertex_count());
  for (double& x : v) {
    x = dist(rng);
  }
  return VertexFunction(v);
}

inline VertexFunction random_f(std::mt19937_64& rng, const WeightedGraph& g) {
  std::uniform_real_distribution<double> dist(0.2, 3.0);
  std::vector<double> v(g.vertex_count());
  for (double& x : v) {
    x = dist(rng);
  }
  return VertexFunction(v);
}

inline VertexFunction random_positive(std::mt19937_64& rng,
                                      const WeightedGraph& g,
                                      double lo = 0.1, double hi = 3.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(g.vertex_count());
  for (double& x : v) {
    x = dist(rng);
  }
  return VertexFunction(v);
}

/// Uniform problem on a given graph: h = -1, f = 1 everywhere.
inline ProblemSpec uniform_problem(const WeightedGraph& g, double p, double q,
                                   double alpha,
                                   SolveMode mode = SolveMode::mu_form,
                                   LaplacianVariant variant =
                                       LaplacianVariant::edge) {
  ProblemSpec prob;
  prob.p = p;
  prob.q = q;
  prob.alpha = alpha;
  prob.h = VertexFunction::constant(g.vertex_count(), -1.0);
  prob.f = VertexFunction::constant(g.vertex_count(), 1.0);
  prob.mode = mode;
  prob.variant = variant;
  return prob;
}

/// Random problem with coefficients drawn from the corpus ranges.
inline ProblemSpec random_problem(std::mt19937_64& rng, const WeightedGraph& g,
                                  double p, double q, double alpha,
                                  SolveMode mode,
                                  LaplacianVariant variant =
                                      LaplacianVariant::edge) {
  ProblemSpec prob;
  prob.p = p;
  prob.q = q;
  prob.alpha = alpha;
  prob.h = random_h(rng, g);
  prob.f = random_f(rng, g);
  prob.mode = mode;
  prob.variant = variant;
  return prob;
}

}  // namespace support
