#pragma once

#include "yamabe/graph.hpp"

namespace yamabe {

/// The two discrete p-Laplacian flavors.
///   edge:  (Delta_p u)_i = (1/mu_i) sum_{j~i} w_ij |u_j-u_i|^{p-2} (u_j-u_i)
///   gamma: (Delta_p u)_i = (1/(2 mu_i)) sum_{j~i}
///              (|grad u|_j^{p-2} + |grad u|_i^{p-2}) w_ij (u_j-u_i)
/// where the gamma vertex gradient comes from the carre-du-champ form.
/// The two coincide at p = 2.
enum class LaplacianVariant { edge, gamma };

const char* to_string(LaplacianVariant v);

/// |x|^{p-2} x, evaluated as sign(x) |x|^{p-1} so it is 0 at x = 0 for every
/// p > 1 (no 0^negative).
double signed_power(double x, double p);

VertexFunction p_laplacian(const WeightedGraph& g, const VertexFunction& u,
                           double p, LaplacianVariant variant);

/// Per-vertex gradient magnitude.  The edge variant is
/// ((1/(2 mu_i)) sum w_ij |u_j-u_i|^p)^{1/p}; the gamma variant is the square
/// root of the carre-du-champ form and ignores p.
VertexFunction gradient_norm(const WeightedGraph& g, const VertexFunction& u,
                             double p, LaplacianVariant variant);

/// Edge variant sums w_ij |u_j-u_i|^p once per edge; gamma variant integrates
/// the p-th power of its vertex gradient.  For the edge variant the edge sum
/// equals the integral of gradient_norm^p in exact arithmetic.
double dirichlet_energy(const WeightedGraph& g, const VertexFunction& u,
                        double p, LaplacianVariant variant);

/// (sum_i mu_i |u_i|^r)^{1/r}, r >= 1.
double lp_norm(const WeightedGraph& g, const VertexFunction& u, double r);

/// (dirichlet_energy + integral of |u|^p)^{1/p}.
double sobolev_norm(const WeightedGraph& g, const VertexFunction& u, double p,
                    LaplacianVariant variant);

}  // namespace yamabe
