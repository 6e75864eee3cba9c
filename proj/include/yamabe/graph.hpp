#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "yamabe/errors.hpp"

namespace yamabe {

/// Finite connected weighted graph: string vertex ids with a positive vertex
/// measure, and symmetric positive edge weights stored once per unordered
/// pair.  Immutable after construction; every accessor iterates vertices and
/// neighbors in ascending id order so that downstream sums are reproducible
/// bit for bit.
class WeightedGraph {
 public:
  struct Edge {
    std::size_t a = 0;  // a < b, indices into vertex order
    std::size_t b = 0;
    double weight = 0.0;
  };
  struct Neighbor {
    std::size_t vertex = 0;
    double weight = 0.0;
  };

  using VertexRecord = std::pair<std::string, double>;             // (id, mu)
  using EdgeRecord = std::tuple<std::string, std::string, double>;  // (a, b, w)

  /// Empty placeholder; assign a built graph before use.
  WeightedGraph() = default;

  /// Validates and builds a graph.  Vertex order is ascending id
  /// (lexicographic); numeric-looking ids are still compared as strings.
  /// Throws NonPositiveMeasure, SelfLoop, DuplicateEdge, DuplicateVertexId,
  /// UnknownVertexInEdge or Disconnected.
  static WeightedGraph build(const std::vector<VertexRecord>& vertex_records,
                             const std::vector<EdgeRecord>& edge_records);

  std::size_t vertex_count() const { return ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<std::string>& vertex_ids() const { return ids_; }
  const std::string& vertex_id(std::size_t i) const { return ids_[i]; }

  /// Index of an id in vertex order; throws UnknownVertexInEdge if absent.
  std::size_t index_of(const std::string& id) const;

  double measure(std::size_t i) const { return mu_[i]; }
  const std::vector<double>& measures() const { return mu_; }

  /// Sum of all vertex measures.
  double volume() const;

  /// Edges sorted by (a, b).
  const std::vector<Edge>& edges() const { return edges_; }

  /// Neighbors of vertex i in ascending vertex order.
  std::span<const Neighbor> neighbors(std::size_t i) const {
    return {adjacency_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  std::size_t degree(std::size_t i) const {
    return offsets_[i + 1] - offsets_[i];
  }

  /// Re-checks every construction invariant; throws on violation.
  void validate() const;

 private:
  std::vector<std::string> ids_;   // ascending
  std::vector<double> mu_;         // parallel to ids_
  std::vector<Edge> edges_;        // sorted by (a, b)
  std::vector<std::size_t> offsets_;  // CSR offsets, size vertex_count()+1
  std::vector<Neighbor> adjacency_;   // CSR payload, neighbors ascending
};

/// One real value per vertex of some graph, stored in the graph's vertex
/// order.  Values must be finite; construction rejects NaN and infinities.
class VertexFunction {
 public:
  VertexFunction() = default;
  explicit VertexFunction(std::vector<double> values);
  static VertexFunction constant(std::size_t n, double value);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  double min() const;
  double max() const;

 private:
  std::vector<double> values_;
};

/// Throws DomainMismatch unless u is keyed on g's vertex set.
void require_same_domain(const WeightedGraph& g, const VertexFunction& u);

/// Measure-weighted integral over the vertex set, summed in vertex order.
double integrate(const WeightedGraph& g, const VertexFunction& u);

}  // namespace yamabe
