#include "yamabe/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

namespace yamabe {

WeightedGraph WeightedGraph::build(
    const std::vector<VertexRecord>& vertex_records,
    const std::vector<EdgeRecord>& edge_records) {
  if (vertex_records.empty()) {
    throw InvalidProblem("graph needs at least one vertex");
  }

  WeightedGraph g;
  g.ids_.reserve(vertex_records.size());
  for (const auto& [id, mu] : vertex_records) {
    g.ids_.push_back(id);
  }
  std::sort(g.ids_.begin(), g.ids_.end());
  for (std::size_t i = 1; i < g.ids_.size(); ++i) {
    if (g.ids_[i] == g.ids_[i - 1]) {
      throw DuplicateVertexId("duplicate vertex id '" + g.ids_[i] + "'");
    }
  }

  std::unordered_map<std::string, std::size_t> index;
  index.reserve(g.ids_.size());
  for (std::size_t i = 0; i < g.ids_.size(); ++i) {
    index.emplace(g.ids_[i], i);
  }

  g.mu_.assign(g.ids_.size(), 0.0);
  for (const auto& [id, mu] : vertex_records) {
    if (!(mu > 0.0) || !std::isfinite(mu)) {
      throw NonPositiveMeasure("vertex '" + id + "' has non-positive measure");
    }
    g.mu_[index.at(id)] = mu;
  }

  std::set<std::pair<std::size_t, std::size_t>> seen;
  g.edges_.reserve(edge_records.size());
  for (const auto& [ida, idb, w] : edge_records) {
    auto ia = index.find(ida);
    auto ib = index.find(idb);
    if (ia == index.end()) {
      throw UnknownVertexInEdge("edge endpoint '" + ida + "' is not a vertex");
    }
    if (ib == index.end()) {
      throw UnknownVertexInEdge("edge endpoint '" + idb + "' is not a vertex");
    }
    if (ia->second == ib->second) {
      throw SelfLoop("self-loop at vertex '" + ida + "'");
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw NonPositiveMeasure("edge (" + ida + ", " + idb +
                               ") has non-positive weight");
    }
    Edge e;
    e.a = std::min(ia->second, ib->second);
    e.b = std::max(ia->second, ib->second);
    e.weight = w;
    if (!seen.emplace(e.a, e.b).second) {
      throw DuplicateEdge("duplicate edge (" + ida + ", " + idb + ")");
    }
    g.edges_.push_back(e);
  }
  std::sort(g.edges_.begin(), g.edges_.end(),
            [](const Edge& x, const Edge& y) {
              return std::tie(x.a, x.b) < std::tie(y.a, y.b);
            });

  // CSR adjacency with neighbors ascending.
  const std::size_t n = g.ids_.size();
  std::vector<std::size_t> deg(n, 0);
  for (const Edge& e : g.edges_) {
    ++deg[e.a];
    ++deg[e.b];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    g.offsets_[i + 1] = g.offsets_[i] + deg[i];
  }
  g.adjacency_.assign(g.offsets_[n], Neighbor{});
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : g.edges_) {
    g.adjacency_[cursor[e.a]++] = Neighbor{e.b, e.weight};
    g.adjacency_[cursor[e.b]++] = Neighbor{e.a, e.weight};
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]),
              [](const Neighbor& x, const Neighbor& y) {
                return x.vertex < y.vertex;
              });
  }

  // Connectivity by breadth-first reachability from vertex 0.
  std::vector<char> reached(n, 0);
  std::vector<std::size_t> queue{0};
  reached[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const Neighbor& nb : g.neighbors(queue[head])) {
      if (!reached[nb.vertex]) {
        reached[nb.vertex] = 1;
        queue.push_back(nb.vertex);
      }
    }
  }
  if (queue.size() != n) {
    throw Disconnected("graph is not connected");
  }

  return g;
}

std::size_t WeightedGraph::index_of(const std::string& id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) {
    throw UnknownVertexInEdge("unknown vertex id '" + id + "'");
  }
  return static_cast<std::size_t>(it - ids_.begin());
}

double WeightedGraph::volume() const {
  double v = 0.0;
  for (double m : mu_) {
    v += m;
  }
  return v;
}

void WeightedGraph::validate() const {
  if (ids_.empty()) {
    throw InvalidProblem("graph needs at least one vertex");
  }
  if (!std::is_sorted(ids_.begin(), ids_.end())) {
    throw InvalidProblem("vertex ids out of order");
  }
  for (std::size_t i = 1; i < ids_.size(); ++i) {
    if (ids_[i] == ids_[i - 1]) {
      throw DuplicateVertexId("duplicate vertex id '" + ids_[i] + "'");
    }
  }
  for (double m : mu_) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw NonPositiveMeasure("non-positive vertex measure");
    }
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Edge& e : edges_) {
    if (e.a == e.b) {
      throw SelfLoop("self-loop");
    }
    if (e.a > e.b || e.b >= ids_.size()) {
      throw InvalidProblem("edge endpoints out of range");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw NonPositiveMeasure("non-positive edge weight");
    }
    if (!seen.emplace(e.a, e.b).second) {
      throw DuplicateEdge("duplicate edge");
    }
  }
  std::vector<char> reached(ids_.size(), 0);
  std::vector<std::size_t> queue{0};
  reached[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const Neighbor& nb : neighbors(queue[head])) {
      if (!reached[nb.vertex]) {
        reached[nb.vertex] = 1;
        queue.push_back(nb.vertex);
      }
    }
  }
  if (queue.size() != ids_.size()) {
    throw Disconnected("graph is not connected");
  }
}

VertexFunction::VertexFunction(std::vector<double> values)
    : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw NonFiniteValue("vertex function has a non-finite value");
    }
  }
}

VertexFunction VertexFunction::constant(std::size_t n, double value) {
  return VertexFunction(std::vector<double>(n, value));
}

double VertexFunction::min() const {
  double m = values_.empty() ? 0.0 : values_[0];
  for (double v : values_) {
    m = std::min(m, v);
  }
  return m;
}

double VertexFunction::max() const {
  double m = values_.empty() ? 0.0 : values_[0];
  for (double v : values_) {
    m = std::max(m, v);
  }
  return m;
}

void require_same_domain(const WeightedGraph& g, const VertexFunction& u) {
  if (u.size() != g.vertex_count()) {
    throw DomainMismatch("function is keyed on a different vertex set");
  }
}

double integrate(const WeightedGraph& g, const VertexFunction& u) {
  require_same_domain(g, u);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    sum += g.measure(i) * u[i];
  }
  return sum;
}

}  // namespace yamabe
