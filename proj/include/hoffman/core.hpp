// Hoffman graph value types and induced-subgraph primitives.
//
// A Hoffman graph is a finite graph whose vertices carry a slim/fat label,
// where fat vertices are pairwise non-adjacent and every fat vertex has a
// slim neighbor.  Vertices are indexed densely with slim vertices first.
// Vertex sets are passed around as 64-bit masks; graphs are capped at 64
// vertices, which is far beyond desk scale for this library.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hoffman {

enum class Errc {
  FatFatEdge,
  IsolatedFat,
  MalformedEdge,
  InvalidInduced,
  EmptyGraph,
  SameVertex,
  NotSlim,
  NotAPartition,
  SumConditionViolated,
  InvalidAssignment,
  AddendOutsideScope,
  SlimMismatch,
  MemberOutsideO,
  FamilyOutsideO,
  FamilyNotClosed,
  MissingH2,
  NoCover,
  ParseError,
  TooManyVertices,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::FatFatEdge: return "FatFatEdge";
    case Errc::IsolatedFat: return "IsolatedFat";
    case Errc::MalformedEdge: return "MalformedEdge";
    case Errc::InvalidInduced: return "InvalidInduced";
    case Errc::EmptyGraph: return "EmptyGraph";
    case Errc::SameVertex: return "SameVertex";
    case Errc::NotSlim: return "NotSlim";
    case Errc::NotAPartition: return "NotAPartition";
    case Errc::SumConditionViolated: return "SumConditionViolated";
    case Errc::InvalidAssignment: return "InvalidAssignment";
    case Errc::AddendOutsideScope: return "AddendOutsideScope";
    case Errc::SlimMismatch: return "SlimMismatch";
    case Errc::MemberOutsideO: return "MemberOutsideO";
    case Errc::FamilyOutsideO: return "FamilyOutsideO";
    case Errc::FamilyNotClosed: return "FamilyNotClosed";
    case Errc::MissingH2: return "MissingH2";
    case Errc::NoCover: return "NoCover";
    case Errc::ParseError: return "ParseError";
    case Errc::TooManyVertices: return "TooManyVertices";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

using VertexSet = std::uint64_t;

inline int popcount(VertexSet s) { return std::popcount(s); }
inline int lowest_bit(VertexSet s) { return std::countr_zero(s); }
inline VertexSet bit(int v) { return VertexSet{1} << v; }
inline bool contains(VertexSet s, int v) { return (s >> v) & 1; }

inline std::vector<int> set_to_vector(VertexSet s) {
  std::vector<int> out;
  while (s) {
    int v = lowest_bit(s);
    out.push_back(v);
    s &= s - 1;
  }
  return out;
}

inline VertexSet vector_to_set(const std::vector<int>& vs) {
  VertexSet s = 0;
  for (int v : vs) s |= bit(v);
  return s;
}

class SlimGraph;

class HoffmanGraph {
 public:
  static constexpr int kMaxVertices = 64;

  // The empty graph is a valid value.
  HoffmanGraph() = default;

  // Validates arbitrary raw vertex/edge data.  Never silently repairs.
  static HoffmanGraph validated(int slim_count, int fat_count,
                                const std::vector<std::pair<int, int>>& edges) {
    if (slim_count < 0 || fat_count < 0)
      fail(Errc::MalformedEdge, "negative vertex count");
    int n = slim_count + fat_count;
    if (n > kMaxVertices) fail(Errc::TooManyVertices, "more than 64 vertices");
    std::vector<VertexSet> adj(n, 0);
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n)
        fail(Errc::MalformedEdge, "edge endpoint out of range");
      if (u == v) fail(Errc::MalformedEdge, "loop");
      if (contains(adj[u], v)) fail(Errc::MalformedEdge, "duplicate edge");
      adj[u] |= bit(v);
      adj[v] |= bit(u);
    }
    HoffmanGraph g;
    g.slim_ = slim_count;
    g.fat_ = fat_count;
    g.adj_ = std::move(adj);
    g.check_invariants();
    return g;
  }

  // Internal constructor from adjacency rows; still enforces Def. 2.1.
  static HoffmanGraph from_adjacency(int slim_count, int fat_count,
                                     std::vector<VertexSet> adj) {
    HoffmanGraph g;
    g.slim_ = slim_count;
    g.fat_ = fat_count;
    g.adj_ = std::move(adj);
    g.check_invariants();
    return g;
  }

  int slim_count() const { return slim_; }
  int fat_count() const { return fat_; }
  int vertex_count() const { return slim_ + fat_; }
  bool empty() const { return vertex_count() == 0; }

  bool is_slim(int v) const { return v < slim_; }
  bool is_fat(int v) const { return v >= slim_ && v < vertex_count(); }

  VertexSet slim_mask() const { return mask_below(slim_); }
  VertexSet fat_mask() const { return mask_below(vertex_count()) & ~slim_mask(); }
  VertexSet vertex_mask() const { return mask_below(vertex_count()); }

  bool adjacent(int u, int v) const { return contains(adj_[u], v); }
  VertexSet neighbors(int v) const { return adj_[v]; }
  VertexSet fat_neighbors(int v) const { return adj_[v] & fat_mask(); }
  VertexSet slim_neighbors(int v) const { return adj_[v] & slim_mask(); }

  // A Hoffman graph is fat if every slim vertex has a fat neighbor.
  bool is_fat_graph() const {
    for (int v = 0; v < slim_; ++v)
      if (fat_neighbors(v) == 0) return false;
    return true;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < vertex_count(); ++u) {
      VertexSet higher = adj_[u] & ~mask_below(u + 1);
      for (int v : set_to_vector(higher)) out.emplace_back(u, v);
    }
    return out;
  }

  bool operator==(const HoffmanGraph& o) const {
    return slim_ == o.slim_ && fat_ == o.fat_ && adj_ == o.adj_;
  }

 private:
  static VertexSet mask_below(int k) {
    return k >= 64 ? ~VertexSet{0} : (VertexSet{1} << k) - 1;
  }

  void check_invariants() const {
    int n = vertex_count();
    if ((int)adj_.size() != n) fail(Errc::MalformedEdge, "adjacency size mismatch");
    for (int v = 0; v < n; ++v) {
      if (adj_[v] & ~mask_below(n)) fail(Errc::MalformedEdge, "edge endpoint out of range");
      if (contains(adj_[v], v)) fail(Errc::MalformedEdge, "loop");
      for (int u : set_to_vector(adj_[v]))
        if (!contains(adj_[u], v)) fail(Errc::MalformedEdge, "asymmetric adjacency");
    }
    for (int v = slim_; v < n; ++v) {
      if (adj_[v] & fat_mask()) fail(Errc::FatFatEdge, "two fat vertices adjacent");
      if ((adj_[v] & slim_mask()) == 0)
        fail(Errc::IsolatedFat, "fat vertex with no slim neighbor");
    }
  }

  int slim_ = 0;
  int fat_ = 0;
  std::vector<VertexSet> adj_;
};

class SlimGraph {
 public:
  SlimGraph() = default;
  explicit SlimGraph(int n) : adj_(n, 0) {
    if (n > HoffmanGraph::kMaxVertices) fail(Errc::TooManyVertices, "more than 64 vertices");
  }

  static SlimGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    SlimGraph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  void add_edge(int u, int v) {
    int n = vertex_count();
    if (u < 0 || v < 0 || u >= n || v >= n) fail(Errc::MalformedEdge, "edge endpoint out of range");
    if (u == v) fail(Errc::MalformedEdge, "loop");
    adj_[u] |= bit(v);
    adj_[v] |= bit(u);
  }

  int vertex_count() const { return (int)adj_.size(); }
  bool adjacent(int u, int v) const { return contains(adj_[u], v); }
  VertexSet neighbors(int v) const { return adj_[v]; }

  std::vector<std::pair<int, int>> edges() const { return as_hoffman().edges(); }

  HoffmanGraph as_hoffman() const {
    return HoffmanGraph::from_adjacency(vertex_count(), 0, adj_);
  }

  bool operator==(const SlimGraph& o) const { return adj_ == o.adj_; }

 private:
  friend SlimGraph complement(const SlimGraph&);
  std::vector<VertexSet> adj_;
};

// -- Operations ------------------------------------------------------------

inline HoffmanGraph validate(int slim_count, int fat_count,
                             const std::vector<std::pair<int, int>>& edges) {
  return HoffmanGraph::validated(slim_count, fat_count, edges);
}

struct InducedResult {
  HoffmanGraph graph;
  // old vertex index -> new index, -1 for dropped vertices.
  std::vector<int> relabeling;
};

// Induced Hoffman subgraph on X, reindexed densely with slim vertices first.
// Throws InvalidInduced if a retained fat vertex loses all slim neighbors.
inline InducedResult induced(const HoffmanGraph& h, VertexSet x) {
  if (x & ~h.vertex_mask()) fail(Errc::InvalidInduced, "vertex set outside graph");
  std::vector<int> relabel(h.vertex_count(), -1);
  std::vector<int> order;
  for (int v : set_to_vector(x & h.slim_mask())) order.push_back(v);
  int new_slim = (int)order.size();
  for (int v : set_to_vector(x & h.fat_mask())) order.push_back(v);
  for (int i = 0; i < (int)order.size(); ++i) relabel[order[i]] = i;
  std::vector<VertexSet> adj(order.size(), 0);
  for (int i = 0; i < (int)order.size(); ++i)
    for (int u : set_to_vector(h.neighbors(order[i]) & x)) adj[i] |= bit(relabel[u]);
  for (int v : set_to_vector(x & h.fat_mask()))
    if ((h.neighbors(v) & x & h.slim_mask()) == 0)
      fail(Errc::InvalidInduced, "retained fat vertex loses all slim neighbors");
  return {HoffmanGraph::from_adjacency(new_slim, (int)order.size() - new_slim, std::move(adj)),
          std::move(relabel)};
}

// Closure of a slim set X under fat neighbors: the <<X>> operator.
inline VertexSet slim_closure(const HoffmanGraph& h, VertexSet x) {
  VertexSet full = x;
  for (int v : set_to_vector(x)) full |= h.fat_neighbors(v);
  return full;
}

inline InducedResult slim_closed_induced(const HoffmanGraph& h, VertexSet x) {
  if (x & ~h.slim_mask()) fail(Errc::NotSlim, "closed induced subgraph needs a slim vertex set");
  return induced(h, slim_closure(h, x));
}

inline InducedResult remove(const HoffmanGraph& h, VertexSet x) {
  return induced(h, h.vertex_mask() & ~x);
}

inline SlimGraph slim_subgraph(const HoffmanGraph& h) {
  SlimGraph g(h.slim_count());
  for (int v = 0; v < h.slim_count(); ++v)
    for (int u : set_to_vector(h.slim_neighbors(v)))
      if (u > v) g.add_edge(u, v);
  return g;
}

inline SlimGraph complement(const SlimGraph& g) {
  int n = g.vertex_count();
  SlimGraph out(n);
  VertexSet all = n >= 64 ? ~VertexSet{0} : (VertexSet{1} << n) - 1;
  for (int v = 0; v < n; ++v) out.adj_[v] = all & ~g.neighbors(v) & ~bit(v);
  return out;
}

// Connectivity of an arbitrary vertex subset under the given adjacency rows.
inline bool mask_connected(const std::vector<VertexSet>& adj, VertexSet verts) {
  if (verts == 0) return false;
  VertexSet seen = bit(lowest_bit(verts));
  VertexSet frontier = seen;
  while (frontier) {
    VertexSet next = 0;
    for (int v : set_to_vector(frontier)) next |= adj[v];
    next &= verts & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == verts;
}

// Convention: the empty graph is not connected; a single vertex is.
inline bool is_connected(const SlimGraph& g) {
  std::vector<VertexSet> adj;
  adj.reserve(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) adj.push_back(g.neighbors(v));
  VertexSet all = g.vertex_count() >= 64 ? ~VertexSet{0}
                                         : (VertexSet{1} << g.vertex_count()) - 1;
  return mask_connected(adj, all);
}

}  // namespace hoffman
