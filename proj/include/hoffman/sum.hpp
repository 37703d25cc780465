// Sum of Hoffman graphs: validation, the unique indecomposable
// decomposition, composition from addend templates, the tilde completion
// and addend-wise restriction.

#pragma once

#include <cassert>
#include <numeric>

#include "hoffman/core.hpp"

namespace hoffman {

// w(x,y) = -|N_f(x) cap N_f(y)| + [x ~ y].  Nonzero w forces x and y into
// the same indecomposable addend.
inline int w_value(const HoffmanGraph& h, int x, int y) {
  if (x == y) fail(Errc::SameVertex, "w_value needs two distinct vertices");
  if (!h.is_slim(x) || !h.is_slim(y)) fail(Errc::NotSlim, "w_value needs slim vertices");
  int common = popcount(h.fat_neighbors(x) & h.fat_neighbors(y));
  return -common + (h.adjacent(x, y) ? 1 : 0);
}

// A partition of the parent's slim vertices into addend slim sets.  Fat
// membership of each addend is derived via slim_closed_induced.
struct Decomposition {
  HoffmanGraph parent;
  std::vector<VertexSet> addend_slim_sets;  // sorted by lowest slim index

  int addend_count() const { return (int)addend_slim_sets.size(); }
  HoffmanGraph addend(int i) const {
    return slim_closed_induced(parent, addend_slim_sets[i]).graph;
  }
  std::vector<HoffmanGraph> addends() const {
    std::vector<HoffmanGraph> out;
    out.reserve(addend_count());
    for (int i = 0; i < addend_count(); ++i) out.push_back(addend(i));
    return out;
  }
  VertexSet addend_fat_set(int i) const {
    return slim_closure(parent, addend_slim_sets[i]) & parent.fat_mask();
  }
};

// The unique indecomposable decomposition: connected components of the
// auxiliary graph on slim vertices with edges where w != 0.
inline Decomposition decompose(const HoffmanGraph& h) {
  if (h.empty()) fail(Errc::EmptyGraph, "cannot decompose the empty graph");
  int s = h.slim_count();
  std::vector<VertexSet> aux(s, 0);
  for (int x = 0; x < s; ++x)
    for (int y = x + 1; y < s; ++y)
      if (w_value(h, x, y) != 0) {
        aux[x] |= bit(y);
        aux[y] |= bit(x);
      }
  std::vector<VertexSet> components;
  VertexSet todo = s >= 64 ? ~VertexSet{0} : (VertexSet{1} << s) - 1;
  while (todo) {
    VertexSet comp = bit(lowest_bit(todo));
    VertexSet frontier = comp;
    while (frontier) {
      VertexSet next = 0;
      for (int v : set_to_vector(frontier)) next |= aux[v];
      next &= ~comp;
      comp |= next;
      frontier = next;
    }
    components.push_back(comp);
    todo &= ~comp;
  }
  // Every fat vertex has a slim neighbor, so the component closures exhaust
  // the vertex set.
  VertexSet covered = 0;
  for (VertexSet c : components) covered |= slim_closure(h, c);
  assert(covered == h.vertex_mask());
  return {h, std::move(components)};
}

inline bool is_indecomposable(const HoffmanGraph& h) {
  if (h.empty()) fail(Errc::EmptyGraph, "indecomposability of the empty graph is undefined");
  return decompose(h).addend_count() == 1;
}

// Checks the five sum conditions of Def. 2.2 for the given slim partition.
inline bool validate_sum(const HoffmanGraph& h, const std::vector<VertexSet>& parts) {
  VertexSet seen = 0;
  for (VertexSet p : parts) {
    if (p == 0 || (p & ~h.slim_mask()) || (p & seen))
      fail(Errc::NotAPartition, "parts must be nonempty disjoint slim sets");
    seen |= p;
  }
  if (seen != h.slim_mask()) fail(Errc::NotAPartition, "parts must cover all slim vertices");
  // Conditions 1-3 hold by construction of the closed induced addends:
  // slim sets partition (cond 2), fat neighborhoods are inherited (cond 3),
  // and the closures cover every fat vertex iff no fat vertex is stranded,
  // which Def. 2.1 cond. 1 guarantees.  Conditions 4 and 5 need checking.
  for (size_t i = 0; i < parts.size(); ++i)
    for (size_t j = i + 1; j < parts.size(); ++j)
      for (int x : set_to_vector(parts[i]))
        for (int y : set_to_vector(parts[j])) {
          int common = popcount(h.fat_neighbors(x) & h.fat_neighbors(y));
          if (common > 1) return false;
          if ((common == 1) != h.adjacent(x, y)) return false;
        }
  return true;
}

struct FatSlot {
  int addend;  // index into FatSlotAssignment::addends
  int fat;     // fat index within the addend, 0..fat_count-1
  auto operator<=>(const FatSlot&) const = default;
};

// The constructive inverse of Def. 2.2: a list of addend templates plus a
// grouping of their fat slots.  Slots in one group merge into a single fat
// vertex of the sum; ungrouped slots become private fat vertices.
struct FatSlotAssignment {
  std::vector<HoffmanGraph> addends;
  std::vector<std::vector<FatSlot>> groups;
};

struct ComposeResult {
  HoffmanGraph graph;
  std::vector<VertexSet> parts;  // slim set of each addend, in template order
};

inline ComposeResult compose_sum_full(const FatSlotAssignment& a) {
  int k = (int)a.addends.size();
  for (const auto& t : a.addends)
    if (t.empty()) fail(Errc::InvalidAssignment, "empty addend template");
  // slot -> group id; ungrouped slots get fresh singleton groups.
  std::vector<std::vector<int>> slot_group(k);
  for (int i = 0; i < k; ++i) slot_group[i].assign(a.addends[i].fat_count(), -1);
  int group_count = (int)a.groups.size();
  for (int g = 0; g < group_count; ++g) {
    std::vector<int> addends_seen;
    for (FatSlot s : a.groups[g]) {
      if (s.addend < 0 || s.addend >= k || s.fat < 0 ||
          s.fat >= a.addends[s.addend].fat_count())
        fail(Errc::InvalidAssignment, "fat slot out of range");
      if (slot_group[s.addend][s.fat] != -1)
        fail(Errc::InvalidAssignment, "fat slot in two groups");
      for (int seen : addends_seen)
        if (seen == s.addend)
          fail(Errc::InvalidAssignment, "group contains two fat vertices of one addend");
      addends_seen.push_back(s.addend);
      slot_group[s.addend][s.fat] = g;
    }
  }
  // Two distinct addends may meet in at most one group.
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      int shared = 0;
      for (int gi : slot_group[i])
        for (int gj : slot_group[j])
          if (gi != -1 && gi == gj) ++shared;
      if (shared > 1)
        fail(Errc::InvalidAssignment, "two addends share more than one fat group");
    }
  for (int i = 0; i < k; ++i)
    for (int& g : slot_group[i])
      if (g == -1) g = group_count++;

  // Global indexing: slims of all addends first, then one fat per group.
  std::vector<int> slim_base(k, 0);
  int total_slim = 0;
  for (int i = 0; i < k; ++i) {
    slim_base[i] = total_slim;
    total_slim += a.addends[i].slim_count();
  }
  int n = total_slim + group_count;
  if (n > HoffmanGraph::kMaxVertices) fail(Errc::TooManyVertices, "sum exceeds 64 vertices");
  std::vector<VertexSet> adj(n, 0);
  auto link = [&](int u, int v) {
    adj[u] |= bit(v);
    adj[v] |= bit(u);
  };
  for (int i = 0; i < k; ++i) {
    const HoffmanGraph& t = a.addends[i];
    for (int x = 0; x < t.slim_count(); ++x) {
      for (int y : set_to_vector(t.slim_neighbors(x)))
        if (y > x) link(slim_base[i] + x, slim_base[i] + y);
      for (int f : set_to_vector(t.fat_neighbors(x)))
        link(slim_base[i] + x, total_slim + slot_group[i][f - t.slim_count()]);
    }
  }
  // Cond. 5 forces cross-addend slim adjacency exactly at shared fats.
  VertexSet slim_bits = total_slim >= 64 ? ~VertexSet{0} : (VertexSet{1} << total_slim) - 1;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      for (int x = 0; x < a.addends[i].slim_count(); ++x)
        for (int y = 0; y < a.addends[j].slim_count(); ++y) {
          int u = slim_base[i] + x, v = slim_base[j] + y;
          if (popcount(adj[u] & adj[v] & ~slim_bits) == 1) link(u, v);
        }
  ComposeResult out;
  out.graph = HoffmanGraph::from_adjacency(total_slim, group_count, std::move(adj));
  for (int i = 0; i < k; ++i) {
    VertexSet p = 0;
    for (int x = 0; x < a.addends[i].slim_count(); ++x) p |= bit(slim_base[i] + x);
    out.parts.push_back(p);
  }
  if (!validate_sum(out.graph, out.parts))
    fail(Errc::SumConditionViolated, "composed graph violates the sum conditions");
  return out;
}

inline HoffmanGraph compose_sum(const FatSlotAssignment& a) {
  return compose_sum_full(a).graph;
}

namespace detail {

// An addend isomorphic to h1 is a single slim vertex with exactly one fat
// neighbor; an O-membership test lives in catalog.hpp, but tilde only needs
// the structural facts checked here: every addend must be h1, h2, or an
// indecomposable fat graph with one fat vertex and >= 2 slims.
inline bool addend_in_tilde_scope(const HoffmanGraph& a, bool* is_h1) {
  *is_h1 = false;
  if (a.slim_count() == 1) {
    if (a.fat_count() == 1) {
      *is_h1 = true;
      return true;  // h1
    }
    return a.fat_count() == 2;  // h2
  }
  return a.fat_count() == 1 && a.is_fat_graph() && a.slim_count() >= 2 &&
         is_indecomposable(a);
}

}  // namespace detail

// Tilde completion: attach one new fat vertex to the slim vertex of every
// addend isomorphic to h1.  Defined only when every addend is h1 or in O.
inline HoffmanGraph tilde(const HoffmanGraph& h) {
  if (h.empty()) return h;
  Decomposition d = decompose(h);
  std::vector<int> h1_slims;
  for (int i = 0; i < d.addend_count(); ++i) {
    bool is_h1 = false;
    if (!detail::addend_in_tilde_scope(d.addend(i), &is_h1))
      fail(Errc::AddendOutsideScope, "tilde addend neither h1 nor in O");
    if (is_h1) h1_slims.push_back(lowest_bit(d.addend_slim_sets[i]));
  }
  if (h1_slims.empty()) return h;
  int n = h.vertex_count();
  if (n + (int)h1_slims.size() > HoffmanGraph::kMaxVertices)
    fail(Errc::TooManyVertices, "tilde exceeds 64 vertices");
  std::vector<VertexSet> adj(n + h1_slims.size(), 0);
  for (int v = 0; v < n; ++v) adj[v] = h.neighbors(v);
  for (size_t i = 0; i < h1_slims.size(); ++i) {
    int f = n + (int)i;
    adj[f] |= bit(h1_slims[i]);
    adj[h1_slims[i]] |= bit(f);
  }
  return HoffmanGraph::from_adjacency(h.slim_count(), h.fat_count() + (int)h1_slims.size(),
                                      std::move(adj));
}

// Addend-wise restriction (Lemma 3.5): <<X>> of the parent is the sum of
// the <<X cap part>> pieces.  Empty intersections drop out.
inline Decomposition restrict_sum(const HoffmanGraph& h, const Decomposition& parts,
                                  VertexSet x) {
  if (x & ~h.slim_mask()) fail(Errc::NotSlim, "restriction set must be slim");
  InducedResult sub = slim_closed_induced(h, x);
  Decomposition out;
  out.parent = sub.graph;
  for (VertexSet p : parts.addend_slim_sets) {
    VertexSet inter = p & x;
    if (inter == 0) continue;
    VertexSet mapped = 0;
    for (int v : set_to_vector(inter)) mapped |= bit(sub.relabeling[v]);
    out.addend_slim_sets.push_back(mapped);
  }
  std::sort(out.addend_slim_sets.begin(), out.addend_slim_sets.end(),
            [](VertexSet a, VertexSet b) { return lowest_bit(a) < lowest_bit(b); });
  return out;
}

}  // namespace hoffman
