// Canonical forms, isomorphism and automorphism machinery for slim/fat
// labeled graphs.
//
// Canonical labeling is iterated color refinement with backtracking over
// the refined partition, colors = {slim, fat}.  The lexicographically
// smallest adjacency string over all leaves of the search tree is the
// certificate.  The leaves attaining it form one regular orbit of the
// automorphism group, so the leaf count is |Aut| and leaf pairs yield
// generators; a Schreier-Sims chain keeps the generator list small and
// double-checks the order by orbit-stabilizer bookkeeping.

#pragma once

#include <cassert>
#include <cstdint>
#include <map>

#include "hoffman/core.hpp"

namespace hoffman {

struct CanonicalForm {
  std::vector<std::uint8_t> certificate;
  std::vector<int> relabeling;  // old vertex -> canonical position

  bool operator==(const CanonicalForm& o) const { return certificate == o.certificate; }
  auto operator<=>(const CanonicalForm& o) const { return certificate <=> o.certificate; }
};

struct AutomorphismGroup {
  std::vector<std::vector<int>> generators;  // image notation, vertex -> vertex
  std::uint64_t order = 1;
};

inline std::string hex_certificate(const CanonicalForm& c) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(c.certificate.size() * 2);
  for (std::uint8_t b : c.certificate) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 15]);
  }
  return out;
}

namespace detail {

// Deterministic Schreier-Sims stabilizer chain for permutations of degree n.
class PermGroupChain {
 public:
  explicit PermGroupChain(int degree) : n_(degree) {}

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (const auto& lvl : levels_) o *= (std::uint64_t)lvl.orbit.size();
    return o;
  }

  bool contains(const std::vector<int>& p) const {
    std::vector<int> r = p;
    return sift(r) && is_identity(r);
  }

  // Returns true if the group grew.
  bool add(const std::vector<int>& p) {
    if (contains(p)) return false;
    add_generator(p, 0);
    return true;
  }

 private:
  struct Level {
    int base_point = -1;
    std::vector<std::vector<int>> gens;
    std::vector<int> orbit;
    // orbit point -> index of a word u with u(base)=point; -1 outside orbit
    std::vector<int> rep_of;
    std::vector<std::vector<int>> reps;
  };

  static bool is_identity(const std::vector<int>& p) {
    for (int i = 0; i < (int)p.size(); ++i)
      if (p[i] != i) return false;
    return true;
  }

  static std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
    // (a*b)(x) = a(b(x))
    std::vector<int> out(a.size());
    for (int i = 0; i < (int)a.size(); ++i) out[i] = a[b[i]];
    return out;
  }

  static std::vector<int> inverse(const std::vector<int>& a) {
    std::vector<int> out(a.size());
    for (int i = 0; i < (int)a.size(); ++i) out[a[i]] = i;
    return out;
  }

  // Reduces p through the chain; returns false if it falls out of an orbit.
  bool sift(std::vector<int>& p) const {
    for (const auto& lvl : levels_) {
      int img = p[lvl.base_point];
      if (lvl.rep_of[img] < 0) return false;
      p = compose(inverse(lvl.reps[lvl.rep_of[img]]), p);
    }
    return true;
  }

  void add_generator(const std::vector<int>& p, size_t level) {
    if (level == levels_.size()) {
      // New level: first point moved by p.
      Level lvl;
      for (int i = 0; i < n_; ++i)
        if (p[i] != i) {
          lvl.base_point = i;
          break;
        }
      if (lvl.base_point < 0) return;  // identity
      lvl.rep_of.assign(n_, -1);
      lvl.orbit.push_back(lvl.base_point);
      lvl.rep_of[lvl.base_point] = 0;
      std::vector<int> id(n_);
      for (int i = 0; i < n_; ++i) id[i] = i;
      lvl.reps.push_back(id);
      levels_.push_back(std::move(lvl));
    }
    levels_[level].gens.push_back(p);
    // Re-close the orbit and process Schreier generators.  Access through
    // levels_[level] each time: recursion below can grow the levels vector.
    for (size_t oi = 0; oi < levels_[level].orbit.size(); ++oi) {
      for (size_t gi = 0; gi < levels_[level].gens.size(); ++gi) {
        int pt = levels_[level].orbit[oi];
        std::vector<int> g = levels_[level].gens[gi];
        int img = g[pt];
        if (levels_[level].rep_of[img] < 0) {
          Level& lvl = levels_[level];
          lvl.rep_of[img] = (int)lvl.reps.size();
          lvl.reps.push_back(compose(g, lvl.reps[lvl.rep_of[pt]]));
          lvl.orbit.push_back(img);
        } else {
          std::vector<int> schreier =
              compose(inverse(levels_[level].reps[levels_[level].rep_of[img]]),
                      compose(g, levels_[level].reps[levels_[level].rep_of[pt]]));
          if (!is_identity(schreier)) {
            std::vector<int> r = schreier;
            bool in = true;
            for (size_t l = level + 1; l < levels_.size(); ++l) {
              int i2 = r[levels_[l].base_point];
              if (levels_[l].rep_of[i2] < 0) {
                in = false;
                break;
              }
              r = compose(inverse(levels_[l].reps[levels_[l].rep_of[i2]]), r);
            }
            if (!in || !is_identity(r)) add_generator(schreier, level + 1);
          }
        }
      }
    }
  }

  int n_;
  std::vector<Level> levels_;
};

// Ordered-partition search over one Hoffman graph.
class CanonSearch {
 public:
  explicit CanonSearch(const HoffmanGraph& g) : g_(g), n_(g.vertex_count()) {
    adj_.reserve(n_);
    for (int v = 0; v < n_; ++v) adj_.push_back(g.neighbors(v));
  }

  void run() {
    std::vector<std::vector<int>> cells;
    std::vector<int> slims, fats;
    for (int v = 0; v < g_.slim_count(); ++v) slims.push_back(v);
    for (int v = g_.slim_count(); v < n_; ++v) fats.push_back(v);
    if (!slims.empty()) cells.push_back(std::move(slims));
    if (!fats.empty()) cells.push_back(std::move(fats));
    if (cells.empty()) {
      min_leaves_.push_back({});
      return;
    }
    refine(cells);
    descend(cells);
  }

  // Leaves attaining the minimal certificate; each is a vector mapping
  // canonical position -> vertex.
  const std::vector<std::vector<int>>& min_leaves() const { return min_leaves_; }
  const std::vector<std::uint8_t>& best_cert_body() const { return best_; }

 private:
  // Equitable refinement: split every cell by neighbor counts into every
  // other cell until stable.  Fragment order is by count value, which is a
  // label-invariant rule.
  void refine(std::vector<std::vector<int>>& cells) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t si = 0; si < cells.size() && !changed; ++si) {
        VertexSet splitter = vector_to_set(cells[si]);
        for (size_t ci = 0; ci < cells.size(); ++ci) {
          if (cells[ci].size() <= 1) continue;
          std::map<int, std::vector<int>> frag;
          for (int v : cells[ci]) frag[popcount(adj_[v] & splitter)].push_back(v);
          if (frag.size() <= 1) continue;
          std::vector<std::vector<int>> next;
          next.reserve(cells.size() + frag.size() - 1);
          for (size_t k = 0; k < ci; ++k) next.push_back(std::move(cells[k]));
          for (auto& [cnt, vs] : frag) next.push_back(std::move(vs));
          for (size_t k = ci + 1; k < cells.size(); ++k) next.push_back(std::move(cells[k]));
          cells = std::move(next);
          changed = true;
          break;
        }
        if (changed) break;
      }
    }
  }

  void descend(const std::vector<std::vector<int>>& cells) {
    int target = -1;
    for (size_t i = 0; i < cells.size(); ++i)
      if (cells[i].size() > 1) {
        target = (int)i;
        break;
      }
    if (target < 0) {
      leaf(cells);
      return;
    }
    for (int v : cells[target]) {
      std::vector<std::vector<int>> next;
      next.reserve(cells.size() + 1);
      for (size_t i = 0; i < cells.size(); ++i) {
        if ((int)i == target) {
          next.push_back({v});
          std::vector<int> rest;
          for (int u : cells[target])
            if (u != v) rest.push_back(u);
          next.push_back(std::move(rest));
        } else {
          next.push_back(cells[i]);
        }
      }
      refine(next);
      descend(next);
    }
  }

  void leaf(const std::vector<std::vector<int>>& cells) {
    std::vector<int> perm;  // position -> vertex
    perm.reserve(n_);
    for (const auto& c : cells) perm.push_back(c[0]);
    std::vector<std::uint8_t> cert = cert_body(perm);
    if (min_leaves_.empty() || cert < best_) {
      best_ = std::move(cert);
      min_leaves_.clear();
      min_leaves_.push_back(std::move(perm));
    } else if (cert == best_) {
      min_leaves_.push_back(std::move(perm));
    }
  }

  std::vector<std::uint8_t> cert_body(const std::vector<int>& perm) const {
    std::vector<std::uint8_t> out;
    out.reserve((n_ * (n_ - 1) / 2 + 7) / 8);
    int bits = 0;
    std::uint8_t cur = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        cur = (std::uint8_t)((cur << 1) | (g_.adjacent(perm[i], perm[j]) ? 1 : 0));
        if (++bits == 8) {
          out.push_back(cur);
          cur = 0;
          bits = 0;
        }
      }
    if (bits) out.push_back((std::uint8_t)(cur << (8 - bits)));
    return out;
  }

  const HoffmanGraph& g_;
  int n_;
  std::vector<VertexSet> adj_;
  std::vector<std::uint8_t> best_;
  std::vector<std::vector<int>> min_leaves_;
};

struct CanonOutcome {
  CanonicalForm form;
  AutomorphismGroup aut;
};

inline CanonOutcome canonical_search(const HoffmanGraph& h) {
  CanonSearch search(h);
  search.run();
  const auto& leaves = search.min_leaves();
  assert(!leaves.empty());
  int n = h.vertex_count();

  CanonOutcome out;
  out.form.certificate.push_back((std::uint8_t)h.slim_count());
  out.form.certificate.push_back((std::uint8_t)h.fat_count());
  const auto& body = search.best_cert_body();
  out.form.certificate.insert(out.form.certificate.end(), body.begin(), body.end());
  out.form.relabeling.assign(n, -1);
  const std::vector<int>& p0 = leaves[0];  // position -> vertex
  for (int pos = 0; pos < n; ++pos) out.form.relabeling[p0[pos]] = pos;

  PermGroupChain chain(n);
  for (const auto& p : leaves) {
    // Automorphism a(v) = p[pos_of_v_in_p0].
    std::vector<int> a(n);
    for (int pos = 0; pos < n; ++pos) a[p0[pos]] = p[pos];
    if (chain.add(a)) out.aut.generators.push_back(std::move(a));
  }
  out.aut.order = (std::uint64_t)leaves.size();
  assert(chain.order() == out.aut.order);
  return out;
}

}  // namespace detail

inline CanonicalForm canonical_form(const HoffmanGraph& h) {
  return detail::canonical_search(h).form;
}

inline CanonicalForm canonical_form(const SlimGraph& g) {
  return canonical_form(g.as_hoffman());
}

inline bool is_isomorphic(const HoffmanGraph& a, const HoffmanGraph& b) {
  if (a.slim_count() != b.slim_count() || a.fat_count() != b.fat_count()) return false;
  return canonical_form(a) == canonical_form(b);
}

inline bool is_isomorphic(const SlimGraph& a, const SlimGraph& b) {
  return is_isomorphic(a.as_hoffman(), b.as_hoffman());
}

inline AutomorphismGroup automorphism_group(const HoffmanGraph& h) {
  return detail::canonical_search(h).aut;
}

inline AutomorphismGroup automorphism_group(const SlimGraph& g) {
  return automorphism_group(g.as_hoffman());
}

// The subgroup of Aut fixing every slim vertex.  With all slims fixed and
// fat vertices pairwise non-adjacent, an automorphism is exactly a
// bijection of fat vertices preserving slim neighborhoods, so Aut* is the
// direct product of symmetric groups on the classes of fat vertices with
// identical slim neighborhoods.
inline AutomorphismGroup slim_fixing_automorphisms(const HoffmanGraph& h) {
  std::map<VertexSet, std::vector<int>> classes;
  for (int f = h.slim_count(); f < h.vertex_count(); ++f)
    classes[h.slim_neighbors(f)].push_back(f);
  AutomorphismGroup out;
  std::vector<int> id(h.vertex_count());
  for (int i = 0; i < h.vertex_count(); ++i) id[i] = i;
  for (const auto& [nbhd, members] : classes) {
    for (std::size_t i = 1; i < members.size(); ++i) {
      std::vector<int> gen = id;
      std::swap(gen[members[0]], gen[members[i]]);
      out.generators.push_back(std::move(gen));
      out.order *= (std::uint64_t)(i + 1);
    }
  }
  return out;
}

// Equivalence of two strict covers of one labeled slim graph: an
// isomorphism restricting to the identity on slim vertices.  shared_slim
// maps slim indices of a to slim indices of b.  A fat bijection extends
// the slim identity to an isomorphism iff it preserves slim neighborhoods
// exactly, so the backtracking over fat bijections reduces to multiset
// equality of the translated neighborhoods.
inline bool cover_equivalent(const HoffmanGraph& a, const HoffmanGraph& b,
                             const std::vector<int>& shared_slim) {
  if ((int)shared_slim.size() != a.slim_count() || a.slim_count() != b.slim_count())
    fail(Errc::SlimMismatch, "slim identification has wrong size");
  for (int x = 0; x < a.slim_count(); ++x) {
    int bx = shared_slim[x];
    if (bx < 0 || bx >= b.slim_count()) fail(Errc::SlimMismatch, "slim image out of range");
    for (int y = x + 1; y < a.slim_count(); ++y)
      if (a.adjacent(x, y) != b.adjacent(bx, shared_slim[y]))
        fail(Errc::SlimMismatch, "slim subgraphs differ under the identification");
  }
  if (a.fat_count() != b.fat_count()) return false;
  std::vector<VertexSet> na, nb;
  for (int f = a.slim_count(); f < a.vertex_count(); ++f) {
    VertexSet translated = 0;
    for (int x : set_to_vector(a.slim_neighbors(f))) translated |= bit(shared_slim[x]);
    na.push_back(translated);
  }
  for (int f = b.slim_count(); f < b.vertex_count(); ++f) nb.push_back(b.slim_neighbors(f));
  std::sort(na.begin(), na.end());
  std::sort(nb.begin(), nb.end());
  return na == nb;
}

inline std::vector<int> identity_identification(const HoffmanGraph& a) {
  std::vector<int> id(a.slim_count());
  for (int i = 0; i < a.slim_count(); ++i) id[i] = i;
  return id;
}

}  // namespace hoffman
