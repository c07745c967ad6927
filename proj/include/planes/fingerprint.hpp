#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <vector>

#include "planes/designs.hpp"
#include "planes/sha256.hpp"

// Canonical fingerprint of the projective plane determined by a full plane
// code: equal fingerprints if and only if the planes are isomorphic.
//
// The canonical form is the minimum, over all ordered quadrilaterals
// (4 points, no 3 collinear), of a deterministic labeling of the bipartite
// point-line incidence graph grown from the anchor: joins of labeled point
// pairs label lines, meets of labeled line pairs label points, always taking
// the candidate with the lexicographically smallest pair of labels. If the
// anchor's closure is a proper subplane the growth stalls and the labeling
// branches on one individualized point.
//
// A plane of order 7 has on the order of 10^6 quadrilaterals, so the scan
// prunes with the automorphisms it discovers along the way: two anchors
// producing the same encoding exhibit an automorphism, and an anchor prefix
// that a known automorphism (fixing the earlier anchor points) maps to a
// smaller prefix can be skipped.

namespace planes {

struct IncidenceStructure {
  int points = 0;
  int lines = 0;
  std::vector<std::vector<int>> line_points;  // sorted point ids per line
  std::vector<std::vector<int>> point_lines;  // sorted line ids per point
};

inline IncidenceStructure projective_incidence(const ProjectivePlane& plane) {
  const int n = plane.affine.order;
  IncidenceStructure inc;
  inc.points = n * n + n + 1;
  inc.lines = n * (n + 1) + 1;
  inc.line_points.reserve(static_cast<std::size_t>(inc.lines));
  for (int k = 0; k < n + 1; ++k)
    for (const auto& line : plane.affine.classes[k]) {
      std::vector<int> pts = line;
      pts.push_back(n * n + k);  // ideal point of the class
      inc.line_points.push_back(std::move(pts));
    }
  std::vector<int> infinity;
  for (int k = 0; k < n + 1; ++k) infinity.push_back(n * n + k);
  inc.line_points.push_back(std::move(infinity));
  inc.point_lines.assign(static_cast<std::size_t>(inc.points), {});
  for (int l = 0; l < inc.lines; ++l)
    for (int p : inc.line_points[l]) inc.point_lines[p].push_back(l);
  return inc;
}

namespace detail {

struct Labeling {
  std::vector<int> plabel, llabel;       // id -> label, -1 when unassigned
  std::vector<int> porder, lorder;       // label -> id
  int np = 0, nl = 0;

  explicit Labeling(const IncidenceStructure& inc)
      : plabel(static_cast<std::size_t>(inc.points), -1),
        llabel(static_cast<std::size_t>(inc.lines), -1),
        porder(static_cast<std::size_t>(inc.points), -1),
        lorder(static_cast<std::size_t>(inc.lines), -1) {}

  void add_point(int p) {
    plabel[p] = np;
    porder[np++] = p;
  }
  void add_line(int l) {
    llabel[l] = nl;
    lorder[nl++] = l;
  }
};

// Smallest two labels among the labeled neighbours, or {-1,-1} if fewer
// than two are labeled.
inline std::pair<int, int> least_pair(const std::vector<int>& nbrs, const std::vector<int>& label) {
  int a = -1, b = -1;
  for (int x : nbrs) {
    const int lb = label[x];
    if (lb < 0) continue;
    if (a < 0 || lb < a) {
      b = a;
      a = lb;
    } else if (b < 0 || lb < b) {
      b = lb;
    }
  }
  return b < 0 ? std::pair<int, int>{-1, -1} : std::pair<int, int>{a, b};
}

// Grows the labeling as far as determinism allows. Returns true when the
// whole structure is labeled, false on a stall.
inline bool propagate(const IncidenceStructure& inc, Labeling& lab) {
  for (;;) {
    int best = -1;
    std::pair<int, int> best_pair{-1, -1};
    bool best_is_line = true;
    for (int l = 0; l < inc.lines; ++l) {
      if (lab.llabel[l] >= 0) continue;
      const auto pr = least_pair(inc.line_points[l], lab.plabel);
      if (pr.first < 0) continue;
      if (best < 0 || pr < best_pair) {
        best = l;
        best_pair = pr;
      }
    }
    if (best >= 0) {
      lab.add_line(best);
      continue;
    }
    for (int p = 0; p < inc.points; ++p) {
      if (lab.plabel[p] >= 0) continue;
      const auto pr = least_pair(inc.point_lines[p], lab.llabel);
      if (pr.first < 0) continue;
      if (best < 0 || pr < best_pair) {
        best = p;
        best_pair = pr;
        best_is_line = false;
      }
    }
    if (best < 0) break;
    if (best_is_line)
      lab.add_line(best);
    else
      lab.add_point(best);
  }
  return lab.np == inc.points && lab.nl == inc.lines;
}

// Incidence lists rewritten in label space; total order on labelings.
inline std::vector<int> encode(const IncidenceStructure& inc, const Labeling& lab) {
  std::vector<int> enc;
  enc.reserve(static_cast<std::size_t>(inc.lines) * (inc.line_points[0].size() + 1));
  for (int ll = 0; ll < lab.nl; ++ll) {
    std::vector<int> pts;
    for (int p : inc.line_points[lab.lorder[ll]]) pts.push_back(lab.plabel[p]);
    std::sort(pts.begin(), pts.end());
    for (int x : pts) enc.push_back(x);
    enc.push_back(-1);
  }
  return enc;
}

// Completes a stalled labeling by individualizing, one at a time, the
// smallest unlabeled point on the smallest labeled line that has one;
// returns the minimal encoding over the branches together with its labeling.
inline void complete_min(const IncidenceStructure& inc, Labeling lab, std::vector<int>& best_enc,
                         Labeling* best_lab) {
  if (propagate(inc, lab)) {
    auto enc = encode(inc, lab);
    if (best_enc.empty() || enc < best_enc) {
      best_enc = std::move(enc);
      if (best_lab) *best_lab = lab;
    }
    return;
  }
  int line = -1;
  for (int ll = 0; ll < lab.nl && line < 0; ++ll) {
    for (int p : inc.line_points[lab.lorder[ll]])
      if (lab.plabel[p] < 0) {
        line = lab.lorder[ll];
        break;
      }
  }
  if (line < 0) {
    // the closure touches no further point through labeled lines; fall back
    // to branching over every unlabeled point
    for (int p = 0; p < inc.points; ++p)
      if (lab.plabel[p] < 0) {
        Labeling next = lab;
        next.add_point(p);
        complete_min(inc, std::move(next), best_enc, best_lab);
      }
    return;
  }
  for (int p : inc.line_points[line])
    if (lab.plabel[p] < 0) {
      Labeling next = lab;
      next.add_point(p);
      complete_min(inc, std::move(next), best_enc, best_lab);
    }
}

// Union-find orbit partition of points under a set of automorphisms.
struct Orbits {
  std::vector<int> parent;

  explicit Orbits(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  bool is_min_of_orbit(int x) {
    const int root = find(x);
    for (int y = 0; y < x; ++y)
      if (find(y) == root) return false;
    return true;
  }
};

inline Orbits point_orbits(int points, const std::vector<std::vector<int>>& gens,
                           const std::vector<int>& fixed) {
  Orbits orb(points);
  for (const auto& g : gens) {
    bool fixes = true;
    for (int f : fixed)
      if (g[f] != f) {
        fixes = false;
        break;
      }
    if (!fixes) continue;
    for (int x = 0; x < points; ++x) orb.unite(x, g[x]);
  }
  return orb;
}

}  // namespace detail

// Canonical form of the projective incidence structure; see the file comment.
inline std::string canonical_incidence_digest(const IncidenceStructure& inc) {
  const int P = inc.points;
  // line through a pair of points, -1 when none
  std::vector<int> join(static_cast<std::size_t>(P) * P, -1);
  for (int l = 0; l < inc.lines; ++l)
    for (std::size_t a = 0; a < inc.line_points[l].size(); ++a)
      for (std::size_t b = a + 1; b < inc.line_points[l].size(); ++b) {
        const int u = inc.line_points[l][a], v = inc.line_points[l][b];
        join[static_cast<std::size_t>(u) * P + v] = join[static_cast<std::size_t>(v) * P + u] = l;
      }
  auto collinear = [&](int a, int b, int c) {
    const int l = join[static_cast<std::size_t>(a) * P + b];
    return l >= 0 && l == join[static_cast<std::size_t>(a) * P + c];
  };

  std::vector<int> best_enc;
  detail::Labeling best_lab(inc);
  std::vector<std::vector<int>> gens;  // point permutations

  // One orbit partition per anchor level, rebuilt only when its stabilized
  // prefix changes or a new generator appears.
  std::array<detail::Orbits, 4> orbs{detail::Orbits(P), detail::Orbits(P), detail::Orbits(P),
                                     detail::Orbits(P)};
  std::array<std::vector<int>, 4> orb_fix;
  std::array<std::size_t, 4> orb_gens{};
  bool orb_init[4] = {false, false, false, false};
  auto orbits = [&](int level, const std::vector<int>& fix) -> detail::Orbits& {
    auto& slot = orbs[level - 1];
    if (!orb_init[level - 1] || orb_fix[level - 1] != fix || orb_gens[level - 1] != gens.size()) {
      slot = detail::point_orbits(P, gens, fix);
      orb_fix[level - 1] = fix;
      orb_gens[level - 1] = gens.size();
      orb_init[level - 1] = true;
    }
    return slot;
  };

  // An anchor may be skipped when a known automorphism that fixes its earlier
  // coordinates maps the current one strictly lower.
  auto minimal_at = [&](detail::Orbits& orb, int x) {
    const int root = orb.find(x);
    for (int y = 0; y < x; ++y)
      if (orb.find(y) == root) return false;
    return true;
  };

  for (int p1 = 0; p1 < P; ++p1) {
    if (!minimal_at(orbits(1, {}), p1)) continue;
    for (int p2 = 0; p2 < P; ++p2) {
      if (p2 == p1) continue;
      if (!minimal_at(orbits(2, {p1}), p2)) continue;
      for (int p3 = 0; p3 < P; ++p3) {
        if (p3 == p1 || p3 == p2 || collinear(p1, p2, p3)) continue;
        if (!minimal_at(orbits(3, {p1, p2}), p3)) continue;
        for (int p4 = 0; p4 < P; ++p4) {
          if (p4 == p1 || p4 == p2 || p4 == p3 || collinear(p1, p2, p4) ||
              collinear(p1, p3, p4) || collinear(p2, p3, p4))
            continue;
          if (!minimal_at(orbits(4, {p1, p2, p3}), p4)) continue;

          detail::Labeling lab(inc);
          lab.add_point(p1);
          lab.add_point(p2);
          lab.add_point(p3);
          lab.add_point(p4);
          std::vector<int> enc;
          detail::Labeling out(inc);
          detail::complete_min(inc, std::move(lab), enc, &out);
          if (best_enc.empty() || enc < best_enc) {
            best_enc = std::move(enc);
            best_lab = out;
          } else if (enc == best_enc) {
            // out and best_lab label the same encoding: composing one with
            // the inverse of the other is an automorphism
            std::vector<int> g(static_cast<std::size_t>(P));
            bool identity = true;
            for (int lbl = 0; lbl < P; ++lbl) {
              g[best_lab.porder[lbl]] = out.porder[lbl];
              identity = identity && best_lab.porder[lbl] == out.porder[lbl];
            }
            if (!identity) gens.push_back(std::move(g));
          }
        }
      }
    }
  }

  Sha256 hash;
  for (int x : best_enc) {
    const std::string token = std::to_string(x) + ";";
    hash.update(token);
  }
  return hash.hex();
}

inline std::string completion_invariant(const PlaneCode& code) {
  const AffinePlane affine = code_to_affine(code);  // validates
  return canonical_incidence_digest(projective_incidence(extend_to_projective(affine)));
}

}  // namespace planes
