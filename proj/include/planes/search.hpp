#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "planes/designs.hpp"
#include "planes/isotopy.hpp"
#include "planes/witness.hpp"

// The branching search: per isotopy class of order n-1, a seed of 2n-1
// vectors is either refuted by a witness, or extended by candidate vectors
// until every path ends in a witness or a full n^2-vector completion.
//
// Branch children receive the suffix of the parent pool after the chosen
// candidate, filtered for compatibility with it. Extensions are therefore
// increasing vector sequences, so every candidate subset - in particular
// every completion - is reached exactly once, and a witness at a node
// refutes precisely the completions through that node's pool.

namespace planes {

// The fixed 2n-1 starting vectors: the n constants plus one vector per
// column of an order-(n-1) square, with first coordinate 0 and the column's
// symbols shifted up by one.
inline std::vector<GroupVector> seed_b0(int n, const LatinSquare& square) {
  if (n < 2) throw input_error("order must be at least 2");
  if (square.order != n - 1)
    throw input_error("seed square must have order " + std::to_string(n - 1));
  if (square.order > 1)
    if (auto r = validate_latin(square); !r.ok)
      throw input_error("seed is not a Latin square: " + r.violation);
  std::vector<GroupVector> b0;
  for (int m = 0; m < n; ++m) b0.push_back(constant_vector(n, m));
  for (int c = 0; c < n - 1; ++c) {
    GroupVector v(static_cast<std::size_t>(n), 0);
    for (int r = 0; r < n - 1; ++r) v[1 + r] = static_cast<std::uint8_t>(square.at(r, c) + 1);
    b0.push_back(std::move(v));
  }
  PlaneCode code{n, b0};
  std::sort(code.vectors.begin(), code.vectors.end());
  if (auto r = validate_code(code); !r.ok) throw input_error("invalid seed: " + r.violation);
  return b0;
}

// All vectors compatible (coincidence <= 1) with every member of b0, in
// lexicographic order. Because b0 contains the n constants, candidates are
// exactly the compatible permutation vectors, found by backtracking.
inline std::vector<GroupVector> enumerate_candidates(int n, const std::vector<GroupVector>& b0) {
  for (int m = 0; m < n; ++m) {
    const GroupVector c = constant_vector(n, m);
    if (std::find(b0.begin(), b0.end(), c) == b0.end())
      throw input_error("b0 must contain all constant vectors");
  }
  std::vector<GroupVector> out;
  GroupVector v(static_cast<std::size_t>(n), 0);
  std::vector<int> counts(b0.size(), 0);
  unsigned used = 0;
  std::function<void(int)> place = [&](int pos) {
    if (pos == n) {
      out.push_back(v);
      return;
    }
    for (int m = 0; m < n; ++m) {
      if (used & (1u << m)) continue;
      std::size_t k = 0;
      bool ok = true;
      for (; k < b0.size(); ++k)
        if (b0[k][pos] == m && ++counts[k] > 1) {
          ok = false;
          break;
        }
      if (ok) {
        v[pos] = static_cast<std::uint8_t>(m);
        used |= 1u << m;
        place(pos + 1);
        used &= ~(1u << m);
      } else {
        ++k;  // counts[k] was incremented before the break
      }
      for (std::size_t u = 0; u < k; ++u)
        if (b0[u][pos] == m) --counts[u];
    }
  };
  place(0);
  return out;  // lexicographic by construction
}

// Counting is a reserved refutation kind (|b0| + |pool| < n^2, so the node
// cannot reach a completion); the prover always produces a witness instead,
// but the verifier accepts and re-checks the arithmetic.
enum class NodeKind { Witness, Branch, Completion, DepthLimit, Counting };

// Shape of a resolved search node; witnesses and completions are streamed
// out through callbacks rather than held in the tree.
struct NodeRecord {
  NodeKind kind = NodeKind::Witness;
  int pool_size = 0;
  std::vector<NodeRecord> children;  // Branch only, one per pool element
  std::string fingerprint;           // Completion only
};

struct SearchLimits {
  int max_depth = -1;  // -1: effectively unbounded (n^2 - (2n-1))
  int resolved(int n) const { return max_depth >= 0 ? max_depth : n * n - (2 * n - 1); }
};

struct SearchCallbacks {
  // invoked for every witness leaf with the node's pool-index path
  std::function<void(const std::vector<int>& path, const Certificate&)> on_witness;
  // invoked for every completion leaf with the full code; returns the
  // canonical fingerprint to record in the tree
  std::function<std::string(const std::vector<int>& path, const std::vector<GroupVector>& code)>
      on_completion;
};

namespace detail {

struct ClassSearch {
  int n;
  int label;
  const SearchLimits& limits;
  const SearchCallbacks& cb;
  bool recheck;
  std::vector<GroupVector> b0;  // seed + current extension
  std::size_t seed_size = 0;
  std::vector<int> path;

  NodeRecord prove(const std::vector<GroupVector>& pool, int depth) {
    NodeRecord node;
    node.pool_size = static_cast<int>(pool.size());
    if (static_cast<int>(b0.size()) == n * n) {
      node.kind = NodeKind::Completion;
      node.fingerprint = cb.on_completion(path, b0);
      return node;
    }
    const WitnessOutcome outcome = solve_feasibility(n, b0, pool, recheck);
    if (outcome.feasible) {
      node.kind = NodeKind::Witness;
      Certificate cert;
      cert.order = n;
      cert.catalogue_label = label;
      cert.extension.assign(b0.begin() + seed_size, b0.end());
      cert.b0 = b0;
      cert.d_digest = pool_digest(pool);
      cert.witness = outcome.witness;
      cb.on_witness(path, cert);
      return node;
    }
    if (depth >= limits.resolved(n)) {
      node.kind = NodeKind::DepthLimit;
      return node;
    }
    node.kind = NodeKind::Branch;
    node.children.reserve(pool.size());
    for (std::size_t t = 0; t < pool.size(); ++t) {
      std::vector<GroupVector> child_pool;
      for (std::size_t u = t + 1; u < pool.size(); ++u)
        if (count_coincidences(pool[u], pool[t]) <= 1) child_pool.push_back(pool[u]);
      b0.push_back(pool[t]);
      path.push_back(static_cast<int>(t));
      node.children.push_back(prove(child_pool, depth + 1));
      path.pop_back();
      b0.pop_back();
    }
    return node;
  }
};

}  // namespace detail

// Resolves one class tree rooted at the given seed.
inline NodeRecord prove_class(int n, int label, const std::vector<GroupVector>& seed,
                              const SearchLimits& limits, const SearchCallbacks& callbacks) {
  detail::ClassSearch search{n,      label, limits, callbacks, /*recheck=*/n == 6,
                             seed,   seed.size(),   {}};
  return search.prove(enumerate_candidates(n, seed), 0);
}

enum class Verdict { NonExistence, Completions, Inconclusive };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::NonExistence: return "NonExistence";
    case Verdict::Completions: return "Completions";
    default: return "Inconclusive";
  }
}

inline void count_nodes(const NodeRecord& node, long& witnesses, long& branches, long& completions,
                        long& depth_limits) {
  switch (node.kind) {
    case NodeKind::Witness: ++witnesses; break;
    case NodeKind::Branch:
      ++branches;
      for (const auto& c : node.children) count_nodes(c, witnesses, branches, completions, depth_limits);
      break;
    case NodeKind::Completion: ++completions; break;
    case NodeKind::DepthLimit: ++depth_limits; break;
    case NodeKind::Counting: break;  // refuted without a certificate
  }
}

inline Verdict combined_verdict(const std::vector<NodeRecord>& roots) {
  long w = 0, b = 0, c = 0, d = 0;
  for (const auto& r : roots) count_nodes(r, w, b, c, d);
  if (d > 0) return Verdict::Inconclusive;
  return c > 0 ? Verdict::Completions : Verdict::NonExistence;
}

}  // namespace planes
