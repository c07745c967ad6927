#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "planes/latin.hpp"
#include "planes/znn.hpp"

// Affine and projective planes, plane codes, and the equivalence
// constructions between them, MOLS families and codes in Z_n^n.
//
// Points of an order-n plane are pairs (i,j) in Z_n x Z_n, serialized as
// row-major ids i*n+j. A plane's parallel classes are kept in input order;
// the conversion to MOLS treats the last two classes as the vertical and
// horizontal class, respectively.

namespace planes {

using Line = std::vector<int>;           // sorted point ids
using ParallelClass = std::vector<Line>; // n disjoint lines

struct AffinePlane {
  int order = 0;
  std::vector<ParallelClass> classes;  // n+1 classes
};

struct ProjectivePlane {
  AffinePlane affine;
  // Ideal point k (id order^2 + k) is shared by all lines of parallel class k.
  int ideal_points() const { return static_cast<int>(affine.classes.size()); }
};

struct PlaneCode {
  int order = 0;
  std::vector<GroupVector> vectors;  // kept sorted
};

inline ValidationReport validate_affine(const AffinePlane& p) {
  const int n = p.order;
  if (n < 2) return ValidationReport::fail("order must be at least 2");
  if (static_cast<int>(p.classes.size()) != n + 1)
    return ValidationReport::fail("expected " + std::to_string(n + 1) + " parallel classes, got " +
                                  std::to_string(p.classes.size()));
  for (int ci = 0; ci < n + 1; ++ci) {
    const auto& cls = p.classes[ci];
    if (static_cast<int>(cls.size()) != n)
      return ValidationReport::fail("class " + std::to_string(ci) + " has " +
                                    std::to_string(cls.size()) + " lines, expected " +
                                    std::to_string(n));
    std::vector<char> covered(static_cast<std::size_t>(n) * n, 0);
    for (const auto& line : cls) {
      if (static_cast<int>(line.size()) != n)
        return ValidationReport::fail("class " + std::to_string(ci) + " has a line of size " +
                                      std::to_string(line.size()));
      for (int pt : line) {
        if (pt < 0 || pt >= n * n)
          return ValidationReport::fail("point id out of range in class " + std::to_string(ci));
        if (covered[pt]++)
          return ValidationReport::fail("class " + std::to_string(ci) +
                                        " does not partition the points (point " +
                                        std::to_string(pt) + " covered twice)");
      }
    }
  }
  // Cross-class lines must meet in exactly one point.
  std::vector<char> mark(static_cast<std::size_t>(p.order) * p.order, 0);
  for (std::size_t a = 0; a < p.classes.size(); ++a)
    for (std::size_t b = a + 1; b < p.classes.size(); ++b)
      for (const auto& la : p.classes[a]) {
        for (int pt : la) mark[pt] = 1;
        for (const auto& lb : p.classes[b]) {
          int meet = 0;
          for (int pt : lb) meet += mark[pt];
          if (meet != 1)
            return ValidationReport::fail("two lines intersect in " + std::to_string(meet) +
                                          " != 1 point (classes " + std::to_string(a) + ", " +
                                          std::to_string(b) + ")");
        }
        for (int pt : la) mark[pt] = 0;
      }
  return ValidationReport::pass();
}

inline ValidationReport validate_code(const PlaneCode& code) {
  const int n = code.order;
  if (n < 2) return ValidationReport::fail("order must be at least 2");
  for (const auto& v : code.vectors) {
    if (static_cast<int>(v.size()) != n) return ValidationReport::fail("vector of wrong order");
    for (auto e : v)
      if (e >= n) return ValidationReport::fail("vector entry out of range");
  }
  for (std::size_t a = 0; a < code.vectors.size(); ++a)
    for (std::size_t b = a + 1; b < code.vectors.size(); ++b) {
      if (code.vectors[a] == code.vectors[b]) return ValidationReport::fail("duplicate vector");
      if (count_coincidences(code.vectors[a], code.vectors[b]) > 1)
        return ValidationReport::fail("vectors " + format_vector(code.vectors[a]) + " and " +
                                      format_vector(code.vectors[b]) +
                                      " have more than one coincidence");
    }
  return ValidationReport::pass();
}

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Affine plane over Z_p: slope classes a = 1..p-1, then the vertical class
// x = const, then the horizontal class y = const.
inline AffinePlane prime_plane(int p) {
  if (!is_prime(p)) throw input_error("prime_plane requires a prime order");
  AffinePlane plane;
  plane.order = p;
  auto slope_class = [&](int a) {
    ParallelClass cls;
    for (int b = 0; b < p; ++b) {
      Line line;
      for (int x = 0; x < p; ++x) line.push_back(x * p + (a * x + b) % p);
      std::sort(line.begin(), line.end());
      cls.push_back(std::move(line));
    }
    return cls;
  };
  for (int a = 1; a < p; ++a) plane.classes.push_back(slope_class(a));
  ParallelClass vertical;
  for (int m = 0; m < p; ++m) {
    Line line;
    for (int y = 0; y < p; ++y) line.push_back(m * p + y);
    vertical.push_back(std::move(line));
  }
  plane.classes.push_back(std::move(vertical));
  plane.classes.push_back(slope_class(0));  // horizontal
  return plane;
}

// The MOLS construction from the proof of the equivalence proposition:
// the last two classes serve as the vertical class L_n and horizontal
// class L_{n+1}; symbol m is placed at (i,j) when the point on vertical
// line i and horizontal line j lies on the m-th line of class k.
inline MOLSet affine_to_mols(const AffinePlane& plane) {
  if (auto r = validate_affine(plane); !r.ok) throw input_error("invalid affine plane: " + r.violation);
  const int n = plane.order;
  const auto& vertical = plane.classes[n - 1];
  const auto& horizontal = plane.classes[n];
  // coordinates of each point: (index of its vertical line, index of its horizontal line)
  std::vector<int> vi(static_cast<std::size_t>(n) * n), hj(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int pt : vertical[i]) vi[pt] = i;
  for (int j = 0; j < n; ++j)
    for (int pt : horizontal[j]) hj[pt] = j;
  MOLSet mols;
  mols.order = n;
  for (int k = 0; k < n - 1; ++k) {
    LatinSquare s = LatinSquare::blank(n);
    for (int m = 0; m < n; ++m)
      for (int pt : plane.classes[k][m]) s.cell(vi[pt], hj[pt]) = static_cast<std::uint8_t>(m);
    mols.squares.push_back(std::move(s));
  }
  return mols;
}

inline AffinePlane mols_to_affine(const MOLSet& mols) {
  if (!mols.complete()) throw input_error("MOLS set is not complete");
  if (auto r = validate_mols(mols); !r.ok) throw input_error("invalid MOLS set: " + r.violation);
  const int n = mols.order;
  AffinePlane plane;
  plane.order = n;
  for (const auto& sq : mols.squares) {
    ParallelClass cls(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) cls[sq.at(i, j)].push_back(i * n + j);
    plane.classes.push_back(std::move(cls));
  }
  ParallelClass vertical(static_cast<std::size_t>(n)), horizontal(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      vertical[i].push_back(i * n + j);
      horizontal[j].push_back(i * n + j);
    }
  plane.classes.push_back(std::move(vertical));
  plane.classes.push_back(std::move(horizontal));
  return plane;
}

// The n^2 code vectors of an affine plane: the constants (m,...,m) plus,
// per square S_k and symbol m, the vector (j_0,...,j_{n-1}) where (i, j_i)
// runs over the positions of m in S_k.
inline PlaneCode affine_to_code(const AffinePlane& plane) {
  const MOLSet mols = affine_to_mols(plane);  // validates
  const int n = plane.order;
  PlaneCode code;
  code.order = n;
  for (int m = 0; m < n; ++m) code.vectors.push_back(constant_vector(n, m));
  for (const auto& sq : mols.squares)
    for (int m = 0; m < n; ++m) {
      GroupVector v(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (sq.at(i, j) == m) v[i] = static_cast<std::uint8_t>(j);
      code.vectors.push_back(std::move(v));
    }
  std::sort(code.vectors.begin(), code.vectors.end());
  return code;
}

// Classes of the no-coincidence relation; valid codes of size n^2 split
// into n classes of n with exactly one cross-class coincidence.
inline std::vector<std::vector<GroupVector>> partition_code(const PlaneCode& code) {
  const int n = code.order;
  if (static_cast<int>(code.vectors.size()) != n * n)
    throw input_error("partition_code requires exactly n^2 vectors");
  if (auto r = validate_code(code); !r.ok) throw input_error("invalid code: " + r.violation);
  const int total = n * n;
  std::vector<int> parent(total);
  for (int i = 0; i < total; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int a = 0; a < total; ++a)
    for (int b = a + 1; b < total; ++b)
      if (count_coincidences(code.vectors[a], code.vectors[b]) == 0)
        parent[find(a)] = find(b);
  std::map<int, std::vector<GroupVector>> groups;
  for (int i = 0; i < total; ++i) groups[find(i)].push_back(code.vectors[i]);
  std::vector<std::vector<GroupVector>> classes;
  for (auto& [root, members] : groups) {
    if (static_cast<int>(members.size()) != n)
      throw input_error("code does not partition into classes of size n");
    std::sort(members.begin(), members.end());
    classes.push_back(std::move(members));
  }
  if (static_cast<int>(classes.size()) != n)
    throw input_error("code does not partition into n classes");
  // Cross-class pairs must coincide exactly once.
  for (std::size_t a = 0; a < classes.size(); ++a)
    for (std::size_t b = a + 1; b < classes.size(); ++b)
      for (const auto& u : classes[a])
        for (const auto& v : classes[b])
          if (count_coincidences(u, v) != 1)
            throw input_error("cross-class pair without a unique coincidence");
  std::sort(classes.begin(), classes.end());
  return classes;
}

// Each vector u becomes the line {(i, u_i)}; classes from the partition,
// plus the vertical class.
inline AffinePlane code_to_affine(const PlaneCode& code) {
  const int n = code.order;
  if (static_cast<int>(code.vectors.size()) != n * n)
    throw input_error("code_to_affine requires exactly n^2 vectors, got " +
                      std::to_string(code.vectors.size()));
  const auto classes = partition_code(code);  // validates the code as well
  AffinePlane plane;
  plane.order = n;
  for (const auto& cls : classes) {
    ParallelClass pc;
    for (const auto& u : cls) {
      Line line;
      for (int i = 0; i < n; ++i) line.push_back(i * n + u[i]);
      pc.push_back(std::move(line));
    }
    plane.classes.push_back(std::move(pc));
  }
  ParallelClass vertical;
  for (int m = 0; m < n; ++m) {
    Line line;
    for (int y = 0; y < n; ++y) line.push_back(m * n + y);
    vertical.push_back(std::move(line));
  }
  plane.classes.push_back(std::move(vertical));
  if (auto r = validate_affine(plane); !r.ok)
    throw input_error("code does not yield a valid affine plane: " + r.violation);
  return plane;
}

inline ProjectivePlane extend_to_projective(const AffinePlane& affine) {
  if (auto r = validate_affine(affine); !r.ok)
    throw input_error("invalid affine plane: " + r.violation);
  return ProjectivePlane{affine};
}

}  // namespace planes
