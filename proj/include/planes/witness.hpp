#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "planes/latin.hpp"
#include "planes/sha256.hpp"
#include "planes/simplex.hpp"
#include "planes/znn.hpp"

// Infeasibility witnesses. A witness against extending a partial code b0
// with vectors drawn from a candidate pool D is a function
//
//   h(v) = sum_{i<j} T_{i,j}[v_i][v_j]
//
// built from one n x n rational table per coordinate pair, such that
//
//   (a) every table sums to zero,
//   (b) sum_{v in b0} h(v) = 1,
//   (c) h(d) >= 0 for every d in D.
//
// Any full code of n^2 vectors realizes each value pair (v_i, v_j) exactly
// once per coordinate pair, so h sums to zero over it; a completion of b0
// from D would make that sum 1 + (nonnegative) >= 1. Hence a witness proves
// no completion exists, and verifying one needs only exact evaluation.

namespace planes {

inline int pair_count(int n) { return n * (n - 1) / 2; }

inline int pair_index(int n, int i, int j) {  // 0-based, i < j
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

struct WitnessFunction {
  int n = 0;
  // tables[p][a][b] for pair p = pair_index(i, j), lexicographic over i < j
  std::vector<std::vector<std::vector<Rational>>> tables;

  static WitnessFunction zero(int n) {
    WitnessFunction h;
    h.n = n;
    h.tables.assign(static_cast<std::size_t>(pair_count(n)),
                    std::vector<std::vector<Rational>>(
                        static_cast<std::size_t>(n),
                        std::vector<Rational>(static_cast<std::size_t>(n), Rational(0))));
    return h;
  }

  Rational eval(const GroupVector& v) const {
    Rational total = 0;
    int p = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++p) total += tables[p][v[i]][v[j]];
    return total;
  }
};

inline ValidationReport verify_witness(const WitnessFunction& h,
                                       const std::vector<GroupVector>& b0,
                                       const std::vector<GroupVector>& pool) {
  const int n = h.n;
  if (n < 2) return ValidationReport::fail("order must be at least 2");
  if (static_cast<int>(h.tables.size()) != pair_count(n))
    return ValidationReport::fail("expected " + std::to_string(pair_count(n)) + " pair tables");
  for (const auto& t : h.tables) {
    if (static_cast<int>(t.size()) != n) return ValidationReport::fail("table of wrong height");
    Rational sum = 0;
    for (const auto& row : t) {
      if (static_cast<int>(row.size()) != n) return ValidationReport::fail("table row of wrong width");
      for (const auto& cell : row) sum += cell;
    }
    if (sum != 0) return ValidationReport::fail("pair table does not sum to zero");
  }
  Rational base = 0;
  for (const auto& v : b0) {
    if (static_cast<int>(v.size()) != n) return ValidationReport::fail("b0 vector of wrong order");
    base += h.eval(v);
  }
  if (base != 1)
    return ValidationReport::fail("witness sums to " + rational_to_string(base) + " != 1 over b0");
  for (const auto& d : pool) {
    if (static_cast<int>(d.size()) != n) return ValidationReport::fail("pool vector of wrong order");
    if (h.eval(d) < 0)
      return ValidationReport::fail("witness negative at pool vector " + format_vector(d));
  }
  return ValidationReport::pass();
}

// The feasibility program: one free variable per table cell, maximizing
// phi = sum_{b0} h subject to the zero sums (two inequality rows each),
// -h(d) <= 0 per pool vector, and phi <= 1. The optimum is 0 exactly when
// no witness exists; any basic solution with phi > 0 rescales to a witness.
inline LinearProgram build_lp(int n, const std::vector<GroupVector>& b0,
                              const std::vector<GroupVector>& pool) {
  const int pairs = pair_count(n);
  const int cells = n * n;
  LinearProgram lp;
  lp.rows = 2 * pairs + static_cast<int>(pool.size()) + 1;
  const int phi_row = lp.rows - 1;
  lp.columns.assign(static_cast<std::size_t>(pairs) * cells, SparseColumn{});
  lp.objective.assign(lp.columns.size(), Rational(0));
  lp.rhs.assign(static_cast<std::size_t>(lp.rows), Rational(0));
  lp.rhs[phi_row] = 1;

  auto cell_index = [&](int p, int a, int b) { return p * cells + a * n + b; };
  for (int p = 0; p < pairs; ++p)
    for (int c = 0; c < cells; ++c) {
      auto& col = lp.columns[cell_index(p, 0, 0) + c].entries;
      col.push_back({2 * p, Rational(1)});
      col.push_back({2 * p + 1, Rational(-1)});
    }
  for (std::size_t t = 0; t < pool.size(); ++t) {
    const auto& d = pool[t];
    const int row = 2 * pairs + static_cast<int>(t);
    int p = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++p)
        lp.columns[cell_index(p, d[i], d[j])].entries.push_back({row, Rational(-1)});
  }
  for (const auto& v : b0) {
    int p = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++p) {
        const int idx = cell_index(p, v[i], v[j]);
        lp.objective[idx] += 1;
        auto& col = lp.columns[idx].entries;
        if (!col.empty() && col.back().first == phi_row)
          col.back().second += 1;
        else
          col.push_back({phi_row, Rational(1)});
      }
  }
  return lp;
}

struct WitnessOutcome {
  bool feasible = false;
  WitnessFunction witness;  // valid when feasible
  long pivots = 0;
};

// Solves the feasibility program. With `recheck` set, an infeasible outcome
// is confirmed by a second solve under Bland's rule alone.
inline WitnessOutcome solve_feasibility(int n, const std::vector<GroupVector>& b0,
                                        const std::vector<GroupVector>& pool,
                                        bool recheck = false) {
  const LinearProgram lp = build_lp(n, b0, pool);
  SimplexSolver solver(lp);
  const SimplexResult res = solver.solve(/*stop_when_positive=*/true);
  WitnessOutcome out;
  out.pivots = res.pivots;
  if (res.status == SimplexStatus::Optimal) {
    if (res.objective != 0) throw simplex_error("feasibility optimum is not zero");
    if (recheck) {
      SimplexSolver again(lp);
      const SimplexResult confirm = again.solve(/*stop_when_positive=*/true, /*bland_only=*/true);
      out.pivots += confirm.pivots;
      if (confirm.status != SimplexStatus::Optimal || confirm.objective != 0)
        throw simplex_error("pivot rules disagree on feasibility");
    }
    return out;
  }
  // rescale to sum exactly 1 over b0
  out.feasible = true;
  out.witness = WitnessFunction::zero(n);
  const int cells = n * n;
  for (int p = 0; p < pair_count(n); ++p)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const Rational& x = res.x[static_cast<std::size_t>(p) * cells + a * n + b];
        if (x != 0) out.witness.tables[p][a][b] = x / res.objective;
      }
  if (auto r = verify_witness(out.witness, b0, pool); !r.ok)
    throw simplex_error("solver produced an invalid witness: " + r.violation);
  return out;
}

// Digest of a candidate pool: SHA-256 over the sorted vectors, one per line.
inline std::string pool_digest(std::vector<GroupVector> pool) {
  std::sort(pool.begin(), pool.end());
  Sha256 hash;
  for (const auto& v : pool) hash.update(format_vector(v) + "\n");
  return hash.hex();
}

struct Certificate {
  int order = 0;
  int catalogue_label = 0;                // 1-based index into the class catalogue
  std::vector<GroupVector> extension;     // vectors appended to the seed, in order
  std::vector<GroupVector> b0;
  std::string d_digest;
  WitnessFunction witness;
};

inline nlohmann::json certificate_to_json(const Certificate& cert) {
  nlohmann::json j;
  j["version"] = 1;
  j["order"] = cert.order;
  j["seed"]["catalogue_label"] = cert.catalogue_label;
  auto vectors = [](const std::vector<GroupVector>& vs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : vs) arr.push_back(format_vector(v));
    return arr;
  };
  j["seed"]["extension"] = vectors(cert.extension);
  j["b0"] = vectors(cert.b0);
  j["d_digest"] = cert.d_digest;
  nlohmann::json tables = nlohmann::json::object();
  const int n = cert.order;
  int p = 0;
  for (int i = 0; i < n; ++i)
    for (int jx = i + 1; jx < n; ++jx, ++p) {
      nlohmann::json table = nlohmann::json::array();
      for (int a = 0; a < n; ++a) {
        nlohmann::json row = nlohmann::json::array();
        for (int b = 0; b < n; ++b) row.push_back(rational_to_string(cert.witness.tables[p][a][b]));
        table.push_back(std::move(row));
      }
      tables[std::to_string(i + 1) + "," + std::to_string(jx + 1)] = std::move(table);
    }
  j["tables"] = std::move(tables);
  return j;
}

inline Certificate certificate_from_json(const nlohmann::json& j) try {
  if (!j.is_object() || j.value("version", 0) != 1)
    throw input_error("unsupported certificate format");
  Certificate cert;
  cert.order = j.at("order").get<int>();
  const int n = cert.order;
  if (n < 2 || n > 15) throw input_error("certificate order out of range");
  cert.catalogue_label = j.at("seed").at("catalogue_label").get<int>();
  auto vectors = [&](const nlohmann::json& arr) {
    std::vector<GroupVector> vs;
    for (const auto& s : arr) {
      auto v = parse_vector(s.get<std::string>());
      if (static_cast<int>(v.size()) != n) throw input_error("certificate vector of wrong order");
      vs.push_back(std::move(v));
    }
    return vs;
  };
  cert.extension = vectors(j.at("seed").at("extension"));
  cert.b0 = vectors(j.at("b0"));
  cert.d_digest = j.at("d_digest").get<std::string>();
  cert.witness = WitnessFunction::zero(n);
  const auto& tables = j.at("tables");
  if (static_cast<int>(tables.size()) != pair_count(n))
    throw input_error("certificate has the wrong number of pair tables");
  int p = 0;
  for (int i = 0; i < n; ++i)
    for (int jx = i + 1; jx < n; ++jx, ++p) {
      const std::string key = std::to_string(i + 1) + "," + std::to_string(jx + 1);
      const auto& table = tables.at(key);
      if (static_cast<int>(table.size()) != n) throw input_error("malformed table " + key);
      for (int a = 0; a < n; ++a) {
        const auto& row = table.at(a);
        if (static_cast<int>(row.size()) != n) throw input_error("malformed table " + key);
        for (int b = 0; b < n; ++b)
          cert.witness.tables[p][a][b] = parse_rational(row.at(b).get<std::string>());
      }
    }
  return cert;
} catch (const nlohmann::json::exception& e) {
  throw input_error(std::string("malformed certificate: ") + e.what());
}

}  // namespace planes
