#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "planes/rational.hpp"

// Exact revised simplex over the rationals for programs of the shape
//
//   maximize c^T x   subject to   A x <= b,  x free,  b >= 0,
//
// which is all the witness search needs: the slack basis is feasible from the
// start, so there is no phase one. The basis inverse is kept explicitly.
//
// Pricing is Dantzig's rule, falling back to Bland's rule after a run of
// degenerate pivots and returning to Dantzig after the next strict
// improvement; Bland's rule alone guarantees no cycle, so the hybrid
// terminates. Free variables may enter with a reduced cost of either sign
// (the improving direction is recorded as a sign flip) and, being
// unrestricted, are never removed by the ratio test.

namespace planes {

struct SparseColumn {
  std::vector<std::pair<int, Rational>> entries;  // (row, value), rows strictly increasing
};

struct LinearProgram {
  int rows = 0;
  std::vector<SparseColumn> columns;
  std::vector<Rational> rhs;        // size rows, all >= 0
  std::vector<Rational> objective;  // size columns
};

enum class SimplexStatus {
  Optimal,          // proven maximum reached
  PositiveStop,     // stopped early at the first strictly positive objective
};

struct SimplexResult {
  SimplexStatus status = SimplexStatus::Optimal;
  Rational objective;
  std::vector<Rational> x;  // structural variable values
  long pivots = 0;
};

struct simplex_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class SimplexSolver {
 public:
  explicit SimplexSolver(const LinearProgram& lp) : lp_(lp), m_(lp.rows), n_(static_cast<int>(lp.columns.size())) {
    if (static_cast<int>(lp.rhs.size()) != m_ || static_cast<int>(lp.objective.size()) != n_)
      throw simplex_error("inconsistent program dimensions");
    for (const auto& v : lp.rhs)
      if (v < 0) throw simplex_error("negative right-hand side");
    for (const auto& col : lp.columns)
      for (const auto& [r, val] : col.entries)
        if (r < 0 || r >= m_) throw simplex_error("column entry out of range");
  }

  // Runs to optimality, or stops at the first basic solution with a strictly
  // positive objective when `stop_when_positive` is set.
  SimplexResult solve(bool stop_when_positive, bool bland_only = false) {
    init();
    SimplexResult res;
    bool bland = bland_only;
    int degenerate_run = 0;
    for (;;) {
      if (stop_when_positive && z_ > 0) {
        res.status = SimplexStatus::PositiveStop;
        break;
      }
      const auto y = dual_values();
      const int enter = price(y, bland);
      if (enter < 0) {
        res.status = SimplexStatus::Optimal;
        break;
      }
      const Rational gain = pivot(enter);
      ++res.pivots;
      if (gain > 0) {
        degenerate_run = 0;
        if (!bland_only) bland = false;
      } else if (++degenerate_run >= kBlandThreshold) {
        bland = true;
      }
    }
    res.objective = z_;
    res.x.assign(static_cast<std::size_t>(n_), Rational(0));
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) res.x[basis_[i]] = sign_[basis_[i]] < 0 ? Rational(-xb_[i]) : xb_[i];
    return res;
  }

 private:
  static constexpr int kBlandThreshold = 40;

  void init() {
    basis_.resize(static_cast<std::size_t>(m_));
    in_basis_.assign(static_cast<std::size_t>(n_ + m_), false);
    sign_.assign(static_cast<std::size_t>(n_), 1);
    binv_.assign(static_cast<std::size_t>(m_) * m_, Rational(0));
    for (int i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;  // slack of row i
      in_basis_[n_ + i] = true;
      binv_[static_cast<std::size_t>(i) * m_ + i] = 1;
    }
    xb_ = lp_.rhs;
    z_ = 0;
  }

  // y = c_B^T B^{-1}; slacks cost nothing, so only structural basics contribute.
  std::vector<Rational> dual_values() const {
    std::vector<Rational> y(static_cast<std::size_t>(m_), Rational(0));
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) continue;
      const Rational cb = signed_cost(basis_[i]);
      if (cb == 0) continue;
      const Rational* row = &binv_[static_cast<std::size_t>(i) * m_];
      for (int k = 0; k < m_; ++k)
        if (row[k] != 0) y[k] += cb * row[k];
    }
    return y;
  }

  Rational signed_cost(int j) const {
    return sign_[j] < 0 ? Rational(-lp_.objective[j]) : lp_.objective[j];
  }

  // Reduced cost of structural column j in its current orientation.
  Rational reduced_cost(const std::vector<Rational>& y, int j) const {
    Rational d = lp_.objective[j];
    for (const auto& [r, val] : lp_.columns[j].entries)
      if (y[r] != 0) d -= y[r] * val;
    return sign_[j] < 0 ? Rational(-d) : d;
  }

  // Chooses the entering variable; flips the orientation of a free column
  // whose profitable direction is negative. Returns -1 at optimality.
  int price(const std::vector<Rational>& y, bool bland) {
    int best = -1;
    Rational best_d;
    auto consider = [&](int j, const Rational& d) {
      if (bland) {
        if (best < 0) best = j;
        return;
      }
      if (best < 0 || d > best_d) {
        best = j;
        best_d = d;
      }
    };
    for (int j = 0; j < n_ && !(bland && best >= 0); ++j) {
      if (in_basis_[j]) continue;
      Rational d = reduced_cost(y, j);
      if (d < 0) {  // free variable: profitable in the opposite direction
        sign_[j] = -sign_[j];
        d = -d;
      }
      if (d > 0) consider(j, d);
    }
    if (bland && best >= 0) return best;
    for (int i = 0; i < m_; ++i) {
      const int j = n_ + i;
      if (in_basis_[j]) continue;
      // slack column is the i-th unit vector; it may only re-enter upward
      const Rational d = -y[i];
      if (d > 0) {
        consider(j, d);
        if (bland) return best;
      }
    }
    return best;
  }

  // Pivots column `enter` into the basis; returns the objective gain.
  Rational pivot(int enter) {
    // w = B^{-1} a_enter in the entering orientation
    std::vector<Rational> w(static_cast<std::size_t>(m_), Rational(0));
    if (enter < n_) {
      for (const auto& [r, val] : lp_.columns[enter].entries) {
        const Rational v = sign_[enter] < 0 ? Rational(-val) : val;
        for (int i = 0; i < m_; ++i) {
          const Rational& b = binv_[static_cast<std::size_t>(i) * m_ + r];
          if (b != 0) w[i] += b * v;
        }
      }
    } else {
      const int r = enter - n_;
      for (int i = 0; i < m_; ++i) w[i] = binv_[static_cast<std::size_t>(i) * m_ + r];
    }

    // Ratio test over rows whose basic variable must stay nonnegative:
    // slacks only, since structural variables are free.
    int leave = -1;
    Rational theta;
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_ || w[i] <= 0) continue;
      const Rational ratio = xb_[i] / w[i];
      if (leave < 0 || ratio < theta || (ratio == theta && basis_[i] < basis_[leave])) {
        leave = i;
        theta = ratio;
      }
    }
    if (leave < 0) throw simplex_error("unbounded objective");

    const Rational dz = [&] {
      // gain = theta * reduced cost of the entering variable; recompute the
      // reduced cost from the pivot row to avoid carrying y around
      if (theta == 0) return Rational(0);
      Rational d = enter < n_ ? signed_cost(enter) : Rational(0);
      for (int i = 0; i < m_; ++i)
        if (basis_[i] < n_ && w[i] != 0) d -= signed_cost(basis_[i]) * w[i];
      return Rational(theta * d);
    }();

    // Update the inverse and the basic solution.
    const Rational piv = w[leave];
    Rational* lrow = &binv_[static_cast<std::size_t>(leave) * m_];
    for (int k = 0; k < m_; ++k)
      if (lrow[k] != 0) lrow[k] /= piv;
    xb_[leave] /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == leave || w[i] == 0) continue;
      Rational* row = &binv_[static_cast<std::size_t>(i) * m_];
      for (int k = 0; k < m_; ++k)
        if (lrow[k] != 0) row[k] -= w[i] * lrow[k];
      xb_[i] -= w[i] * xb_[leave];
    }
    in_basis_[basis_[leave]] = false;
    in_basis_[enter] = true;
    basis_[leave] = enter;
    z_ += dz;
    return dz;
  }

  const LinearProgram& lp_;
  int m_, n_;
  std::vector<int> basis_;
  std::vector<bool> in_basis_;
  std::vector<int> sign_;       // orientation of each structural variable
  std::vector<Rational> binv_;  // row-major m x m
  std::vector<Rational> xb_;
  Rational z_;
};

}  // namespace planes
