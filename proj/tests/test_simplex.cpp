#include <doctest.h>

#include <random>

#include "planes/simplex.hpp"

using namespace planes;

namespace {

LinearProgram dense_lp(const std::vector<std::vector<long>>& a, const std::vector<long>& b,
                       const std::vector<long>& c) {
  LinearProgram lp;
  lp.rows = static_cast<int>(a.size());
  lp.columns.resize(c.size());
  for (std::size_t j = 0; j < c.size(); ++j)
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i][j] != 0) lp.columns[j].entries.push_back({static_cast<int>(i), Rational(a[i][j])});
  for (long v : b) lp.rhs.push_back(Rational(v));
  for (long v : c) lp.objective.push_back(Rational(v));
  return lp;
}

}  // namespace

TEST_CASE("textbook maximum") {
  // max 3x + 5y st x <= 4, 2y <= 12, 3x + 2y <= 18, x,y >= 0 -> 36 at (2,6).
  // Variables here are free, so encode x >= 0, y >= 0 as extra rows.
  const auto lp = dense_lp({{1, 0}, {0, 2}, {3, 2}, {-1, 0}, {0, -1}}, {4, 12, 18, 0, 0}, {3, 5});
  const auto res = SimplexSolver(lp).solve(false);
  CHECK(res.status == SimplexStatus::Optimal);
  CHECK(res.objective == Rational(36));
  CHECK(res.x[0] == Rational(2));
  CHECK(res.x[1] == Rational(6));
}

TEST_CASE("free variables can go negative") {
  // max -x st x >= -5 (i.e. -x <= 5): optimum 5 at x = -5
  const auto lp = dense_lp({{-1}}, {5}, {-1});
  const auto res = SimplexSolver(lp).solve(false);
  CHECK(res.status == SimplexStatus::Optimal);
  CHECK(res.objective == Rational(5));
  CHECK(res.x[0] == Rational(-5));
}

TEST_CASE("exact rational optimum") {
  // max x + y st 3x + y <= 1, x + 3y <= 1, -x <= 0, -y <= 0 -> 1/2 at (1/4, 1/4)
  const auto lp = dense_lp({{3, 1}, {1, 3}, {-1, 0}, {0, -1}}, {1, 1, 0, 0}, {1, 1});
  const auto res = SimplexSolver(lp).solve(false);
  CHECK(res.objective == Rational(1, 2));
  CHECK(res.x[0] == Rational(1, 4));
  CHECK(res.x[1] == Rational(1, 4));
}

TEST_CASE("unbounded program throws") {
  const auto lp = dense_lp({{-1}}, {0}, {1});
  CHECK_THROWS_AS(SimplexSolver(lp).solve(false), simplex_error);
}

TEST_CASE("early positive stop") {
  const auto lp = dense_lp({{1, 1}, {-1, 0}, {0, -1}}, {10, 0, 0}, {1, 1});
  const auto res = SimplexSolver(lp).solve(true);
  CHECK(res.status == SimplexStatus::PositiveStop);
  CHECK(res.objective > 0);
}

TEST_CASE("invalid programs are rejected") {
  auto lp = dense_lp({{1}}, {-1}, {1});
  CHECK_THROWS_AS(SimplexSolver{lp}, simplex_error);  // negative rhs
  auto bad_dims = dense_lp({{1}}, {1}, {1});
  bad_dims.objective.push_back(Rational(0));
  CHECK_THROWS_AS(SimplexSolver{bad_dims}, simplex_error);
  auto bad_row = dense_lp({{1}}, {1}, {1});
  bad_row.columns[0].entries[0].first = 7;
  CHECK_THROWS_AS(SimplexSolver{bad_row}, simplex_error);
}

TEST_CASE("degenerate program terminates") {
  // highly degenerate: all right-hand sides zero except a cap
  const auto lp = dense_lp({{1, -1, 0}, {-1, 1, 0}, {0, 1, -1}, {0, -1, 1}, {1, 1, 1}},
                           {0, 0, 0, 0, 3}, {1, 1, 1});
  const auto res = SimplexSolver(lp).solve(false);
  CHECK(res.status == SimplexStatus::Optimal);
  CHECK(res.objective == Rational(3));
}

TEST_CASE("pivot rules agree on random programs") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 5);
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<std::vector<long>> a(m, std::vector<long>(n));
    std::vector<long> b(m), c(n);
    for (auto& row : a)
      for (auto& v : row) v = static_cast<long>(rng() % 9) - 4;
    for (auto& v : b) v = static_cast<long>(rng() % 7);
    for (auto& v : c) v = static_cast<long>(rng() % 9) - 4;
    // cap every variable in both directions so the program is bounded
    for (int j = 0; j < n; ++j) {
      std::vector<long> up(n, 0), down(n, 0);
      up[j] = 1;
      down[j] = -1;
      a.push_back(up);
      b.push_back(20);
      a.push_back(down);
      b.push_back(20);
    }
    const auto lp = dense_lp(a, b, c);
    const auto dantzig = SimplexSolver(lp).solve(false);
    const auto bland = SimplexSolver(lp).solve(false, /*bland_only=*/true);
    CHECK(dantzig.objective == bland.objective);
  }
}
