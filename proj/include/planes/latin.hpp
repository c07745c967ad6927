#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "planes/znn.hpp"

// Latin squares and complete families of mutually orthogonal ones.

namespace planes {

struct LatinSquare {
  int order = 0;
  std::vector<std::uint8_t> grid;  // row-major, order*order entries in [0, order)

  int at(int r, int c) const { return grid[static_cast<std::size_t>(r) * order + c]; }
  std::uint8_t& cell(int r, int c) { return grid[static_cast<std::size_t>(r) * order + c]; }

  static LatinSquare blank(int m) {
    LatinSquare s;
    s.order = m;
    s.grid.assign(static_cast<std::size_t>(m) * m, 0);
    return s;
  }

  friend bool operator==(const LatinSquare&, const LatinSquare&) = default;
  friend auto operator<=>(const LatinSquare& a, const LatinSquare& b) {
    if (auto c = a.order <=> b.order; c != 0) return c;
    return a.grid <=> b.grid;
  }
};

struct ValidationReport {
  bool ok = true;
  std::string violation;  // first violated constraint, empty when ok

  static ValidationReport pass() { return {}; }
  static ValidationReport fail(std::string what) { return {false, std::move(what)}; }
};

inline ValidationReport validate_latin(const LatinSquare& s) {
  const int m = s.order;
  if (m < 1) return ValidationReport::fail("order must be positive");
  if (static_cast<int>(s.grid.size()) != m * m) return ValidationReport::fail("grid size mismatch");
  for (auto e : s.grid)
    if (e >= m) return ValidationReport::fail("symbol out of range");
  std::vector<int> seen(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int c = 0; c < m; ++c)
      if (++seen[s.at(r, c)] > 1)
        return ValidationReport::fail("row " + std::to_string(r) + " repeats symbol " +
                                      std::to_string(s.at(r, c)));
  }
  for (int c = 0; c < m; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int r = 0; r < m; ++r)
      if (++seen[s.at(r, c)] > 1)
        return ValidationReport::fail("column " + std::to_string(c) + " repeats symbol " +
                                      std::to_string(s.at(r, c)));
  }
  return ValidationReport::pass();
}

inline bool orthogonal(const LatinSquare& a, const LatinSquare& b) {
  if (a.order != b.order) return false;
  const int m = a.order;
  std::vector<char> seen(static_cast<std::size_t>(m) * m, 0);
  for (int i = 0; i < m * m; ++i) {
    const int key = a.grid[i] * m + b.grid[i];
    if (seen[key]) return false;
    seen[key] = 1;
  }
  return true;
}

struct MOLSet {
  int order = 0;
  std::vector<LatinSquare> squares;

  bool complete() const { return static_cast<int>(squares.size()) == order - 1; }
};

inline ValidationReport validate_mols(const MOLSet& mols) {
  if (mols.order < 2) return ValidationReport::fail("order must be at least 2");
  for (std::size_t k = 0; k < mols.squares.size(); ++k) {
    if (mols.squares[k].order != mols.order)
      return ValidationReport::fail("square " + std::to_string(k + 1) + " has wrong order");
    if (auto r = validate_latin(mols.squares[k]); !r.ok)
      return ValidationReport::fail("square " + std::to_string(k + 1) + ": " + r.violation);
  }
  for (std::size_t k = 0; k < mols.squares.size(); ++k)
    for (std::size_t l = k + 1; l < mols.squares.size(); ++l)
      if (!orthogonal(mols.squares[k], mols.squares[l]))
        return ValidationReport::fail("squares " + std::to_string(k + 1) + " and " +
                                      std::to_string(l + 1) + " are not orthogonal");
  return ValidationReport::pass();
}

// Block format: m lines of m whitespace-separated symbols per square,
// blocks separated by a blank line, '#' starts a comment line.
inline std::vector<LatinSquare> parse_square_blocks(std::istream& in) {
  std::vector<LatinSquare> out;
  std::vector<std::vector<int>> rows;
  std::string line;
  int lineno = 0;

  auto flush = [&] {
    if (rows.empty()) return;
    const int m = static_cast<int>(rows.size());
    LatinSquare s = LatinSquare::blank(m);
    for (int r = 0; r < m; ++r) {
      if (static_cast<int>(rows[r].size()) != m)
        throw input_error("line " + std::to_string(lineno) + ": block is not square (" +
                          std::to_string(rows[r].size()) + " symbols in a row of an order-" +
                          std::to_string(m) + " block)");
      for (int c = 0; c < m; ++c) {
        if (rows[r][c] < 0 || rows[r][c] >= m)
          throw input_error("block " + std::to_string(out.size() + 1) + ": symbol out of range");
        s.cell(r, c) = static_cast<std::uint8_t>(rows[r][c]);
      }
    }
    if (auto rep = validate_latin(s); !rep.ok)
      throw input_error("block " + std::to_string(out.size() + 1) + ": " + rep.violation);
    out.push_back(std::move(s));
    rows.clear();
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<int> row;
    int v;
    while (ls >> v) row.push_back(v);
    std::string junk;
    if (ls.clear(), ls >> junk)
      throw input_error("line " + std::to_string(lineno) + ": unexpected token '" + junk + "'");
    if (row.empty())
      flush();
    else
      rows.push_back(std::move(row));
  }
  flush();
  return out;
}

inline void write_square_block(std::ostream& os, const LatinSquare& s) {
  for (int r = 0; r < s.order; ++r) {
    for (int c = 0; c < s.order; ++c) {
      if (c) os << ' ';
      os << s.at(r, c);
    }
    os << '\n';
  }
}

inline void write_square_blocks(std::ostream& os, const std::vector<LatinSquare>& squares) {
  for (std::size_t i = 0; i < squares.size(); ++i) {
    if (i) os << '\n';
    write_square_block(os, squares[i]);
  }
}

}  // namespace planes
