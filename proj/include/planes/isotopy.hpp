#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "planes/latin.hpp"

// Isotopy classes of small Latin squares. Two squares are isotopic when one
// maps to the other under independent row, column and symbol permutations.
//
// The canonical form of a square is the lexicographic minimum of its orbit.
// Minimal grids are always reduced (first row and first column in natural
// order): sorting the first row to identity fixes the column permutation,
// and sorting the remaining rows fixes the row permutation, so the orbit's
// reduced members are exactly the m * m! grids obtained by choosing which
// row leads and how symbols are renamed.

namespace planes {

constexpr int kMaxIsotopyOrder = 7;

inline void check_isotopy_order(int m) {
  if (m < 2 || m > kMaxIsotopyOrder)
    throw input_error("isotopy operations support orders 2.." +
                      std::to_string(kMaxIsotopyOrder));
}

// All reduced squares of order m, emitted in lexicographic grid order.
inline void enumerate_reduced_stream(int m, const std::function<void(const LatinSquare&)>& emit) {
  check_isotopy_order(m);
  LatinSquare sq = LatinSquare::blank(m);
  for (int c = 0; c < m; ++c) sq.cell(0, c) = static_cast<std::uint8_t>(c);
  for (int r = 0; r < m; ++r) sq.cell(r, 0) = static_cast<std::uint8_t>(r);
  std::vector<unsigned> row_used(static_cast<std::size_t>(m)), col_used(static_cast<std::size_t>(m));
  for (int c = 0; c < m; ++c) col_used[c] = 1u << c;
  for (int r = 0; r < m; ++r) {
    row_used[r] = 1u << r;
    col_used[0] |= 1u << r;
  }
  row_used[0] = (1u << m) - 1;

  // Cells (r, c), r, c >= 1, row-major.
  const int cells = (m - 1) * (m - 1);
  std::function<void(int)> fill = [&](int idx) {
    if (idx == cells) {
      emit(sq);
      return;
    }
    const int r = 1 + idx / (m - 1);
    const int c = 1 + idx % (m - 1);
    unsigned free = ~(row_used[r] | col_used[c]) & ((1u << m) - 1);
    while (free) {
      const int s = std::countr_zero(free);
      free &= free - 1;
      sq.cell(r, c) = static_cast<std::uint8_t>(s);
      row_used[r] |= 1u << s;
      col_used[c] |= 1u << s;
      fill(idx + 1);
      row_used[r] &= ~(1u << s);
      col_used[c] &= ~(1u << s);
    }
  };
  fill(0);
}

inline std::vector<LatinSquare> enumerate_reduced(int m) {
  std::vector<LatinSquare> out;
  enumerate_reduced_stream(m, [&](const LatinSquare& s) { out.push_back(s); });
  return out;
}

namespace detail {

// Orbit member for (leading row r, symbol permutation sigma): rename symbols,
// order columns so the leading row becomes the identity, sort the other rows.
// The result is written into `out`; comparison against `best` aborts early.
// Returns -1 / 0 / +1 as the candidate compares to `best`.
inline int build_orbit_member(const LatinSquare& s, int r, const std::uint8_t* sigma,
                              LatinSquare& out, const LatinSquare* best) {
  const int m = s.order;
  int col_at[16];  // col_at[p] = source column placed at position p
  for (int c = 0; c < m; ++c) col_at[sigma[s.at(r, c)]] = c;
  const int c0 = col_at[0];
  int row_of[16];  // row whose transformed first entry is k
  for (int i = 0; i < m; ++i) row_of[sigma[s.at(i, c0)]] = i;
  // row 0 is the identity by construction
  for (int c = 0; c < m; ++c) out.cell(0, c) = static_cast<std::uint8_t>(c);
  int verdict = best ? 0 : -1;
  for (int k = 1; k < m; ++k) {
    const int i = row_of[k];
    for (int p = 0; p < m; ++p) {
      const std::uint8_t val = sigma[s.at(i, col_at[p])];
      out.cell(k, p) = val;
      if (verdict == 0) {
        const std::uint8_t ref = static_cast<std::uint8_t>(best->at(k, p));
        if (val < ref)
          verdict = -1;
        else if (val > ref)
          return 1;
      }
    }
  }
  return verdict;
}

}  // namespace detail

// Lexicographic minimum over the isotopy orbit.
inline LatinSquare canonical_form(const LatinSquare& s) {
  check_isotopy_order(s.order);
  if (auto r = validate_latin(s); !r.ok) throw input_error("not a Latin square: " + r.violation);
  const int m = s.order;
  LatinSquare best, cand = LatinSquare::blank(m);
  bool have_best = false;
  std::uint8_t sigma[16];
  for (int i = 0; i < m; ++i) sigma[i] = static_cast<std::uint8_t>(i);
  std::vector<std::uint8_t> perm(sigma, sigma + m);
  do {
    for (int r = 0; r < m; ++r) {
      const int cmp = detail::build_orbit_member(s, r, perm.data(), cand,
                                                 have_best ? &best : nullptr);
      if (cmp < 0) {
        best = cand;
        have_best = true;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

struct IsotopyClassCatalogue {
  int order = 0;
  std::vector<LatinSquare> representatives;  // canonical, lexicographically sorted

  int label_of(const LatinSquare& rep) const {  // 1-based
    auto it = std::lower_bound(representatives.begin(), representatives.end(), rep);
    if (it == representatives.end() || !(*it == rep)) throw input_error("square not in catalogue");
    return static_cast<int>(it - representatives.begin()) + 1;
  }
};

namespace detail {

// Reduced squares packed 3 bits per interior cell, first cell in the top
// bits so that numeric key order equals lexicographic grid order.
inline unsigned __int128 pack_reduced(const LatinSquare& s) {
  unsigned __int128 key = 0;
  for (int r = 1; r < s.order; ++r)
    for (int c = 1; c < s.order; ++c)
      key = (key << 3) | static_cast<unsigned __int128>(s.at(r, c));
  return key;
}

}  // namespace detail

// One representative per isotopy class, found by scanning the reduced squares
// in lexicographic order and marking off whole orbits; the first unmarked
// member of each orbit is its lexicographic minimum, i.e. the canonical form.
inline IsotopyClassCatalogue isotopy_classes(int m) {
  check_isotopy_order(m);
  std::vector<unsigned __int128> keys;
  enumerate_reduced_stream(m, [&](const LatinSquare& s) { keys.push_back(detail::pack_reduced(s)); });
  std::vector<bool> seen(keys.size(), false);

  IsotopyClassCatalogue cat;
  cat.order = m;
  std::vector<std::uint8_t> perm(static_cast<std::size_t>(m));
  LatinSquare rep = LatinSquare::blank(m), member = LatinSquare::blank(m);
  for (std::size_t idx = 0; idx < keys.size(); ++idx) {
    if (seen[idx]) continue;
    // unpack the representative
    for (int c = 0; c < m; ++c) rep.cell(0, c) = static_cast<std::uint8_t>(c);
    for (int r = 0; r < m; ++r) rep.cell(r, 0) = static_cast<std::uint8_t>(r);
    const unsigned __int128 key = keys[idx];
    const int cells = (m - 1) * (m - 1);
    for (int t = 0; t < cells; ++t)
      rep.cell(1 + t / (m - 1), 1 + t % (m - 1)) =
          static_cast<std::uint8_t>((key >> (3 * (cells - 1 - t))) & 7);
    cat.representatives.push_back(rep);
    // mark every reduced member of this orbit
    for (int i = 0; i < m; ++i) perm[i] = static_cast<std::uint8_t>(i);
    do {
      for (int r = 0; r < m; ++r) {
        detail::build_orbit_member(rep, r, perm.data(), member, nullptr);
        const auto mk = detail::pack_reduced(member);
        const auto it = std::lower_bound(keys.begin(), keys.end(), mk);
        seen[static_cast<std::size_t>(it - keys.begin())] = true;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return cat;
}

inline void save_catalogue(const IsotopyClassCatalogue& cat, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot open '" + path + "' for writing");
  out << "# isotopy class representatives, order " << cat.order << ", " << cat.representatives.size()
      << " classes\n";
  write_square_blocks(out, cat.representatives);
}

inline IsotopyClassCatalogue load_catalogue(const std::string& path, bool check_canonical = false) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open catalogue '" + path + "'");
  auto squares = parse_square_blocks(in);
  if (squares.empty()) throw input_error("catalogue '" + path + "' contains no squares");
  IsotopyClassCatalogue cat;
  cat.order = squares[0].order;
  for (std::size_t i = 0; i < squares.size(); ++i) {
    if (squares[i].order != cat.order)
      throw input_error("catalogue block " + std::to_string(i + 1) + " has mixed order");
    if (check_canonical && !(canonical_form(squares[i]) == squares[i]))
      throw input_error("catalogue block " + std::to_string(i + 1) + " is not in canonical form");
  }
  cat.representatives = std::move(squares);
  std::sort(cat.representatives.begin(), cat.representatives.end());
  if (std::adjacent_find(cat.representatives.begin(), cat.representatives.end()) !=
      cat.representatives.end())
    throw input_error("catalogue contains duplicate representatives");
  return cat;
}

}  // namespace planes
