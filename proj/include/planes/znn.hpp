#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// Arithmetic and predicates on the group Z_n^n. Elements are stored as
// exponent vectors: entry j stands for the j-th power of the primitive
// n-th root of unity, so the group operation is componentwise addition
// of exponents mod n.

namespace planes {

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GroupParams {
  int n;
  explicit GroupParams(int order) : n(order) {
    if (n < 2) throw input_error("group order must be at least 2");
  }
};

using GroupVector = std::vector<std::uint8_t>;

inline void check_vector(const GroupVector& v) {
  if (v.empty()) throw input_error("empty group vector");
  const int n = static_cast<int>(v.size());
  for (auto e : v)
    if (e >= n) throw input_error("vector entry out of range [0, n)");
}

inline GroupVector constant_vector(int n, int m) {
  if (m < 0 || m >= n) throw input_error("constant value out of range");
  return GroupVector(static_cast<std::size_t>(n), static_cast<std::uint8_t>(m));
}

// #{i : u_i = v_i}; equals the number of identity coordinates of u/v.
inline int count_coincidences(const GroupVector& u, const GroupVector& v) {
  if (u.size() != v.size()) throw input_error("coincidence count on vectors of different order");
  int c = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] == v[i]) ++c;
  return c;
}

inline GroupVector difference(const GroupVector& u, const GroupVector& v) {
  if (u.size() != v.size()) throw input_error("difference of vectors of different order");
  const int n = static_cast<int>(u.size());
  GroupVector d(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    d[i] = static_cast<std::uint8_t>((u[i] - v[i] + n) % n);
  return d;
}

inline GroupVector negate(const GroupVector& v) {
  const int n = static_cast<int>(v.size());
  GroupVector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    w[i] = static_cast<std::uint8_t>((n - v[i]) % n);
  return w;
}

// The forbidden set A: at least two coordinates equal the identity value.
inline bool in_forbidden_set(const GroupVector& v) {
  check_vector(v);
  int zeros = 0;
  for (auto e : v)
    if (e == 0 && ++zeros >= 2) return true;
  return false;
}

// 1-based coordinate pair (v_i, v_j), i < j.
inline std::pair<int, int> pair_value(const GroupVector& v, int i, int j) {
  const int n = static_cast<int>(v.size());
  if (i < 1 || j <= i || j > n) throw input_error("pair_value indices out of range");
  return {v[static_cast<std::size_t>(i - 1)], v[static_cast<std::size_t>(j - 1)]};
}

inline std::string format_vector(const GroupVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(static_cast<int>(v[i]));
  }
  return s;
}

inline GroupVector parse_vector(const std::string& text, int expected_order = 0) {
  GroupVector v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    int value;
    try {
      value = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw input_error("bad vector entry '" + tok + "'");
    }
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos != tok.size()) throw input_error("bad vector entry '" + tok + "'");
    if (value < 0 || value > 255) throw input_error("vector entry out of range");
    v.push_back(static_cast<std::uint8_t>(value));
  }
  if (v.empty()) throw input_error("empty vector text");
  if (expected_order && static_cast<int>(v.size()) != expected_order)
    throw input_error("vector has order " + std::to_string(v.size()) + ", expected " +
                      std::to_string(expected_order));
  check_vector(v);
  return v;
}

}  // namespace planes
