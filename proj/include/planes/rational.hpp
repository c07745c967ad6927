#pragma once

#include <gmpxx.h>

#include <string>

#include "planes/znn.hpp"

// Exact rationals via GMP. Serialized form is "p" or "p/q" with q > 0 and
// gcd(p, q) = 1.

namespace planes {

using Rational = mpq_class;

inline std::string rational_to_string(const Rational& q) {
  Rational canon = q;
  canon.canonicalize();
  return canon.get_str();
}

inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0)
    throw input_error("bad rational '" + text + "'");
  if (q.get_den() <= 0) throw input_error("bad rational '" + text + "': nonpositive denominator");
  Rational canon = q;
  canon.canonicalize();
  if (canon != q || cmp(canon.get_den(), q.get_den()) != 0)
    throw input_error("rational '" + text + "' is not in lowest terms");
  return q;
}

}  // namespace planes
