#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ordlab {

/// Exact rational used for every weight and count ratio that must compare equal.
using Rational = mpq_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(static_cast<long>(num), static_cast<unsigned long>(den < 0 ? -den : den));
  if (den < 0) q = -q;
  q.canonicalize();
  return q;
}

/// "p/q" or "p" in lowest terms.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Accepts "p/q", integers, and finite decimals such as "1.2" or "-0.25" (read exactly).
Rational parse_rational(std::string_view text);

Rational factorial(int n);

}  // namespace ordlab
