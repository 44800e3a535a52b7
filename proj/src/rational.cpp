#include "ordlab/rational.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace ordlab {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    q.canonicalize();
    return q;
  }
  if (s.find('/') != std::string::npos || s.find_first_of("eE") != std::string::npos) {
    throw std::invalid_argument("bad rational: " + s);
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::size_t frac = s.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument("bad rational: " + s);
  if (digits[0] == '+') digits.erase(0, 1);
  mpz_class num;
  if (num.set_str(digits, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of negative");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

}  // namespace ordlab
