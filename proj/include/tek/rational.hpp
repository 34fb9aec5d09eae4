#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tek {

/// Exact rational scalar used throughout. GMP keeps every operand in lowest terms.
using Q = mpq_class;

inline Q make_q(long num, long den = 1) {
  if (den == 0) throw std::domain_error("zero denominator");
  Q r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Q& q) { return sgn(q) == 0; }

inline bool is_integer(const Q& q) { return q.get_den() == 1; }

/// "p/q" in lowest terms, always with an explicit denominator.
inline std::string to_string(const Q& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts "p/q", "p" and optional leading sign. Throws std::invalid_argument.
inline Q parse_q(std::string_view s) {
  auto valid_int = [](std::string_view t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string_view t) {
    return (!t.empty() && t[0] == '+') ? t.substr(1) : t;
  };
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational: " + std::string(s));
  mpz_class n(std::string(strip_plus(num)), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
  Q r(n, d);
  r.canonicalize();
  return r;
}

/// b^n for integer n; b must be nonzero when n < 0. 0^0 = 1.
inline Q pow_q(const Q& b, long n) {
  if (n == 0) return Q(1);
  if (n < 0) {
    if (is_zero(b)) throw std::domain_error("negative power of zero");
    return pow_q(Q(1) / b, -n);
  }
  Q num;
  mpz_pow_ui(num.get_num_mpz_t(), b.get_num_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(num.get_den_mpz_t(), b.get_den_mpz_t(), static_cast<unsigned long>(n));
  num.canonicalize();
  return num;
}

/// Binomial coefficient C(c, k) for rational c and k >= 0.
inline Q binomial(const Q& c, long k) {
  Q r(1);
  for (long i = 0; i < k; ++i) r = r * (c - i) / (i + 1);
  return r;
}

}  // namespace tek
