#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace latslice {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& z) { return sgn(z); }

inline Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

/// Nearest integer, halves rounded up.
inline Integer round_half_up(const Rational& q) { return floor(Rational(q + Rational(1, 2))); }

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rational ipow(const Rational& base, unsigned long e) {
  Rational r(ipow(Integer(base.get_num()), e), ipow(Integer(base.get_den()), e));
  r.canonicalize();
  return r;
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// floor(sqrt(q)) for q >= 0.
inline Integer floor_sqrt(const Rational& q) {
  if (q < 0) throw std::domain_error("floor_sqrt of a negative rational");
  Integer f = floor(q);
  Integer r;
  mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
  return r;
}

/// floor(a + sqrt(q)) for q >= 0, exact.
inline Integer floor_add_sqrt(const Rational& a, const Rational& q) {
  auto fits = [&](const Integer& z) {
    Rational d = Rational(z) - a;
    return d <= 0 || d * d <= q;
  };
  Integer z = floor(a) + floor_sqrt(q);
  while (fits(z + 1)) ++z;
  return z;
}

/// ceil(a + sqrt(q)) for q >= 0, exact.
inline Integer ceil_add_sqrt(const Rational& a, const Rational& q) {
  Integer f = floor_add_sqrt(a, q);
  Rational d = Rational(f) - a;
  if (d >= 0 && d * d == q) return f;
  return f + 1;
}

/// ceil(a - sqrt(q)) for q >= 0, exact.
inline Integer ceil_sub_sqrt(const Rational& a, const Rational& q) {
  return -floor_add_sqrt(-a, q);
}

inline double to_double(const Rational& q) { return q.get_d(); }

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto valid_int = [](std::string_view t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw std::invalid_argument("malformed rational literal '" + s + "'");
    return Rational(Integer(strip_plus(s)));
  }
  std::string num = s.substr(0, slash);
  std::string den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den))
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  return make_rational(Integer(strip_plus(num)), Integer(strip_plus(den)));
}

inline std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
  return z.get_si();
}

}  // namespace latslice
