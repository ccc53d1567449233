#pragma once

// Exact scalar types. Integers and rationals are GMP-backed; everything in
// this library computes over them, never over floating point.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dvcalc {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Int(num), Int(den));
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Int to_integer(const Rational& r) {
  if (!is_integer(r)) throw std::domain_error("rational is not an integer: " + r.get_str());
  return r.get_num();
}

// Serialization used by reports and goldens: "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& r) {
  return is_integer(r) ? r.get_num().get_str() : r.get_str();
}

inline std::string to_string(const Int& z) { return z.get_str(); }

inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    return Rational(Int(s));
  }
  return make_rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// g = gcd(a,b) together with Bezout coefficients: g = a*s + b*t.
struct ExtGcd {
  Int g, s, t;
};

inline ExtGcd ext_gcd(const Int& a, const Int& b) {
  ExtGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int abs(const Int& a) {
  Int r;
  mpz_abs(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

// Exact integer square root if it exists.
inline bool perfect_square_root(const Int& a, Int& root) {
  if (a < 0) return false;
  if (mpz_perfect_square_p(a.get_mpz_t()) == 0) return false;
  mpz_sqrt(root.get_mpz_t(), a.get_mpz_t());
  return true;
}

// Exact rational square root if it exists (num and den both perfect squares).
inline bool perfect_square_root(const Rational& a, Rational& root) {
  if (a < 0) return false;
  Int rn, rd;
  if (!perfect_square_root(Int(a.get_num()), rn)) return false;
  if (!perfect_square_root(Int(a.get_den()), rd)) return false;
  root = make_rational(rn, rd);
  return true;
}

}  // namespace dvcalc
