#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tropfan {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised on malformed or inadmissible user input (files, flags, weights).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Raised when an internal consistency check fails.
class InternalError : public Error {
 public:
  using Error::Error;
};

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

/// Extended gcd: returns g = gcd(a, b) >= 0 and sets s, t with s*a + t*b = g.
inline Integer gcdext(const Integer& a, const Integer& b, Integer& s, Integer& t) {
  Integer g;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

/// Floor division, rounding towards negative infinity.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline int sign(const Integer& a) { return sgn(a); }

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline std::string to_string(const Integer& a) { return a.get_str(); }

inline std::string to_string(const Rational& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

}  // namespace tropfan
