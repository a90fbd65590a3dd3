#pragma once

#include <tropfan/integer.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace tropfan {

/// Coefficient ring: the integers, the rationals, or a prime field.
///
/// Every structural matrix is computed over Z once; a RingTag tells the
/// algorithms how to interpret those integer entries (as-is, over Q, or
/// reduced modulo p).
class RingTag {
 public:
  enum class Kind { integers, rationals, prime_field };

  static RingTag integers() { return RingTag(Kind::integers, 0); }
  static RingTag rationals() { return RingTag(Kind::rationals, 0); }

  /// Throws InputError("modulus not prime") unless p is a prime below 2^31.
  static RingTag prime_field(std::int64_t p) {
    if (!is_prime(p)) throw InputError("modulus not prime: " + std::to_string(p));
    return RingTag(Kind::prime_field, p);
  }

  /// Accepts "Z", "Q" and "Fp:<p>".
  static RingTag parse(std::string_view text) {
    if (text == "Z") return integers();
    if (text == "Q") return rationals();
    if (text.starts_with("Fp:")) {
      const std::string digits(text.substr(3));
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("malformed ring '" + std::string(text) + "'");
      if (digits.size() > 10) throw InputError("modulus not prime: " + digits + " (too large)");
      return prime_field(std::stoll(digits));
    }
    throw InputError("unknown ring '" + std::string(text) + "' (expected Z, Q or Fp:<p>)");
  }

  Kind kind() const { return kind_; }
  std::int64_t prime() const { return prime_; }
  bool is_field() const { return kind_ != Kind::integers; }
  bool is_integers() const { return kind_ == Kind::integers; }
  bool is_prime_field() const { return kind_ == Kind::prime_field; }

  std::string to_string() const {
    switch (kind_) {
      case Kind::integers: return "Z";
      case Kind::rationals: return "Q";
      case Kind::prime_field: return "Fp:" + std::to_string(prime_);
    }
    return "?";
  }

  /// Canonical representative: residues in [0, p) over Fp, unchanged otherwise.
  Integer reduce(const Integer& a) const {
    if (kind_ != Kind::prime_field) return a;
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(prime_));
    return r;
  }

  /// Interprets a rational as a ring element. Over Z the value must be an
  /// integer; over Fp the denominator must be invertible.
  Rational element(const Rational& q) const {
    switch (kind_) {
      case Kind::integers:
        if (!is_integral(q)) throw InputError("non-integral value " + tropfan::to_string(q) + " over Z");
        return q;
      case Kind::rationals: return q;
      case Kind::prime_field: {
        const Integer den = reduce(q.get_den());
        if (den == 0) throw InputError("denominator of " + tropfan::to_string(q) + " vanishes mod p");
        Integer inv;
        const Integer p(static_cast<long>(prime_));
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        return Rational(reduce(Integer(q.get_num() * inv)));
      }
    }
    return q;
  }

  bool is_zero(const Rational& q) const { return element(q) == 0; }

  /// Units: {+1, -1} over Z, every nonzero element over a field.
  bool is_unit(const Rational& q) const {
    if (kind_ == Kind::integers) return q == 1 || q == -1;
    return !is_zero(q);
  }

  /// The rings handled here are domains, so non-zero-divisors are the nonzero elements.
  bool is_non_zero_divisor(const Rational& q) const { return !is_zero(q); }

  friend bool operator==(const RingTag& a, const RingTag& b) {
    return a.kind_ == b.kind_ && a.prime_ == b.prime_;
  }

 private:
  RingTag(Kind k, std::int64_t p) : kind_(k), prime_(p) {}

  static bool is_prime(std::int64_t p) {
    if (p < 2 || p > std::numeric_limits<std::int32_t>::max()) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

  Kind kind_;
  std::int64_t prime_;
};

}  // namespace tropfan
