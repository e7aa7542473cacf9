#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <mpfr.h>

namespace maxtype {

/// Precision (mantissa bits) used for every newly constructed ExtScalar.
/// Set it once at startup, before worker threads are spawned.
void set_default_precision(long bits);
long default_precision();

/// Binary floating-point number with a configurable mantissa and an exponent
/// range of roughly 2^(+-2^62). Backed by MPFR, round-to-nearest everywhere,
/// so each arithmetic operation has relative error at most 2^(-precision).
class ExtScalar {
 public:
  ExtScalar();
  ExtScalar(int v);            // NOLINT(google-explicit-constructor)
  ExtScalar(long v);           // NOLINT(google-explicit-constructor)
  ExtScalar(long long v);      // NOLINT(google-explicit-constructor)
  ExtScalar(unsigned long v);  // NOLINT(google-explicit-constructor)
  ExtScalar(unsigned long long v);  // NOLINT(google-explicit-constructor)
  ExtScalar(double v);         // NOLINT(google-explicit-constructor)
  explicit ExtScalar(const mpz_class& v);
  explicit ExtScalar(const mpq_class& v);

  ExtScalar(const ExtScalar& other);
  ExtScalar(ExtScalar&& other) noexcept;
  ExtScalar& operator=(const ExtScalar& other);
  ExtScalar& operator=(ExtScalar&& other) noexcept;
  ~ExtScalar();

  /// Parses decimal ("1.5e-3") or the hexadecimal form produced by to_exp2().
  static ExtScalar parse(std::string_view text);
  /// 2^e for an integral exponent; exact.
  static ExtScalar pow2(long e);

  long precision() const { return mpfr_get_prec(v_); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  /// Base-2 exponent e with value = m * 2^e, 0.5 <= |m| < 1. Zero has exponent 0.
  long exponent2() const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Exact conversion; every finite binary float is a dyadic rational.
  mpq_class to_rational() const;
  mpz_class floor_integer() const;

  /// Decimal rendering with enough significant digits to round-trip.
  std::string to_decimal() const;
  /// Exact hexadecimal mantissa with a binary exponent, e.g. "0x1.8p+3".
  std::string to_exp2() const;

  ExtScalar& operator+=(const ExtScalar& rhs);
  ExtScalar& operator-=(const ExtScalar& rhs);
  ExtScalar& operator*=(const ExtScalar& rhs);
  ExtScalar& operator/=(const ExtScalar& rhs);

  friend ExtScalar operator+(ExtScalar lhs, const ExtScalar& rhs) { return lhs += rhs; }
  friend ExtScalar operator-(ExtScalar lhs, const ExtScalar& rhs) { return lhs -= rhs; }
  friend ExtScalar operator*(ExtScalar lhs, const ExtScalar& rhs) { return lhs *= rhs; }
  friend ExtScalar operator/(ExtScalar lhs, const ExtScalar& rhs) { return lhs /= rhs; }
  ExtScalar operator-() const;

  friend bool operator==(const ExtScalar& a, const ExtScalar& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const ExtScalar& a, const ExtScalar& b);

  /// Bitwise identity: same value and same precision.
  bool identical(const ExtScalar& other) const;

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

 private:
  mpfr_t v_;
};

ExtScalar pow(const ExtScalar& base, const ExtScalar& exponent);
ExtScalar pow(const ExtScalar& base, double exponent);
ExtScalar exp2(const ExtScalar& e);
ExtScalar log2(const ExtScalar& x);
ExtScalar abs(const ExtScalar& x);
ExtScalar floor(const ExtScalar& x);
const ExtScalar& max(const ExtScalar& a, const ExtScalar& b);
const ExtScalar& min(const ExtScalar& a, const ExtScalar& b);

/// |a - b| <= rel * max(|a|, |b|).
bool approx_equal(const ExtScalar& a, const ExtScalar& b, double rel);
/// a <= b * (1 + rel) for nonnegative quantities.
bool leq_rel(const ExtScalar& a, const ExtScalar& b, double rel);
ExtScalar relative_difference(const ExtScalar& a, const ExtScalar& b);

std::ostream& operator<<(std::ostream& os, const ExtScalar& x);

}  // namespace maxtype
