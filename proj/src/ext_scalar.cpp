#include "maxtype/ext_scalar.hpp"

#include <atomic>
#include <cmath>
#include <memory>
#include <ostream>
#include <stdexcept>

namespace maxtype {

namespace {

std::atomic<long> g_precision{128};

// MPFR keeps emin/emax per thread; widen them on first use in each thread.
void ensure_exponent_range() {
  thread_local bool widened = false;
  if (!widened) {
    mpfr_set_emin(mpfr_get_emin_min());
    mpfr_set_emax(mpfr_get_emax_max());
    widened = true;
  }
}

struct FreeStr {
  void operator()(char* p) const { mpfr_free_str(p); }
};

}  // namespace

void set_default_precision(long bits) {
  if (bits < MPFR_PREC_MIN || bits > 1 << 20) {
    throw std::invalid_argument("precision out of range: " + std::to_string(bits));
  }
  g_precision.store(bits);
}

long default_precision() { return g_precision.load(); }

ExtScalar::ExtScalar() {
  ensure_exponent_range();
  mpfr_init2(v_, g_precision.load());
  mpfr_set_zero(v_, 1);
}

ExtScalar::ExtScalar(int v) : ExtScalar(static_cast<long>(v)) {}

ExtScalar::ExtScalar(long v) {
  ensure_exponent_range();
  mpfr_init2(v_, g_precision.load());
  mpfr_set_si(v_, v, MPFR_RNDN);
}

ExtScalar::ExtScalar(long long v) : ExtScalar(static_cast<long>(v)) {}

ExtScalar::ExtScalar(unsigned long v) {
  ensure_exponent_range();
  mpfr_init2(v_, g_precision.load());
  mpfr_set_ui(v_, v, MPFR_RNDN);
}

ExtScalar::ExtScalar(unsigned long long v) : ExtScalar(static_cast<unsigned long>(v)) {}

ExtScalar::ExtScalar(double v) {
  ensure_exponent_range();
  if (!std::isfinite(v)) throw std::domain_error("ExtScalar from non-finite double");
  mpfr_init2(v_, g_precision.load());
  mpfr_set_d(v_, v, MPFR_RNDN);
}

ExtScalar::ExtScalar(const mpz_class& v) {
  ensure_exponent_range();
  mpfr_init2(v_, g_precision.load());
  mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

ExtScalar::ExtScalar(const mpq_class& v) {
  ensure_exponent_range();
  mpfr_init2(v_, g_precision.load());
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

ExtScalar::ExtScalar(const ExtScalar& other) {
  ensure_exponent_range();
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

ExtScalar::ExtScalar(ExtScalar&& other) noexcept {
  // Steal the limbs; leave `other` as a valid zero of minimal precision.
  *v_ = *other.v_;
  mpfr_init2(other.v_, MPFR_PREC_MIN);
  mpfr_set_zero(other.v_, 1);
}

ExtScalar& ExtScalar::operator=(const ExtScalar& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

ExtScalar& ExtScalar::operator=(ExtScalar&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

ExtScalar::~ExtScalar() { mpfr_clear(v_); }

ExtScalar ExtScalar::parse(std::string_view text) {
  ExtScalar r;
  const std::string s(text);
  char* end = nullptr;
  mpfr_strtofr(r.v_, s.c_str(), &end, 0, MPFR_RNDN);
  if (s.empty() || end == s.c_str() || *end != '\0' || !mpfr_number_p(r.v_)) {
    throw std::invalid_argument("cannot parse number: " + s);
  }
  return r;
}

ExtScalar ExtScalar::pow2(long e) {
  ExtScalar r(1L);
  mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
  return r;
}

long ExtScalar::exponent2() const {
  if (!mpfr_regular_p(v_)) return 0;
  return mpfr_get_exp(v_);
}

mpq_class ExtScalar::to_rational() const {
  if (!mpfr_number_p(v_)) throw std::domain_error("non-finite ExtScalar");
  if (mpfr_zero_p(v_)) return mpq_class(0);
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
  mpq_class q(m);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return q;
}

mpz_class ExtScalar::floor_integer() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
  return z;
}

std::string ExtScalar::to_decimal() const {
  // ceil(prec * log10(2)) + 1 significant digits round-trip through parse().
  const int digits = static_cast<int>(std::ceil(static_cast<double>(precision()) * 0.30102999566398120)) + 1;
  char* out = nullptr;
  if (mpfr_asprintf(&out, "%.*Rg", digits, v_) < 0) throw std::runtime_error("mpfr_asprintf failed");
  std::unique_ptr<char, FreeStr> guard(out);
  return std::string(out);
}

std::string ExtScalar::to_exp2() const {
  char* out = nullptr;
  if (mpfr_asprintf(&out, "%Ra", v_) < 0) throw std::runtime_error("mpfr_asprintf failed");
  std::unique_ptr<char, FreeStr> guard(out);
  return std::string(out);
}

ExtScalar& ExtScalar::operator+=(const ExtScalar& rhs) {
  ExtScalar r;
  mpfr_add(r.v_, v_, rhs.v_, MPFR_RNDN);
  return *this = std::move(r);
}

ExtScalar& ExtScalar::operator-=(const ExtScalar& rhs) {
  ExtScalar r;
  mpfr_sub(r.v_, v_, rhs.v_, MPFR_RNDN);
  return *this = std::move(r);
}

ExtScalar& ExtScalar::operator*=(const ExtScalar& rhs) {
  ExtScalar r;
  mpfr_mul(r.v_, v_, rhs.v_, MPFR_RNDN);
  return *this = std::move(r);
}

ExtScalar& ExtScalar::operator/=(const ExtScalar& rhs) {
  if (rhs.is_zero()) throw std::domain_error("ExtScalar division by zero");
  ExtScalar r;
  mpfr_div(r.v_, v_, rhs.v_, MPFR_RNDN);
  return *this = std::move(r);
}

ExtScalar ExtScalar::operator-() const {
  ExtScalar r;
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const ExtScalar& a, const ExtScalar& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

bool ExtScalar::identical(const ExtScalar& other) const {
  if (precision() != other.precision()) return false;
  if (is_zero() && other.is_zero()) return mpfr_signbit(v_) == mpfr_signbit(other.v_);
  return mpfr_equal_p(v_, other.v_) != 0;
}

ExtScalar pow(const ExtScalar& base, const ExtScalar& exponent) {
  ExtScalar r;
  mpfr_pow(r.raw(), base.raw(), exponent.raw(), MPFR_RNDN);
  return r;
}

ExtScalar pow(const ExtScalar& base, double exponent) { return pow(base, ExtScalar(exponent)); }

ExtScalar exp2(const ExtScalar& e) {
  ExtScalar r;
  mpfr_exp2(r.raw(), e.raw(), MPFR_RNDN);
  return r;
}

ExtScalar log2(const ExtScalar& x) {
  ExtScalar r;
  mpfr_log2(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

ExtScalar abs(const ExtScalar& x) {
  ExtScalar r;
  mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

ExtScalar floor(const ExtScalar& x) {
  ExtScalar r;
  mpfr_floor(r.raw(), x.raw());
  return r;
}

const ExtScalar& max(const ExtScalar& a, const ExtScalar& b) { return (b > a) ? b : a; }
const ExtScalar& min(const ExtScalar& a, const ExtScalar& b) { return (b < a) ? b : a; }

ExtScalar relative_difference(const ExtScalar& a, const ExtScalar& b) {
  const ExtScalar scale = max(abs(a), abs(b));
  if (scale.is_zero()) return ExtScalar(0);
  return abs(a - b) / scale;
}

bool approx_equal(const ExtScalar& a, const ExtScalar& b, double rel) {
  return relative_difference(a, b) <= ExtScalar(rel);
}

bool leq_rel(const ExtScalar& a, const ExtScalar& b, double rel) {
  return a <= b * (ExtScalar(1) + ExtScalar(rel));
}

std::ostream& operator<<(std::ostream& os, const ExtScalar& x) { return os << x.to_decimal(); }

}  // namespace maxtype
