// Arbitrary-precision real numbers: RAII wrapper over MPFR with a global
// working-precision context (decimal digits) and scoped precision escalation.
#ifndef PPART_REAL_H
#define PPART_REAL_H

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace ppart {

class PrecisionContext {
 public:
  static long& digits_ref() {
    static long digits = 50;
    return digits;
  }
  static long digits() { return digits_ref(); }
  static void set_digits(long d) {
    if (d < 15) throw std::invalid_argument("working_digits must be >= 15");
    digits_ref() = d;
  }
  // Working mantissa bits: digits * log2(10) rounded up, plus guard bits.
  static mpfr_prec_t bits() {
    return static_cast<mpfr_prec_t>(std::ceil(digits() * 3.3219280948873626)) + 32;
  }
  // Absolute tail tolerance for series truncation: 10^-(digits+5).
  static long tail_digits() { return digits() + 5; }
};

// RAII: escalate (or change) working precision within a scope.
class ScopedDigits {
 public:
  explicit ScopedDigits(long d) : saved_(PrecisionContext::digits()) {
    PrecisionContext::set_digits(d);
  }
  ~ScopedDigits() { PrecisionContext::digits_ref() = saved_; }
  ScopedDigits(const ScopedDigits&) = delete;
  ScopedDigits& operator=(const ScopedDigits&) = delete;

 private:
  long saved_;
};

class Real {
 public:
  Real() { mpfr_init2(v_, PrecisionContext::bits()); mpfr_set_zero(v_, 1); }
  Real(const Real& o) { mpfr_init2(v_, PrecisionContext::bits()); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept {
    v_[0] = o.v_[0];
    mpfr_init2(o.v_, 2);  // leave a valid husk
  }
  Real(long x) { mpfr_init2(v_, PrecisionContext::bits()); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(int x) : Real(static_cast<long>(x)) {}
  Real(unsigned long x) { mpfr_init2(v_, PrecisionContext::bits()); mpfr_set_ui(v_, x, MPFR_RNDN); }
  explicit Real(double x) { mpfr_init2(v_, PrecisionContext::bits()); mpfr_set_d(v_, x, MPFR_RNDN); }
  explicit Real(const mpz_class& z) {
    mpfr_init2(v_, PrecisionContext::bits());
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
  }
  explicit Real(const mpq_class& q) {
    mpfr_init2(v_, PrecisionContext::bits());
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  explicit Real(const std::string& s) {
    mpfr_init2(v_, PrecisionContext::bits());
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("Real: unparsable literal " + s);
  }
  ~Real() { mpfr_clear(v_); }

  Real& operator=(const Real& o) {
    if (this != &o) {
      if (mpfr_get_prec(v_) != PrecisionContext::bits()) {
        mpfr_set_prec(v_, PrecisionContext::bits());
      }
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  // Decimal rendering with round-to-nearest-even at `sig` significant digits.
  std::string str(int sig = 12) const {
    char buf[512];
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", sig, v_);
    return std::string(buf);
  }
  std::string str_full() const { return str(static_cast<int>(PrecisionContext::digits())); }

#define PPART_REAL_BINOP(op, fn)                                   \
  friend Real operator op(const Real& a, const Real& b) {          \
    Real r;                                                        \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                               \
    return r;                                                      \
  }
  PPART_REAL_BINOP(+, mpfr_add)
  PPART_REAL_BINOP(-, mpfr_sub)
  PPART_REAL_BINOP(*, mpfr_mul)
  PPART_REAL_BINOP(/, mpfr_div)
#undef PPART_REAL_BINOP

  friend Real operator-(const Real& a) {
    Real r;
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  Real& operator+=(const Real& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& b) { mpfr_div(v_, v_, b.v_, MPFR_RNDN); return *this; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

 private:
  mpfr_t v_;
};

#define PPART_REAL_UNARY(name, fn)     \
  inline Real name(const Real& a) {    \
    Real r;                            \
    fn(r.raw(), a.raw(), MPFR_RNDN);   \
    return r;                          \
  }
PPART_REAL_UNARY(exp, mpfr_exp)
PPART_REAL_UNARY(expm1, mpfr_expm1)
PPART_REAL_UNARY(log, mpfr_log)
PPART_REAL_UNARY(log1p, mpfr_log1p)
PPART_REAL_UNARY(sqrt, mpfr_sqrt)
PPART_REAL_UNARY(sin, mpfr_sin)
PPART_REAL_UNARY(cos, mpfr_cos)
PPART_REAL_UNARY(abs, mpfr_abs)
PPART_REAL_UNARY(lngamma, mpfr_lngamma)
PPART_REAL_UNARY(digamma_mpfr, mpfr_digamma)
PPART_REAL_UNARY(dilog_mpfr, mpfr_li2)
PPART_REAL_UNARY(cbrt, mpfr_cbrt)
#undef PPART_REAL_UNARY

inline Real floor(const Real& a) {
  Real r;
  mpfr_rint(r.raw(), a.raw(), MPFR_RNDD);
  return r;
}
inline Real pow(const Real& a, const Real& b) {
  Real r;
  mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& a, long e) {
  Real r;
  mpfr_pow_si(r.raw(), a.raw(), e, MPFR_RNDN);
  return r;
}
inline Real atan2(const Real& y, const Real& x) {
  Real r;
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline Real hypot(const Real& x, const Real& y) {
  Real r;
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real min(const Real& a, const Real& b) { return a < b ? a : b; }

inline Real const_pi() {
  Real r;
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}
inline Real const_euler() {
  Real r;
  mpfr_const_euler(r.raw(), MPFR_RNDN);
  return r;
}
inline Real zeta_ui(unsigned long n) {
  Real r;
  mpfr_zeta_ui(r.raw(), n, MPFR_RNDN);
  return r;
}
// 10^-k as a Real (series tolerances).
inline Real pow10(long k) {
  Real r;
  mpfr_ui_pow_ui(r.raw(), 10, static_cast<unsigned long>(k < 0 ? -k : k), MPFR_RNDN);
  if (k < 0) mpfr_ui_div(r.raw(), 1, r.raw(), MPFR_RNDN);
  return r;
}
inline Real tail_tolerance() { return pow10(-PrecisionContext::tail_digits()); }

}  // namespace ppart

#endif  // PPART_REAL_H
