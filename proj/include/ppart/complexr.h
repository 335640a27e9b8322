// Complex numbers over arbitrary-precision reals, with the stable
// primitives (expm1, 1 - e^{-w}) the series evaluations need.
#ifndef PPART_COMPLEXR_H
#define PPART_COMPLEXR_H

#include "ppart/real.h"

namespace ppart {

struct Complex {
  Real re, im;

  Complex() : re(0L), im(0L) {}
  Complex(Real r) : re(std::move(r)), im(0L) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(long r) : re(r), im(0L) {}

  friend Complex operator+(const Complex& a, const Complex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Complex& operator+=(const Complex& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
  Complex& operator-=(const Complex& b) {
    re -= b.re;
    im -= b.im;
    return *this;
  }
  Complex& operator*=(const Complex& b) { return *this = *this * b; }
  Complex& operator/=(const Complex& b) { return *this = *this / b; }
};

inline Real abs(const Complex& a) { return hypot(a.re, a.im); }
inline Real arg(const Complex& a) { return atan2(a.im, a.re); }
inline Complex conj(const Complex& a) { return {a.re, -a.im}; }

inline Complex exp(const Complex& a) {
  Real ea = exp(a.re);
  return {ea * cos(a.im), ea * sin(a.im)};
}
inline Complex log(const Complex& a) { return {log(abs(a)), arg(a)}; }

// e^u - 1, accurate for small |u|:
//   Re = expm1(a) cos b - 2 sin^2(b/2),  Im = e^a sin b.
inline Complex expm1(const Complex& u) {
  Real s = sin(u.im / Real(2));
  return {expm1(u.re) * cos(u.im) - Real(2) * s * s, exp(u.re) * sin(u.im)};
}
// 1 - e^{-w}, accurate for small |w|.
inline Complex one_minus_exp_neg(const Complex& w) { return -expm1(-w); }
inline Real one_minus_exp_neg(const Real& w) { return -expm1(-w); }

// Uniform helpers so series code can be generic over Real / Complex.
inline Real real_part(const Real& x) { return x; }
inline Real real_part(const Complex& x) { return x.re; }
inline Real abs_value(const Real& x) { return abs(x); }
inline Real abs_value(const Complex& x) { return abs(x); }

}  // namespace ppart

#endif  // PPART_COMPLEXR_H
