// Truncated Taylor jets over high-precision reals. A Jet<N> stores the
// scaled derivatives c[k] = f^(k)(x0)/k! for k < N and supports the
// arithmetic needed to differentiate the generating-function logarithm
// symbolically: ring operations, division, exponentials, and jets of
// e^{-a w} / 1 - e^{-a w} with fully accurate constant terms.
#pragma once

#include <array>

#include "ppart/complexr.h"
#include "ppart/real.h"
#include "ppart/special.h"

namespace ppart {

template <int N>
struct Jet {
  static_assert(N >= 1 && N <= 8, "jet order out of range");
  std::array<Real, N> c;

  Jet() {
    for (auto& x : c) x = Real(0);
  }
  static Jet constant(const Real& v) {
    Jet j;
    j.c[0] = v;
    return j;
  }
  // the identity function expanded at v: v + s
  static Jet variable(const Real& v) {
    Jet j;
    j.c[0] = v;
    if (N > 1) j.c[1] = Real(1);
    return j;
  }
};

template <int N>
Jet<N> operator+(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  for (int k = 0; k < N; ++k) r.c[k] = a.c[k] + b.c[k];
  return r;
}

template <int N>
Jet<N> operator-(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  for (int k = 0; k < N; ++k) r.c[k] = a.c[k] - b.c[k];
  return r;
}

template <int N>
Jet<N> operator-(const Jet<N>& a) {
  Jet<N> r;
  for (int k = 0; k < N; ++k) r.c[k] = -a.c[k];
  return r;
}

template <int N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  for (int i = 0; i < N; ++i)
    for (int j = 0; i + j < N; ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

template <int N>
Jet<N> operator*(const Jet<N>& a, const Real& s) {
  Jet<N> r;
  for (int k = 0; k < N; ++k) r.c[k] = a.c[k] * s;
  return r;
}

template <int N>
Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  r.c[0] = a.c[0] / b.c[0];
  for (int k = 1; k < N; ++k) {
    Real s = a.c[k];
    for (int i = 1; i <= k; ++i) s -= b.c[i] * r.c[k - i];
    r.c[k] = s / b.c[0];
  }
  return r;
}

// exp of a jet via the derivative recurrence (e^f)' = f' e^f
template <int N>
Jet<N> exp_jet(const Jet<N>& a) {
  Jet<N> r;
  r.c[0] = exp(a.c[0]);
  for (int k = 1; k < N; ++k) {
    Real s(0);
    for (int j = 1; j <= k; ++j) s += Real(j) * a.c[j] * r.c[k - j];
    r.c[k] = s / Real(k);
  }
  return r;
}

// rescale the expansion variable s -> t*s: c[k] *= t^k
template <int N>
Jet<N> scale_var(const Jet<N>& a, const Real& t) {
  Jet<N> r;
  Real f(1);
  for (int k = 0; k < N; ++k) {
    r.c[k] = a.c[k] * f;
    f = f * t;
  }
  return r;
}

// jet of e^{-a w} at w = w0: c[k] = e^{-a w0} (-a)^k / k!
template <int N>
Jet<N> jet_exp_neg(const Real& a, const Real& w0) {
  Jet<N> r;
  Real x = exp(-(a * w0));
  Real f(1);
  r.c[0] = x;
  for (int k = 1; k < N; ++k) {
    f = f * (-a) / Real(k);
    r.c[k] = x * f;
  }
  return r;
}

// jet of 1 - e^{-a w} at w = w0; the constant term is evaluated through
// expm1 so it keeps full relative precision when a*w0 is small
template <int N>
Jet<N> jet_one_minus_exp_neg(const Real& a, const Real& w0) {
  Jet<N> r = jet_exp_neg<N>(a, w0);
  for (int k = 1; k < N; ++k) r.c[k] = -r.c[k];
  r.c[0] = one_minus_exp_neg(a * w0);
  return r;
}

// jet of (q + s)^p at s = 0 where q = e^{-rho}: c[k] = C(p,k) q^{p-k}
template <int N>
Jet<N> jet_q_pow(long p, const Real& rho) {
  if (p < 0) throw DomainError("jet_q_pow: need p >= 0");
  Jet<N> r;
  mpz_class bin = 1;
  for (int k = 0; k < N && k <= p; ++k) {
    if (k > 0) {
      bin *= p - k + 1;
      bin /= k;
    }
    r.c[k] = Real(bin) * exp(-(Real(p - k) * rho));
  }
  return r;
}

// jet of 1 - (q + s)^p, constant term via expm1 as above
template <int N>
Jet<N> jet_one_minus_q_pow(long p, const Real& rho) {
  Jet<N> r = jet_q_pow<N>(p, rho);
  for (int k = 1; k < N; ++k) r.c[k] = -r.c[k];
  r.c[0] = one_minus_exp_neg(Real(p) * rho);
  return r;
}

}  // namespace ppart
