// The exact logarithmic identity for the banded generating function
// G_m(e^{-tau}): structure constants (leading coefficient, linear
// coefficient, the constant g_m as a pairwise log-Gamma sum), the corrected
// large-m expansion of log g_m, the exponentially small kappa/lambda
// corrections, the direct series route for log G_m, and the residual
// report comparing both routes.
#ifndef PPART_IDENTITY_H
#define PPART_IDENTITY_H

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

#include "ppart/complexr.h"
#include "ppart/family.h"
#include "ppart/real.h"
#include "ppart/special.h"

namespace ppart {

enum class GmRoute { identity, series };

// Weight row w_m(j) for j = 0..2m-1, with construction checks (symmetry
// about j = m and the closed-form total).
inline std::vector<long> banded_weights(long m) {
  if (m < 3) throw DomainError("banded_weights: need m >= 3");
  std::vector<long> w(static_cast<size_t>(2 * m));
  for (long j = 0; j < 2 * m; ++j) w[static_cast<size_t>(j)] = w_band(m, j);
  long sum = 0;
  for (long j = 1; j < 2 * m; ++j) {
    if (w[static_cast<size_t>(j)] != w[static_cast<size_t>(2 * m - j)])
      throw std::logic_error("banded_weights: symmetry check failed");
    sum += w[static_cast<size_t>(j)];
  }
  if (sum != (m - 1) * (m - 2) / 2)
    throw std::logic_error("banded_weights: weight total check failed");
  return w;
}

struct StructureConstants {
  long m = 0;
  Real varpi;           // pi^2 (m^2 + m + 2) / (24 m)
  Real phi;             // (m^3 - 7m + 2) / 96
  mpq_class phi_exact;  // same, as a rational
  Real log_g;           // -((m^2-3m+4)/4) log(2 pi) + sum of log Gamma((k+j)/(2m))
};

// Always evaluates the pairwise log-Gamma sum; the large-m expansion below
// is a separate, clearly labelled approximation.
inline StructureConstants structure_constants(long m) {
  if (m < 3) throw DomainError("structure_constants: need m >= 3");
  StructureConstants sc;
  sc.m = m;
  Real pi = const_pi();
  mpq_class vq(m * m + m + 2, 24 * m);
  vq.canonicalize();
  sc.varpi = pi * pi * Real(vq);
  sc.phi_exact = mpq_class(m * m * m - 7 * m + 2, 96);
  sc.phi_exact.canonicalize();
  sc.phi = Real(sc.phi_exact);
  mpq_class lq(m * m - 3 * m + 4, 4);
  lq.canonicalize();
  Real lg = -Real(lq) * log_2pi();
  for (long k = 1; k < m; ++k) {
    for (long j = k + 1; j < m; ++j) {
      mpq_class arg(k + j, 2 * m);
      arg.canonicalize();
      lg += log_gamma(Real(arg));
    }
  }
  sc.log_g = lg;
  return sc;
}

// Coefficient of m^{-2j} in the large-m expansion of log g_m:
//   t_j = -B_{2j} B_{2j+2} (-pi^2)^j (2^{2j} - 2) / (8 j (j+1) (2j)!).
inline Real gm_tail_coefficient(long j) {
  if (j < 1) throw DomainError("gm_tail_coefficient: need j >= 1");
  mpq_class b = bernoulli_number(2 * j) * bernoulli_number(2 * j + 2);
  mpz_class fact = 1;
  for (long i = 2; i <= 2 * j; ++i) fact *= i;
  mpz_class two_pow = 1;
  mpz_mul_2exp(two_pow.get_mpz_t(), two_pow.get_mpz_t(), static_cast<mp_bitcnt_t>(2 * j));
  mpq_class c = -b * mpq_class(two_pow - 2) /
                (mpq_class(8) * mpq_class(j) * mpq_class(j + 1) * mpq_class(fact));
  c.canonicalize();
  Real pi2 = const_pi() * const_pi();
  return Real(c) * pow(-pi2, j);
}

struct GmExpansion {
  Real value;
  Real error_proxy;  // magnitude of the smallest retained power-law term,
                     // or of the first correction when none are retained
};

// log g_m ~ -7 zeta(3) m^2/(8 pi^2) + (11/24) log m + c_1 + sum t_j m^{-2j},
// c_1 = zeta'(-1)/2 - (11/24) log pi - (7/24) log 2.
inline GmExpansion log_gm_expansion(long m, int terms) {
  if (m < 3) throw DomainError("log_gm_expansion: need m >= 3");
  if (terms < 0 || terms > 5) throw DomainError("log_gm_expansion: terms in 0..5");
  Real pi = const_pi();
  Real mm(m);
  Real c1 = zeta_prime_minus1() / Real(2) - Real(mpq_class(11, 24)) * log(pi) -
            Real(mpq_class(7, 24)) * log(Real(2));
  Real v = -Real(7) * zeta3() * mm * mm / (Real(8) * pi * pi) +
           Real(mpq_class(11, 24)) * log(mm) + c1;
  Real m2 = mm * mm;
  Real mpow = Real(1) / m2;
  Real last(0);
  for (int j = 1; j <= terms; ++j) {
    last = gm_tail_coefficient(j) * mpow;
    v += last;
    mpow = mpow / m2;
  }
  GmExpansion out;
  out.value = v;
  out.error_proxy = terms > 0 ? abs(last) : abs(gm_tail_coefficient(1)) / m2;
  return out;
}

// Exponent generating function U_m evaluated at z = e^{-w}, Re w > 0.
template <typename T>
T u_gen_at(long m, const T& w) {
  T z = exp(-w);
  T first = z / one_minus_exp_neg(w);
  if (m <= 2) return first;
  T num = exp(-(Real(3) * w)) * one_minus_exp_neg(Real(m - 2) * w) *
          one_minus_exp_neg(Real(m - 1) * w);
  T den = one_minus_exp_neg(Real(2 * m) * w) * one_minus_exp_neg(w) *
          one_minus_exp_neg(Real(2) * w);
  return first + num / den;
}

// Direct route: log G_m(e^{-tau}) = sum_{l>=1} U_m(e^{-l tau}) / l.  The
// exponent coefficients are bounded by 1 + floor((m-1)/2), which gives the
// geometric tail majorant.
template <typename T>
T log_gm_series(long m, const T& tau) {
  if (m < 1) throw DomainError("log_gm_series: need m >= 1");
  Real retau = real_part(tau);
  if (!(retau > Real(0))) throw DomainError("log_gm_series: Re tau must be positive");
  const Real tol = tail_tolerance();
  Real emax(1 + (m - 1) / 2);
  Real aw = exp(-retau);
  Real om = one_minus_exp_neg(retau);
  Real awl(1);
  T sum(0L);
  const long cap = 2000000;
  for (long l = 1; l <= cap; ++l) {
    sum += u_gen_at(m, Real(l) * tau) / Real(l);
    awl = awl * aw;
    Real wl1 = awl * aw;  // |e^{-(l+1) tau}|
    if (emax * wl1 / (om * (Real(1) - wl1)) < tol) return sum;
  }
  throw ConvergenceError("log_gm_series: cap reached before tail bound");
}

// kappa_m at the reflected argument: with q = e^{-4 pi^2 / tau},
//   kappa_m = (m+2)/4 p(q) + 1/2 p(q^{1/m}) - 1/2 p(q^{1/2}).
template <typename T>
T kappa_m(long m, const T& tau) {
  Real pi2 = const_pi() * const_pi();
  T w = Real(4) * pi2 / tau;
  mpq_class c(m + 2, 4);
  c.canonicalize();
  return Real(c) * p_log(w, PBranch::series) + p_log(w / Real(m), PBranch::series) / Real(2) -
         p_log(w / Real(2), PBranch::series) / Real(2);
}

// lambda_m as the cosine-weighted sum of J values over the odd residues:
//   lambda_m = -(1/2m) sum_{l=1..m} cos(t_l)/(1-cos(t_l)) J((2l-1)/(2m), tau/(4 pi^2)),
// t_l = (2l-1) pi / m.  1 - cos is evaluated as 2 sin^2(t/2).
template <typename T>
T lambda_m(long m, const T& tau) {
  Real pi = const_pi();
  T w = tau / (Real(4) * pi * pi);
  T sum(0L);
  for (long l = 1; l <= m; ++l) {
    Real theta = Real(2 * l - 1) * pi / Real(m);
    Real s = sin(theta / Real(2));
    Real coef = cos(theta) / (Real(2) * s * s);
    mpq_class b(2 * l - 1, 2 * m);
    b.canonicalize();
    sum += coef * j_integral(Real(b), w);
  }
  return -(sum / Real(2 * m));
}

template <typename T>
struct KappaLambda {
  T kappa;
  T lambda;
};

template <typename T>
KappaLambda<T> kappa_lambda(long m, const T& tau) {
  if (m < 3) throw DomainError("kappa_lambda: need m >= 3");
  Real retau = real_part(tau);
  if (!(retau > Real(0))) throw DomainError("kappa_lambda: Re tau must be positive");
  return {kappa_m(m, tau), lambda_m(m, tau)};
}

// log G_m(e^{-tau}) by either route.  The identity route is
//   varpi_m / tau + (1/2) log tau + log g_m + phi_m tau + kappa_m + lambda_m
// and requires m >= 3; the series route supports any m >= 1.
template <typename T>
T log_Gm(long m, const T& tau, GmRoute route) {
  Real retau = real_part(tau);
  if (!(retau > Real(0))) throw DomainError("log_Gm: Re tau must be positive");
  if (route == GmRoute::series) return log_gm_series(m, tau);
  if (m < 3) throw DomainError("log_Gm: identity route needs m >= 3");
  StructureConstants sc = structure_constants(m);
  KappaLambda<T> kl = kappa_lambda(m, tau);
  return sc.varpi / tau + log(tau) / Real(2) + sc.log_g + sc.phi * tau + kl.kappa + kl.lambda;
}

struct IdentityReport {
  long m = 0;
  Complex tau;
  Complex lhs;        // direct series route
  Complex rhs;        // identity route
  Real rel_residual;  // |lhs - rhs| / max(1, |lhs|)
  long expansion_terms_hint = 0;  // series terms needed by the direct route
};

inline IdentityReport identity_residual(long m, const Complex& tau) {
  IdentityReport r;
  r.m = m;
  r.tau = tau;
  r.lhs = log_gm_series(m, tau);
  r.rhs = log_Gm(m, tau, GmRoute::identity);
  r.rel_residual = abs(r.lhs - r.rhs) / max(Real(1), abs(r.lhs));
  Real retau = real_part(tau);
  r.expansion_terms_hint =
      (Real(PrecisionContext::tail_digits()) * log(Real(10)) / retau).to_long() + 1;
  return r;
}

// |V_m(e^{-rho-it})| / V_m(e^{-rho}) for the half-plane decomposition
// V_m(z) = z (1 - z^m) / (2 (1-z)^2 (1 + z^m)).
inline Complex v_m_at(long m, const Complex& w) {
  Complex z = exp(-w);
  Complex zm = exp(-(Real(m) * w));
  Complex d = one_minus_exp_neg(w);
  return z * one_minus_exp_neg(Real(m) * w) / (Real(2) * d * d * (Complex(1L) + zm));
}

// Closed modulus form: with x = e^{-rho}, y = e^{-m rho},
//   |V_m(e^{-rho-it})| = x / (2 A(t)) * sqrt(B(t) / C(t)),
//   A(t) = (1-x)^2 + 4 x sin^2(t/2),   B(t) = (1-y)^2 + 4 y sin^2(mt/2),
//   C(t) = (1+y)^2 - 4 y sin^2(mt/2),
// so the ratio to the t = 0 value needs only stable real pieces.
inline Real v_ratio(long m, const Real& rho, const Real& t) {
  if (m < 3) throw DomainError("v_ratio: need m >= 3");
  if (!(rho > Real(0))) throw DomainError("v_ratio: need rho > 0");
  Real x = exp(-rho);
  Real y = exp(-(Real(m) * rho));
  Real omx = one_minus_exp_neg(rho);
  Real omy = one_minus_exp_neg(Real(m) * rho);
  Real opy = Real(1) + y;
  Real s1 = sin(t / Real(2));
  Real sm = sin(Real(m) * t / Real(2));
  Real a = omx * omx + Real(4) * x * s1 * s1;
  Real b = omy * omy + Real(4) * y * sm * sm;
  Real c = opy * opy - Real(4) * y * sm * sm;
  return (omx * omx / a) * sqrt(b) / omy * opy / sqrt(c);
}

}  // namespace ppart

#endif  // PPART_IDENTITY_H
