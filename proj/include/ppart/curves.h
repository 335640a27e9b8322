// Phase-transition curves in the scaled width alpha = m n^{-1/3}: the
// defining root equations for each partition family, the limit-shape
// variance sigma, the critical-window closed-form estimate with its
// correction diagnostics, and the extreme-width ratio prediction.
#ifndef PPART_CURVES_H
#define PPART_CURVES_H

#include <string>

#include "ppart/saddle.h"

namespace ppart {

enum class CurveKind { bpp, m_rowed, strict_rows, bounded_sym };

inline const char* curve_name(CurveKind c) {
  switch (c) {
    case CurveKind::bpp:
      return "bpp";
    case CurveKind::m_rowed:
      return "m_rowed";
    case CurveKind::strict_rows:
      return "strict_rows";
    default:
      return "bounded_sym";
  }
}

struct TransitionPoint {
  Real alpha;
  Real r;
  Real value;  // G(alpha), H(alpha), or the analogous exponent coefficient
  CurveKind curve = CurveKind::bpp;
};

// sigma(x) = 3 zeta(3) - 6 eta_2(x) + 4 x eta_2'(x) - x^2 eta_2''(x).
inline Real sigma_fn(const Real& x) {
  if (!(x > Real(0))) throw DomainError("sigma_fn: need x > 0");
  return Real(3) * zeta3() - Real(6) * eta_d(2, x, 0) +
         Real(4) * x * eta_d(2, x, 1) - x * x * eta_d(2, x, 2);
}

// Antiderivative of s^2/(e^s - 1): 2 eta(x) - 2x Li_2(e^{-x})
// + x^2 log(1 - e^{-x}), used by the bounded-symmetric root equation.
inline Real boltzmann_energy_integral(const Real& x) {
  if (!(x > Real(0)))
    throw DomainError("boltzmann_energy_integral: need x > 0");
  return Real(2) * eta_rowed(x, 0) - Real(2) * x * eta_rowed(x, 1) +
         x * x * log(one_minus_exp_neg(x));
}

// Residual of the defining equation of each curve, R(alpha, r).
inline Real R_fn(CurveKind curve, const Real& alpha, const Real& r) {
  if (!(alpha > Real(0))) throw DomainError("R_fn: need alpha > 0");
  if (!(r > Real(0))) throw DomainError("R_fn: need r > 0");
  Real x = alpha * r;
  switch (curve) {
    case CurveKind::bpp:
      return r * r * r - zeta3() + Real(2) * eta_d(2, x, 0) -
             x * eta_d(2, x, 1);
    case CurveKind::m_rowed:
      return r * r * r - Real(2) * eta_rowed(x, 0) + x * eta_rowed(x, 1);
    case CurveKind::strict_rows:
      return Real(2) * r * r * r - Real(2) * eta_rowed(x, 0) +
             x * eta_rowed(x, 1);
    default:
      return r * r * r - boltzmann_energy_integral(x);
  }
}

// d/dr of R_fn; eta''(t) = log(1 - e^{-t}) for the rowed curves.
inline Real R_fn_dr(CurveKind curve, const Real& alpha, const Real& r) {
  Real x = alpha * r;
  Real r2 = r * r;
  switch (curve) {
    case CurveKind::bpp:
      return Real(3) * r2 + alpha * eta_d(2, x, 1) -
             alpha * alpha * r * eta_d(2, x, 2);
    case CurveKind::m_rowed:
      return Real(3) * r2 - alpha * eta_rowed(x, 1) +
             alpha * alpha * r * log(one_minus_exp_neg(x));
    case CurveKind::strict_rows:
      return Real(6) * r2 - alpha * eta_rowed(x, 1) +
             alpha * alpha * r * log(one_minus_exp_neg(x));
    default:
      return Real(3) * r2 - alpha * x * x * exp(-x) / one_minus_exp_neg(x);
  }
}

inline Real curve_value(CurveKind curve, const Real& alpha, const Real& r) {
  Real x = alpha * r;
  switch (curve) {
    case CurveKind::bpp:
      return r + (zeta3() - Real(2) * eta_d(2, x, 0)) / (Real(2) * r * r);
    case CurveKind::m_rowed:
      return r + eta_rowed(x, 0) / (r * r);
    case CurveKind::strict_rows:
      return r + eta_rowed(x, 0) / (Real(2) * r * r);
    default:
      return eta_rowed(x, 0) / (r * r) - (alpha / r) * eta_rowed(x, 1);
  }
}

// Small-alpha and large-alpha closed-form seeds for the unique root.
inline Real curve_seed(CurveKind curve, const Real& alpha) {
  Real small_seed, large_limit;
  Real pi = const_pi();
  switch (curve) {
    case CurveKind::bpp:
      small_seed = pi * sqrt(alpha) / (Real(2) * sqrt(Real(6)));
      large_limit = cbrt(zeta3());
      break;
    case CurveKind::m_rowed:
      small_seed = pi * sqrt(alpha) / sqrt(Real(6));
      large_limit = cbrt(Real(2) * zeta3());
      break;
    case CurveKind::strict_rows:
      small_seed = sqrt(pi * pi * alpha / Real(12));
      large_limit = cbrt(zeta3());
      break;
    default:
      small_seed = alpha * alpha / Real(2);
      large_limit = cbrt(Real(2) * zeta3());
      break;
  }
  return min(small_seed, large_limit);
}

inline TransitionPoint solve_r(const Real& alpha, CurveKind curve) {
  if (!(alpha > Real(0))) throw DomainError("solve_r: need alpha > 0");
  Real seed = curve_seed(curve, alpha);
  Real lo = seed / Real(4);
  Real hi = seed * Real(4);
  int expand = 0;
  while (!(R_fn(curve, alpha, lo) < Real(0))) {
    lo = lo / Real(2);
    if (++expand > 80) throw BracketFailure("solve_r: no lower bracket");
  }
  while (!(R_fn(curve, alpha, hi) > Real(0))) {
    hi = hi * Real(2);
    if (++expand > 80) throw BracketFailure("solve_r: no upper bracket");
  }
  Real r = sqrt(lo * hi);
  Real tol = pow10(-(PrecisionContext::digits() - 15));
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    Real res = R_fn(curve, alpha, r);
    if (abs(res) < tol) {
      converged = true;
      break;
    }
    if (res < Real(0))
      lo = r;
    else
      hi = r;
    Real next = r - res / R_fn_dr(curve, alpha, r);
    if (!(next > lo && next < hi)) next = (lo + hi) / Real(2);
    r = next;
  }
  if (!converged) throw NoConvergence("solve_r: Newton did not converge");
  TransitionPoint p;
  p.alpha = alpha;
  p.r = r;
  p.value = curve_value(curve, alpha, r);
  p.curve = curve;
  return p;
}

// Critical-window closed form:
// G_{n,m} ~ c(alpha,r) n^{-49/72} e^{beta_1 n^{2/3} + beta_2 n^{1/3}},
// beta_1 = r + (zeta(3) - 2 eta_2(alpha r))/(2 r^2),  beta_2 = pi^2/(24 r),
// c = r^{49/24} / (2^{3/4} sqrt(pi sigma(alpha r)))
//     * exp(zeta'(-1)/2 - 5 eta_1(alpha r)/12 + p(e^{-alpha r})/2
//           - pi^4/(1152 sigma(alpha r))).
inline AsymptoticEstimate critical_estimate(long n, long m) {
  if (n < 1) throw DomainError("critical_estimate: need n >= 1");
  if (m < 3) throw DomainError("critical_estimate: need m >= 3");
  Real alpha = Real(m) / cbrt(Real(n));
  TransitionPoint p = solve_r(alpha, CurveKind::bpp);
  Real x = alpha * p.r;
  Real sig = sigma_fn(x);
  Real pi = const_pi();
  Real pi2 = pi * pi;
  Real n13 = cbrt(Real(n));
  AsymptoticEstimate e;
  e.method = Method::critical;
  e.claimed_error_order = "1+O(n^-1/3) in the critical window";
  e.terms.push_back({"beta1_exponent", p.value * n13 * n13});
  e.terms.push_back({"beta2_exponent", pi2 / (Real(24) * p.r) * n13});
  e.terms.push_back({"polynomial_power", -Real(49) * log(Real(n)) / Real(72)});
  e.terms.push_back(
      {"log_c", Real(49) * log(p.r) / Real(24) -
                    Real(3) * log(Real(2)) / Real(4) - log(pi * sig) / Real(2) +
                    zeta_prime_minus1() / Real(2) -
                    Real(5) * eta_d(1, x, 0) / Real(12) +
                    p_log_auto(x) / Real(2) - pi2 * pi2 / (Real(1152) * sig)});
  e.finalize();
  return e;
}

struct CriticalCorrections {
  Real r1;  // coefficient of n^{-1/3}
  Real r2;  // coefficient of n^{-2/3}
};

// Correction diagnostics for the critical closed form:
// r_1 = pi^2 r / (24 sigma), and r_2 as displayed (the p'(e^{-x}) factor
// rewritten through d/dx p(e^{-x}) = -e^{-x} p'(e^{-x})).
inline CriticalCorrections critical_corrections(long n, long m) {
  if (n < 1) throw DomainError("critical_corrections: need n >= 1");
  if (m < 3) throw DomainError("critical_corrections: need m >= 3");
  Real alpha = Real(m) / cbrt(Real(n));
  TransitionPoint p = solve_r(alpha, CurveKind::bpp);
  Real x = alpha * p.r;
  Real sig = sigma_fn(x);
  Real pi = const_pi();
  Real pi4 = pi * pi * pi * pi;
  CriticalCorrections c;
  c.r1 = pi * pi * p.r / (Real(24) * sig);
  Real inner = Real(mpq_class(-1, 24)) +
               Real(5) * x * eta_d(1, x, 1) / Real(12) -
               x * p_log_auto(x, 1) / Real(2) +
               (pi4 / (Real(1152) * sig * sig)) *
                   (Real(2) * x * eta_d(2, x, 1) -
                    Real(2) * x * x * eta_d(2, x, 2) +
                    x * x * x * eta_d(2, x, 3));
  c.r2 = p.r * p.r / sig * inner;
  return c;
}

struct GumbelRatio {
  Real m_implied;
  Real log_ratio_predicted;
  Real log_ratio_model;
};

// Extreme-width ratio: at alpha = zeta(3)^{-1/3}((2/3) log(n/zeta(3)) + x)
// the ratio G_{n,m}/G_{n,n} is predicted to behave like exp(-e^{-x}).
// Counts exist only at integer widths, so the critical closed form is
// evaluated at round(m_implied) clamped to >= 3.
inline GumbelRatio gumbel_ratio(long n, const Real& x) {
  if (n < 1) throw DomainError("gumbel_ratio: need n >= 1");
  Real alpha = (Real(2) * log(Real(n) / zeta3()) / Real(3) + x) / cbrt(zeta3());
  GumbelRatio g;
  g.m_implied = alpha * cbrt(Real(n));
  if (!(g.m_implied >= Real(3)))
    throw DomainError("gumbel_ratio: implied width below 3");
  long m_round = (floor(g.m_implied + Real(mpq_class(1, 2)))).to_long();
  if (m_round < 3) m_round = 3;
  g.log_ratio_predicted =
      critical_estimate(n, m_round).log_value - supercritical_estimate(n).log_value;
  g.log_ratio_model = -exp(-x);
  return g;
}

}  // namespace ppart

#endif  // PPART_CURVES_H
