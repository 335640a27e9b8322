// High-precision special functions: Bernoulli numbers/polynomials, Stirling
// numbers, Hurwitz zeta with s-derivative, log-Gamma/digamma, the eta_d /
// varphi_d / xi_d family with series and small-argument branches, the log of
// the Euler product P(e^{-tau}) with its modular transformation, the cubic
// eta(t) used by the row-bounded family, dilogarithm, and J(b,tau).
// Every series stops on an explicit analytic majorant, never a heuristic.
#ifndef PPART_SPECIAL_H
#define PPART_SPECIAL_H

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ppart/complexr.h"
#include "ppart/real.h"

namespace ppart {

class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& w) : std::domain_error(w) {}
};
class PoleError : public DomainError {
 public:
  explicit PoleError(const std::string& w) : DomainError(w) {}
};
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& w) : std::runtime_error(w) {}
};
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& w) : std::runtime_error(w) {}
};

// ---------------------------------------------------------------------
// exact tables
// ---------------------------------------------------------------------

inline const mpq_class& bernoulli_number(long j) {
  constexpr long kCap = 200;
  if (j < 0) throw DomainError("bernoulli_number: j must be >= 0");
  if (j > kCap) throw CapExceeded("bernoulli_number: j above cap 200");
  static std::vector<mpq_class> tab = {mpq_class(1), mpq_class(-1, 2)};
  while (static_cast<long>(tab.size()) <= j) {
    long n = static_cast<long>(tab.size());
    mpq_class s = 0;
    mpz_class binom = 1;  // C(n+1, k), k running
    for (long k = 0; k < n; ++k) {
      s += mpq_class(binom) * tab[static_cast<size_t>(k)];
      binom = binom * (n + 1 - k) / (k + 1);
    }
    mpq_class bn = -s / mpq_class(n + 1);
    bn.canonicalize();
    tab.push_back(bn);
  }
  return tab[static_cast<size_t>(j)];
}

// B_j(x) = sum_k C(j,k) B_k x^{j-k}, exact over rationals
inline mpq_class bernoulli_poly(long j, const mpq_class& x) {
  if (j < 0) throw DomainError("bernoulli_poly: j must be >= 0");
  mpq_class sum = 0;
  mpz_class binom = 1;  // C(j, k)
  std::vector<mpq_class> xpow(static_cast<size_t>(j) + 1);
  xpow[0] = 1;
  for (long i = 1; i <= j; ++i) xpow[static_cast<size_t>(i)] = xpow[static_cast<size_t>(i - 1)] * x;
  for (long k = 0; k <= j; ++k) {
    sum += mpq_class(binom) * bernoulli_number(k) * xpow[static_cast<size_t>(j - k)];
    if (k < j) binom = binom * (j - k) / (k + 1);
  }
  sum.canonicalize();
  return sum;
}

inline const mpz_class& stirling2(long k, long j) {
  if (k < 0 || j < 0 || j > k) throw DomainError("stirling2: need 0 <= j <= k");
  static std::vector<std::vector<mpz_class>> tri = {{mpz_class(1)}};
  while (static_cast<long>(tri.size()) <= k) {
    long n = static_cast<long>(tri.size());
    std::vector<mpz_class> row(static_cast<size_t>(n) + 1);
    row[0] = 0;
    for (long i = 1; i <= n; ++i) {
      row[static_cast<size_t>(i)] = (i < n ? mpz_class(i * tri.back()[static_cast<size_t>(i)]) : mpz_class(0)) +
                                    tri.back()[static_cast<size_t>(i - 1)];
    }
    tri.push_back(std::move(row));
  }
  return tri[static_cast<size_t>(k)][static_cast<size_t>(j)];
}

// ---------------------------------------------------------------------
// Hurwitz zeta by Euler-Maclaurin, with optional d/ds
// ---------------------------------------------------------------------

inline Real hurwitz_zeta(const Real& s, const Real& b, int s_deriv = 0) {
  if (!(b > Real(0))) throw DomainError("hurwitz_zeta: b must be positive");
  if (s == Real(1)) throw PoleError("hurwitz_zeta: pole at s = 1");
  if (s_deriv < 0 || s_deriv > 1) throw DomainError("hurwitz_zeta: s_deriv in 0..1");
  const Real tol = tail_tolerance();
  const long K = 2 * PrecisionContext::digits() + 20;
  Real sum(0), dsum(0);
  for (long k = 0; k < K; ++k) {
    Real a = b + Real(k);
    Real la = log(a);
    Real p = exp(-(s * la));
    sum += p;
    if (s_deriv) dsum -= la * p;
  }
  Real A = b + Real(K);
  Real lA = log(A);
  Real Ams = exp(-(s * lA));  // A^{-s}
  Real A1ms = Ams * A;        // A^{1-s}
  Real sm1 = s - Real(1);
  sum += A1ms / sm1 + Ams / Real(2);
  if (s_deriv) dsum += -(lA * A1ms) / sm1 - A1ms / (sm1 * sm1) - lA * Ams / Real(2);
  Real Apow = Ams / A;  // A^{-s-2j+1} at j = 1
  Real Am2 = Real(1) / (A * A);
  bool done = false;
  for (long j = 1; j <= 60; ++j) {
    Real rf(1), drf(0);  // rising factorial (s)_{2j-1} and its s-derivative
    for (long i = 0; i <= 2 * j - 2; ++i) {
      Real f = s + Real(i);
      drf = drf * f + rf;
      rf = rf * f;
    }
    mpq_class cq = bernoulli_number(2 * j);
    mpz_class fact = 1;
    for (long i = 2; i <= 2 * j; ++i) fact *= i;
    cq /= mpq_class(fact);
    Real coef = Real(cq);
    Real term = coef * rf * Apow;
    sum += term;
    Real mag = abs(term);
    if (s_deriv) {
      Real dterm = coef * (drf - rf * lA) * Apow;
      dsum += dterm;
      mag = max(mag, abs(dterm));
    }
    if (mag < tol) {
      done = true;
      break;
    }
    Apow = Apow * Am2;
  }
  if (!done) throw ConvergenceError("hurwitz_zeta: Euler-Maclaurin tail did not converge");
  return s_deriv ? dsum : sum;
}

// ---------------------------------------------------------------------
// cached constants (per working precision)
// ---------------------------------------------------------------------

inline Real zeta2() {
  Real pi = const_pi();
  return pi * pi / Real(6);
}
inline Real zeta3() { return zeta_ui(3); }
inline Real log_2pi() { return log(Real(2) * const_pi()); }

inline Real zeta_prime_minus1() {
  static std::map<long, Real> cache;
  long d = PrecisionContext::digits();
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  Real v = hurwitz_zeta(Real(-1), Real(1), 1);
  cache.emplace(d, v);
  return v;
}

// ---------------------------------------------------------------------
// log Gamma / digamma
// ---------------------------------------------------------------------

inline Real log_gamma(const Real& x) {
  if (!(x > Real(0))) throw DomainError("log_gamma: need x > 0");
  return lngamma(x);
}
inline Real digamma(const Real& x) {
  if (!(x > Real(0))) throw DomainError("digamma: need x > 0");
  return digamma_mpfr(x);
}

// ---------------------------------------------------------------------
// eta_d(z) = sum_l e^{-lz}/(l^{2d-1}(1+e^{-lz})) and term-wise derivatives
// ---------------------------------------------------------------------

template <typename T>
T eta_d_series(int d, const T& z, int deriv = 0) {
  if (d < 0 || d > 3) throw DomainError("eta_d: d in 0..3");
  if (deriv < 0 || deriv > 3) throw DomainError("eta_d: deriv in 0..3");
  Real rez = real_part(z);
  if (!(rez > Real(0))) throw DomainError("eta_d: Re z must be positive");
  const Real tol = tail_tolerance();
  Real em1 = one_minus_exp_neg(rez);  // lower bound for |1 + e^{-lz}|
  Real denom_majorant = pow(em1, static_cast<long>(deriv + 1));
  const long lpow = deriv + 1 - 2 * d;  // power of l in the term
  T ratio = exp(-z);
  T x = ratio;
  Real ax = abs_value(ratio);
  Real axl = ax;
  T sum(0L);
  const long cap = 2000000;
  for (long l = 1; l <= cap; ++l) {
    T opx = T(1L) + x;
    Real lp = pow(Real(l), lpow);
    T term;
    switch (deriv) {
      case 0:
        term = lp * x / opx;  // lp = l^{1-2d}
        break;
      case 1:
        term = -(lp * x) / (opx * opx);
        break;
      case 2:
        term = lp * x * (T(1L) - x) / (opx * opx * opx);
        break;
      default:
        term = -(lp * x * (T(1L) - Real(4) * x + x * x)) / (opx * opx * opx * opx);
        break;
    }
    sum += term;
    Real lmag = lpow > 0 ? pow(Real(l), lpow) : Real(1);
    if (Real(6) * lmag * axl / denom_majorant < tol) return sum;
    x = x * ratio;
    axl = axl * ax;
  }
  throw ConvergenceError("eta_d_series: term cap reached before tail bound");
}

// ---------------------------------------------------------------------
// varphi_d(z) = sum_l (2l-1)^{1-2d} u_l(z), u = q/(1-q), q = e^{-a/z},
// a = 2(2l-1)pi^2; deriv gives exact z-derivatives of each u_l.
// ---------------------------------------------------------------------

template <typename T>
T varphi_d(int d, const T& z, int deriv = 0) {
  if (d < 0 || d > 2) throw DomainError("varphi_d: d in 0..2");
  if (deriv < 0 || deriv > 3) throw DomainError("varphi_d: deriv in 0..3");
  T inv = T(1L) / z;
  Real r1 = real_part(inv);
  if (!(r1 > Real(0))) throw DomainError("varphi_d: Re(1/z) must be positive");
  const Real tol = tail_tolerance();
  Real pi2 = const_pi() * const_pi();
  Real az = abs_value(z);
  Real D = one_minus_exp_neg(Real(2) * pi2 * r1);  // 1 - |q_1|
  const long gpow = std::max(0L, static_cast<long>(1 - 2 * d));
  T sum(0L);
  const long cap = 200000;
  for (long l = 1; l <= cap; ++l) {
    Real a = Real(2 * (2 * l - 1)) * pi2;
    T w = a * inv;                 // a/z
    T q = exp(-w);                 // both computed directly so each keeps
    T omq = one_minus_exp_neg(w);  // full relative precision
    Real pref = pow(Real(2 * l - 1), 1 - 2 * d);
    T term;
    Real maj;
    Real aq = abs_value(q);
    Real prefmag = gpow > 0 ? Real(2 * l - 1) : Real(1);
    switch (deriv) {
      case 0:
        term = pref * q / omq;
        maj = prefmag * aq / D;
        break;
      case 1:
        term = pref * a * q / (z * z * omq * omq);
        maj = prefmag * a * aq / (az * az * D * D);
        break;
      case 2:
        term = pref * a * q * (a * (T(1L) + q) - Real(2) * z * omq) /
               (z * z * z * z * omq * omq * omq);
        maj = prefmag * a * (Real(2) * a + Real(4) * az) * aq /
              (az * az * az * az * D * D * D);
        break;
      default:
        term = pref * a * q *
               (a * a * (T(1L) + Real(4) * q + q * q) -
                Real(6) * a * z * (T(1L) - q * q) +
                Real(6) * z * z * omq * omq) /
               (z * z * z * z * z * z * omq * omq * omq * omq);
        maj = prefmag * a * (Real(6) * a * a + Real(12) * a * az + Real(24) * az * az) * aq /
              (pow(az, 6L) * D * D * D * D);
        break;
    }
    sum += term;
    if (maj < tol) return sum;
  }
  throw ConvergenceError("varphi_d: term cap reached before tail bound");
}

// ---------------------------------------------------------------------
// small-argument branch of eta_d via the varphi identities (real z)
// ---------------------------------------------------------------------

inline Real eta_d_modular(int d, const Real& z, int deriv = 0) {
  if (!(z > Real(0))) throw DomainError("eta_d_modular: need z > 0");
  Real pi = const_pi();
  Real pi2 = pi * pi;
  Real z3 = zeta3();
  if (d == 0) {
    Real f0 = varphi_d(0, z, 0);
    if (deriv == 0) return pi2 / (Real(12) * z * z) - Real(mpq_class(1, 24)) + Real(2) * pi2 * f0 / (z * z);
    if (deriv == 1) {
      Real f1 = varphi_d(0, z, 1);
      return -pi2 / (Real(6) * z * z * z) + Real(2) * pi2 * (f1 / (z * z) - Real(2) * f0 / (z * z * z));
    }
    throw DomainError("eta_d_modular: d=0 supports deriv 0..1");
  }
  if (d == 1) {
    if (deriv == 0)
      return z / Real(8) + log(pi / (Real(2) * z)) / Real(2) - Real(2) * varphi_d(1, z, 0);
    if (deriv == 1)
      return Real(mpq_class(1, 8)) - Real(1) / (Real(2) * z) - Real(2) * varphi_d(1, z, 1);
    throw DomainError("eta_d_modular: d=1 supports deriv 0..1");
  }
  if (d == 2) {
    Real f0 = varphi_d(2, z, 0);
    if (deriv == 0)
      return z3 / Real(2) - pi2 * z / Real(24) + Real(7) * z3 * z * z / (Real(8) * pi2) -
             z * z * z / Real(96) + Real(2) * z * z * f0 / pi2;
    Real f1 = varphi_d(2, z, 1);
    if (deriv == 1)
      return -pi2 / Real(24) + Real(7) * z3 * z / (Real(4) * pi2) - z * z / Real(32) +
             (Real(4) * z * f0 + Real(2) * z * z * f1) / pi2;
    Real f2 = varphi_d(2, z, 2);
    if (deriv == 2)
      return Real(7) * z3 / (Real(4) * pi2) - z / Real(16) +
             (Real(4) * f0 + Real(8) * z * f1 + Real(2) * z * z * f2) / pi2;
    Real f3 = varphi_d(2, z, 3);
    return -Real(mpq_class(1, 16)) +
           (Real(12) * f1 + Real(12) * z * f2 + Real(2) * z * z * f3) / pi2;
  }
  throw DomainError("eta_d_modular: d in 0..2");
}

inline bool eta_modular_supported(int d, int deriv) {
  if (d == 0 || d == 1) return deriv <= 1;
  if (d == 2) return deriv <= 3;
  return false;
}

inline Real eta_d(int d, const Real& z, int deriv = 0) {
  if (!(z > Real(0))) throw DomainError("eta_d: need Re z > 0");
  if (z < Real(mpq_class(3, 4)) && eta_modular_supported(d, deriv))
    return eta_d_modular(d, z, deriv);
  return eta_d_series(d, z, deriv);
}
inline Complex eta_d(int d, const Complex& z, int deriv = 0) { return eta_d_series(d, z, deriv); }

// ---------------------------------------------------------------------
// xi_d: series branch via varphi_d, closed branch via eta_d series
// ---------------------------------------------------------------------

enum class XiBranch { series, closed };

template <typename T>
T xi(int d, const T& z, XiBranch branch) {
  if (d < 0 || d > 2) throw DomainError("xi: d in 0..2");
  Real pi2 = const_pi() * const_pi();
  if (branch == XiBranch::series) {
    if (d == 0) return varphi_d(0, z);
    if (d == 1) return Real(mpq_class(5, 6)) * varphi_d(1, z);
    return -(Real(2) / pi2) * varphi_d(2, z);
  }
  // The closed form cancels down to the series value ~e^{-2pi^2 Re(1/z)};
  // escalate the working precision to absorb that cancellation.
  Real r1 = real_part(T(1L) / z);
  if (!(r1 > Real(0))) throw DomainError("xi: Re(1/z) must be positive");
  long extra = (Real(2) * pi2 * r1 / log(Real(10))).to_long() + 16;
  ScopedDigits guard(PrecisionContext::digits() + std::max(0L, extra));
  T zz = z;
  Real pis = const_pi();
  Real pi2s = pis * pis;
  T out;
  if (d == 0) {
    out = zz * zz / (Real(48) * pi2s) - Real(mpq_class(1, 24)) +
          zz * zz * eta_d_series(0, zz) / (Real(2) * pi2s);
  } else if (d == 1) {
    out = Real(5) * zz / Real(96) + Real(mpq_class(5, 24)) * log(pis / (Real(2) * zz)) -
          Real(mpq_class(5, 12)) * eta_d_series(1, zz);
  } else {
    Real z3 = zeta3();
    out = -zz / Real(96) + Real(7) * z3 / (Real(8) * pi2s) - pi2s / (Real(24) * zz) +
          z3 / (Real(2) * zz * zz) - eta_d_series(2, zz) / (zz * zz);
  }
  return out;
}

// ---------------------------------------------------------------------
// p(e^{-tau}) = sum_l e^{-l tau}/(l(1-e^{-l tau})), derivatives in tau,
// and the modular transformation tau <-> 4 pi^2 / tau.
// ---------------------------------------------------------------------

enum class PBranch { series, modular };

template <typename T>
T p_log(const T& tau, PBranch branch, int deriv = 0) {
  if (deriv < 0 || deriv > 2) throw DomainError("p_log: deriv in 0..2");
  Real retau = real_part(tau);
  if (!(retau > Real(0))) throw DomainError("p_log: Re tau must be positive");
  if (branch == PBranch::series) {
    const Real tol = tail_tolerance();
    Real em1 = one_minus_exp_neg(retau);
    Real denom_majorant = pow(em1, static_cast<long>(deriv + 1));
    Real ax = exp(-retau);
    Real axl = ax;
    T sum(0L);
    const long cap = 2000000;
    for (long l = 1; l <= cap; ++l) {
      T x = exp(-(Real(l) * tau));
      T omx = one_minus_exp_neg(Real(l) * tau);
      T term;
      Real lmag;
      switch (deriv) {
        case 0:
          term = x / (Real(l) * omx);
          lmag = Real(1) / Real(l);
          break;
        case 1:
          term = -x / (omx * omx);
          lmag = Real(1);
          break;
        default:
          term = Real(l) * x * (T(1L) + x) / (omx * omx * omx);
          lmag = Real(l);
          break;
      }
      sum += term;
      if (Real(2) * lmag * axl / denom_majorant < tol) return sum;
      axl = axl * ax;
    }
    throw ConvergenceError("p_log: series cap reached before tail bound");
  }
  Real pi2 = const_pi() * const_pi();
  T inv = Real(4) * pi2 / tau;  // the reflected argument
  if (deriv == 0) {
    return pi2 / (Real(6) * tau) - tau / Real(24) + log(tau) / Real(2) - log_2pi() / Real(2) +
           p_log(inv, PBranch::series, 0);
  }
  if (deriv == 1) {
    return -pi2 / (Real(6) * tau * tau) - Real(mpq_class(1, 24)) + T(1L) / (Real(2) * tau) -
           (Real(4) * pi2 / (tau * tau)) * p_log(inv, PBranch::series, 1);
  }
  return pi2 / (Real(3) * tau * tau * tau) - T(1L) / (Real(2) * tau * tau) +
         (Real(8) * pi2 / (tau * tau * tau)) * p_log(inv, PBranch::series, 1) +
         (Real(16) * pi2 * pi2 / (tau * tau * tau * tau)) * p_log(inv, PBranch::series, 2);
}

template <typename T>
T p_log_auto(const T& tau, int deriv = 0) {
  Real two_pi = Real(2) * const_pi();
  return abs_value(tau) < two_pi ? p_log(tau, PBranch::modular, deriv)
                                 : p_log(tau, PBranch::series, deriv);
}

// ---------------------------------------------------------------------
// eta(t) = sum_j (1 - e^{-jt})/j^3 for the row-bounded family
// ---------------------------------------------------------------------

inline Real li3(const Real& x) {
  if (!(x >= Real(0)) || !(x < Real(1))) throw DomainError("li3: need 0 <= x < 1");
  const Real tol = tail_tolerance();
  Real sum(0), xp = x;
  const long cap = 100000;
  for (long k = 1; k <= cap; ++k) {
    Real kr(k);
    sum += xp / (kr * kr * kr);
    if (xp / (Real(1) - x) < tol) return sum;
    xp = xp * x;
  }
  throw ConvergenceError("li3: cap reached before tail bound");
}

inline Real dilog(const Real& x) {
  if (!(x >= Real(0)) || !(x < Real(1))) throw DomainError("dilog: need 0 <= x < 1");
  return dilog_mpfr(x);
}

inline Real eta_rowed(const Real& t, int deriv = 0) {
  if (!(t > Real(0))) throw DomainError("eta_rowed: need t > 0");
  if (deriv < 0 || deriv > 1) throw DomainError("eta_rowed: deriv in 0..1");
  if (t >= Real(1)) {
    Real x = exp(-t);
    return deriv == 0 ? zeta3() - li3(x) : dilog(x);
  }
  const Real tol = tail_tolerance();
  Real pi2 = const_pi() * const_pi();
  Real sum = deriv == 0 ? pi2 * t / Real(6) + t * t * (Real(2) * log(t) - Real(3)) / Real(4)
                        : pi2 / Real(6) + t * log(t) - t;
  mpz_class fact = deriv == 0 ? 6 : 2;  // (j+2)! or (j+1)! at j = 1
  Real tp = deriv == 0 ? t * t * t : t * t;
  bool done = false;
  for (long j = 1; j <= 180; ++j) {
    const mpq_class& bj = bernoulli_number(j);
    if (bj != 0) {
      mpq_class c = bj / (mpq_class(j) * mpq_class(fact));
      Real term = Real(c) * tp;
      sum += term;
      if (abs(term) < tol && j > 2) {
        done = true;
        break;
      }
    }
    fact *= (deriv == 0 ? j + 3 : j + 2);
    tp = tp * t;
  }
  if (!done) throw ConvergenceError("eta_rowed: expansion did not converge (|t| too large?)");
  return sum;
}

// ---------------------------------------------------------------------
// J(b, tau) = sum_{k>=0} e^{-(k+b)/tau}/((k+b)(1-e^{-(k+b)/tau}))
// ---------------------------------------------------------------------

template <typename T>
T j_integral(const Real& b, const T& tau) {
  if (!(b > Real(0))) throw DomainError("j_integral: need b > 0");
  T inv = T(1L) / tau;
  Real r1 = real_part(inv);
  if (!(r1 > Real(0))) throw DomainError("j_integral: Re(1/tau) must be positive");
  const Real tol = tail_tolerance();
  Real D = one_minus_exp_neg(b * r1);
  T sum(0L);
  const long cap = 1000000;
  for (long k = 0; k <= cap; ++k) {
    Real kb = b + Real(k);
    T x = exp(-(kb * inv));
    T omx = one_minus_exp_neg(kb * inv);
    sum += x / (kb * omx);
    if (exp(-(kb * r1)) / (kb * D) < tol) return sum;
  }
  throw ConvergenceError("j_integral: cap reached before tail bound");
}

}  // namespace ppart

#endif  // PPART_SPECIAL_H
