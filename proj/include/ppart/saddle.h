// Saddle-point engine: jets of F(tau) = log G_m(e^{-tau}) along two
// independent differentiation routes, the scaled derivative ladder
// Lambda_k = (-rho)^k F^(k)(rho), the safeguarded Newton saddle solver,
// phase classification thresholds, and the closed-form asymptotic
// estimates (uniform with correction orders, subcritical, Bessel-type,
// supercritical), plus the weighted power-sum polynomial.
#ifndef PPART_SADDLE_H
#define PPART_SADDLE_H

#include <string>
#include <utility>
#include <vector>

#include "ppart/exact_count.h"
#include "ppart/identity.h"
#include "ppart/jet.h"

namespace ppart {

class NoConvergence : public ConvergenceError {
 public:
  explicit NoConvergence(const std::string& w) : ConvergenceError(w) {}
};

class BracketFailure : public ConvergenceError {
 public:
  explicit BracketFailure(const std::string& w) : ConvergenceError(w) {}
};

enum class Phase { subcritical, critical, supercritical };

inline const char* phase_name(Phase p) {
  switch (p) {
    case Phase::subcritical:
      return "subcritical";
    case Phase::critical:
      return "critical";
    default:
      return "supercritical";
  }
}

struct PhaseInfo {
  Phase phase = Phase::subcritical;
  Real m_minus;
  Real m_plus;
};

// Width thresholds m_- = 6 pi^{2/3} n^{1/3} / (log n - (1/2) log log n
// + log w_n)^{2/3} and m_+ = (n/zeta(3))^{1/3} ((2/3) log n + log log n
// + w_n) with the fixed policy w_n = log log n. Labels are advisory and
// never gate which estimate may be evaluated.
inline PhaseInfo phase_classify(long n, long m) {
  if (n < 3) throw DomainError("phase_classify: need n >= 3");
  if (m < 1) throw DomainError("phase_classify: need m >= 1");
  Real ln_n = log(Real(n));
  Real llog = log(ln_n);
  Real omega = llog;
  Real denom = ln_n - llog / Real(2) + log(omega);
  // |denom|^{2/3}; the absolute value only matters for tiny n where the
  // asymptotic thresholds are meaningless anyway
  Real d23 = cbrt(denom * denom);
  PhaseInfo info;
  info.m_minus = Real(6) * cbrt(const_pi() * const_pi()) * cbrt(Real(n)) / d23;
  info.m_plus =
      cbrt(Real(n) / zeta3()) * (Real(2) * ln_n / Real(3) + llog + omega);
  if (Real(m) <= info.m_minus)
    info.phase = Phase::subcritical;
  else if (Real(m) >= info.m_plus)
    info.phase = Phase::supercritical;
  else
    info.phase = Phase::critical;
  return info;
}

// Jet in w of the exponent generating function U_m(e^{-w}) at w = w0.
template <int N>
Jet<N> u_gen_jet(long m, const Real& w0) {
  auto zp = [&](long a) { return jet_exp_neg<N>(Real(a), w0); };
  auto om = [&](long a) { return jet_one_minus_exp_neg<N>(Real(a), w0); };
  Jet<N> u = zp(1) / om(1);
  if (m <= 2) return u;
  return u + zp(3) * om(m - 2) * om(m - 1) / (om(2 * m) * om(1) * om(2));
}

// Jet in tau of F(tau) = sum_l U_m(e^{-l tau})/l at tau = rho. The l-th
// term contributes l^{k-1} times the w-jet of U_m at w = l rho; its k-th
// coefficient is bounded by e_max l^{k-1} x/(1-x)^{k+1} with x = e^{-l rho}
// (Eulerian-polynomial bound), and once l rho >= 7 consecutive bounds decay
// by at least e^{-rho/7}, giving a geometric tail majorant.
template <int N>
Jet<N> f_log_gm_jet(long m, const Real& rho) {
  if (m < 1) throw DomainError("f_log_gm_jet: need m >= 1");
  if (!(rho > Real(0))) throw DomainError("f_log_gm_jet: need rho > 0");
  long e_max = m <= 2 ? 1 : 1 + (m - 1) / 2;
  Jet<N> sum;
  Real rel = pow10(-(PrecisionContext::digits() + 6));
  Real floorv = pow10(-PrecisionContext::digits());
  Real geo = one_minus_exp_neg(rho / Real(7));
  for (long l = 1; l <= 3000000; ++l) {
    Real lr(l);
    Jet<N> term = u_gen_jet<N>(m, lr * rho);
    Real f = Real(1) / lr;
    for (int k = 0; k < N; ++k) {
      term.c[k] = term.c[k] * f;
      f = f * lr;
    }
    sum = sum + term;
    if (lr * rho >= Real(7)) {
      Real x = exp(-(lr * rho));
      Real omx = one_minus_exp_neg(lr * rho);
      Real b = Real(e_max) * x / (omx * lr);
      bool done = true;
      for (int k = 0; k < N; ++k) {
        if (!(b / geo <= rel * (abs(sum.c[k]) + floorv))) {
          done = false;
          break;
        }
        b = b * lr / omx;
      }
      if (done) return sum;
    }
  }
  throw ConvergenceError("f_log_gm_jet: term cap reached");
}

// Jet in q of U_m(q^l) at q = e^{-rho} (binomial power jets).
template <int N>
Jet<N> u_gen_jet_q(long m, long l, const Real& rho) {
  auto pw = [&](long a) { return jet_q_pow<N>(a * l, rho); };
  auto om = [&](long a) { return jet_one_minus_q_pow<N>(a * l, rho); };
  Jet<N> u = pw(1) / om(1);
  if (m <= 2) return u;
  return u + pw(3) * om(m - 2) * om(m - 1) / (om(2 * m) * om(1) * om(2));
}

// Jet in q of F~(q) = log G_m(q) = sum_l U_m(q^l)/l at q = e^{-rho}:
// the independent route used to cross-check the ladder through the
// Stirling-number composition formula.
template <int N>
Jet<N> f_log_gm_jet_q(long m, const Real& rho) {
  if (m < 1) throw DomainError("f_log_gm_jet_q: need m >= 1");
  if (!(rho > Real(0))) throw DomainError("f_log_gm_jet_q: need rho > 0");
  long e_max = m <= 2 ? 1 : 1 + (m - 1) / 2;
  Jet<N> sum;
  Real rel = pow10(-(PrecisionContext::digits() + 6));
  Real floorv = pow10(-PrecisionContext::digits());
  Real geo = one_minus_exp_neg(rho / Real(7));
  Real qinv = exp(rho);
  for (long l = 1; l <= 3000000; ++l) {
    Real lr(l);
    Jet<N> term = u_gen_jet_q<N>(m, l, rho);
    for (int k = 0; k < N; ++k) term.c[k] = term.c[k] / lr;
    sum = sum + term;
    if (lr * rho >= Real(7)) {
      Real x = exp(-(lr * rho));
      Real omx = one_minus_exp_neg(lr * rho);
      Real b = Real(e_max) * x / (omx * lr);
      bool done = true;
      for (int k = 0; k < N; ++k) {
        if (!(b / geo <= rel * (abs(sum.c[k]) + floorv))) {
          done = false;
          break;
        }
        b = b * lr * qinv / omx;
      }
      if (done) return sum;
    }
  }
  throw ConvergenceError("f_log_gm_jet_q: term cap reached");
}

// Lambda_k = (-rho)^k F^(k)(rho) = (-rho)^k k! c_k from the tau-jet.
template <int N>
std::vector<Real> ladder_from_w_jet(const Jet<N>& f, const Real& rho,
                                    int k_max) {
  std::vector<Real> lam;
  Real fact(1);
  Real sgnpow(1);
  for (int k = 1; k <= k_max; ++k) {
    fact = fact * Real(k);
    sgnpow = sgnpow * (-rho);
    lam.push_back(sgnpow * fact * f.c[k]);
  }
  return lam;
}

// Lambda_k = rho^k sum_{1<=j<=k} S(k,j) e^{-j rho} j! c~_j from the q-jet.
template <int N>
std::vector<Real> ladder_from_q_jet(const Jet<N>& fq, const Real& rho,
                                    int k_max) {
  std::vector<Real> lam;
  Real rpow(1);
  for (int k = 1; k <= k_max; ++k) {
    rpow = rpow * rho;
    Real s(0);
    Real jfact(1);
    for (int j = 1; j <= k; ++j) {
      jfact = jfact * Real(j);
      s += Real(stirling2(k, j)) * exp(-(Real(j) * rho)) * jfact * fq.c[j];
    }
    lam.push_back(rpow * s);
  }
  return lam;
}

inline std::vector<Real> lambda_ladder(long m, const Real& rho, int k_max,
                                       bool cross_check = false) {
  if (k_max < 1 || k_max > 6)
    throw DomainError("lambda_ladder: need 1 <= k_max <= 6");
  Jet<8> f = f_log_gm_jet<8>(m, rho);
  std::vector<Real> lam = ladder_from_w_jet(f, rho, k_max);
  if (cross_check) {
    int kc = k_max < 3 ? k_max : 3;
    Jet<4> fq = f_log_gm_jet_q<4>(m, rho);
    std::vector<Real> alt = ladder_from_q_jet(fq, rho, kc);
    Real tol = pow10(-(PrecisionContext::digits() - 12));
    for (int i = 0; i < kc; ++i) {
      Real gap = abs(lam[static_cast<size_t>(i)] - alt[static_cast<size_t>(i)]) /
                 max(Real(1), abs(lam[static_cast<size_t>(i)]));
      if (!(gap <= tol))
        throw InternalInconsistency(
            "lambda_ladder: derivative routes disagree at k=" +
            std::to_string(i + 1));
    }
  }
  return lam;
}

struct SaddleSolution {
  long n = 0;
  long m = 0;
  Real rho;
  std::vector<Real> lambda;  // Lambda_1..Lambda_6 at rho
  Real residual;             // |n rho - Lambda_1| / (n rho)
  Phase phase = Phase::subcritical;
  Real log_gm_at_saddle;     // F(rho)
};

// Solve n = -F'(rho) by bracketing plus safeguarded Newton. The map is
// strictly decreasing (Boltzmann mean), brackets grow by doubling from
// the small-width and large-width closed-form seeds.
inline SaddleSolution solve_saddle(long n, long m) {
  if (n < 1) throw DomainError("solve_saddle: need n >= 1");
  if (m < 1) throw DomainError("solve_saddle: need m >= 1");
  Real nn(n);
  // only the two rational structure constants are needed here; avoid the
  // O(m^2) log-Gamma sum that the full constant set would trigger
  Real varpi, phi;
  if (m >= 3) {
    mpz_class mz(m);
    mpq_class vq(mz * mz + mz + 2, 24 * mz);
    vq.canonicalize();
    mpq_class pq(mz * mz * mz - 7 * mz + 2, 96);
    pq.canonicalize();
    varpi = const_pi() * const_pi() * Real(vq);
    phi = Real(pq);
  } else {
    varpi = zeta2();
    phi = Real(mpq_class(-1, 24));
  }
  // phi grows like m^3/96; once it exceeds n the narrow-band seed scale is
  // no longer meaningful, so cap its shift to keep the bracket near the
  // true root (which grows with m) instead of collapsing toward zero.
  Real seed_a = sqrt(varpi / (nn + min(phi, nn)));
  Real seed_b = cbrt(zeta3() / (nn + Real(mpq_class(1, 48))));
  Real lo = min(seed_a, seed_b) / Real(2);
  Real hi = max(seed_a, seed_b) * Real(2);
  auto target = [&](const Real& r) {
    Jet<3> f = f_log_gm_jet<3>(m, r);
    return std::pair<Real, Real>(-f.c[1] - nn, -Real(2) * f.c[2]);
  };
  int expand = 0;
  Real glo = target(lo).first;
  while (!(glo > Real(0))) {
    lo = lo / Real(2);
    glo = target(lo).first;
    if (++expand > 80) throw BracketFailure("solve_saddle: no lower bracket");
  }
  Real ghi = target(hi).first;
  while (!(ghi < Real(0))) {
    hi = hi * Real(2);
    ghi = target(hi).first;
    if (++expand > 80) throw BracketFailure("solve_saddle: no upper bracket");
  }
  Real rho = sqrt(lo * hi);
  Real tol = pow10(-(PrecisionContext::digits() - 15));
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    auto gv = target(rho);
    if (abs(gv.first) / nn < tol) {
      converged = true;
      break;
    }
    if (gv.first > Real(0))
      lo = rho;
    else
      hi = rho;
    Real next = rho - gv.first / gv.second;
    if (!(next > lo && next < hi)) next = (lo + hi) / Real(2);
    rho = next;
  }
  if (!converged) throw NoConvergence("solve_saddle: Newton did not converge");

  Jet<8> f = f_log_gm_jet<8>(m, rho);
  SaddleSolution sol;
  sol.n = n;
  sol.m = m;
  sol.rho = rho;
  sol.lambda = ladder_from_w_jet(f, rho, 6);
  Jet<4> fq = f_log_gm_jet_q<4>(m, rho);
  std::vector<Real> alt = ladder_from_q_jet(fq, rho, 3);
  Real ctol = pow10(-(PrecisionContext::digits() - 12));
  for (int i = 0; i < 3; ++i) {
    Real gap = abs(sol.lambda[static_cast<size_t>(i)] - alt[static_cast<size_t>(i)]) /
               max(Real(1), abs(sol.lambda[static_cast<size_t>(i)]));
    if (!(gap <= ctol))
      throw InternalInconsistency(
          "solve_saddle: ladder routes disagree at k=" + std::to_string(i + 1));
  }
  if (!(sol.lambda[1] > Real(0)))
    throw InternalInconsistency("solve_saddle: Lambda_2 <= 0");
  sol.residual = abs(nn * rho - sol.lambda[0]) / (nn * rho);
  sol.log_gm_at_saddle = f.c[0];
  sol.phase = n >= 3 ? phase_classify(n, m).phase : Phase::subcritical;
  return sol;
}

enum class Method {
  uniform,
  uniform_gamma1,
  uniform_gamma2,
  subcritical,
  bessel,
  critical,
  supercritical
};

inline const char* method_name(Method m) {
  switch (m) {
    case Method::uniform:
      return "uniform";
    case Method::uniform_gamma1:
      return "uniform1";
    case Method::uniform_gamma2:
      return "uniform2";
    case Method::subcritical:
      return "subcritical";
    case Method::bessel:
      return "bessel";
    case Method::critical:
      return "critical";
    default:
      return "supercritical";
  }
}

struct AsymptoticEstimate {
  Real log_value;
  std::vector<std::pair<std::string, Real>> terms;
  Method method = Method::uniform;
  std::string claimed_error_order;

  Real term(const std::string& name) const {
    for (const auto& t : terms)
      if (t.first == name) return t.second;
    throw DomainError("AsymptoticEstimate: no term named " + name);
  }
  void finalize() {
    Real s(0);
    for (const auto& t : terms) s += t.second;
    log_value = s;
  }
};

inline Real gamma1_of(const std::vector<Real>& lam) {
  const Real &l2 = lam[1], &l3 = lam[2], &l4 = lam[3];
  return (Real(3) * l2 * l4 - Real(5) * l3 * l3) / (Real(24) * l2 * l2);
}

inline Real gamma2_of(const std::vector<Real>& lam) {
  const Real &l2 = lam[1], &l3 = lam[2], &l4 = lam[3], &l5 = lam[4],
             &l6 = lam[5];
  Real num = -Real(24) * l2 * l2 * l2 * l6 + Real(168) * l2 * l2 * l3 * l5 +
             Real(105) * l2 * l2 * l4 * l4 - Real(630) * l2 * l3 * l3 * l4 +
             Real(385) * l3 * l3 * l3 * l3;
  return num / (Real(1152) * l2 * l2 * l2 * l2);
}

// G_{n,m} ~ rho e^{n rho} G_m(e^{-rho}) / sqrt(2 pi Lambda_2) times
// (1 + gamma_1/Lambda_2 + gamma_2/Lambda_2^2 + ...), on log scale.
inline AsymptoticEstimate uniform_estimate_from(const SaddleSolution& s,
                                                int order) {
  if (order < 0 || order > 2)
    throw DomainError("uniform_estimate: order in 0..2");
  AsymptoticEstimate e;
  e.method = order == 0   ? Method::uniform
             : order == 1 ? Method::uniform_gamma1
                          : Method::uniform_gamma2;
  e.claimed_error_order = order == 0   ? "O(Lambda2^-1)"
                          : order == 1 ? "O(Lambda2^-2)"
                                       : "O(Lambda2^-3)";
  e.terms.push_back({"log_rho", log(s.rho)});
  e.terms.push_back({"n_rho", Real(s.n) * s.rho});
  e.terms.push_back({"log_gm_at_saddle", s.log_gm_at_saddle});
  e.terms.push_back(
      {"gaussian_factor", -log(Real(2) * const_pi() * s.lambda[1]) / Real(2)});
  if (order >= 1) {
    Real corr = gamma1_of(s.lambda) / s.lambda[1];
    if (order == 2) corr += gamma2_of(s.lambda) / (s.lambda[1] * s.lambda[1]);
    if (!(corr > Real(-1)))
      throw ConvergenceError("uniform_estimate: correction out of range");
    e.terms.push_back({"gamma_correction", log1p(corr)});
  }
  e.finalize();
  return e;
}

inline AsymptoticEstimate uniform_estimate(long n, long m, int order) {
  if (order < 0 || order > 2)
    throw DomainError("uniform_estimate: order in 0..2");
  return uniform_estimate_from(solve_saddle(n, m), order);
}

// G_{n,m} ~ g_m sqrt(varpi_m) / (2 sqrt(pi) n) e^{2 sqrt(varpi_m (n+phi_m))}.
inline AsymptoticEstimate subcritical_estimate(long n, long m) {
  if (n < 1) throw DomainError("subcritical_estimate: need n >= 1");
  if (m < 3) throw DomainError("subcritical_estimate: need m >= 3");
  StructureConstants sc = structure_constants(m);
  Real t = Real(2) * sqrt(sc.varpi * (Real(n) + sc.phi));
  AsymptoticEstimate e;
  e.method = Method::subcritical;
  e.claimed_error_order = "1+o(1) for m <= m_-";
  e.terms.push_back({"log_prefactor", sc.log_g + log(sc.varpi) / Real(2) -
                                          log(Real(4) * const_pi()) / Real(2) -
                                          log(Real(n))});
  e.terms.push_back({"exponent", t});
  e.finalize();
  return e;
}

// Refinement through the modified-Bessel closed form:
// g_m (n+phi_m)^{-3/2} / (4 sqrt(pi)) ((T-1)e^T - (T+1)e^{-T}),
// T = 2 sqrt(varpi_m (n+phi_m)).
inline AsymptoticEstimate bessel_estimate(long n, long m) {
  if (n < 1) throw DomainError("bessel_estimate: need n >= 1");
  if (m < 3) throw DomainError("bessel_estimate: need m >= 3");
  StructureConstants sc = structure_constants(m);
  Real npf = Real(n) + sc.phi;
  Real t = Real(2) * sqrt(sc.varpi * npf);
  AsymptoticEstimate e;
  e.method = Method::bessel;
  e.claimed_error_order = "1+o(1) for m <= m_-";
  e.terms.push_back({"log_prefactor", sc.log_g - Real(3) * log(npf) / Real(2) -
                                          log(Real(16) * const_pi()) / Real(2)});
  e.terms.push_back({"exponent", t});
  e.terms.push_back({"bessel_combination",
                     log(t - Real(1)) +
                         log1p(-((t + Real(1)) / (t - Real(1))) *
                               exp(-Real(2) * t))});
  e.finalize();
  return e;
}

// G_{n,n} ~ c n^{-49/72} e^{beta_1 n^{2/3} + beta_2 n^{1/3}} with
// beta_1 = (3/2) zeta(3)^{1/3}, beta_2 = pi^2 / (24 zeta(3)^{1/3}),
// c = e^{zeta'(-1)/2 - pi^4/(3456 zeta(3))} zeta(3)^{13/72} / (2^{3/4} sqrt(3 pi)).
inline AsymptoticEstimate supercritical_estimate(long n) {
  if (n < 1) throw DomainError("supercritical_estimate: need n >= 1");
  Real z3 = zeta3();
  Real cb = cbrt(z3);
  Real n13 = cbrt(Real(n));
  Real pi = const_pi();
  Real pi2 = pi * pi;
  AsymptoticEstimate e;
  e.method = Method::supercritical;
  e.claimed_error_order = "1+o(1) for m >= m_+";
  e.terms.push_back({"beta1_exponent", Real(3) / Real(2) * cb * n13 * n13});
  e.terms.push_back({"beta2_exponent", pi2 / (Real(24) * cb) * n13});
  e.terms.push_back({"polynomial_power", -Real(49) * log(Real(n)) / Real(72)});
  e.terms.push_back({"log_c", zeta_prime_minus1() / Real(2) -
                                  pi2 * pi2 / (Real(3456) * z3) +
                                  Real(13) * log(z3) / Real(72) -
                                  Real(3) * log(Real(2)) / Real(4) -
                                  log(Real(3) * pi) / Real(2)});
  e.finalize();
  return e;
}

// Weighted power sum sigma_j(m) = sum_{1<=k<m} (m-k) k^j via the
// Bernoulli-polynomial closed form
//   (m/(j+1)) (B_{j+1}(m) - B_{j+1}) - (1/(j+2)) (B_{j+2}(m) - B_{j+2}).
inline mpq_class sigma_j_poly(long j, long m) {
  if (j < 1 || j > 10) throw DomainError("sigma_j_poly: need 1 <= j <= 10");
  if (m < 1) throw DomainError("sigma_j_poly: need m >= 1");
  mpq_class mm(m);
  mpq_class a = (mm / mpq_class(j + 1)) *
                (bernoulli_poly(j + 1, mm) - bernoulli_number(j + 1));
  mpq_class b =
      (bernoulli_poly(j + 2, mm) - bernoulli_number(j + 2)) / mpq_class(j + 2);
  mpq_class r = a - b;
  r.canonicalize();
  return r;
}

}  // namespace ppart

#endif  // PPART_SADDLE_H
