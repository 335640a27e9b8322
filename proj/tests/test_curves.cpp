// Tests for the phase-transition curves: root equations and their unique
// solutions, the limit-shape variance sigma, the critical-window closed
// form against exact counts, correction diagnostics, and the extreme-width
// ratio prediction. Oracles: independent series for the energy integral,
// central differences for derivatives, exact enumeration for counts.
#include <cstdio>
#include <vector>

#include "ppart/curves.h"
#include "ppart/exact_count.h"
#include "ppart/family.h"

using namespace ppart;

static int failures = 0;
static int checks = 0;

static void check(bool ok, const char* what) {
  ++checks;
  if (!ok) {
    ++failures;
    std::printf("FAIL: %s\n", what);
  }
}

static void check_close(const Real& got, const Real& want, const Real& tol,
                        const char* what) {
  ++checks;
  if (!(abs(got - want) <= tol)) {
    ++failures;
    std::printf("FAIL: %s got=%s want=%s\n", what, got.str(25).c_str(),
                want.str(25).c_str());
  }
}

// Independent oracle for the energy integral: integrate s^2/(e^s - 1)
// term by term, int_0^x s^2 e^{-js} ds = 2/j^3 - e^{-jx}(x^2/j + 2x/j^2
// + 2/j^3); the 2/j^3 heads sum to 2 zeta(3) and the remainder decays
// exponentially, so the truncation is controlled.
static Real energy_integral_oracle(const Real& x) {
  Real sum = Real(2) * zeta3();
  for (long j = 1; j <= 2000; ++j) {
    Real jj(j);
    sum -= exp(-(jj * x)) *
           (x * x / jj + Real(2) * x / (jj * jj) + Real(2) / (jj * jj * jj));
  }
  return sum;
}

static void test_sigma_fn() {
  Real z3 = zeta3();
  check_close(sigma_fn(Real(1000)), Real(3) * z3, pow10(-40),
              "sigma approaches 3 zeta(3) for large argument");
  Real small("0.0001");
  Real ratio = sigma_fn(small) / small;
  Real want = zeta2() / Real(2);
  check(abs(ratio - want) <= Real(mpq_class(1, 1000)) * want,
        "sigma ~ zeta(2) x / 2 for small argument");
  // positivity across thirteen decades
  Real x("0.0001");
  Real step = exp(log(Real(10000000)) / Real(60));
  for (int i = 0; i <= 60; ++i) {
    check(sigma_fn(x) > Real(0), "sigma positive on grid");
    x = x * step;
  }
  bool threw = false;
  try {
    sigma_fn(Real(0));
  } catch (const DomainError&) {
    threw = true;
  }
  check(threw, "sigma_fn rejects x <= 0");
}

static void test_energy_integral() {
  for (const mpq_class& xq : {mpq_class(1, 2), mpq_class(3, 1)}) {
    Real x(xq);
    Real got = boltzmann_energy_integral(x);
    Real want = energy_integral_oracle(x);
    check(abs(got - want) <= pow10(-40) * want,
          "energy integral matches series oracle");
  }
  // derivative is x^2/(e^x - 1)
  Real x(mpq_class(7, 10));
  Real h = pow10(-10);
  Real diff = (boltzmann_energy_integral(x + h) -
               boltzmann_energy_integral(x - h)) /
              (Real(2) * h);
  Real want = x * x * exp(-x) / one_minus_exp_neg(x);
  check(abs(diff - want) <= pow10(-15), "energy integral derivative");
}

static void test_r_fn_derivative() {
  Real h = pow10(-10);
  for (CurveKind c : {CurveKind::bpp, CurveKind::m_rowed,
                      CurveKind::strict_rows, CurveKind::bounded_sym}) {
    Real alpha(2);
    Real r(mpq_class(4, 5));
    Real diff =
        (R_fn(c, alpha, r + h) - R_fn(c, alpha, r - h)) / (Real(2) * h);
    check(abs(diff - R_fn_dr(c, alpha, r)) <= pow10(-15),
          "R_fn_dr matches central difference");
  }
  bool threw = false;
  try {
    R_fn(CurveKind::bpp, Real(0), Real(1));
  } catch (const DomainError&) {
    threw = true;
  }
  check(threw, "R_fn rejects alpha <= 0");
  threw = false;
  try {
    R_fn(CurveKind::bpp, Real(1), Real(0));
  } catch (const DomainError&) {
    threw = true;
  }
  check(threw, "R_fn rejects r <= 0");
}

static void test_curve_limits() {
  Real z3 = zeta3();
  Real pi = const_pi();
  Real tiny("0.001");
  Real sq_tiny = sqrt(tiny);

  TransitionPoint g50 = solve_r(Real(50), CurveKind::bpp);
  check(g50.curve == CurveKind::bpp, "curve tag preserved");
  check(abs(g50.value - Real("1.594895")) <= pow10(-4),
        "bpp curve value at alpha=50 near its limit");
  check_close(g50.value, Real(3) / Real(2) * cbrt(z3), pow10(-20),
              "bpp limit equals (3/2) zeta(3)^{1/3}");
  TransitionPoint g0 = solve_r(tiny, CurveKind::bpp);
  Real want = pi / sqrt(Real(6));
  check(abs(g0.value / sq_tiny - want) <= Real(mpq_class(2, 100)) * want,
        "bpp curve value ~ pi sqrt(alpha/6) for small alpha");

  TransitionPoint h50 = solve_r(Real(50), CurveKind::m_rowed);
  check(abs(h50.value - Real("2.00944")) <= pow10(-3),
        "rowed curve value at alpha=50 near its limit");
  check_close(h50.value, Real(3) * cbrt(z3) / cbrt(Real(4)), pow10(-20),
              "rowed limit equals 3 2^{-2/3} zeta(3)^{1/3}");
  TransitionPoint h0 = solve_r(tiny, CurveKind::m_rowed);
  want = Real(2) * pi / sqrt(Real(6));
  check(abs(h0.value / sq_tiny - want) <= Real(mpq_class(2, 100)) * want,
        "rowed curve value ~ 2 pi sqrt(alpha/6) for small alpha");

  TransitionPoint s50 = solve_r(Real(50), CurveKind::strict_rows);
  check_close(s50.value, Real(3) / Real(2) * cbrt(z3), pow10(-20),
              "strict-rows limit equals (3/2) zeta(3)^{1/3}");
  TransitionPoint s0 = solve_r(tiny, CurveKind::strict_rows);
  want = pi / sqrt(Real(3));
  check(abs(s0.value / sq_tiny - want) <= Real(mpq_class(2, 100)) * want,
        "strict-rows value ~ pi sqrt(alpha/3) for small alpha");

  TransitionPoint b50 = solve_r(Real(50), CurveKind::bounded_sym);
  check_close(b50.r + b50.value, Real(3) * cbrt(z3) / cbrt(Real(4)),
              pow10(-20), "bounded-sym r+value matches the rowed limit");
  check(abs(b50.r + b50.value - Real("2.0094457")) <= pow10(-6),
        "bounded-sym combined value at alpha=50");
  TransitionPoint b0 = solve_r(tiny, CurveKind::bounded_sym);
  Real seed = tiny * tiny / Real(2);
  check(abs(b0.r / seed - Real(1)) <= Real(mpq_class(1, 100)),
        "bounded-sym root ~ alpha^2/2 for small alpha");

  bool threw = false;
  try {
    solve_r(Real(0), CurveKind::bpp);
  } catch (const DomainError&) {
    threw = true;
  }
  check(threw, "solve_r rejects alpha <= 0");
}

static void test_monotone_and_residuals() {
  Real tol = pow10(-(PrecisionContext::digits() - 15));
  Real alpha("0.001");
  Real step = exp(log(Real(100000)) / Real(40));
  Real prev_r(-1), prev_g(-1);
  for (int i = 0; i <= 40; ++i) {
    TransitionPoint p = solve_r(alpha, CurveKind::bpp);
    check(abs(R_fn(CurveKind::bpp, alpha, p.r)) < tol,
          "root satisfies the defining equation");
    if (i > 0) {
      check(p.r > prev_r, "root increases with alpha");
      check(p.value > prev_g, "curve value increases with alpha");
    }
    prev_r = p.r;
    prev_g = p.value;
    alpha = alpha * step;
  }
  // residuals for the other curves on a coarser grid
  for (CurveKind c : {CurveKind::m_rowed, CurveKind::strict_rows,
                      CurveKind::bounded_sym}) {
    Real a("0.001");
    Real s10 = exp(log(Real(100000)) / Real(10));
    for (int i = 0; i <= 10; ++i) {
      TransitionPoint p = solve_r(a, c);
      check(abs(R_fn(c, a, p.r)) < tol, "root residual on secondary curves");
      a = a * s10;
    }
  }
}

static void test_single_sign_change() {
  // Around each root, the residual changes sign exactly once across a
  // log-spaced scan two decades wide on each side.
  for (CurveKind c : {CurveKind::bpp, CurveKind::m_rowed,
                      CurveKind::strict_rows, CurveKind::bounded_sym}) {
    Real alpha("0.001");
    Real step = exp(log(Real(100000)) / Real(8));
    for (int i = 0; i <= 8; ++i) {
      TransitionPoint p = solve_r(alpha, c);
      Real r = p.r / Real(100);
      Real rstep = exp(log(Real(10000)) / Real(240));
      int sign_changes = 0;
      int prev_sign = 0;
      for (int k = 0; k <= 240; ++k) {
        Real v = R_fn(c, alpha, r);
        int s = v > Real(0) ? 1 : (v < Real(0) ? -1 : 0);
        if (prev_sign != 0 && s != 0 && s != prev_sign) ++sign_changes;
        if (s != 0) prev_sign = s;
        r = r * rstep;
      }
      check(sign_changes == 1, "exactly one sign change around the root");
      alpha = alpha * step;
    }
  }
}

static void test_critical_estimate() {
  // Exact-count comparison inside the critical window at n = 5000.
  for (long m : {17L, 60L}) {
    CountTable t = euler_transform_counts(FamilySpec::bpp(m), 5000);
    Real exact_log = log(Real(t.counts[5000]));
    AsymptoticEstimate e = critical_estimate(5000, m);
    Real ratio = exp(e.log_value - exact_log);
    check(ratio > Real(mpq_class(9, 10)) && ratio < Real(mpq_class(11, 10)),
          "critical estimate within 10 percent of exact");
    check(abs(expm1(e.log_value - exact_log)) <= Real(mpq_class(2, 100)),
          "critical estimate within 2 percent at n=5000");
    Real sum(0);
    for (const auto& term : e.terms) sum += term.second;
    check(abs(sum - e.log_value) <= pow10(-45), "terms sum to log value");
    check(e.method == Method::critical, "method tag");
  }

  // Large-alpha consistency with the width-free closed form.
  {
    AsymptoticEstimate c = critical_estimate(1000000, 1000000);
    AsymptoticEstimate s = supercritical_estimate(1000000);
    check(abs(c.log_value - s.log_value) / Real(100) < pow10(-3),
          "critical matches supercritical at huge alpha");
  }

  // The second exponent coefficient is pi^2/(24 r) with the solved root.
  {
    long n = 5000, m = 17;
    AsymptoticEstimate e = critical_estimate(n, m);
    TransitionPoint p = solve_r(Real(m) / cbrt(Real(n)), CurveKind::bpp);
    Real beta2 = const_pi() * const_pi() / (Real(24) * p.r);
    check_close(e.term("beta2_exponent"), beta2 * cbrt(Real(n)),
                pow10(-40) * beta2, "beta_2 identity with solved root");
    check_close(e.term("beta1_exponent"), p.value * cbrt(Real(n)) * cbrt(Real(n)),
                pow10(-40) * e.term("beta1_exponent"),
                "beta_1 equals the curve value");
  }

  for (auto bad : {std::pair<long, long>{0, 17}, std::pair<long, long>{100, 2}}) {
    bool threw = false;
    try {
      critical_estimate(bad.first, bad.second);
    } catch (const DomainError&) {
      threw = true;
    }
    check(threw, "critical_estimate domain guards");
  }
}

static void test_critical_corrections() {
  // alpha = 50 at n = 125000, m = 2500.
  CriticalCorrections cc = critical_corrections(125000, 2500);
  TransitionPoint p = solve_r(Real(50), CurveKind::bpp);
  Real sig = sigma_fn(Real(50) * p.r);
  check_close(cc.r1, const_pi() * const_pi() * p.r / (Real(24) * sig),
              pow10(-40), "first correction closed form");
  // Large-alpha limits: r -> zeta(3)^{1/3}, sigma -> 3 zeta(3), the inner
  // bracket -> -1/24, so r_2 -> -1/(72 zeta(3)^{1/3}).
  check(abs(cc.r2 + Real(1) / (Real(72) * cbrt(zeta3()))) <= pow10(-4),
        "second correction approaches its large-alpha limit");
  check(cc.r1 > Real(0), "first correction positive");
  bool threw = false;
  try {
    critical_corrections(10, 1);
  } catch (const DomainError&) {
    threw = true;
  }
  check(threw, "critical_corrections domain guards");
}

static void test_gumbel_ratio() {
  const long n = 1000000000L;
  Real prev;
  bool have_prev = false;
  for (int xv : {-2, -1, 0, 1, 2}) {
    GumbelRatio g = gumbel_ratio(n, Real(xv));
    check(g.log_ratio_predicted < Real(0), "predicted ratio below 1");
    Real band = log(-g.log_ratio_predicted) + Real(xv);
    check(abs(band) <= Real(mpq_class(25, 100)),
          "double-log of predicted ratio within 0.25 of -x");
    check_close(g.log_ratio_model, -exp(Real(-xv)), pow10(-40),
                "model value is -e^{-x}");
    Real expected_m =
        (Real(2) * log(Real(n) / zeta3()) / Real(3) + Real(xv)) /
        cbrt(zeta3()) * cbrt(Real(n));
    check_close(g.m_implied, expected_m, pow10(-35) * expected_m,
                "implied width follows the scaling relation");
    if (have_prev)
      check(g.log_ratio_predicted > prev, "prediction increases with x");
    prev = g.log_ratio_predicted;
    have_prev = true;
  }
  GumbelRatio tail = gumbel_ratio(n, Real(8));
  check(abs(tail.log_ratio_predicted) <= Real(mpq_class(1, 100)),
        "ratio approaches 1 for large x");
  check(tail.log_ratio_predicted > prev, "prediction increases up to x=8");
  GumbelRatio mid = gumbel_ratio(n, Real(0));
  check(abs(mid.log_ratio_predicted + Real(1)) <= Real(mpq_class(1, 10)),
        "x=0 prediction within 0.1 of -1");

  bool threw = false;
  try {
    gumbel_ratio(0, Real(0));
  } catch (const DomainError&) {
    threw = true;
  }
  check(threw, "gumbel_ratio rejects n < 1");
  threw = false;
  try {
    gumbel_ratio(n, Real(-14));
  } catch (const DomainError&) {
    threw = true;
  }
  check(threw, "gumbel_ratio rejects widths below 3");
}

static void test_names() {
  check(std::string(curve_name(CurveKind::bpp)) == "bpp", "curve name bpp");
  check(std::string(curve_name(CurveKind::m_rowed)) == "m_rowed",
        "curve name m_rowed");
  check(std::string(curve_name(CurveKind::strict_rows)) == "strict_rows",
        "curve name strict_rows");
  check(std::string(curve_name(CurveKind::bounded_sym)) == "bounded_sym",
        "curve name bounded_sym");
}

int main() {
  test_sigma_fn();
  test_energy_integral();
  test_r_fn_derivative();
  test_curve_limits();
  test_monotone_and_residuals();
  test_single_sign_change();
  test_critical_estimate();
  test_critical_corrections();
  test_gumbel_ratio();
  test_names();

  if (failures == 0)
    std::printf("OK (%d checks, 0 failures)\n", checks);
  else
    std::printf("FAILED (%d checks, %d failures)\n", checks, failures);
  return failures == 0 ? 0 : 1;
}
