// Command-line front end: exact counting, asymptotic estimates, exact-vs-
// asymptotic comparison tables, phase-transition curves, generating-function
// identity checks, and a self-test battery. Emits TSV/CSV or JSON envelopes
// with deterministic 12-significant-digit round-half-even numerics.
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ppart/curves.h"
#include "ppart/exact_count.h"
#include "ppart/family.h"
#include "ppart/identity.h"
#include "ppart/saddle.h"

using ppart::Real;
using ordered_json = nlohmann::ordered_json;

namespace {

struct CliConfig {
  long precision_digits = 50;
  long brute_force_ceiling = 16;
  std::string output_format = "csv";
  std::string omega_policy = "loglog";
  long exact_budget = 10000;
  bool allow_large = false;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& w) : std::runtime_error(w) {}
};

std::string fmt(const Real& x) { return x.str(12); }

ordered_json envelope(const CliConfig& cfg, const std::string& command) {
  ordered_json j;
  j["schema_version"] = 1;
  j["command"] = command;
  j["config"] = {{"precision_digits", cfg.precision_digits},
                 {"brute_force_ceiling", cfg.brute_force_ceiling},
                 {"output_format", cfg.output_format},
                 {"omega_policy", cfg.omega_policy}};
  j["rows"] = ordered_json::array();
  return j;
}

void emit_json(const ordered_json& j) {
  std::printf("%s\n", j.dump(2).c_str());
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

long parse_long(const std::string& s, const char* what) {
  if (s.empty()) throw ValidationError(std::string(what) + ": empty number");
  size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw ValidationError(std::string(what) + ": bad integer '" + s + "'");
  }
  if (pos != s.size())
    throw ValidationError(std::string(what) + ": bad integer '" + s + "'");
  return v;
}

std::vector<long> parse_long_grid(const std::string& s) {
  std::vector<std::string> parts = split(s, ':');
  if (parts.size() != 3)
    throw ValidationError("grid must be start:stop:step, got '" + s + "'");
  long start = parse_long(parts[0], "grid start");
  long stop = parse_long(parts[1], "grid stop");
  long step = parse_long(parts[2], "grid step");
  if (step < 1) throw ValidationError("grid step must be >= 1");
  std::vector<long> out;
  for (long n = start; n <= stop; n += step) out.push_back(n);
  if (out.empty()) throw ValidationError("grid is empty");
  return out;
}

// Exact decimal parser so rational grids stay exact (e.g. 0.01 -> 1/100).
mpq_class parse_decimal(const std::string& s, const char* what) {
  std::string t = s;
  bool neg = false;
  if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
    neg = t[0] == '-';
    t = t.substr(1);
  }
  std::string digits;
  long frac_len = -1;
  for (char c : t) {
    if (c == '.') {
      if (frac_len >= 0)
        throw ValidationError(std::string(what) + ": bad number '" + s + "'");
      frac_len = 0;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (frac_len >= 0) ++frac_len;
    } else {
      throw ValidationError(std::string(what) + ": bad number '" + s + "'");
    }
  }
  if (digits.empty())
    throw ValidationError(std::string(what) + ": bad number '" + s + "'");
  mpz_class num(digits, 10);
  mpz_class den(1);
  for (long i = 0; i < std::max(frac_len, 0L); ++i) den *= 10;
  mpq_class q(num, den);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

std::vector<mpq_class> parse_decimal_grid(const std::string& s) {
  std::vector<std::string> parts = split(s, ':');
  if (parts.size() != 3)
    throw ValidationError("grid must be start:stop:step, got '" + s + "'");
  mpq_class start = parse_decimal(parts[0], "grid start");
  mpq_class stop = parse_decimal(parts[1], "grid stop");
  mpq_class step = parse_decimal(parts[2], "grid step");
  if (step <= 0) throw ValidationError("grid step must be positive");
  std::vector<mpq_class> out;
  for (mpq_class a = start; a <= stop; a += step) {
    out.push_back(a);
    if (out.size() > 2000000) throw ValidationError("grid too large");
  }
  if (out.empty()) throw ValidationError("grid is empty");
  return out;
}

// tau accepts "0.4", "0.3+0.2i", "0.3-0.2i".
ppart::Complex parse_tau(const std::string& s) {
  std::string t = s;
  if (t.empty()) throw ValidationError("tau: empty");
  if (t.back() == 'i') {
    t.pop_back();
    size_t pos = std::string::npos;
    for (size_t i = 1; i < t.size(); ++i)
      if (t[i] == '+' || t[i] == '-') pos = i;
    if (pos == std::string::npos)
      throw ValidationError("tau: expected re+imi form, got '" + s + "'");
    mpq_class re = parse_decimal(t.substr(0, pos), "tau real part");
    mpq_class im = parse_decimal(t.substr(pos), "tau imaginary part");
    return ppart::Complex(Real(re), Real(im));
  }
  return ppart::Complex(Real(parse_decimal(t, "tau")), Real(0));
}

struct FamilyChoice {
  ppart::FamilyTag tag;
  bool requires_m;
};

FamilyChoice family_from_name(const std::string& name) {
  if (name == "partitions")
    return {ppart::FamilyTag::OrdinaryPartitions, false};
  if (name == "plane") return {ppart::FamilyTag::PlanePartitions, false};
  if (name == "column_strict") return {ppart::FamilyTag::ColumnStrict, false};
  if (name == "bpp") return {ppart::FamilyTag::Bpp, true};
  if (name == "m_rowed") return {ppart::FamilyTag::MRowed, true};
  if (name == "strict_rows") return {ppart::FamilyTag::StrictRows, true};
  if (name == "bounded_sym") return {ppart::FamilyTag::BoundedSym, true};
  throw ValidationError("unknown family '" + name + "'");
}

ppart::FamilySpec make_family(const FamilyChoice& c, long m) {
  switch (c.tag) {
    case ppart::FamilyTag::OrdinaryPartitions:
      return ppart::FamilySpec::ordinary();
    case ppart::FamilyTag::PlanePartitions:
      return ppart::FamilySpec::plane();
    case ppart::FamilyTag::ColumnStrict:
      return ppart::FamilySpec::column_strict();
    case ppart::FamilyTag::Bpp:
      return ppart::FamilySpec::bpp(m);
    case ppart::FamilyTag::MRowed:
      return ppart::FamilySpec::m_rowed(m);
    case ppart::FamilyTag::StrictRows:
      return ppart::FamilySpec::strict_rows(m);
    default:
      return ppart::FamilySpec::bounded_sym(m);
  }
}

// m option accepts a positive integer or "full" (m := n).
long resolve_m(const std::string& m_str, long n, const char* what) {
  if (m_str == "full") return n;
  long m = parse_long(m_str, what);
  if (m < 1) throw ValidationError(std::string(what) + " must be >= 1");
  return m;
}

std::string phase_string(long n, long m) {
  if (n < 3) return "subcritical";
  return ppart::phase_name(ppart::phase_classify(n, m).phase);
}

// ----------------------------------------------------------------------
// count
// ----------------------------------------------------------------------

struct CountArgs {
  std::string family;
  std::string m_str;
  long n = -1;
  std::string n_grid;
  bool oracle = false;
};

int cmd_count(const CliConfig& cfg, const CountArgs& a) {
  FamilyChoice choice = family_from_name(a.family);
  std::vector<long> ns;
  if (!a.n_grid.empty())
    ns = parse_long_grid(a.n_grid);
  else if (a.n >= 0)
    ns.push_back(a.n);
  else
    throw ValidationError("count: need --n or --n-grid");
  for (long n : ns)
    if (n < 0) throw ValidationError("count: n must be >= 0");
  long n_max = ns.back();
  for (long n : ns) n_max = std::max(n_max, n);
  if (n_max > cfg.exact_budget && !cfg.allow_large)
    throw ValidationError("count: n exceeds exact budget " +
                          std::to_string(cfg.exact_budget) +
                          " (use --allow-large)");
  if (choice.requires_m && a.m_str.empty())
    throw ValidationError("count: family '" + a.family + "' requires --m");
  if (!choice.requires_m && !a.m_str.empty())
    throw ValidationError("count: family '" + a.family +
                          "' does not take --m");
  bool full = choice.requires_m && a.m_str == "full";

  std::vector<std::pair<long, mpz_class>> rows;
  if (!full) {
    long m = choice.requires_m ? resolve_m(a.m_str, 0, "count --m") : 0;
    ppart::FamilySpec fam = make_family(choice, m);
    ppart::CountTable table = ppart::euler_transform_counts(fam, n_max);
    if (a.oracle) {
      ppart::CountTable alt = ppart::series_product_counts(fam, n_max);
      for (long i = 0; i <= n_max; ++i) {
        if (table.counts[static_cast<size_t>(i)] !=
            alt.counts[static_cast<size_t>(i)]) {
          std::fprintf(stderr, "oracle mismatch at n=%ld\n", i);
          return 4;
        }
      }
    }
    for (long n : ns) rows.push_back({n, table.counts[static_cast<size_t>(n)]});
  } else {
    for (long n : ns) {
      ppart::FamilySpec fam = make_family(choice, std::max(n, 1L));
      ppart::CountTable table = ppart::euler_transform_counts(fam, n);
      if (a.oracle) {
        ppart::CountTable alt = ppart::series_product_counts(fam, n);
        if (table.counts[static_cast<size_t>(n)] !=
            alt.counts[static_cast<size_t>(n)]) {
          std::fprintf(stderr, "oracle mismatch at n=%ld\n", n);
          return 4;
        }
      }
      rows.push_back({n, table.counts[static_cast<size_t>(n)]});
    }
  }

  if (cfg.output_format == "json") {
    ordered_json j = envelope(cfg, "count");
    for (const auto& r : rows)
      j["rows"].push_back({{"n", r.first}, {"count", r.second.get_str()}});
    emit_json(j);
  } else {
    for (const auto& r : rows)
      std::printf("%ld\t%s\n", r.first, r.second.get_str().c_str());
  }
  return 0;
}

// ----------------------------------------------------------------------
// approx
// ----------------------------------------------------------------------

struct ApproxArgs {
  long n = 0;
  std::string m_str;
  std::string method = "auto";
};

ppart::AsymptoticEstimate dispatch_estimate(const std::string& method, long n,
                                            long m) {
  using ppart::AsymptoticEstimate;
  if (method == "uniform") return ppart::uniform_estimate(n, m, 0);
  if (method == "uniform1") return ppart::uniform_estimate(n, m, 1);
  if (method == "uniform2") return ppart::uniform_estimate(n, m, 2);
  if (method == "subcritical") {
    if (m < 3) throw ValidationError("subcritical method needs m >= 3");
    return ppart::subcritical_estimate(n, m);
  }
  if (method == "bessel") {
    if (m < 3) throw ValidationError("bessel method needs m >= 3");
    return ppart::bessel_estimate(n, m);
  }
  if (method == "critical") {
    if (m < 3) throw ValidationError("critical method needs m >= 3");
    return ppart::critical_estimate(n, m);
  }
  if (method == "supercritical") return ppart::supercritical_estimate(n);
  throw ValidationError("unknown method '" + method + "'");
}

std::string auto_method(long n, long m) {
  if (n < 3 || m < 3) return "uniform1";
  switch (ppart::phase_classify(n, m).phase) {
    case ppart::Phase::subcritical:
      return "bessel";
    case ppart::Phase::critical:
      return "critical";
    default:
      return "supercritical";
  }
}

int cmd_approx(const CliConfig& cfg, const ApproxArgs& a) {
  if (a.n < 1) throw ValidationError("approx: need --n >= 1");
  if (a.m_str.empty()) throw ValidationError("approx: need --m");
  long m = resolve_m(a.m_str, a.n, "approx --m");
  std::string method = a.method == "auto" ? auto_method(a.n, m) : a.method;
  ppart::AsymptoticEstimate e = dispatch_estimate(method, a.n, m);

  ordered_json j = envelope(cfg, "approx");
  ordered_json row;
  row["n"] = a.n;
  row["m"] = m;
  row["phase"] = phase_string(a.n, m);
  row["method"] = ppart::method_name(e.method);
  row["claimed_error_order"] = e.claimed_error_order;
  row["log_value"] = fmt(e.log_value);
  ordered_json terms;
  for (const auto& t : e.terms) terms[t.first] = fmt(t.second);
  row["terms"] = terms;
  j["rows"].push_back(row);
  emit_json(j);
  return 0;
}

// ----------------------------------------------------------------------
// compare
// ----------------------------------------------------------------------

struct CompareArgs {
  std::string m_str;
  std::string n_grid;
};

int cmd_compare(const CliConfig& cfg, const CompareArgs& a) {
  if (a.m_str.empty()) throw ValidationError("compare: need --m");
  if (a.n_grid.empty()) throw ValidationError("compare: need --n-grid");
  std::vector<long> ns = parse_long_grid(a.n_grid);
  for (long n : ns)
    if (n < 1) throw ValidationError("compare: n must be >= 1");
  long n_max = 0;
  for (long n : ns) n_max = std::max(n_max, n);
  if (n_max > cfg.exact_budget && !cfg.allow_large)
    throw ValidationError("compare: grid exceeds exact budget " +
                          std::to_string(cfg.exact_budget) +
                          " (use --allow-large)");
  bool full = a.m_str == "full";
  long m_fixed = full ? 0 : resolve_m(a.m_str, 0, "compare --m");

  std::optional<ppart::CountTable> shared_table;
  if (!full)
    shared_table =
        ppart::euler_transform_counts(ppart::FamilySpec::bpp(m_fixed), n_max);

  bool grid_failure = false;
  struct Row {
    long n, m;
    std::string phase, exact_log, method, est_log, rel_err;
  };
  std::vector<Row> rows;
  for (long n : ns) {
    long m = full ? n : m_fixed;
    mpz_class count;
    if (full) {
      ppart::CountTable t =
          ppart::euler_transform_counts(ppart::FamilySpec::bpp(m), n);
      count = t.counts[static_cast<size_t>(n)];
    } else {
      count = shared_table->counts[static_cast<size_t>(n)];
    }
    Real exact_log = log(Real(count));
    std::string phase = phase_string(n, m);

    std::vector<std::pair<std::string, int>> methods = {
        {"uniform", 0}, {"uniform1", 1}, {"uniform2", 2}};
    std::optional<ppart::SaddleSolution> saddle;
    try {
      saddle = ppart::solve_saddle(n, m);
    } catch (const ppart::ConvergenceError&) {
      grid_failure = true;
    }
    for (const auto& mm : methods) {
      Row r{n, m, phase, fmt(exact_log), mm.first, "error", "error"};
      if (saddle) {
        ppart::AsymptoticEstimate e =
            ppart::uniform_estimate_from(*saddle, mm.second);
        r.est_log = fmt(e.log_value);
        r.rel_err = fmt(expm1(e.log_value - exact_log));
      }
      rows.push_back(r);
    }
    std::vector<std::string> closed;
    if (m >= 3) {
      closed.push_back("subcritical");
      closed.push_back("bessel");
      closed.push_back("critical");
    }
    if (m >= n) closed.push_back("supercritical");
    for (const std::string& name : closed) {
      Row r{n, m, phase, fmt(exact_log), name, "error", "error"};
      try {
        ppart::AsymptoticEstimate e = dispatch_estimate(name, n, m);
        r.est_log = fmt(e.log_value);
        r.rel_err = fmt(expm1(e.log_value - exact_log));
      } catch (const ppart::ConvergenceError&) {
        grid_failure = true;
      }
      rows.push_back(r);
    }
  }

  if (cfg.output_format == "json") {
    ordered_json j = envelope(cfg, "compare");
    for (const Row& r : rows)
      j["rows"].push_back({{"n", r.n},
                           {"m", r.m},
                           {"phase", r.phase},
                           {"exact_log", r.exact_log},
                           {"method", r.method},
                           {"est_log", r.est_log},
                           {"rel_err", r.rel_err}});
    emit_json(j);
  } else {
    std::printf("n,m,phase,exact_log,method,est_log,rel_err\n");
    for (const Row& r : rows)
      std::printf("%ld,%ld,%s,%s,%s,%s,%s\n", r.n, r.m, r.phase.c_str(),
                  r.exact_log.c_str(), r.method.c_str(), r.est_log.c_str(),
                  r.rel_err.c_str());
  }
  return grid_failure ? 3 : 0;
}

// ----------------------------------------------------------------------
// phase-curve
// ----------------------------------------------------------------------

struct PhaseCurveArgs {
  std::string alpha_grid;
  std::string curves = "bpp,m_rowed,strict_rows,bounded_sym";
};

int cmd_phase_curve(const CliConfig& cfg, const PhaseCurveArgs& a) {
  if (a.alpha_grid.empty())
    throw ValidationError("phase-curve: need --alpha-grid");
  std::vector<mpq_class> alphas = parse_decimal_grid(a.alpha_grid);
  for (const mpq_class& q : alphas)
    if (q <= 0) throw ValidationError("phase-curve: alpha must be positive");
  bool want[4] = {false, false, false, false};
  for (const std::string& name : split(a.curves, ',')) {
    if (name == "bpp")
      want[0] = true;
    else if (name == "m_rowed")
      want[1] = true;
    else if (name == "strict_rows")
      want[2] = true;
    else if (name == "bounded_sym")
      want[3] = true;
    else
      throw ValidationError("phase-curve: unknown curve '" + name + "'");
  }

  bool grid_failure = false;
  struct Row {
    std::string alpha, r, g, h, strict, bsym;
  };
  std::vector<Row> rows;
  const ppart::CurveKind kinds[4] = {
      ppart::CurveKind::bpp, ppart::CurveKind::m_rowed,
      ppart::CurveKind::strict_rows, ppart::CurveKind::bounded_sym};
  for (const mpq_class& q : alphas) {
    Real alpha(q);
    Row row;
    row.alpha = fmt(alpha);
    std::string* cells[4][2] = {{&row.r, &row.g},
                                {nullptr, &row.h},
                                {nullptr, &row.strict},
                                {nullptr, &row.bsym}};
    for (int c = 0; c < 4; ++c) {
      if (!want[c]) continue;
      try {
        ppart::TransitionPoint p = ppart::solve_r(alpha, kinds[c]);
        if (cells[c][0]) *cells[c][0] = fmt(p.r);
        *cells[c][1] = fmt(p.value);
      } catch (const ppart::ConvergenceError&) {
        if (cells[c][0]) *cells[c][0] = "error";
        *cells[c][1] = "error";
        grid_failure = true;
      }
    }
    rows.push_back(row);
  }

  if (cfg.output_format == "json") {
    ordered_json j = envelope(cfg, "phase-curve");
    for (const Row& r : rows) {
      ordered_json jr;
      jr["alpha"] = r.alpha;
      jr["r"] = r.r.empty() ? ordered_json(nullptr) : ordered_json(r.r);
      jr["G_alpha"] = r.g.empty() ? ordered_json(nullptr) : ordered_json(r.g);
      jr["H_alpha"] = r.h.empty() ? ordered_json(nullptr) : ordered_json(r.h);
      jr["strict_rows_value"] =
          r.strict.empty() ? ordered_json(nullptr) : ordered_json(r.strict);
      jr["bounded_sym_value"] =
          r.bsym.empty() ? ordered_json(nullptr) : ordered_json(r.bsym);
      j["rows"].push_back(jr);
    }
    emit_json(j);
  } else {
    std::printf("alpha,r,G_alpha,H_alpha,strict_rows_value,bounded_sym_value\n");
    for (const Row& r : rows)
      std::printf("%s,%s,%s,%s,%s,%s\n", r.alpha.c_str(), r.r.c_str(),
                  r.g.c_str(), r.h.c_str(), r.strict.c_str(), r.bsym.c_str());
  }
  return grid_failure ? 3 : 0;
}

// ----------------------------------------------------------------------
// identity-check
// ----------------------------------------------------------------------

struct IdentityArgs {
  long m = 0;
  std::string tau;
  bool grid = false;
};

int cmd_identity_check(const CliConfig& cfg, const IdentityArgs& a) {
  std::vector<std::pair<long, ppart::Complex>> points;
  if (a.grid) {
    std::vector<long> ms = {3, 4, 5, 6, 7, 8, 9, 10, 16, 24};
    std::vector<ppart::Complex> taus = {
        ppart::Complex(Real(mpq_class(1, 5)), Real(0)),
        ppart::Complex(Real(mpq_class(2, 5)), Real(0)),
        ppart::Complex(Real(mpq_class(4, 5)), Real(0)),
        ppart::Complex(Real(mpq_class(3, 10)), Real(mpq_class(1, 5))),
        ppart::Complex(Real(mpq_class(3, 10)), Real(mpq_class(-1, 5)))};
    for (long m : ms)
      for (const ppart::Complex& t : taus) points.push_back({m, t});
  } else {
    if (a.m < 3)
      throw ValidationError("identity-check: need --m >= 3 (or --grid)");
    if (a.tau.empty()) throw ValidationError("identity-check: need --tau");
    ppart::Complex tau = parse_tau(a.tau);
    if (!(tau.re > Real(0)))
      throw ValidationError("identity-check: need Re tau > 0");
    points.push_back({a.m, tau});
  }

  Real bound = ppart::pow10(-(ppart::PrecisionContext::digits() - 12));
  ordered_json j = envelope(cfg, "identity-check");
  bool all_pass = true;
  for (const auto& pt : points) {
    ppart::IdentityReport r = ppart::identity_residual(pt.first, pt.second);
    bool pass = r.rel_residual < bound;
    all_pass = all_pass && pass;
    j["rows"].push_back({{"m", r.m},
                         {"re_tau", fmt(pt.second.re)},
                         {"im_tau", fmt(pt.second.im)},
                         {"residual", fmt(r.rel_residual)},
                         {"bound", fmt(bound)},
                         {"pass", pass}});
  }
  j["all_pass"] = all_pass;
  emit_json(j);
  return 0;
}

// ----------------------------------------------------------------------
// selftest
// ----------------------------------------------------------------------

int selftest_failures = 0;

void st_check(bool ok, const char* what) {
  if (!ok) {
    ++selftest_failures;
    std::printf("selftest FAIL: %s\n", what);
  }
}

int cmd_selftest(const CliConfig& cfg, bool dump_constants) {
  if (dump_constants) {
    ppart::StructureConstants sc = ppart::structure_constants(3);
    Real cb = cbrt(ppart::zeta3());
    Real pi = ppart::const_pi();
    std::printf("pi=%s\n", pi.str_full().c_str());
    std::printf("zeta2=%s\n", ppart::zeta2().str_full().c_str());
    std::printf("zeta3=%s\n", ppart::zeta3().str_full().c_str());
    std::printf("zeta_prime_minus1=%s\n",
                ppart::zeta_prime_minus1().str_full().c_str());
    std::printf("varpi_3=%s\n", sc.varpi.str_full().c_str());
    std::printf("phi_3=%s\n", sc.phi.str_full().c_str());
    std::printf("log_g_3=%s\n", sc.log_g.str_full().c_str());
    std::printf("beta1=%s\n", (Real(3) / Real(2) * cb).str_full().c_str());
    std::printf("beta2=%s\n", (pi * pi / (Real(24) * cb)).str_full().c_str());
    return 0;
  }

  // exact counting: three independent routes agree
  long ceiling = std::min(cfg.brute_force_ceiling, 10L);
  for (long m = 1; m <= 5; ++m) {
    ppart::FamilySpec fam = ppart::FamilySpec::bpp(m);
    ppart::CountTable a = ppart::euler_transform_counts(fam, ceiling);
    ppart::CountTable b = ppart::series_product_counts(fam, ceiling);
    for (long n = 0; n <= ceiling; ++n) {
      st_check(a.counts[static_cast<size_t>(n)] ==
                   b.counts[static_cast<size_t>(n)],
               "transform and product counts agree");
      st_check(mpz_class(static_cast<unsigned long>(
                   ppart::brute_force_bpp(n, m, ceiling))) ==
                   a.counts[static_cast<size_t>(n)],
               "exhaustive enumeration agrees");
    }
  }
  {
    ppart::CountTable p =
        ppart::euler_transform_counts(ppart::FamilySpec::ordinary(), 200);
    std::vector<mpz_class> pent = ppart::pentagonal_partition_counts(200);
    bool ok = true;
    for (long n = 0; n <= 200; ++n)
      ok = ok && p.counts[static_cast<size_t>(n)] == pent[static_cast<size_t>(n)];
    st_check(ok, "pentagonal recurrence agrees");
  }

  // generating-function identity
  {
    ppart::IdentityReport r = ppart::identity_residual(
        5, ppart::Complex(Real(mpq_class(2, 5)), Real(0)));
    st_check(r.rel_residual < ppart::pow10(-38), "identity residual small");
    ppart::IdentityReport rc = ppart::identity_residual(
        4, ppart::Complex(Real(mpq_class(3, 10)), Real(mpq_class(1, 5))));
    st_check(rc.rel_residual < ppart::pow10(-38),
             "complex identity residual small");
  }

  // dual-branch special functions
  for (int d = 0; d <= 2; ++d) {
    for (const mpq_class& zq : {mpq_class(1, 2), mpq_class(2)}) {
      Real z(zq);
      Real s = ppart::xi(d, z, ppart::XiBranch::series);
      Real c = ppart::xi(d, z, ppart::XiBranch::closed);
      st_check(abs(s - c) <= ppart::pow10(-42) * max(Real(1), abs(s)),
               "xi branches agree");
    }
  }

  // saddle machinery
  {
    ppart::SaddleSolution s = ppart::solve_saddle(1000, 5);
    st_check(s.residual < ppart::pow10(
                              -(ppart::PrecisionContext::digits() - 15)),
             "saddle residual under tolerance");
    st_check(s.lambda[1] > Real(0), "saddle variance positive");
    ppart::lambda_ladder(5, Real(mpq_class(3, 10)), 3, true);
    st_check(true, "ladder cross-check passes");
    ppart::CountTable t =
        ppart::euler_transform_counts(ppart::FamilySpec::bpp(4), 300);
    Real exact_log = log(Real(t.counts[300]));
    ppart::AsymptoticEstimate e = ppart::uniform_estimate(300, 4, 1);
    st_check(abs(expm1(e.log_value - exact_log)) < Real(mpq_class(1, 100)),
             "corrected saddle estimate within 1 percent");
  }

  // transition curves
  {
    ppart::TransitionPoint g = ppart::solve_r(Real(50), ppart::CurveKind::bpp);
    st_check(abs(g.value - Real(3) / Real(2) * cbrt(ppart::zeta3())) <
                 ppart::pow10(-10),
             "curve value at large alpha");
    st_check(ppart::sigma_fn(Real(1)) > Real(0), "sigma positive");
    st_check(ppart::v_ratio(5, Real(mpq_class(1, 100)),
                            Real(mpq_class(1, 2))) <= Real(mpq_class(7, 8)),
             "half-plane modulus bound");
  }

  if (selftest_failures == 0) {
    std::printf("selftest: PASS\n");
    return 0;
  }
  std::printf("selftest: FAILED (%d failures)\n", selftest_failures);
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CliConfig cfg;
  CLI::App app{"banded plane partition counting and asymptotics toolkit"};
  app.require_subcommand(1);
  app.add_option("--precision", cfg.precision_digits,
                 "working decimal digits (>= 15)")
      ->envname("PPA_PRECISION");
  app.add_option("--format", cfg.output_format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--brute-force-ceiling", cfg.brute_force_ceiling,
                 "upper n for exhaustive enumeration cross-checks");
  app.add_flag("--allow-large", cfg.allow_large,
               "lift the default exact-count budget of 10000");

  CountArgs count_args;
  CLI::App* count = app.add_subcommand("count", "exact counts");
  count->fallthrough();
  count->add_option("--family", count_args.family,
                    "partitions|plane|column_strict|bpp|m_rowed|strict_rows|"
                    "bounded_sym")
      ->required();
  count->add_option("--m", count_args.m_str, "width parameter or 'full'");
  count->add_option("--n", count_args.n, "single size");
  count->add_option("--n-grid", count_args.n_grid, "start:stop:step");
  count->add_flag("--oracle", count_args.oracle,
                  "re-derive counts by series product and verify");
  bool count_json = false;
  count->add_flag("--json", count_json, "emit JSON envelope");

  ApproxArgs approx_args;
  CLI::App* approx = app.add_subcommand("approx", "asymptotic estimate");
  approx->fallthrough();
  approx->add_option("--n", approx_args.n, "size")->required();
  approx->add_option("--m", approx_args.m_str, "width or 'full'");
  approx->add_option(
      "--method", approx_args.method,
      "auto|uniform|uniform1|uniform2|subcritical|bessel|critical|"
      "supercritical");
  bool approx_json = false;
  approx->add_flag("--json", approx_json, "emit JSON (always on)");

  CompareArgs compare_args;
  CLI::App* compare = app.add_subcommand("compare", "exact vs estimates");
  compare->fallthrough();
  compare->add_option("--m", compare_args.m_str, "width or 'full'");
  compare->add_option("--n-grid", compare_args.n_grid, "start:stop:step");
  bool compare_json = false;
  compare->add_flag("--json", compare_json, "emit JSON envelope");

  PhaseCurveArgs curve_args;
  CLI::App* curve = app.add_subcommand("phase-curve", "transition curves");
  curve->fallthrough();
  curve->add_option("--alpha-grid", curve_args.alpha_grid, "start:stop:step");
  curve->add_option("--curves", curve_args.curves,
                    "comma list of bpp,m_rowed,strict_rows,bounded_sym");
  bool curve_json = false;
  curve->add_flag("--json", curve_json, "emit JSON envelope");

  IdentityArgs id_args;
  CLI::App* ident = app.add_subcommand("identity-check",
                                       "generating-function identity");
  ident->fallthrough();
  ident->add_option("--m", id_args.m, "width >= 3");
  ident->add_option("--tau", id_args.tau, "e.g. 0.4 or 0.3+0.2i");
  ident->add_flag("--grid", id_args.grid, "run the built-in (m, tau) grid");

  bool dump_constants = false;
  CLI::App* self = app.add_subcommand("selftest", "invariant battery");
  self->fallthrough();
  self->add_flag("--dump-constants", dump_constants,
                 "print named constants and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    ppart::PrecisionContext::set_digits(cfg.precision_digits);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  if (count_json || approx_json || compare_json || curve_json)
    cfg.output_format = "json";

  try {
    if (app.got_subcommand(count)) return cmd_count(cfg, count_args);
    if (app.got_subcommand(approx)) {
      cfg.output_format = "json";
      return cmd_approx(cfg, approx_args);
    }
    if (app.got_subcommand(compare)) return cmd_compare(cfg, compare_args);
    if (app.got_subcommand(curve)) return cmd_phase_curve(cfg, curve_args);
    if (app.got_subcommand(ident)) {
      cfg.output_format = "json";
      return cmd_identity_check(cfg, id_args);
    }
    if (app.got_subcommand(self)) return cmd_selftest(cfg, dump_constants);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ppart::BudgetExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ppart::ConvergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const ppart::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ppart::InternalInconsistency& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
