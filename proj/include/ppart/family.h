// Partition families described by per-factor exponents e_k in
// prod_k (1 - z^k)^{-e_k}, plus the width-m band weight system.
#ifndef PPART_FAMILY_H
#define PPART_FAMILY_H

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ppart {

enum class FamilyTag {
  OrdinaryPartitions,
  PlanePartitions,
  ColumnStrict,
  Bpp,        // banded plane partitions, width m
  MRowed,     // plane partitions with at most m rows
  StrictRows, // at most m rows, strictly decreasing rows
  BoundedSym, // e_k = k for k <= m, else 0
};

struct FamilySpec {
  FamilyTag tag;
  long m = 0;  // band/row parameter; ignored for unparameterized tags

  static FamilySpec ordinary() { return {FamilyTag::OrdinaryPartitions, 0}; }
  static FamilySpec plane() { return {FamilyTag::PlanePartitions, 0}; }
  static FamilySpec column_strict() { return {FamilyTag::ColumnStrict, 0}; }
  static FamilySpec bpp(long m) { return {FamilyTag::Bpp, m}; }
  static FamilySpec m_rowed(long m) { return {FamilyTag::MRowed, m}; }
  static FamilySpec strict_rows(long m) { return {FamilyTag::StrictRows, m}; }
  static FamilySpec bounded_sym(long m) { return {FamilyTag::BoundedSym, m}; }

  std::string name() const {
    switch (tag) {
      case FamilyTag::OrdinaryPartitions: return "partitions";
      case FamilyTag::PlanePartitions: return "plane";
      case FamilyTag::ColumnStrict: return "column_strict";
      case FamilyTag::Bpp: return "bpp";
      case FamilyTag::MRowed: return "m_rowed";
      case FamilyTag::StrictRows: return "strict_rows";
      case FamilyTag::BoundedSym: return "bounded_sym";
    }
    return "?";
  }
  bool parameterized() const {
    return tag == FamilyTag::Bpp || tag == FamilyTag::MRowed ||
           tag == FamilyTag::StrictRows || tag == FamilyTag::BoundedSym;
  }
};

// Band weight w_m(j) = floor((m - 1 - |m - j|)/2) for j = 1..2m-1; w_m(0) := 0.
inline long w_band(long m, long j) {
  if (j % (2 * m) == 0) return 0;
  long r = j % (2 * m);
  long a = m - 1 - std::labs(m - r);
  return a >= 0 ? a / 2 : 0;  // a >= 0 always holds for r in 1..2m-1
}

inline long exponent(const FamilySpec& f, long k) {
  if (k < 1) throw std::invalid_argument("exponent: k must be >= 1");
  switch (f.tag) {
    case FamilyTag::OrdinaryPartitions:
      return 1;
    case FamilyTag::PlanePartitions:
      return k;
    case FamilyTag::ColumnStrict:
      return (k + 1) / 2;
    case FamilyTag::Bpp:
      if (f.m <= 2) return 1;
      return 1 + w_band(f.m, k % (2 * f.m));
    case FamilyTag::MRowed:
      return k < f.m ? k : f.m;
    case FamilyTag::StrictRows: {
      long m = f.m;
      long e = m / 2;
      if (m % 2 == 1 && k % 2 == 1) e += 1;
      if (k >= 1 && k <= m - 2) e -= (m - k) / 2;
      return e;
    }
    case FamilyTag::BoundedSym:
      return k <= f.m ? k : 0;
  }
  return 0;
}

// [z^d] V_m(z) = (m/4)(1 + (-1)^{floor(d/m)}(2{d/m} - 1)), exact rational.
// Simplifies to t/2 when floor(d/m) even, (m-t)/2 when odd, with t = d mod m.
inline mpq_class vm_coefficient(long m, long d) {
  if (m < 3 || d < 1) throw std::invalid_argument("vm_coefficient: need m >= 3, d >= 1");
  long t = d % m;
  long num = (d / m) % 2 == 0 ? t : m - t;
  mpq_class q(num, 2);
  q.canonicalize();
  return q;
}

// [z^d] z U_m'(z) = d * e_d for the width-m family.  Three cases:
// odd d; even d divisible by 2m; remaining even d.
inline long u_weight(long m, long d) {
  if (m < 3 || d < 1) throw std::invalid_argument("u_weight: need m >= 3, d >= 1");
  long t = d % m;
  long v2 = (d / m) % 2 == 0 ? t : m - t;  // 2 * [z^d]V_m / (m/ ...), i.e. 2*v_d
  if (d % 2 == 1) {
    long num = d * (1 + v2);
    if (num % 2 != 0) throw std::logic_error("u_weight: non-integer odd-branch value");
    return num / 2;
  }
  if (d % (2 * m) == 0) return d;
  long num = d * v2;
  if (num % 2 != 0) throw std::logic_error("u_weight: non-integer even-branch value");
  return num / 2;
}

}  // namespace ppart

#endif  // PPART_FAMILY_H
