#include "abinv/exact_linalg.hpp"

#include <string>

namespace abinv {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSymmetric: return "NonSymmetric";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::InvalidModulus: return "InvalidModulus";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::BadRange: return "BadRange";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::TorsionTooLarge: return "TorsionTooLarge";
    case ErrorKind::InvalidCoupling: return "InvalidCoupling";
    case ErrorKind::SumTooLarge: return "SumTooLarge";
    case ErrorKind::EvenLevel: return "EvenLevel";
    case ErrorKind::NoInvariantAtLevel: return "NoInvariantAtLevel";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::NonIntegralInvariant: return "NonIntegralInvariant";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::UnsupportedPresentation: return "UnsupportedPresentation";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

IntegerMatrix integer_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  IntegerMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != c)
      fail(ErrorKind::DimensionMismatch, "ragged matrix literal");
    Index j = 0;
    for (long x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

IntegerMatrix integer_matrix(const std::vector<std::vector<BigInt>>& rows, Index cols_if_empty) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? cols_if_empty : static_cast<Index>(rows.front().size());
  IntegerMatrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Index>(row.size()) != c)
      fail(ErrorKind::DimensionMismatch, "ragged matrix: row " + std::to_string(i));
    for (Index j = 0; j < c; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
  }
  return m;
}

bool is_symmetric(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

BigInt mod_floor(const BigInt& a, const BigInt& n) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  if (r < 0) r += abs(n);
  return r;
}

std::int64_t to_int64(const BigInt& value, ErrorKind on_overflow) {
  if (!value.fits_slong_p())
    fail(on_overflow, "integer " + value.get_str() + " exceeds 64-bit range");
  return static_cast<std::int64_t>(value.get_si());
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Inertia signature(const IntegerMatrix& s) {
  if (!is_symmetric(s)) fail(ErrorKind::NonSymmetric, "signature needs a symmetric matrix");
  const Index n = s.rows();
  RationalMatrix a = s.cast<Rational>();
  Inertia out;

  // Congruence a -> E a E^T with elementary E keeps a symmetric and, by
  // Sylvester's law, keeps the inertia.
  for (Index k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      Index swap_with = -1;
      for (Index j = k + 1; j < n; ++j)
        if (a(j, j) != 0) { swap_with = j; break; }
      if (swap_with >= 0) {
        a.row(k).swap(a.row(swap_with));
        a.col(k).swap(a.col(swap_with));
      } else {
        Index partner = -1;
        for (Index j = k + 1; j < n; ++j)
          if (a(k, j) != 0) { partner = j; break; }
        if (partner < 0) {
          ++out.zero;  // row k is already isolated and zero
          continue;
        }
        // a(k,k) becomes 2 a(k,partner) + a(partner,partner) = 2 a(k,partner) != 0
        a.row(k) += a.row(partner);
        a.col(k) += a.col(partner);
      }
    }
    const Rational pivot = a(k, k);
    for (Index i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational f = a(i, k) / pivot;
      a.row(i) -= f * a.row(k);
      a.col(i) -= f * a.col(k);
    }
    if (pivot > 0) ++out.positive;
    else ++out.negative;
  }
  return out;
}

RationalMatrix rational_inverse(const IntegerMatrix& s) {
  if (s.rows() != s.cols()) fail(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  const Index n = s.rows();
  RationalMatrix a = s.cast<Rational>();
  RationalMatrix inv = RationalMatrix::Identity(n, n);
  for (Index c = 0; c < n; ++c) {
    Index p = -1;
    for (Index r = c; r < n; ++r)
      if (a(r, c) != 0) { p = r; break; }
    if (p < 0) fail(ErrorKind::Singular, "matrix is singular");
    if (p != c) {
      a.row(c).swap(a.row(p));
      inv.row(c).swap(inv.row(p));
    }
    const Rational pivot = a(c, c);
    a.row(c) /= pivot;
    inv.row(c) /= pivot;
    for (Index r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const Rational f = a(r, c);
      a.row(r) -= f * a.row(c);
      inv.row(r) -= f * inv.row(c);
    }
  }
  return inv;
}

BigInt determinant(const IntegerMatrix& s) {
  if (s.rows() != s.cols()) fail(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
  const Index n = s.rows();
  if (n == 0) return 1;
  IntegerMatrix a = s;
  BigInt sign = 1;
  BigInt prev = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Index p = -1;
      for (Index r = k + 1; r < n; ++r)
        if (a(r, k) != 0) { p = r; break; }
      if (p < 0) return 0;
      a.row(k).swap(a.row(p));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        BigInt t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

BigInt solution_count_mod_n(const IntegerMatrix& m, const BigInt& n) {
  if (n < 1) fail(ErrorKind::InvalidModulus, "modulus must be >= 1, got " + n.get_str());
  const auto snf = smith_normal_form(m);
  BigInt count = pow(n, static_cast<unsigned long>(m.cols() - snf.rank));
  for (Index i = 0; i < snf.rank; ++i) count *= gcd(snf.divisors[static_cast<std::size_t>(i)], n);
  return count;
}

Rational ratio(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(ErrorKind::Internal, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace abinv
