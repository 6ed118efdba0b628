#pragma once

// Exact integer and rational linear algebra on Eigen dense types.
//
// All matrices here use GMP scalars (mpz_class / mpq_class) so nothing can
// overflow.  The Smith normal form is a template over the scalar and also
// works for built-in integers when the caller knows the entries stay small.

#include <gmpxx.h>

#include <Eigen/Core>
#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "abinv/errors.hpp"

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpq_class;
  using Nested = mpz_class;
  using Literal = mpz_class;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 300,
    MulCost = 300
  };
};

}  // namespace Eigen

namespace abinv {

using BigInt = mpz_class;
using Rational = mpq_class;
using Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IntegerMatrix = Matrix<BigInt>;
using RationalMatrix = Matrix<Rational>;

/// Builds an IntegerMatrix from nested braces, e.g. `integer_matrix({{2, 1}, {1, 1}})`.
/// Ragged rows throw DimensionMismatch.
IntegerMatrix integer_matrix(std::initializer_list<std::initializer_list<long>> rows);
IntegerMatrix integer_matrix(const std::vector<std::vector<BigInt>>& rows, Index cols_if_empty = 0);

bool is_symmetric(const IntegerMatrix& m);

/// Representative of `a` modulo `n` in [0, |n|).
BigInt mod_floor(const BigInt& a, const BigInt& n);

/// Checked narrowing; throws `on_overflow` when the value does not fit.
std::int64_t to_int64(const BigInt& value, ErrorKind on_overflow = ErrorKind::Internal);

BigInt pow(const BigInt& base, unsigned long exponent);

/// num / den in lowest terms (den != 0).
Rational ratio(const BigInt& num, const BigInt& den);

// ---------------------------------------------------------------------------
// Smith normal form

template <typename Scalar>
struct SnfResult {
  /// min(rows, cols) elementary divisors, nonnegative, each dividing the next
  /// among the nonzero ones; zeros trail.
  std::vector<Scalar> divisors;
  Matrix<Scalar> u;  // rows x rows, unimodular
  Matrix<Scalar> v;  // cols x cols, unimodular
  Index rank = 0;

  /// diag(divisors) padded with zeros to rows x cols.
  Matrix<Scalar> diagonal() const {
    Matrix<Scalar> d = Matrix<Scalar>::Zero(u.rows(), v.rows());
    for (std::size_t i = 0; i < divisors.size(); ++i)
      d(static_cast<Index>(i), static_cast<Index>(i)) = divisors[i];
    return d;
  }
};

namespace detail {

template <typename Scalar>
Scalar abs_value(const Scalar& x) {
  return x < 0 ? Scalar(-x) : x;
}

}  // namespace detail

/// Classical elementary-operation reduction: repeatedly move the entry of
/// least absolute value in the trailing block to the pivot, clear its row and
/// column by Euclidean steps, and fold in any entry the pivot does not divide.
/// On return `u * m * v == diagonal()`.
template <typename Scalar>
SnfResult<Scalar> smith_normal_form(const Matrix<Scalar>& m) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  Matrix<Scalar> a = m;
  Matrix<Scalar> u = Matrix<Scalar>::Identity(rows, rows);
  Matrix<Scalar> v = Matrix<Scalar>::Identity(cols, cols);
  const Index diag = std::min(rows, cols);

  for (Index t = 0; t < diag; ++t) {
    for (;;) {
      Index pr = -1;
      Index pc = -1;
      Scalar best = 0;
      for (Index j = t; j < cols; ++j) {
        for (Index i = t; i < rows; ++i) {
          if (a(i, j) == 0) continue;
          Scalar mag = detail::abs_value(a(i, j));
          if (pr < 0 || mag < best) {
            best = mag;
            pr = i;
            pc = j;
          }
        }
      }
      if (pr < 0) break;  // trailing block is zero

      if (pr != t) {
        a.row(t).swap(a.row(pr));
        u.row(t).swap(u.row(pr));
      }
      if (pc != t) {
        a.col(t).swap(a.col(pc));
        v.col(t).swap(v.col(pc));
      }

      bool clean = true;
      for (Index i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        const Scalar q = a(i, t) / a(t, t);
        if (q != 0) {
          a.row(i) -= q * a.row(t);
          u.row(i) -= q * u.row(t);
        }
        if (a(i, t) != 0) clean = false;
      }
      for (Index j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        const Scalar q = a(t, j) / a(t, t);
        if (q != 0) {
          a.col(j) -= q * a.col(t);
          v.col(j) -= q * v.col(t);
        }
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides_all = true;
      for (Index i = t + 1; i < rows && divides_all; ++i) {
        for (Index j = t + 1; j < cols; ++j) {
          if (a(i, j) % a(t, t) != 0) {
            a.row(t) += a.row(i);
            u.row(t) += u.row(i);
            divides_all = false;
            break;
          }
        }
      }
      if (divides_all) break;
    }
    if (a(t, t) < 0) {
      a.row(t) = -a.row(t);
      u.row(t) = -u.row(t);
    }
  }

  SnfResult<Scalar> out;
  out.divisors.reserve(static_cast<std::size_t>(diag));
  for (Index i = 0; i < diag; ++i) {
    out.divisors.push_back(a(i, i));
    if (a(i, i) != 0) ++out.rank;
  }
  out.u = std::move(u);
  out.v = std::move(v);
  return out;
}

// ---------------------------------------------------------------------------
// Symmetric matrices

struct Inertia {
  Index positive = 0;
  Index negative = 0;
  Index zero = 0;

  /// positive - negative
  long signature() const { return static_cast<long>(positive - negative); }
  bool operator==(const Inertia&) const = default;
};

/// Inertia of a symmetric integer matrix by congruence diagonalization over Q.
/// Throws NonSymmetric.
Inertia signature(const IntegerMatrix& s);

/// Exact inverse; throws Singular when det = 0 and DimensionMismatch when not square.
RationalMatrix rational_inverse(const IntegerMatrix& s);

/// Fraction-free (Bareiss) determinant.
BigInt determinant(const IntegerMatrix& s);

/// |{x in (Z_n)^cols : m x = 0 mod n}|, from the Smith divisors of m.
/// Throws InvalidModulus for n < 1.
BigInt solution_count_mod_n(const IntegerMatrix& m, const BigInt& n);

}  // namespace abinv
