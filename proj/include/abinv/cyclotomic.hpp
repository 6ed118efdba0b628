#pragma once

// Roots of unity and integer combinations of them.
//
// Single phases stay exact as exponents.  Sums of phases are kept as an
// exponent histogram (an element of Z[Z_M]) so that identities with integer
// values can be decided exactly; evaluation to a complex double is a separate
// step with a fixed summation order.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "abinv/exact_linalg.hpp"

namespace abinv {

/// exp(2 pi i num / den), num kept in [0, den).
struct PhaseExponent {
  std::int64_t num = 0;
  std::int64_t den = 1;

  PhaseExponent() = default;
  PhaseExponent(std::int64_t numerator, std::int64_t denominator);

  PhaseExponent operator*(const PhaseExponent& other) const;
  PhaseExponent inverse() const;
  PhaseExponent pow(std::int64_t e) const;
  std::complex<double> to_complex() const;
  bool is_one() const { return num == 0; }

  /// Equal as points of the circle, whatever the denominators.
  bool operator==(const PhaseExponent& other) const;
};

std::string to_string(const PhaseExponent& p);

/// A complex number evaluated in double precision, together with its exact
/// value when one is known (an integer or a single root of unity).
struct ComplexValue {
  using Exact = std::variant<BigInt, PhaseExponent>;

  std::complex<double> value;
  std::optional<Exact> exact;

  ComplexValue() = default;
  explicit ComplexValue(std::complex<double> v) : value(v) {}
  static ComplexValue integer(const BigInt& n);
  static ComplexValue phase(const PhaseExponent& p);

  double re() const { return value.real(); }
  double im() const { return value.imag(); }
  double abs_squared() const { return std::norm(value); }
  bool is_exact_zero() const;
};

/// |a - b| <= tol * (1 + max(|a|, |b|))
bool approx_equal(std::complex<double> a, std::complex<double> b, double tol = 1e-9);
bool approx_equal(const ComplexValue& a, const ComplexValue& b, double tol = 1e-9);

/// Relative comparison of a computed real quantity against an exact integer.
bool approx_integer(double x, const BigInt& n, double rel_tol = 1e-6);

/// Sum_r c_r exp(2 pi i r / M) with integer coefficients c_r.
class CyclotomicSum {
 public:
  /// Largest order for which exact zero tests run Phi_M reduction.
  static constexpr std::int64_t kExactOrderLimit = 1024;

  explicit CyclotomicSum(std::int64_t order);

  std::int64_t order() const { return order_; }
  const std::vector<std::int64_t>& coefficients() const { return coeffs_; }

  void add(std::int64_t exponent, std::int64_t count = 1);
  void add(const PhaseExponent& phase, std::int64_t count = 1);

  std::int64_t term_count() const;
  std::complex<double> evaluate() const;

  CyclotomicSum conjugate() const;
  CyclotomicSum operator*(const CyclotomicSum& other) const;
  /// Re-expresses the sum over a multiple of the current order.
  CyclotomicSum lifted(std::int64_t new_order) const;
  /// Multiplies by a single root of unity (the orders are merged).
  CyclotomicSum rotated(const PhaseExponent& phase) const;

  /// Exact zero test.  nullopt when the order is too large to decide.
  std::optional<bool> is_zero() const;
  /// Exact integer value if the sum is a rational integer (decidable orders only).
  std::optional<BigInt> as_integer() const;
  /// Exact |z|^2 when z * conj(z) is decidably an integer.
  std::optional<BigInt> norm_squared() const;
  /// The single root of unity this sum equals, if it has exactly one term of weight 1.
  std::optional<PhaseExponent> as_phase() const;

  ComplexValue to_value() const;

 private:
  std::int64_t order_;
  std::vector<std::int64_t> coeffs_;
};

/// Coefficients (low degree first) of the M-th cyclotomic polynomial.
std::vector<BigInt> cyclotomic_polynomial(std::int64_t m);

}  // namespace abinv
