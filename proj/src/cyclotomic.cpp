#include "abinv/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

namespace abinv {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

std::complex<double> unit_root(std::int64_t num, std::int64_t den) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

// --- PhaseExponent ---------------------------------------------------------

PhaseExponent::PhaseExponent(std::int64_t numerator, std::int64_t denominator)
    : num(0), den(denominator) {
  if (denominator < 1) fail(ErrorKind::InvalidModulus, "phase denominator must be >= 1");
  num = mod(numerator, denominator);
}

PhaseExponent PhaseExponent::operator*(const PhaseExponent& other) const {
  const std::int64_t d = lcm64(den, other.den);
  const __int128 a = static_cast<__int128>(num) * (d / den) + static_cast<__int128>(other.num) * (d / other.den);
  return {static_cast<std::int64_t>(a % d), d};
}

PhaseExponent PhaseExponent::inverse() const { return {-num, den}; }

PhaseExponent PhaseExponent::pow(std::int64_t e) const {
  const __int128 a = static_cast<__int128>(num) * (e % den);
  std::int64_t r = static_cast<std::int64_t>(a % den);
  return {r, den};
}

std::complex<double> PhaseExponent::to_complex() const { return unit_root(num, den); }

bool PhaseExponent::operator==(const PhaseExponent& other) const {
  return static_cast<__int128>(num) * other.den == static_cast<__int128>(other.num) * den;
}

std::string to_string(const PhaseExponent& p) {
  return "exp(2pi i " + std::to_string(p.num) + "/" + std::to_string(p.den) + ")";
}

// --- ComplexValue ----------------------------------------------------------

ComplexValue ComplexValue::integer(const BigInt& n) {
  ComplexValue v(std::complex<double>(n.get_d(), 0.0));
  v.exact = n;
  return v;
}

ComplexValue ComplexValue::phase(const PhaseExponent& p) {
  ComplexValue v(p.to_complex());
  if (p.is_one()) v.exact = BigInt(1);
  else v.exact = p;
  return v;
}

bool ComplexValue::is_exact_zero() const {
  if (!exact) return false;
  if (const auto* n = std::get_if<BigInt>(&*exact)) return *n == 0;
  return false;
}

bool approx_equal(std::complex<double> a, std::complex<double> b, double tol) {
  return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

bool approx_equal(const ComplexValue& a, const ComplexValue& b, double tol) {
  return approx_equal(a.value, b.value, tol);
}

bool approx_integer(double x, const BigInt& n, double rel_tol) {
  const double target = n.get_d();
  return std::abs(x - target) <= rel_tol * (1.0 + std::abs(target));
}

// --- cyclotomic polynomials -------------------------------------------------

namespace {

using Poly = std::vector<BigInt>;

Poly divide_exact(Poly num, const Poly& den) {
  const std::size_t dn = den.size() - 1;
  Poly q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const BigInt c = num[i];  // den is monic
    q[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

}  // namespace

std::vector<BigInt> cyclotomic_polynomial(std::int64_t m) {
  if (m < 1) fail(ErrorKind::InvalidModulus, "cyclotomic order must be >= 1");
  static std::mutex guard;
  static std::map<std::int64_t, Poly> cache;
  {
    std::lock_guard<std::mutex> lock(guard);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  Poly p(static_cast<std::size_t>(m) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (std::int64_t d = 1; d < m; ++d)
    if (m % d == 0) p = divide_exact(std::move(p), cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lock(guard);
  cache.emplace(m, p);
  return p;
}

// --- CyclotomicSum ---------------------------------------------------------

CyclotomicSum::CyclotomicSum(std::int64_t order)
    : order_(order), coeffs_(order > 0 ? static_cast<std::size_t>(order) : 0, 0) {
  if (order < 1) fail(ErrorKind::InvalidModulus, "cyclotomic order must be >= 1");
}

void CyclotomicSum::add(std::int64_t exponent, std::int64_t count) {
  coeffs_[static_cast<std::size_t>(mod(exponent, order_))] += count;
}

void CyclotomicSum::add(const PhaseExponent& phase, std::int64_t count) {
  if (order_ % phase.den != 0)
    fail(ErrorKind::Internal, "phase denominator does not divide the sum order");
  add(phase.num * (order_ / phase.den), count);
}

std::int64_t CyclotomicSum::term_count() const {
  std::int64_t n = 0;
  for (auto c : coeffs_) n += c;
  return n;
}

std::complex<double> CyclotomicSum::evaluate() const {
  // Pair r with M - r so that the imaginary parts of conjugate-symmetric sums
  // cancel to rounding level regardless of M.
  double re = 0.0;
  double im = 0.0;
  for (std::int64_t r = 0; r < order_; ++r) {
    const std::int64_t c = coeffs_[static_cast<std::size_t>(r)];
    if (c == 0) continue;
    const auto z = unit_root(r, order_);
    re += static_cast<double>(c) * z.real();
    im += static_cast<double>(c) * z.imag();
  }
  return {re, im};
}

CyclotomicSum CyclotomicSum::conjugate() const {
  CyclotomicSum out(order_);
  for (std::int64_t r = 0; r < order_; ++r)
    out.coeffs_[static_cast<std::size_t>(mod(-r, order_))] = coeffs_[static_cast<std::size_t>(r)];
  return out;
}

CyclotomicSum CyclotomicSum::lifted(std::int64_t new_order) const {
  if (new_order % order_ != 0) fail(ErrorKind::Internal, "lift to a non-multiple order");
  CyclotomicSum out(new_order);
  const std::int64_t f = new_order / order_;
  for (std::int64_t r = 0; r < order_; ++r)
    out.coeffs_[static_cast<std::size_t>(r * f)] = coeffs_[static_cast<std::size_t>(r)];
  return out;
}

CyclotomicSum CyclotomicSum::rotated(const PhaseExponent& phase) const {
  const std::int64_t m = lcm64(order_, phase.den);
  CyclotomicSum out = lifted(m);
  CyclotomicSum shifted(m);
  const std::int64_t s = phase.num * (m / phase.den);
  for (std::int64_t r = 0; r < m; ++r)
    shifted.coeffs_[static_cast<std::size_t>(mod(r + s, m))] = out.coeffs_[static_cast<std::size_t>(r)];
  return shifted;
}

CyclotomicSum CyclotomicSum::operator*(const CyclotomicSum& other) const {
  const std::int64_t m = lcm64(order_, other.order_);
  const CyclotomicSum a = lifted(m);
  const CyclotomicSum b = other.lifted(m);
  std::vector<std::int64_t> nz;
  for (std::int64_t r = 0; r < m; ++r)
    if (b.coeffs_[static_cast<std::size_t>(r)] != 0) nz.push_back(r);
  CyclotomicSum out(m);
  for (std::int64_t r = 0; r < m; ++r) {
    const std::int64_t ca = a.coeffs_[static_cast<std::size_t>(r)];
    if (ca == 0) continue;
    for (auto s : nz) out.coeffs_[static_cast<std::size_t>((r + s) % m)] += ca * b.coeffs_[static_cast<std::size_t>(s)];
  }
  return out;
}

std::optional<bool> CyclotomicSum::is_zero() const {
  bool all_zero = true;
  for (auto c : coeffs_)
    if (c != 0) { all_zero = false; break; }
  if (all_zero) return true;

  // zeta^(M/2) = -1: equal weight on antipodal exponents cancels exactly.
  if (order_ % 2 == 0) {
    const std::int64_t h = order_ / 2;
    bool antipodal = true;
    for (std::int64_t r = 0; r < h && antipodal; ++r)
      antipodal = coeffs_[static_cast<std::size_t>(r)] == coeffs_[static_cast<std::size_t>(r + h)];
    if (antipodal) return true;
  }

  if (order_ > kExactOrderLimit) return std::nullopt;

  // Reduce the polynomial sum c_r x^r modulo Phi_M; zero iff the remainder is.
  const auto phi = cyclotomic_polynomial(order_);
  const std::size_t deg = phi.size() - 1;
  std::vector<BigInt> r(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] = static_cast<long>(coeffs_[i]);
  for (std::size_t i = r.size(); i-- > deg;) {
    const BigInt c = r[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) r[i - deg + j] -= c * phi[j];
  }
  for (std::size_t i = 0; i < std::min(deg, r.size()); ++i)
    if (r[i] != 0) return false;
  return true;
}

std::optional<BigInt> CyclotomicSum::as_integer() const {
  const auto z = evaluate();
  if (std::abs(z.real()) > 4.0e15) return std::nullopt;  // beyond exact double rounding
  const long guess = std::lround(z.real());
  CyclotomicSum shifted = *this;
  shifted.add(0, -guess);
  const auto zero = shifted.is_zero();
  if (zero && *zero) return BigInt(guess);
  return std::nullopt;
}

std::optional<BigInt> CyclotomicSum::norm_squared() const {
  // the product histogram must fit in int64
  double weight = 0.0;
  for (auto c : coeffs_) weight += std::abs(static_cast<double>(c));
  if (weight * weight > 4.0e18) return std::nullopt;
  return (*this * conjugate()).as_integer();
}

std::optional<PhaseExponent> CyclotomicSum::as_phase() const {
  std::optional<PhaseExponent> found;
  for (std::int64_t r = 0; r < order_; ++r) {
    const std::int64_t c = coeffs_[static_cast<std::size_t>(r)];
    if (c == 0) continue;
    if (c != 1 || found) return std::nullopt;
    found = PhaseExponent(r, order_);
  }
  return found;
}

ComplexValue CyclotomicSum::to_value() const {
  if (auto p = as_phase()) return ComplexValue::phase(*p);
  ComplexValue v(evaluate());
  const auto zero = is_zero();
  if (zero && *zero) {
    v = ComplexValue::integer(0);
  } else if (order_ <= kExactOrderLimit) {
    if (auto n = as_integer()) v.exact = *n;
  }
  return v;
}

}  // namespace abinv
