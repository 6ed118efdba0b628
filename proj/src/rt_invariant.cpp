#include "abinv/rt_invariant.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include "abinv/partition_functions.hpp"

namespace abinv {

PhaseExponent f_value(const SurgeryLink& link, const std::vector<std::int64_t>& charges, std::int64_t n) {
  const Index m = link.components();
  if (static_cast<Index>(charges.size()) != m)
    fail(ErrorKind::DimensionMismatch, "need " + std::to_string(m) + " charges, got " + std::to_string(charges.size()));
  if (n < 1) fail(ErrorKind::InvalidModulus, "level must be >= 1");
  BigInt e = 0;
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) e += link.l(i, j) * charges[static_cast<std::size_t>(i)] * charges[static_cast<std::size_t>(j)];
  return {to_int64(mod_floor(e, n)), n};
}

CyclotomicSum charge_sum(const SurgeryLink& link, std::int64_t range, std::int64_t order) {
  // Charges are summed out one component at a time.  The partial state is the
  // vector of linear coefficients the fixed charges induce on the remaining
  // ones; each state carries a histogram of the exponent so far.  For banded
  // linking matrices (lens chains) the number of states stays small.
  if (range < 1 || order < 1) fail(ErrorKind::InvalidModulus, "charge range and order must be >= 1");
  const std::size_t m = static_cast<std::size_t>(link.components());
  if (static_cast<double>(m) * std::log2(static_cast<double>(range)) > 62.0)
    fail(ErrorKind::SumTooLarge, "charge sum term count overflows 64-bit histograms");
  std::vector<std::vector<std::int64_t>> l(m, std::vector<std::int64_t>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      l[i][j] = to_int64(mod_floor(link.l(static_cast<Index>(i), static_cast<Index>(j)), order));

  using Key = std::vector<std::int64_t>;
  using Hist = std::vector<std::int64_t>;
  std::map<Key, Hist> states;
  Hist start(static_cast<std::size_t>(order), 0);
  start[0] = 1;
  states.emplace(Key(m, 0), std::move(start));

  for (std::size_t i = 0; i < m; ++i) {
    if (static_cast<std::int64_t>(states.size()) > kRtSumLimit / range)
      fail(ErrorKind::SumTooLarge, "charge sum exceeds " + std::to_string(kRtSumLimit) + " terms");
    std::map<Key, Hist> next;
    for (const auto& [key, hist] : states) {
      for (std::int64_t p = 0; p < range; ++p) {
        const __int128 e = (static_cast<__int128>(l[i][i]) * p % order * p + static_cast<__int128>(key[i]) * p) % order;
        const std::int64_t shift = static_cast<std::int64_t>(e);
        Key k2(key.begin() + static_cast<std::ptrdiff_t>(i) + 1, key.end());
        for (std::size_t j = i + 1; j < m; ++j)
          k2[j - i - 1] = static_cast<std::int64_t>((key[j] + static_cast<__int128>(2 * l[i][j]) * p) % order);
        Key full(i + 1, 0);
        full.insert(full.end(), k2.begin(), k2.end());
        auto [it, fresh] = next.try_emplace(std::move(full), Hist(static_cast<std::size_t>(order), 0));
        Hist& out = it->second;
        for (std::int64_t r = 0; r < order; ++r) {
          const std::int64_t c = hist[static_cast<std::size_t>(r)];
          if (c != 0) out[static_cast<std::size_t>((r + shift) % order)] += c;
        }
      }
    }
    states = std::move(next);
  }
  CyclotomicSum s(order);
  for (const auto& [key, hist] : states)
    for (std::int64_t r = 0; r < order; ++r)
      if (hist[static_cast<std::size_t>(r)] != 0) s.add(r, hist[static_cast<std::size_t>(r)]);
  return s;
}

namespace {

// tau = r * zeta exactly, for a root of unity zeta and an integer r, when
// (zeta^{-1} * phase^sigma * sum)^2 = r^2 / scale^2 holds in Z[zeta_M] and the
// left factor is positive.
std::optional<ComplexValue> exact_value(const CyclotomicSum& sum, const PhaseExponent& ph, const Rational& scale_squared,
                                        const Rational& abs_squared, std::complex<double> approx) {
  if (abs_squared == 0) return ComplexValue::integer(0);
  if (abs_squared.get_den() != 1) return std::nullopt;
  const BigInt r = sqrt(abs_squared.get_num());
  if (r * r != abs_squared.get_num()) return std::nullopt;
  const Rational target = Rational(Rational(r * r) / scale_squared);
  if (target.get_den() != 1 || !target.get_num().fits_slong_p()) return std::nullopt;
  const std::int64_t grid = std::lcm(std::lcm(sum.order(), ph.den), std::int64_t{8});
  if (grid > CyclotomicSum::kExactOrderLimit) return std::nullopt;
  const double turns = std::arg(approx) / (2.0 * std::numbers::pi);
  const PhaseExponent zeta(std::llround(turns * static_cast<double>(grid)), grid);
  const CyclotomicSum x = sum.rotated(ph * zeta.inverse());
  CyclotomicSum diff = x * x;
  diff.add(0, -to_int64(target.get_num()));
  const auto zero = diff.is_zero();
  if (!zero || !*zero || x.evaluate().real() <= 0) return std::nullopt;
  if (zeta.is_one()) return ComplexValue::integer(r);
  if (zeta == PhaseExponent(1, 2)) return ComplexValue::integer(-r);
  if (r != 1) return std::nullopt;
  const std::int64_t g = std::gcd(zeta.num, zeta.den);
  return ComplexValue::phase(PhaseExponent(zeta.num / g, zeta.den / g));
}

RtValue assemble(const CyclotomicSum& sum, const PhaseExponent& phase, long sigma, const Rational& scale_squared,
                 std::int64_t level, Normalization norm) {
  // tau = phase^sigma * sqrt(scale_squared) * sum
  RtValue r;
  r.level = level;
  r.normalization = norm;
  const PhaseExponent ph = phase.pow(sigma);
  const double scale = std::sqrt(scale_squared.get_d());
  r.value = ComplexValue(ph.to_complex() * sum.evaluate() * scale);
  if (sum.order() <= CyclotomicSum::kExactOrderLimit)
    if (auto n2 = sum.norm_squared()) r.abs_squared_exact = Rational(Rational(*n2) * scale_squared);
  if (r.abs_squared_exact)
    if (auto v = exact_value(sum, ph, scale_squared, *r.abs_squared_exact, r.value.value)) r.value = *v;
  return r;
}

Rational inverse_power(std::int64_t base, Index m) {
  return Rational(1, pow(BigInt(base), static_cast<unsigned long>(m)));
}

}  // namespace

RtValue rt_even(const SurgeryLink& link, std::int64_t k) {
  if (k < 1) fail(ErrorKind::InvalidCoupling, "k must be >= 1");
  const auto sum = charge_sum(link, 2 * k, 4 * k);
  const long sigma = signature(link.l).signature();
  // Delta' = (1 - i) sqrt k, so Delta'/|Delta'| = exp(-i pi/4) and |Delta'|^2 = 2k.
  return assemble(sum, gauss_delta_phase(4 * k), sigma, inverse_power(2 * k, link.components()), 4 * k,
                  Normalization::Moo);
}

RtValue rt_odd(const SurgeryLink& link, std::int64_t n) {
  if (n < 1) fail(ErrorKind::InvalidModulus, "level must be >= 1");
  if (n % 2 == 0) fail(ErrorKind::EvenLevel, "rt_odd needs an odd level, got " + std::to_string(n));
  const auto sum = charge_sum(link, n, n);
  const long sigma = signature(link.l).signature();
  return assemble(sum, gauss_delta_phase(n), sigma, inverse_power(n, link.components()), n, Normalization::Moo);
}

RtValue rt_raw(const SurgeryLink& link, std::int64_t n) {
  if (n < 1) fail(ErrorKind::InvalidModulus, "level must be >= 1");
  if (n % 4 == 2)
    fail(ErrorKind::NoInvariantAtLevel, "Delta_N = 0 for N = " + std::to_string(n) + "; no RT invariant at this level");
  const auto sum = charge_sum(link, n, n);
  const long sigma = signature(link.l).signature();
  const Index m = link.components();
  // |Delta_N|^{2 sigma} N^{-(sigma + m + 1)}
  const Rational dn2(gauss_delta_norm_squared(n));
  Rational s2 = 1;
  for (long i = 0; i < std::abs(sigma); ++i) s2 *= sigma > 0 ? Rational(dn2 / n) : Rational(Rational(n) / dn2);
  s2 *= Rational(1, pow(BigInt(n), static_cast<unsigned long>(m + 1)));
  return assemble(sum, gauss_delta_phase(n), sigma, s2, n, Normalization::Raw);
}

RtValue rt_at_level(const SurgeryLink& link, std::int64_t n, Normalization norm) {
  if (n < 1) fail(ErrorKind::InvalidModulus, "level must be >= 1");
  if (n % 4 == 2)
    fail(ErrorKind::NoInvariantAtLevel, "no RT invariant at N = " + std::to_string(n) + " (N = 2 mod 4)");
  if (norm == Normalization::Raw) return rt_raw(link, n);
  return n % 2 == 1 ? rt_odd(link, n) : rt_even(link, n / 4);
}

BigInt tau_abs_squared_closed(const HomologyProfile& h, const BigInt& k) {
  const auto c = classify_parity(h, k);
  if (c.beta > 0) return 0;
  BigInt t = pow(2 * k, static_cast<unsigned long>(h.b1)) * pow(BigInt(2), static_cast<unsigned long>(c.gamma));
  for (const auto& p : h.torsion) t *= gcd(k, p);
  return t;
}

BigInt tau_odd_abs_squared_closed(const HomologyProfile& h, const BigInt& n) {
  if (n % 2 == 0) fail(ErrorKind::EvenLevel, "odd level required, got " + n.get_str());
  return h1_order_mod_n(h, n);
}

namespace {

bool rel_close(double a, double b, double tol = 1e-6) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

Report verify_lemma3_part1(const ManifoldPresentation& m, std::int64_t k) {
  const auto link = to_surgery(m);
  if (!link) fail(ErrorKind::UnsupportedPresentation, "lemma 3 part 1 needs a surgery presentation");
  const HomologyData hd = to_homology(m);
  Report rep;
  rep.title = "lemma3 part1 k=" + std::to_string(k);
  const RtValue tau = rt_even(*link, k);
  const BigInt closed = tau_abs_squared_closed(hd.profile, k);
  const PartitionResult cs = cs_partition(hd, k);
  const double cs2 = cs.abs_squared ? cs.abs_squared->get_d() : cs.value.abs_squared();
  const double via_cs = cs2 * pow(BigInt(2 * k), static_cast<unsigned long>(hd.profile.b1)).get_d() /
                        hd.profile.torsion_order().get_d();
  rep.add("|tau_4k|^2 = closed", fmt(tau.abs_squared()), closed.get_str(), rel_close(tau.abs_squared(), closed.get_d()));
  rep.add("(2k)^b1/prod p |Z_CS|^2 = closed", fmt(via_cs), closed.get_str(), rel_close(via_cs, closed.get_d()));
  return rep;
}

Report kirby_blowup_check(const SurgeryLink& link, std::int64_t n, Normalization norm) {
  Report rep;
  rep.title = "blow-up N=" + std::to_string(n);
  const RtValue base = rt_at_level(link, n, norm);
  for (long framing : {1L, -1L}) {
    const RtValue blown = rt_at_level(blow_up(link, framing), n, norm);
    rep.add(std::string("tau(L + [") + (framing > 0 ? "+1" : "-1") + "]) = tau(L)",
            fmt(blown.value.re()) + (blown.value.im() < 0 ? "" : "+") + fmt(blown.value.im()) + "i",
            fmt(base.value.re()) + (base.value.im() < 0 ? "" : "+") + fmt(base.value.im()) + "i",
            approx_equal(blown.value, base.value));
  }
  return rep;
}

}  // namespace abinv
