#include "abinv/partition_functions.hpp"

#include <cmath>
#include <string>

#include "abinv/topology.hpp"

namespace abinv {

namespace {

void check_coupling(const BigInt& k) {
  if (k < 1) fail(ErrorKind::InvalidCoupling, "coupling k must be an integer >= 1, got " + k.get_str());
}

const LinkingForm& require_form(const HomologyData& m) {
  if (!m.linking)
    fail(ErrorKind::UnsupportedPresentation,
         "no linking form available; use a lens, surgery, homology (with q_matrix) or named presentation");
  return *m.linking;
}

// Torsion enumeration with every coordinate already reduced, and the form
// scaled to integers mod P = p_d.
struct Torsion {
  std::vector<std::int64_t> orders;
  std::int64_t size = 1;
  std::int64_t big = 1;
  std::vector<std::vector<std::int64_t>> c;  // Q(e_i, e_j) = c_ij / P

  Torsion(const LinkingForm& f, std::int64_t limit, bool squared) {
    const Index d = f.d();
    for (const auto& p : f.orders) {
      const std::int64_t o = to_int64(p, ErrorKind::TorsionTooLarge);
      if (size > limit / o) fail(ErrorKind::TorsionTooLarge, "torsion group too large for enumeration");
      size *= o;
      orders.push_back(o);
    }
    if (squared && size > limit / size)
      fail(ErrorKind::TorsionTooLarge, "double sum over the torsion group exceeds " + std::to_string(limit) + " terms");
    if (d > 0) big = orders.back();
    c.assign(static_cast<std::size_t>(d), std::vector<std::int64_t>(static_cast<std::size_t>(d), 0));
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j)
        c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            to_int64(mod_floor(f.q(i, j) * (f.orders.back() / f.orders[static_cast<std::size_t>(i)]), f.orders.back()));
  }

  bool next(std::vector<std::int64_t>& x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (++x[i] < orders[i]) return true;
      x[i] = 0;
    }
    return false;
  }

  // P * Q(x, .) as a row vector mod P
  std::vector<std::int64_t> row(const std::vector<std::int64_t>& x) const {
    std::vector<std::int64_t> r(x.size(), 0);
    for (std::size_t j = 0; j < x.size(); ++j) {
      __int128 s = 0;
      for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<__int128>(x[i]) * c[i][j];
      r[j] = static_cast<std::int64_t>(s % big);
    }
    return r;
  }
};

std::int64_t k_mod(const BigInt& k, std::int64_t big) { return to_int64(mod_floor(k, big)); }

PartitionResult finish(const CyclotomicSum& s, const BigInt& k) {
  PartitionResult r;
  r.value = s.to_value();
  r.k = k;
  r.terms = s.term_count();
  if (s.order() <= CyclotomicSum::kExactOrderLimit) r.abs_squared = s.norm_squared();
  return r;
}

}  // namespace

CyclotomicSum cs_sum(const LinkingForm& form, const BigInt& k) {
  check_coupling(k);
  const Torsion t(form, kCsSumLimit, false);
  const std::int64_t km = k_mod(k, t.big);
  CyclotomicSum s(t.big);
  std::vector<std::int64_t> x(t.orders.size(), 0);
  do {
    const auto r = t.row(x);
    __int128 v = 0;
    for (std::size_t j = 0; j < x.size(); ++j) v += static_cast<__int128>(r[j]) * x[j];
    v %= t.big;
    s.add(static_cast<std::int64_t>((v * km) % t.big));
  } while (t.next(x));
  return s;
}

CyclotomicSum bf_sum(const LinkingForm& form, const BigInt& k) {
  check_coupling(k);
  const Torsion t(form, kBfSumLimit, true);
  const std::int64_t km = k_mod(k, t.big);
  CyclotomicSum s(t.big);
  std::vector<std::int64_t> hist(static_cast<std::size_t>(t.big), 0);
  std::vector<std::int64_t> x(t.orders.size(), 0);
  do {
    auto r = t.row(x);
    for (auto& v : r) v = static_cast<std::int64_t>((static_cast<__int128>(v) * km) % t.big);
    std::vector<std::int64_t> y(t.orders.size(), 0);
    do {
      __int128 v = 0;
      for (std::size_t j = 0; j < y.size(); ++j) v += static_cast<__int128>(r[j]) * y[j];
      ++hist[static_cast<std::size_t>(v % t.big)];
    } while (t.next(y));
  } while (t.next(x));
  for (std::int64_t e = 0; e < t.big; ++e)
    if (hist[static_cast<std::size_t>(e)] != 0) s.add(-e, hist[static_cast<std::size_t>(e)]);
  return s;
}

PartitionResult cs_partition(const HomologyData& m, const BigInt& k) {
  check_coupling(k);
  PartitionResult r = finish(cs_sum(require_form(m), k), k);
  r.closed_form = cs_abs_squared_closed(m.profile, k);
  return r;
}

PartitionResult bf_partition_bruteforce(const HomologyData& m, const BigInt& k) {
  check_coupling(k);
  PartitionResult r = finish(bf_sum(require_form(m), k), k);
  r.closed_form = bf_partition_closed(m.profile, k);
  return r;
}

BigInt bf_partition_closed(const HomologyProfile& h, const BigInt& k) {
  check_coupling(k);
  BigInt z = 1;
  for (const auto& p : h.torsion) z *= gcd(k, p) * p;
  return z;
}

BigInt cs_abs_squared_closed(const HomologyProfile& h, const BigInt& k) {
  const auto c = classify_parity(h, k);
  if (c.beta > 0) return 0;
  return pow(BigInt(2), static_cast<unsigned long>(c.gamma)) * bf_partition_closed(h, k);
}

BigInt equivalent_coupling(const HomologyProfile& h, const BigInt& k) {
  check_coupling(k);
  for (BigInt kk = k + 1;; ++kk) {
    bool same = true;
    for (const auto& p : h.torsion) same = same && gcd(kk, p) == gcd(k, p);
    if (same) return kk;
  }
}

std::optional<BigInt> round_if_integral(double x, double rel_tol) {
  const double r = std::nearbyint(x);
  if (std::abs(x - r) > rel_tol * (1.0 + std::abs(r))) return std::nullopt;
  BigInt n;
  mpz_set_d(n.get_mpz_t(), r);
  return n;
}

namespace {

// |Z|^2 as an exact integer: the exact norm when available, else the rounded
// double (fails the caller's comparison when not near an integer).
std::optional<BigInt> measured_abs_squared(const PartitionResult& r) {
  if (r.abs_squared) return r.abs_squared;
  return round_if_integral(r.value.abs_squared());
}

std::optional<BigInt> measured_real(const PartitionResult& r) {
  if (r.value.exact)
    if (const auto* n = std::get_if<BigInt>(&*r.value.exact)) return *n;
  if (std::abs(r.value.im()) > 1e-6 * (1.0 + std::abs(r.value.re()))) return std::nullopt;
  return round_if_integral(r.value.re());
}

std::string show(const std::optional<BigInt>& x, double fallback) {
  return x ? x->get_str() : std::to_string(fallback);
}

}  // namespace

Report verify_lemma2(const HomologyData& m, const BigInt& k) {
  Report rep;
  rep.title = "lemma2 k=" + k.get_str();
  const auto& h = m.profile;
  const auto par = classify_parity(h, k);
  const BigInt delta = par.beta == 0 ? 1 : 0;

  const PartitionResult cs = cs_partition(m, k);
  const PartitionResult bf = bf_partition_bruteforce(m, k);
  const PartitionResult bf2 = bf_partition_bruteforce(m, 2 * k);
  const auto cs2 = measured_abs_squared(cs);
  const auto zbf = measured_real(bf);
  const auto zbf2 = measured_real(bf2);
  const BigInt cs_closed = cs_abs_squared_closed(h, k);
  const BigInt bf_closed = bf_partition_closed(h, k);

  rep.add("|Z_CS|^2 brute = closed", show(cs2, cs.value.abs_squared()), cs_closed.get_str(), cs2 && *cs2 == cs_closed);
  rep.add("Z_BF brute = closed", show(zbf, bf.value.re()), bf_closed.get_str(), zbf && *zbf == bf_closed);
  rep.add("Z_BF real", std::to_string(bf.value.im()), "0", std::abs(bf.value.im()) <= 1e-9 * (1.0 + std::abs(bf.value.re())));

  const BigInt rhs_c = delta * pow(BigInt(2), static_cast<unsigned long>(par.gamma)) * (zbf ? *zbf : BigInt(-1));
  rep.add("|Z_CS|^2 = delta 2^gamma Z_BF_k", show(cs2, cs.value.abs_squared()), rhs_c.get_str(),
          cs2 && zbf && *cs2 == rhs_c);

  // 2^{-beta} delta_{beta,0} = delta_{beta,0}
  const BigInt rhs_d = delta * (zbf2 ? *zbf2 : BigInt(-1));
  rep.add("|Z_CS|^2 = 2^-beta delta Z_BF_2k", show(cs2, cs.value.abs_squared()), rhs_d.get_str(),
          cs2 && zbf2 && *cs2 == rhs_d);

  const BigInt k2 = equivalent_coupling(h, k);
  const bool same_closed = cs_abs_squared_closed(h, k2) == cs_closed && bf_partition_closed(h, k2) == bf_closed;
  rep.add("closed forms depend on k only via gcd(k,p_j)", "k'=" + k2.get_str(), "unchanged", same_closed);
  const auto cs_k2 = measured_abs_squared(cs_partition(m, k2));
  const auto bf_k2 = measured_real(bf_partition_bruteforce(m, k2));
  rep.add("brute force at k' matches", show(cs_k2, 0) + "," + show(bf_k2, 0), cs_closed.get_str() + "," + bf_closed.get_str(),
          cs_k2 && bf_k2 && *cs_k2 == cs_closed && *bf_k2 == bf_closed);
  return rep;
}

}  // namespace abinv
