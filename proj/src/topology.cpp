#include "abinv/topology.hpp"

#include <functional>
#include <numeric>
#include <string>
#include <unordered_set>

namespace abinv {

BigInt HomologyProfile::torsion_order() const {
  BigInt n = 1;
  for (const auto& p : torsion) n *= p;
  return n;
}

void validate(const HomologyProfile& h) {
  if (h.b1 < 0) fail(ErrorKind::InvariantViolation, "b1 must be nonnegative");
  for (std::size_t i = 0; i < h.torsion.size(); ++i) {
    if (h.torsion[i] < 2)
      fail(ErrorKind::InvariantViolation, "torsion coefficient " + h.torsion[i].get_str() + " must be >= 2");
    if (i + 1 < h.torsion.size() && h.torsion[i + 1] % h.torsion[i] != 0)
      fail(ErrorKind::InvariantViolation, "torsion must be a divisor chain: " + h.torsion[i].get_str() +
                                              " does not divide " + h.torsion[i + 1].get_str());
  }
}

HomologyProfile normalize_profile(Index b1, const std::vector<BigInt>& orders) {
  const Index n = static_cast<Index>(orders.size());
  IntegerMatrix rel = IntegerMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) rel(i, i) = orders[static_cast<std::size_t>(i)];
  const auto snf = smith_normal_form(rel);
  HomologyProfile h;
  h.b1 = b1 + (n - snf.rank);
  for (const auto& dv : snf.divisors)
    if (dv > 1) h.torsion.push_back(dv);
  return h;
}

// --- linking forms ---------------------------------------------------------

bool operator==(const LinkingForm& a, const LinkingForm& b) {
  return a.orders == b.orders && same_matrix(a.q, b.q);
}

bool LinkingForm::primitive_diagonal() const {
  for (Index i = 0; i < d(); ++i)
    if (gcd(q(i, i), orders[static_cast<std::size_t>(i)]) != 1) return false;
  return true;
}

namespace {

LinkingForm reduced(std::vector<BigInt> orders, const IntegerMatrix& q) {
  const Index d = static_cast<Index>(orders.size());
  if (q.rows() != d || q.cols() != d)
    fail(ErrorKind::DimensionMismatch, "q matrix must be " + std::to_string(d) + "x" + std::to_string(d));
  LinkingForm f{std::move(orders), q};
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) f.q(i, j) = mod_floor(q(i, j), f.orders[static_cast<std::size_t>(i)]);
  return f;
}

void check_common(const LinkingForm& f) {
  validate(HomologyProfile{0, f.orders});
  if (!is_symmetric_mod_one(f))
    fail(ErrorKind::InvariantViolation, "linking form must be symmetric: q_ij/p_i != q_ji/p_j mod 1");
  if (!is_nondegenerate(f)) fail(ErrorKind::InvariantViolation, "linking form must be nondegenerate");
}

}  // namespace

LinkingForm make_linking_form(std::vector<BigInt> orders, const IntegerMatrix& q) {
  LinkingForm f = reduced(std::move(orders), q);
  check_common(f);
  for (Index i = 0; i < f.d(); ++i)
    if (gcd(f.q(i, i), f.orders[static_cast<std::size_t>(i)]) != 1)
      fail(ErrorKind::InvariantViolation, "linking form needs gcd(q_ii, p_i) = 1, fails at i = " + std::to_string(i));
  return f;
}

LinkingForm derived_linking_form(std::vector<BigInt> orders, const IntegerMatrix& q) {
  LinkingForm f = reduced(std::move(orders), q);
  check_common(f);
  if (f.primitive_diagonal()) return f;
  if (auto better = adapt_basis(f)) return *better;
  return f;
}

bool is_symmetric_mod_one(const LinkingForm& f) {
  for (Index i = 0; i < f.d(); ++i)
    for (Index j = i + 1; j < f.d(); ++j) {
      const BigInt& pi = f.orders[static_cast<std::size_t>(i)];
      const BigInt& pj = f.orders[static_cast<std::size_t>(j)];
      // q_ij/p_i - q_ji/p_j in Z  <=>  q_ij p_j - q_ji p_i = 0 mod p_i p_j
      if (mod_floor(f.q(i, j) * pj - f.q(j, i) * pi, pi * pj) != 0) return false;
    }
  return true;
}

Rational linking_eval(const LinkingForm& f, const std::vector<BigInt>& kappa, const std::vector<BigInt>& tau) {
  const Index d = f.d();
  if (static_cast<Index>(kappa.size()) != d || static_cast<Index>(tau.size()) != d)
    fail(ErrorKind::DimensionMismatch, "torsion vectors must have length " + std::to_string(d));
  Rational s = 0;
  for (Index i = 0; i < d; ++i) {
    if (kappa[static_cast<std::size_t>(i)] == 0) continue;
    BigInt row = 0;
    for (Index j = 0; j < d; ++j) row += f.q(i, j) * tau[static_cast<std::size_t>(j)];
    s += ratio(kappa[static_cast<std::size_t>(i)] * row, f.orders[static_cast<std::size_t>(i)]);
  }
  s.canonicalize();
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  return s - fl;
}

bool is_nondegenerate(const LinkingForm& f) {
  const Index d = f.d();
  if (d == 0) return true;
  // With P = p_d, Q(kappa, e_j) = sum_i kappa_i q_ij (P/p_i) / P.  The kernel
  // of B = [q_ij P/p_i]^T over Z_P contains every lift of a radical element;
  // each kappa_i has P/p_i lifts.
  const BigInt& big = f.orders.back();
  IntegerMatrix b(d, d);
  BigInt lifts = 1;
  for (Index i = 0; i < d; ++i) {
    const BigInt scale = big / f.orders[static_cast<std::size_t>(i)];
    lifts *= scale;
    for (Index j = 0; j < d; ++j) b(j, i) = f.q(i, j) * scale;
  }
  return solution_count_mod_n(b, big) == lifts;
}

namespace {

// Mixed-radix enumeration of T = (+) Z_{p_i}.
struct TorsionWalker {
  std::vector<std::int64_t> orders;
  std::int64_t size = 1;

  TorsionWalker(const std::vector<BigInt>& p, std::int64_t limit) {
    for (const auto& x : p) {
      const std::int64_t o = to_int64(x, ErrorKind::TorsionTooLarge);
      orders.push_back(o);
      if (o != 0 && size > limit / o)
        fail(ErrorKind::TorsionTooLarge, "torsion group exceeds " + std::to_string(limit) + " elements");
      size *= o;
    }
  }
  std::vector<std::int64_t> decode(std::int64_t code) const {
    std::vector<std::int64_t> v(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
      v[i] = code % orders[i];
      code /= orders[i];
    }
    return v;
  }
  std::int64_t encode(const std::vector<std::int64_t>& v) const {
    std::int64_t code = 0;
    for (std::size_t i = orders.size(); i-- > 0;) code = code * orders[i] + v[i];
    return code;
  }
  std::int64_t add(std::int64_t a, std::int64_t b) const {
    auto x = decode(a);
    auto y = decode(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + y[i]) % orders[i];
    return encode(x);
  }
};

// Q(x, y) * P mod P for P = p_d, with the form's entries prescaled.
struct ScaledForm {
  std::int64_t big = 1;
  std::vector<std::vector<std::int64_t>> c;  // c_ij = q_ij P/p_i mod P

  explicit ScaledForm(const LinkingForm& f) {
    const Index d = f.d();
    if (d > 0) big = to_int64(f.orders.back(), ErrorKind::TorsionTooLarge);
    c.assign(static_cast<std::size_t>(d), std::vector<std::int64_t>(static_cast<std::size_t>(d), 0));
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j)
        c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            to_int64(mod_floor(f.q(i, j) * (f.orders.back() / f.orders[static_cast<std::size_t>(i)]), f.orders.back()));
  }
  std::int64_t pair(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) const {
    __int128 s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      __int128 row = 0;
      for (std::size_t j = 0; j < y.size(); ++j) row += static_cast<__int128>(c[i][j]) * y[j];
      s += (row % big) * x[i];
      s %= big;
    }
    return static_cast<std::int64_t>(s);
  }
};

}  // namespace

bool is_nondegenerate_bruteforce(const LinkingForm& f, std::int64_t limit) {
  const TorsionWalker w(f.orders, limit);
  const ScaledForm s(f);
  const std::size_t d = f.orders.size();
  for (std::int64_t code = 1; code < w.size; ++code) {
    const auto x = w.decode(code);
    bool radical = true;
    for (std::size_t j = 0; j < d && radical; ++j) {
      std::vector<std::int64_t> e(d, 0);
      e[j] = 1;
      radical = s.pair(x, e) == 0;
    }
    if (radical) return false;
  }
  return true;
}

LinkingForm change_basis(const LinkingForm& f, const IntegerMatrix& gens, const std::vector<BigInt>& new_orders) {
  const Index n = gens.cols();
  IntegerMatrix q(n, n);
  for (Index a = 0; a < n; ++a) {
    std::vector<BigInt> x(static_cast<std::size_t>(f.d()));
    for (Index i = 0; i < f.d(); ++i) x[static_cast<std::size_t>(i)] = gens(i, a);
    for (Index b = 0; b < n; ++b) {
      std::vector<BigInt> y(static_cast<std::size_t>(f.d()));
      for (Index i = 0; i < f.d(); ++i) y[static_cast<std::size_t>(i)] = gens(i, b);
      const Rational v = linking_eval(f, x, y) * new_orders[static_cast<std::size_t>(a)];
      if (v.get_den() != 1) fail(ErrorKind::Internal, "generator order does not annihilate the form");
      q(a, b) = v.get_num();
    }
  }
  return reduced(new_orders, q);
}

std::optional<LinkingForm> adapt_basis(const LinkingForm& f, std::int64_t limit) {
  std::optional<TorsionWalker> walker;
  try {
    walker.emplace(f.orders, limit);
  } catch (const Error&) {
    return std::nullopt;
  }
  const TorsionWalker& w = *walker;
  const ScaledForm s(f);
  const std::size_t d = f.orders.size();

  auto order_of = [&](const std::vector<std::int64_t>& x) {
    std::int64_t o = 1;
    for (std::size_t i = 0; i < d; ++i) o = std::lcm(o, w.orders[i] / std::gcd(x[i], w.orders[i]));
    return o;
  };

  // Candidates for slot i: order p_i and Q(x,x) with exact denominator p_i.
  std::vector<std::vector<std::int64_t>> candidates(d);
  for (std::int64_t code = 1; code < w.size; ++code) {
    const auto x = w.decode(code);
    const std::int64_t o = order_of(x);
    for (std::size_t i = 0; i < d; ++i) {
      if (o != w.orders[i]) continue;
      // Q(x,x) = v / P; denominator exactly p_i  <=>  gcd(v / (P/p_i), p_i) = 1
      const std::int64_t v = s.pair(x, x);
      const std::int64_t scale = s.big / w.orders[i];
      if (v % scale != 0) continue;
      if (std::gcd(v / scale, w.orders[i]) == 1) candidates[i].push_back(code);
    }
  }

  // Fill slots from the largest order down; H is the span chosen so far.
  std::vector<std::int64_t> chosen(d, 0);
  std::int64_t budget = 2'000'000;
  std::function<bool(std::size_t, const std::unordered_set<std::int64_t>&)> fill =
      [&](std::size_t left, const std::unordered_set<std::int64_t>& h) -> bool {
    if (left == 0) return true;
    const std::size_t i = left - 1;
    for (std::int64_t x : candidates[i]) {
      if (--budget < 0) return false;
      bool independent = true;
      std::int64_t m = x;
      for (std::int64_t t = 1; t < w.orders[i] && independent; ++t) {
        if (h.count(m)) independent = false;
        m = w.add(m, x);
      }
      if (!independent) continue;
      std::unordered_set<std::int64_t> next;
      next.reserve(h.size() * static_cast<std::size_t>(w.orders[i]));
      for (std::int64_t y : h) {
        std::int64_t z = y;
        for (std::int64_t t = 0; t < w.orders[i]; ++t) {
          next.insert(z);
          z = w.add(z, x);
        }
      }
      chosen[i] = x;
      if (fill(i, next)) return true;
      if (budget < 0) return false;
    }
    return false;
  };
  if (!fill(d, std::unordered_set<std::int64_t>{0})) return std::nullopt;

  IntegerMatrix gens(static_cast<Index>(d), static_cast<Index>(d));
  for (std::size_t a = 0; a < d; ++a) {
    const auto x = w.decode(chosen[a]);
    for (std::size_t i = 0; i < d; ++i) gens(static_cast<Index>(i), static_cast<Index>(a)) = static_cast<long>(x[i]);
  }
  return change_basis(f, gens, f.orders);
}

// --- homology and cohomology orders ----------------------------------------

HomologyProfile homology_from_complex(const CellComplex& c, int degree) {
  if (degree < 0 || degree > 3) fail(ErrorKind::IndexOutOfRange, "homology degree must be 0..3");
  const CellComplex checked = make_cell_complex(c.d1, c.d2, c.d3);
  const IntegerMatrix out = checked.boundary(degree);
  const IntegerMatrix in = checked.boundary(degree + 1);
  const Index chains = in.rows();
  const auto s_out = smith_normal_form(out);
  const auto s_in = smith_normal_form(in);
  HomologyProfile h;
  h.b1 = chains - s_out.rank - s_in.rank;
  for (const auto& dv : s_in.divisors)
    if (dv > 1) h.torsion.push_back(dv);
  return h;
}

BigInt h1_order_mod_n(const HomologyProfile& h, const BigInt& n) {
  if (n < 1) fail(ErrorKind::InvalidModulus, "modulus must be >= 1, got " + n.get_str());
  BigInt r = pow(n, static_cast<unsigned long>(h.b1));
  for (const auto& p : h.torsion) r *= gcd(n, p);
  return r;
}

ParityClassification classify_parity(const HomologyProfile& h, const BigInt& k) {
  if (k < 1) fail(ErrorKind::InvalidCoupling, "coupling k must be >= 1");
  ParityClassification c;
  for (const auto& p : h.torsion) {
    const BigInt g = gcd(k, p);
    const BigInt pp = p / g;
    c.p_prime.push_back(pp);
    c.k_prime.push_back(k / g);
    const BigInt r = pp % 4;
    if (r == 2) ++c.beta;
    else if (r == 0) ++c.gamma;
    else ++c.alpha;
  }
  return c;
}

bool cup_obstruction_vanishes(const HomologyProfile& h, const BigInt& k) {
  return classify_parity(h, k).beta == 0;
}

}  // namespace abinv
