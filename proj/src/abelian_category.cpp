#include "abinv/abelian_category.hpp"

#include <set>
#include <string>

namespace abinv {

CategoryZn::CategoryZn(std::int64_t level, int eps) : n(level), epsilon(eps) {
  if (level < 1) fail(ErrorKind::InvalidModulus, "category level must be >= 1");
  if (eps != 1 && eps != -1) fail(ErrorKind::BadRange, "epsilon must be +1 or -1");
}

std::int64_t CategoryZn::reduce(std::int64_t p) const {
  const std::int64_t r = p % n;
  return r < 0 ? r + n : r;
}

namespace {

// epsilon^e as an exponent of exp(2 pi i / 2N)
std::int64_t sign_exponent(const CategoryZn& cat, std::int64_t e) {
  return cat.epsilon == -1 && (e % 2 != 0) ? cat.n : 0;
}

}  // namespace

PhaseExponent braiding(const CategoryZn& cat, std::int64_t p, std::int64_t q) {
  const __int128 e = static_cast<__int128>(2) * cat.reduce(p) * cat.reduce(q);
  return cat.phase(static_cast<std::int64_t>(e % (2 * cat.n)));
}

PhaseExponent twist(const CategoryZn& cat, std::int64_t p) {
  const std::int64_t r = cat.reduce(p);
  const __int128 e = static_cast<__int128>(2) * r * r + sign_exponent(cat, r);
  return cat.phase(static_cast<std::int64_t>(e % (2 * cat.n)));
}

PhaseExponent s_entry(const CategoryZn& cat, std::int64_t p, std::int64_t q) {
  const std::int64_t a = cat.reduce(p);
  const std::int64_t b = cat.reduce(q);
  return cat.phase(sign_exponent(cat, a + b)) * braiding(cat, b, a) * braiding(cat, a, b);
}

std::vector<std::vector<PhaseExponent>> s_matrix(const CategoryZn& cat) {
  std::vector<std::vector<PhaseExponent>> s(static_cast<std::size_t>(cat.n));
  for (std::int64_t p = 0; p < cat.n; ++p)
    for (std::int64_t q = 0; q < cat.n; ++q) s[static_cast<std::size_t>(p)].push_back(s_entry(cat, p, q));
  return s;
}

PhaseExponent dimension(const CategoryZn& cat, std::int64_t p) { return s_entry(cat, p, 0); }

bool is_modular(const CategoryZn& cat) {
  std::set<std::int64_t> alphas;
  for (std::int64_t p = 0; p < cat.n; ++p) alphas.insert((4 * p) % (2 * cat.n));
  const bool distinct = static_cast<std::int64_t>(alphas.size()) == cat.n;
  if (distinct != (cat.n % 2 == 1))
    fail(ErrorKind::Internal, "Vandermonde criterion disagrees with the parity of N = " + std::to_string(cat.n));
  return distinct;
}

CyclotomicSum gauss_sum(std::int64_t n) {
  if (n < 1) fail(ErrorKind::InvalidModulus, "Gauss sum level must be >= 1");
  CyclotomicSum s(n);
  for (std::int64_t p = 0; p < n; ++p) s.add(-static_cast<std::int64_t>((static_cast<__int128>(p) * p) % n));
  return s;
}

ComplexValue gauss_delta(std::int64_t n) { return gauss_sum(n).to_value(); }

CyclotomicSum gauss_sum_half(std::int64_t k) {
  if (k < 1) fail(ErrorKind::InvalidCoupling, "k must be >= 1");
  const std::int64_t m = 4 * k;
  CyclotomicSum s(m);
  for (std::int64_t p = 0; p < 2 * k; ++p) s.add(-static_cast<std::int64_t>((static_cast<__int128>(p) * p) % m));
  return s;
}

ComplexValue gauss_delta_half(std::int64_t k) { return gauss_sum_half(k).to_value(); }

std::int64_t gauss_delta_norm_squared(std::int64_t n) {
  if (n < 1) fail(ErrorKind::InvalidModulus, "Gauss sum level must be >= 1");
  if (n % 2 == 1) return n;
  if (n % 4 == 0) return 2 * n;
  return 0;
}

PhaseExponent gauss_delta_phase(std::int64_t n) {
  if (n < 1) fail(ErrorKind::InvalidModulus, "Gauss sum level must be >= 1");
  // Classical evaluation of the conjugate quadratic Gauss sum.
  if (n % 4 == 1) return {0, 8};
  if (n % 4 == 3) return {6, 8};  // -i
  if (n % 4 == 0) return {7, 8};  // (1 - i)/sqrt 2
  fail(ErrorKind::NoInvariantAtLevel, "Delta_N = 0 for N = 2 mod 4");
}

Report verify_ribbon_axioms(const CategoryZn& cat) {
  Report r;
  r.title = "ribbon axioms N=" + std::to_string(cat.n) + " epsilon=" + std::to_string(cat.epsilon);
  const std::int64_t n = cat.n;

  auto first_failure = [&](auto&& pred) -> std::string {
    for (std::int64_t p = 0; p < n; ++p)
      for (std::int64_t q = 0; q < n; ++q)
        if (!pred(p, q)) return "p=" + std::to_string(p) + " q=" + std::to_string(q);
    return {};
  };
  auto record = [&](const std::string& name, const std::string& where) {
    r.add(name, where.empty() ? "all pairs" : where, "holds", where.empty(),
          where.empty() ? "" : "first counterexample");
  };

  record("c symmetric", first_failure([&](auto p, auto q) { return braiding(cat, p, q) == braiding(cat, q, p); }));
  record("c bilinear", first_failure([&](auto p, auto q) {
           for (std::int64_t s = 0; s < n; ++s)
             if (!(braiding(cat, p, q + s) == braiding(cat, p, q) * braiding(cat, p, s))) return false;
           return true;
         }));
  record("c unit", first_failure([&](auto p, auto) { return braiding(cat, p, 0).is_one(); }));
  record("c_{1,1}^N = 1", braiding(cat, 1, 1).pow(n).is_one() ? "" : "p=1 q=1");
  record("theta_0 = 1", twist(cat, 0).is_one() ? "" : "p=0");
  record("theta_{p+q} = c_{q,p} c_{p,q} theta_p theta_q", first_failure([&](auto p, auto q) {
           return twist(cat, p + q) == braiding(cat, q, p) * braiding(cat, p, q) * twist(cat, p) * twist(cat, q);
         }));
  record("theta_{p*} = theta_p", first_failure([&](auto p, auto) { return twist(cat, n - p) == twist(cat, p); }));
  record("S_{p,q} = epsilon^{p+q} theta_{p+q} / (theta_p theta_q)", first_failure([&](auto p, auto q) {
           const auto rhs = cat.phase(cat.epsilon == -1 && ((p + q) % 2) ? n : 0) * twist(cat, p + q) *
                            twist(cat, p).inverse() * twist(cat, q).inverse();
           return s_entry(cat, p, q) == rhs;
         }));
  record("S symmetric", first_failure([&](auto p, auto q) { return s_entry(cat, p, q) == s_entry(cat, q, p); }));
  record("dim(p) = epsilon^p", first_failure([&](auto p, auto) {
           return dimension(cat, p) == cat.phase(cat.epsilon == -1 && (p % 2) ? n : 0);
         }));
  return r;
}

}  // namespace abinv
