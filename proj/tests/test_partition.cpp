#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "abinv/partition_functions.hpp"
#include "abinv/rt_invariant.hpp"
#include "oracles.hpp"

using namespace abinv;

namespace {

std::vector<BigInt> B(std::initializer_list<long> xs) {
  std::vector<BigInt> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("cs partition examples") {
  for (long k = 1; k < 6; ++k) {
    const auto z = cs_partition(to_homology(sphere3()), k);
    REQUIRE(z.value.exact);
    CHECK(std::get<BigInt>(*z.value.exact) == 1);
  }
  const auto rp3 = cs_partition(to_homology(lens_space(2, 1)), 1);
  CHECK(rp3.value.is_exact_zero());
  // e^{+2 pi i k Q}: 1 + i + 1 + i
  const auto l41 = cs_partition(to_homology(lens_space(4, 1)), 1);
  CHECK(approx_equal(l41.value.value, {2.0, 2.0}));
  CHECK(*l41.abs_squared == 8);
  CHECK(kind_of([] { cs_partition(to_homology(sphere3()), 0); }) == ErrorKind::InvalidCoupling);
  const HomologyData no_form{{0, B({3})}, std::nullopt};
  CHECK(kind_of([&] { cs_partition(no_form, 1); }) == ErrorKind::UnsupportedPresentation);
}

TEST_CASE("bf partition examples") {
  CHECK(std::get<BigInt>(*bf_partition_bruteforce(to_homology(sphere3()), 3).value.exact) == 1);
  CHECK(std::get<BigInt>(*bf_partition_bruteforce(to_homology(lens_space(2, 1)), 1).value.exact) == 2);
  CHECK(std::get<BigInt>(*bf_partition_bruteforce(to_homology(lens_space(4, 1)), 2).value.exact) == 8);
  CHECK(bf_partition_closed({0, {}}, 5) == 1);
  CHECK(bf_partition_closed({0, B({2})}, 1) == 2);
  CHECK(bf_partition_closed({0, B({4})}, 2) == 8);
}

TEST_CASE("cs closed form examples") {
  CHECK(cs_abs_squared_closed({0, B({2})}, 1) == 0);
  CHECK(cs_abs_squared_closed({0, B({2})}, 2) == 4);
  CHECK(cs_abs_squared_closed({0, B({4})}, 1) == 8);
}

TEST_CASE("brute force agrees with a linking_eval oracle") {
  const std::vector<ManifoldPresentation> ms{lens_space(5, 2), lens_space(8, 3), lens_space(6, 1),
                                             connected_sum({lens_space(2, 1), lens_space(4, 3)}),
                                             connected_sum({lens_space(3, 1), lens_space(3, 2)}),
                                             ManifoldPresentation{SurgeryPresentation{{integer_matrix({{2, 1}, {1, 4}})}}}};
  for (const auto& m : ms) {
    const auto h = to_homology(m);
    for (long k = 1; k <= 6; ++k) {
      CHECK(approx_equal(cs_partition(h, k).value.value, oracle::cs(*h.linking, k)));
      CHECK(approx_equal(bf_partition_bruteforce(h, k).value.value, oracle::bf(*h.linking, k)));
    }
  }
}

TEST_CASE("lemma 2 on lens spaces and sums") {
  for (long p = 2; p <= 12; ++p)
    for (long q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const auto h = to_homology(lens_space(p, q));
      for (long k = 1; k <= 12; ++k) {
        const auto r = verify_lemma2(h, k);
        CHECK_MESSAGE(r.passed(), "L(" << p << "," << q << ") k=" << k);
      }
    }
  for (long k = 1; k <= 4; ++k) {
    CHECK(verify_lemma2(to_homology(connected_sum({lens_space(2, 1), lens_space(4, 1)})), k).passed());
    const auto s = verify_lemma2(to_homology(s1_x_s2()), k);
    CHECK(s.passed());
    CHECK(cs_abs_squared_closed({1, {}}, k) == 1);
    CHECK(bf_partition_closed({1, {}}, k) == 1);
  }
}

TEST_CASE("bf is real and positive; cs is periodic in k") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> dim(1, 3), ent(-5, 5);
  int tested = 0;
  while (tested < 25) {
    const Index m = dim(rng);
    IntegerMatrix l(m, m);
    for (Index i = 0; i < m; ++i)
      for (Index j = i; j < m; ++j) l(i, j) = l(j, i) = ent(rng);
    const auto h = from_surgery({l});
    if (h.profile.torsion_order() > 60) continue;
    ++tested;
    for (long k : {1L, 2L, 7L, 50L}) {
      const auto z = bf_partition_bruteforce(h, k);
      CHECK(std::abs(z.value.im()) < 1e-9 * (1.0 + std::abs(z.value.re())));
      CHECK(z.value.re() > 0.5);
      CHECK(*round_if_integral(z.value.re()) == bf_partition_closed(h.profile, k));
      CHECK(cs_abs_squared_closed(h.profile, k) <= bf_partition_closed(h.profile, 2 * k));
    }
    if (h.profile.d() == 0) continue;
    const long pd = h.profile.torsion.back().get_si();
    for (long k = 1; k <= 5; ++k) {
      const auto a = cs_sum(*h.linking, k);
      const auto b = cs_sum(*h.linking, k + pd);
      CHECK(a.coefficients() == b.coefficients());
    }
  }
}

TEST_CASE("cs normalization matches the rt closed form") {
  const std::vector<HomologyProfile> hs{{0, {}}, {1, {}}, {0, B({2})}, {0, B({4})}, {2, B({2, 6})}, {1, B({3, 12})}};
  for (const auto& h : hs)
    for (long k = 1; k <= 12; ++k) {
      const Rational lhs = ratio(pow(BigInt(2 * k), static_cast<unsigned long>(h.b1)) * cs_abs_squared_closed(h, k), h.torsion_order());
      CHECK(lhs == Rational(tau_abs_squared_closed(h, k)));
    }
}

TEST_CASE("caps") {
  const HomologyData big{{0, B({20000})}, make_linking_form(B({20000}), integer_matrix({{1}}))};
  CHECK(kind_of([&] { bf_partition_bruteforce(big, 1); }) == ErrorKind::TorsionTooLarge);
  CHECK_NOTHROW(cs_partition(big, 1));
  CHECK(equivalent_coupling({0, B({4, 12})}, 2) == 10);
  CHECK(round_if_integral(3.0000001));
  CHECK_FALSE(round_if_integral(3.4));
}
