#include <doctest.h>

#include <numeric>
#include <random>

#include "abinv/rt_invariant.hpp"
#include "abinv/tv_invariant.hpp"

using namespace abinv;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

// Counts labelings by plain nested enumeration with face sums recomputed from scratch.
long naive_closed(const CellComplex& c, long n) {
  const Index e = c.edges(), f = c.faces();
  std::vector<long> l(static_cast<std::size_t>(e), 0);
  long total = 1, count = 0;
  for (Index i = 0; i < e; ++i) total *= n;
  for (long t = 0; t < total; ++t) {
    long x = t;
    for (Index i = 0; i < e; ++i) {
      l[i] = x % n;
      x /= n;
    }
    bool ok = true;
    for (Index j = 0; j < f && ok; ++j) {
      long s = 0;
      for (Index i = 0; i < e; ++i) s += c.d2(i, j).get_si() * l[i];
      ok = ((s % n) + n) % n == 0;
    }
    count += ok;
  }
  return count;
}

}  // namespace

TEST_CASE("face sums") {
  const auto rp3 = fixtures::rp3_heegaard();
  for (long n = 1; n <= 12; ++n) {
    const Labeling l{{1 % n, (n - 1) % n, 0, 1 % n, (n - 1) % n}, n};
    const std::vector<long> expected{0, 0, 2 - n, 2 - n, -4};
    for (Index j = 0; j < 5; ++j) CHECK(face_sum(rp3, l, j) == ((expected[j] % n) + n) % n);
    CHECK(is_closed(rp3, l) == (n <= 2));
  }
  const Labeling bad{{1, 2}, 5};
  CHECK(kind_of([&] { face_sum(rp3, bad, 0); }) == ErrorKind::DimensionMismatch);
  const Labeling fine{{1, 2, 3, 4, 0}, 5};
  CHECK(kind_of([&] { face_sum(rp3, fine, 5); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("gauging") {
  const auto rp3 = fixtures::rp3_heegaard();
  const Labeling g = gauging_differential(rp3, {{1, 0}, 4});
  CHECK(g.values == std::vector<std::int64_t>{1, 3, 0, 3, 1});
  CHECK(is_closed(rp3, g));
  std::mt19937 rng(2);
  for (long n = 2; n <= 9; ++n)
    for (int t = 0; t < 10; ++t) {
      std::uniform_int_distribution<long> u(0, n - 1);
      const Gauging gg{{u(rng), u(rng)}, n};
      CHECK(is_closed(rp3, gauging_differential(rp3, gg)));
    }
}

TEST_CASE("turaev-viro on the fixtures") {
  const auto s3 = fixtures::s3_heegaard();
  const auto s1s2 = fixtures::s1xs2_heegaard();
  const auto rp3 = fixtures::rp3_heegaard();
  for (long n = 1; n <= 20; ++n) {
    CHECK(tv_bruteforce(s3, n) == 1);
    CHECK(tv_bruteforce(s1s2, n) == n);
    CHECK(tv_bruteforce(rp3, n) == std::gcd(n, 2L));
    CHECK(tv_algebraic(rp3, n) == std::gcd(n, 2L));
    CHECK(tv_algebraic(fixtures::lens_cells(2), n) == tv_bruteforce(rp3, n));
    for (long p : {3L, 5L, 6L, 12L}) CHECK(tv_algebraic(fixtures::lens_cells(p), n) == std::gcd(n, p));
  }
  CHECK(tv_algebraic(fixtures::lens_cells(5), 10) == 5);
}

TEST_CASE("closed labelings against naive enumeration") {
  const std::vector<CellComplex> cs{fixtures::s3_heegaard(), fixtures::s1xs2_heegaard(), fixtures::rp3_heegaard(),
                                    fixtures::lens_cells(4), fixtures::lens_cells(6)};
  for (const auto& c : cs)
    for (long n = 1; n <= 7; ++n) {
      const long naive = naive_closed(c, n);
      CHECK(closed_labelings_bruteforce(c, n) == naive);
      CHECK(closed_labelings_algebraic(c, n) == naive);
      // closed = |H^1(M; Z_n)| * n^{v-1}
      const auto h = homology_from_complex(c, 1);
      CHECK(BigInt(naive) == h1_order_mod_n(h, n) * pow(BigInt(n), static_cast<unsigned long>(c.vertices() - 1)));
    }
}

TEST_CASE("tv errors") {
  const auto rp3 = fixtures::rp3_heegaard();
  CHECK(kind_of([&] { closed_labelings_bruteforce(rp3, 40); }) == ErrorKind::EnumerationTooLarge);
  CHECK_NOTHROW(tv_algebraic(rp3, 40));
  CHECK(kind_of([&] { tv_bruteforce(rp3, 0); }) == ErrorKind::InvalidModulus);
}

TEST_CASE("lemma 3 tv") {
  for (long n = 1; n <= 12; ++n) {
    const auto r = verify_lemma3_tv(ManifoldPresentation{CellsPresentation{fixtures::rp3_heegaard()}}, n);
    CHECK_MESSAGE(r.passed(), "rp3 n=" << n);
    CHECK(verify_lemma3_tv(sphere3(), n).passed());
    CHECK(verify_lemma3_tv(s1_x_s2(), n).passed());
    for (long p : {2L, 3L, 4L, 5L, 8L}) CHECK_MESSAGE(verify_lemma3_tv(lens_space(p, 1), n).passed(), "p=" << p << " n=" << n);
  }
}

TEST_CASE("odd levels: Upsilon = |tau|^2") {
  for (long p = 2; p <= 9; ++p)
    for (long n = 1; n <= 15; n += 2) {
      const auto link = lens_chain(p, 1);
      CHECK(tv_algebraic(fixtures::lens_cells(p), n) == *rt_odd(link, n).abs_squared_exact);
    }
}
