#include <doctest.h>

#include <random>

#include "abinv/exact_linalg.hpp"
#include "oracles.hpp"

using namespace abinv;
using oracle::determinantal_divisors;
using oracle::random_matrix;

namespace {

// Product of elementary operations, so unimodular by construction.
IntegerMatrix random_unimodular(std::mt19937& rng, Index n) {
  IntegerMatrix p = IntegerMatrix::Identity(n, n);
  std::uniform_int_distribution<int> idx(0, static_cast<int>(n) - 1);
  std::uniform_int_distribution<int> f(-2, 2);
  for (int step = 0; step < 6; ++step) {
    const int i = idx(rng);
    const int j = idx(rng);
    if (i == j) continue;
    p.row(i) += f(rng) * p.row(j);
  }
  return p;
}

}  // namespace

TEST_CASE("snf small examples") {
  auto z = smith_normal_form(IntegerMatrix(IntegerMatrix::Zero(2, 3)));
  CHECK(z.divisors == std::vector<BigInt>{0, 0});
  CHECK(z.rank == 0);

  auto id = smith_normal_form(IntegerMatrix(IntegerMatrix::Identity(3, 3)));
  CHECK(id.divisors == std::vector<BigInt>{1, 1, 1});

  const IntegerMatrix m = integer_matrix({{2, 0}, {0, 3}});
  auto s = smith_normal_form(m);
  CHECK(s.divisors == std::vector<BigInt>{1, 6});
  CHECK(s.u * m * s.v == s.diagonal());

  auto empty = smith_normal_form(IntegerMatrix(0, 0));
  CHECK(empty.divisors.empty());
}

TEST_CASE("snf agrees with determinantal divisors on random matrices") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> dim(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const Index r = dim(rng);
    const Index c = dim(rng);
    const IntegerMatrix m = random_matrix(rng, r, c, -9, 9);
    const auto s = smith_normal_form(m);
    REQUIRE(s.u * m * s.v == s.diagonal());
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i) {
      CHECK(s.divisors[i] >= 0);
      if (s.divisors[i + 1] != 0) CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
    }
    const auto dd = determinantal_divisors(m);
    BigInt prod = 1;
    for (std::size_t i = 0; i < dd.size(); ++i) {
      prod *= s.divisors[i];
      CHECK(prod == dd[i]);
    }
    const IntegerMatrix mt = m.transpose();
    CHECK(smith_normal_form(mt).divisors == s.divisors);
  }
}

TEST_CASE("signature") {
  CHECK(signature(integer_matrix({{1}})) == Inertia{1, 0, 0});
  CHECK(signature(integer_matrix({{0, 1}, {1, 0}})) == Inertia{1, 1, 0});
  CHECK(signature(integer_matrix({{2, 0, 0}, {0, -1, 0}, {0, 0, 0}})) == Inertia{1, 1, 1});
  CHECK(signature(IntegerMatrix(0, 0)) == Inertia{0, 0, 0});
  CHECK_THROWS_AS(signature(integer_matrix({{0, 1}, {2, 0}})), Error);
}

TEST_CASE("signature is a congruence invariant") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = dim(rng);
    IntegerMatrix a = random_matrix(rng, n, n, -5, 5);
    const IntegerMatrix s = a + a.transpose();
    const IntegerMatrix p = random_unimodular(rng, n);
    const IntegerMatrix t = p.transpose() * s * p;
    const auto i1 = signature(s);
    CHECK(i1 == signature(t));
    CHECK(i1.positive + i1.negative + i1.zero == n);
    CHECK(i1.positive + i1.negative == smith_normal_form(s).rank);
  }
}

TEST_CASE("rational inverse") {
  CHECK(rational_inverse(integer_matrix({{2}}))(0, 0) == Rational(1, 2));
  const auto inv = rational_inverse(integer_matrix({{2, 1}, {1, 1}}));
  CHECK(inv(0, 0) == 1);
  CHECK(inv(0, 1) == -1);
  CHECK(inv(1, 0) == -1);
  CHECK(inv(1, 1) == 2);
  CHECK(rational_inverse(IntegerMatrix(IntegerMatrix::Identity(3, 3))) == RationalMatrix::Identity(3, 3));
  try {
    rational_inverse(integer_matrix({{1, 2}, {2, 4}}));
    FAIL("expected Singular");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Singular);
  }
  std::mt19937 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const IntegerMatrix m = random_matrix(rng, 3, 3, -6, 6);
    if (determinant(m) == 0) continue;
    CHECK(m.cast<Rational>() * rational_inverse(m) == RationalMatrix::Identity(3, 3));
  }
}

TEST_CASE("determinant") {
  CHECK(determinant(integer_matrix({{2, 1}, {1, 1}})) == 1);
  CHECK(determinant(integer_matrix({{0, 1}, {1, 0}})) == -1);
  CHECK(determinant(integer_matrix({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}})) == -3);
  CHECK(determinant(integer_matrix({{0, 0}, {0, 5}})) == 0);
}

TEST_CASE("solution count mod n") {
  CHECK(solution_count_mod_n(integer_matrix({{2}}), 4) == 2);
  CHECK(solution_count_mod_n(IntegerMatrix(IntegerMatrix::Zero(1, 2)), 5) == 25);
  CHECK(solution_count_mod_n(IntegerMatrix(IntegerMatrix::Identity(2, 2)), 7) == 1);
  CHECK_THROWS_AS(solution_count_mod_n(integer_matrix({{1}}), 0), Error);
}

TEST_CASE("solution count matches enumeration") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> dim(1, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const IntegerMatrix m = random_matrix(rng, dim(rng), dim(rng), -6, 6);
    for (long n = 1; n <= 12; ++n) CHECK(solution_count_mod_n(m, n) == oracle::solution_count(m, n));
  }
}

TEST_CASE("helpers") {
  CHECK(mod_floor(-3, 5) == 2);
  CHECK(mod_floor(7, 5) == 2);
  CHECK(to_int64(BigInt(42)) == 42);
  CHECK_THROWS_AS(to_int64(pow(BigInt(2), 80)), Error);
  CHECK_THROWS_AS(integer_matrix({{1, 2}, {3}}), Error);
}
