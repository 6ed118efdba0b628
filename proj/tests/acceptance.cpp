// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance [--expect-fail N ...]
//
// Exit status is 0 when every criterion passes except the listed ones, and the
// listed ones fail.  A listed criterion that starts passing is reported too.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "abinv/abelian_category.hpp"
#include "abinv/partition_functions.hpp"
#include "abinv/rt_invariant.hpp"
#include "abinv/tv_invariant.hpp"
#include "oracles.hpp"

using namespace abinv;

namespace {

constexpr double kRel = 1e-6;

bool rel_close(double a, double b) { return std::abs(a - b) <= kRel * (1.0 + std::abs(b)); }

// Collects failed sub-checks; the first few are printed under the criterion line.
struct Tally {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
  void expect(const Report& r, const std::string& where) {
    for (const auto& c : r.checks) expect(c.passed, where + ": " + c.name + " (" + c.lhs + " vs " + c.rhs + ")");
  }
  bool passed() const { return failures.empty(); }
};

SurgeryLink surgery_of(const ManifoldPresentation& m) { return *to_surgery(m); }

std::vector<std::pair<long, long>> lens_params(long pmin, long pmax) {
  std::vector<std::pair<long, long>> out;
  for (long p = pmin; p <= pmax; ++p)
    for (long q = 1; q < p; ++q)
      if (std::gcd(p, q) == 1) out.emplace_back(p, q);
  return out;
}

// 1. RT examples on S^3, S^1 x S^2 and RP^3.
Tally criterion1() {
  Tally t;
  const auto s1s2 = surgery_of(s1_x_s2());
  const auto rp3 = surgery_of(lens_space(2, 1));
  for (long k = 1; k <= 6; ++k) {
    const auto s3 = rt_even({IntegerMatrix(0, 0)}, k);
    const bool exact_one = s3.value.exact && std::holds_alternative<BigInt>(*s3.value.exact) &&
                           std::get<BigInt>(*s3.value.exact) == 1;
    t.expect(exact_one, "tau_4k(S3) = 1 exactly, k=" + std::to_string(k));
    t.expect(rel_close(rt_even(s1s2, k).abs_squared(), 2.0 * k), "|tau_4k(S1xS2)|^2 = 2k, k=" + std::to_string(k));
    const double want = k % 2 == 0 ? 2.0 : 0.0;
    t.expect(rel_close(rt_even(rp3, k).abs_squared(), want),
             "|tau_4k(RP3)|^2 = " + std::to_string(int(want)) + ", k=" + std::to_string(k));
  }
  return t;
}

// 2. TV state sums on the three cell fixtures, both methods.
Tally criterion2() {
  Tally t;
  const auto s3 = fixtures::s3_heegaard();
  const auto s1s2 = fixtures::s1xs2_heegaard();
  const auto rp3 = fixtures::rp3_heegaard();
  for (long n = 1; n <= 12; ++n) {
    const std::string tag = " N=" + std::to_string(n);
    for (auto* f : {&tv_bruteforce, &tv_algebraic}) {
      const std::string how = f == &tv_bruteforce ? " brute" : " algebraic";
      t.expect(f(s3, n) == 1, "Upsilon(S3) = 1" + how + tag);
      t.expect(f(s1s2, n) == n, "Upsilon(S1xS2) = N" + how + tag);
      t.expect(f(rp3, n) == std::gcd(n, 2L), "Upsilon(RP3) = gcd(N,2)" + how + tag);
    }
  }
  return t;
}

// 3. Lemma 2 on lens spaces and sums of two lens spaces.
Tally criterion3() {
  Tally t;
  for (const auto& [p, q] : lens_params(2, 10)) {
    const auto h = to_homology(lens_space(p, q));
    for (long k = 1; k <= 10; ++k)
      t.expect(verify_lemma2(h, k), "L(" + std::to_string(p) + "," + std::to_string(q) + ") k=" + std::to_string(k));
  }
  const auto small = lens_params(2, 6);
  for (std::size_t a = 0; a < small.size(); ++a)
    for (std::size_t b = a; b < small.size(); ++b) {
      const auto [p1, q1] = small[a];
      const auto [p2, q2] = small[b];
      const auto h = to_homology(connected_sum({lens_space(p1, q1), lens_space(p2, q2)}));
      const std::string tag = "L(" + std::to_string(p1) + "," + std::to_string(q1) + ")#L(" + std::to_string(p2) + "," +
                              std::to_string(q2) + ")";
      for (long k = 1; k <= 10; ++k) t.expect(verify_lemma2(h, k), tag + " k=" + std::to_string(k));
    }
  return t;
}

// 4. Lemma 3 part 1 on lens chains.
Tally criterion4() {
  Tally t;
  for (const auto& [p, q] : lens_params(2, 8)) {
    const ManifoldPresentation m{SurgeryPresentation{lens_chain(p, q)}};
    for (long k = 1; k <= 6; ++k)
      t.expect(verify_lemma3_part1(m, k), "L(" + std::to_string(p) + "," + std::to_string(q) + ") k=" + std::to_string(k));
  }
  for (long k = 1; k <= 6; ++k) {
    t.expect(verify_lemma3_part1(sphere3(), k), "S3 k=" + std::to_string(k));
    t.expect(verify_lemma3_part1(s1_x_s2(), k), "S1xS2 k=" + std::to_string(k));
  }
  return t;
}

// 5. Upsilon_n = |H^1(M;Z_n)| = n^b1/prod p Z_BF_n, and |tau_n|^2 = Upsilon_n for odd n.
Tally criterion5() {
  Tally t;
  struct Fixture {
    std::string name;
    CellComplex cells;
    SurgeryLink link;
  };
  const std::vector<Fixture> fs{{"S3", fixtures::s3_heegaard(), surgery_of(sphere3())},
                                {"S1xS2", fixtures::s1xs2_heegaard(), surgery_of(s1_x_s2())},
                                {"RP3", fixtures::rp3_heegaard(), surgery_of(lens_space(2, 1))}};
  for (const auto& f : fs) {
    const auto h = homology_from_complex(f.cells, 1);
    t.expect(h == from_surgery(f.link).profile, f.name + ": cells and surgery give the same H_1");
    for (long n = 1; n <= 12; ++n) {
      const std::string tag = f.name + " n=" + std::to_string(n) + ": ";
      const BigInt brute = tv_bruteforce(f.cells, n);
      const BigInt alg = tv_algebraic(f.cells, n);
      const BigInt h1 = h1_order_mod_n(h, n);
      const BigInt prod = h.torsion_order();
      const BigInt via_bf = pow(BigInt(n), static_cast<unsigned long>(h.b1)) * bf_partition_closed(h, n);
      t.expect(brute == alg, tag + "brute = algebraic");
      t.expect(alg == h1, tag + "Upsilon = |H^1|");
      t.expect(via_bf % prod == 0 && via_bf / prod == alg, tag + "Upsilon = n^b1/prod p Z_BF_n");
      if (n % 2 == 1) t.expect(rel_close(rt_odd(f.link, n).abs_squared(), alg.get_d()), tag + "|tau_n|^2 = Upsilon");
    }
    // the generic report, run through the cell presentation
    for (long n = 1; n <= 12; ++n)
      t.expect(verify_lemma3_tv(ManifoldPresentation{CellsPresentation{f.cells}}, n), f.name + " n=" + std::to_string(n));
  }
  return t;
}

// 6. Upsilon_2(RP3) = 2 but |tau_4(RP3)|^2 = 0.
Tally criterion6() {
  Tally t;
  t.expect(tv_bruteforce(fixtures::rp3_heegaard(), 2) == 2, "Upsilon_2(RP3) = 2 (brute)");
  t.expect(tv_algebraic(fixtures::rp3_heegaard(), 2) == 2, "Upsilon_2(RP3) = 2 (algebraic)");
  const auto tau = rt_even(surgery_of(lens_space(2, 1)), 1);
  t.expect(tau.abs_squared_exact && *tau.abs_squared_exact == 0, "|tau_4(RP3)|^2 = 0 exactly");
  t.expect(tau.value.is_exact_zero(), "tau_4(RP3) = 0 exactly");
  return t;
}

// 7. Modularity and Gauss sums.
Tally criterion7() {
  Tally t;
  for (long n = 1; n <= 200; ++n) t.expect(is_modular(CategoryZn(n)) == (n % 2 == 1), "is_modular(" + std::to_string(n) + ")");
  for (long n = 1; n <= 100; ++n) {
    const auto zero = gauss_sum(n).is_zero();
    t.expect(zero && *zero == (n % 4 == 2), "Delta_" + std::to_string(n) + " = 0 iff N = 2 mod 4");
    t.expect(gauss_delta(n).is_exact_zero() == (n % 4 == 2), "gauss_delta exact zero flag, N=" + std::to_string(n));
    const double d2 = gauss_delta(n).abs_squared();
    const double oracle2 = std::norm(oracle::gauss(n, n));
    if (n % 2 == 1) t.expect(rel_close(d2, double(n)), "|Delta_N|^2 = N, N=" + std::to_string(n));
    if (n % 4 == 0) t.expect(rel_close(d2, 2.0 * n), "|Delta_N|^2 = 2N, N=" + std::to_string(n));
    t.expect(std::abs(d2 - oracle2) <= kRel * (1.0 + oracle2), "|Delta_N|^2 matches direct sum, N=" + std::to_string(n));
  }
  return t;
}

// 8. Property suites.
Tally criterion8() {
  Tally t;
  std::mt19937 rng(8);

  std::uniform_int_distribution<int> dim(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const IntegerMatrix m = oracle::random_matrix(rng, dim(rng), dim(rng), -9, 9);
    const auto s = smith_normal_form(m);
    bool ok = s.u * m * s.v == s.diagonal();
    const auto dd = oracle::determinantal_divisors(m);
    BigInt prod = 1;
    for (std::size_t i = 0; i < dd.size(); ++i) {
      prod *= s.divisors[i];
      ok = ok && prod == dd[i];
    }
    t.expect(ok, "SNF vs determinantal divisors, trial " + std::to_string(trial));
  }

  std::uniform_int_distribution<int> small(1, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const IntegerMatrix m = oracle::random_matrix(rng, small(rng), small(rng), -6, 6);
    for (long n = 1; n <= 12; ++n)
      t.expect(solution_count_mod_n(m, n) == oracle::solution_count(m, n),
               "solution count, trial " + std::to_string(trial) + " n=" + std::to_string(n));
  }

  for (long n = 1; n <= 24; ++n)
    for (int eps : {1, -1})
      t.expect(verify_ribbon_axioms(CategoryZn(n, eps)), "ribbon N=" + std::to_string(n) + " eps=" + std::to_string(eps));

  for (int trial = 0; trial < 50; ++trial) {
    const auto link = oracle::random_link(rng, 2, 5);
    for (long n : {3L, 5L, 8L, 12L}) t.expect(kirby_blowup_check(link, n), "blow-up, link " + std::to_string(trial));
  }

  for (int trial = 0; trial < 50; ++trial) {
    const auto link = oracle::random_link(rng, 2, 5);
    for (long k = 1; k <= 4; ++k) {
      auto reduced = charge_sum(link, 2 * k, 4 * k).coefficients();
      for (auto& c : reduced) c <<= link.components();
      t.expect(charge_sum(link, 4 * k, 4 * k).coefficients() == reduced,
               "reduction identity, link " + std::to_string(trial) + " k=" + std::to_string(k));
    }
  }

  for (long p = 2; p <= 8; ++p) {
    const auto qs = lens_params(p, p);
    const auto ref = to_homology(lens_space(p, 1));
    const auto ref_cells = *to_cells(lens_space(p, 1));
    for (const auto& [pp, q] : qs) {
      const std::string tag = "L(" + std::to_string(p) + "," + std::to_string(q) + ")";
      const auto m = lens_space(p, q);
      const auto h = to_homology(m);
      const auto chain = lens_chain(p, q);
      const auto chain1 = lens_chain(p, 1);
      for (long k = 1; k <= 6; ++k) {
        t.expect(rel_close(rt_even(chain, k).abs_squared(), rt_even(chain1, k).abs_squared()), tag + " |tau_4k|^2");
        t.expect(*cs_partition(h, k).abs_squared == *cs_partition(ref, k).abs_squared, tag + " |Z_CS|^2");
        t.expect(round_if_integral(bf_partition_bruteforce(h, k).value.re()) ==
                     round_if_integral(bf_partition_bruteforce(ref, k).value.re()),
                 tag + " Z_BF");
      }
      for (long n = 1; n <= 12; ++n)
        t.expect(tv_algebraic(*to_cells(m), n) == tv_algebraic(ref_cells, n), tag + " Upsilon_" + std::to_string(n));
    }
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_fail;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--expect-fail" && i + 1 < argc) expected_fail.insert(std::atoi(argv[++i]));
    else {
      std::cerr << "usage: acceptance [--expect-fail N ...]\n";
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Tally()>>> criteria{
      {"RT examples on S3, S1xS2, RP3", criterion1},
      {"TV examples on the cell fixtures", criterion2},
      {"Lemma 2 grid", criterion3},
      {"Lemma 3 part 1 grid", criterion4},
      {"Lemma 3 parts 2-3", criterion5},
      {"Lemma 3 negative result", criterion6},
      {"modularity and Gauss sums", criterion7},
      {"property suites", criterion8},
  };

  bool ok = true;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Tally t;
    try {
      t = criteria[i].second();
    } catch (const std::exception& e) {
      t.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool pass = t.passed();
    const bool known = expected_fail.count(id) > 0;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << criteria[i].first << " ("
              << t.checks - t.failures.size() << "/" << t.checks << " checks)" << (known && !pass ? " [known failure]" : "")
              << "\n";
    for (std::size_t f = 0; f < std::min<std::size_t>(t.failures.size(), 8); ++f) std::cout << "    " << t.failures[f] << "\n";
    if (t.failures.size() > 8) std::cout << "    ... " << t.failures.size() - 8 << " more\n";
    if (known && pass) std::cout << "    criterion " << id << " was expected to fail but passed\n";
    if (pass == known) ok = false;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream tail;
  tail.precision(2);
  tail << std::fixed << secs;
  std::cout << "total " << tail.str() << " s\n";
  return ok ? 0 : 1;
}
