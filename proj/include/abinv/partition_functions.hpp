#pragma once

// U(1) Chern-Simons and BF partition functions on the torsion of H_1.

#include <optional>

#include "abinv/cyclotomic.hpp"
#include "abinv/manifolds.hpp"
#include "abinv/report.hpp"

namespace abinv {

struct PartitionResult {
  ComplexValue value;
  std::optional<BigInt> closed_form;  // |Z|^2 for CS, Z itself for BF
  std::optional<BigInt> abs_squared;  // exact |Z|^2 when decidable
  BigInt k;
  std::int64_t terms = 0;
};

constexpr std::int64_t kCsSumLimit = 10'000'000;
constexpr std::int64_t kBfSumLimit = 100'000'000;

/// sum_{kappa in T} exp(+2 pi i k Q(kappa, kappa)) as an exact sum.
CyclotomicSum cs_sum(const LinkingForm& form, const BigInt& k);
/// sum_{kappa, tau in T} exp(-2 pi i k Q(kappa, tau)).
CyclotomicSum bf_sum(const LinkingForm& form, const BigInt& k);

/// Throws UnsupportedPresentation without a linking form, InvalidCoupling for
/// k < 1 and TorsionTooLarge past the enumeration caps.
PartitionResult cs_partition(const HomologyData& m, const BigInt& k);
PartitionResult bf_partition_bruteforce(const HomologyData& m, const BigInt& k);

/// prod_j gcd(k, p_j) p_j
BigInt bf_partition_closed(const HomologyProfile& h, const BigInt& k);
/// 2^gamma prod_j gcd(k, p_j) p_j if beta = 0, else 0
BigInt cs_abs_squared_closed(const HomologyProfile& h, const BigInt& k);

/// Smallest k' > k with gcd(k', p_j) = gcd(k, p_j) for every j.
BigInt equivalent_coupling(const HomologyProfile& h, const BigInt& k);

Report verify_lemma2(const HomologyData& m, const BigInt& k);

/// Nearest integer to x if within the relative tolerance, else nullopt.
std::optional<BigInt> round_if_integral(double x, double rel_tol = 1e-6);

}  // namespace abinv
