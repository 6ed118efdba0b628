#pragma once

// Abelian Reshetikhin-Turaev invariants of surgery presentations.

#include <optional>

#include "abinv/abelian_category.hpp"
#include "abinv/manifolds.hpp"
#include "abinv/report.hpp"

namespace abinv {

enum class Normalization { Moo, Raw };

struct RtValue {
  ComplexValue value;
  std::int64_t level = 0;
  Normalization normalization = Normalization::Moo;
  /// |tau|^2 as an exact rational when the charge sum's norm is decidable.
  std::optional<Rational> abs_squared_exact;

  double abs_squared() const {
    return abs_squared_exact ? abs_squared_exact->get_d() : value.abs_squared();
  }
};

constexpr std::int64_t kRtSumLimit = 10'000'000;

/// F(L, p) = exp(2 pi i p^T L p / N)
PhaseExponent f_value(const SurgeryLink& link, const std::vector<std::int64_t>& charges, std::int64_t n);

/// sum over p in (Z_range)^m of exp(2 pi i p^T L p / order).  SumTooLarge past
/// the cap.
CyclotomicSum charge_sum(const SurgeryLink& link, std::int64_t range, std::int64_t order);

/// tau_{4k}: (Delta'/|Delta'|)^sigma (2k)^{-m/2} sum_{(Z_2k)^m} exp(2 pi i pLp / 4k)
RtValue rt_even(const SurgeryLink& link, std::int64_t k);
/// tau_n for odd n: (Delta_n/|Delta_n|)^sigma n^{-m/2} sum_{(Z_n)^m} exp(2 pi i pLp / n)
RtValue rt_odd(const SurgeryLink& link, std::int64_t n);
/// Delta_N^sigma D^{-sigma-m-1} sum_{(Z_N)^m} F with D = sqrt N.
RtValue rt_raw(const SurgeryLink& link, std::int64_t n);
/// Dispatch: Moo picks rt_even (4 | n) or rt_odd (n odd); NoInvariantAtLevel
/// for n = 2 mod 4.
RtValue rt_at_level(const SurgeryLink& link, std::int64_t n, Normalization norm);

/// (2k)^b1 delta_{beta,0} 2^gamma prod gcd(k, p_i)
BigInt tau_abs_squared_closed(const HomologyProfile& h, const BigInt& k);
/// n^b1 prod gcd(n, p_i) for odd n; EvenLevel otherwise.
BigInt tau_odd_abs_squared_closed(const HomologyProfile& h, const BigInt& n);

Report verify_lemma3_part1(const ManifoldPresentation& m, std::int64_t k);
Report kirby_blowup_check(const SurgeryLink& link, std::int64_t n, Normalization norm = Normalization::Moo);

}  // namespace abinv
