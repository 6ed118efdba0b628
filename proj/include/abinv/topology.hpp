#pragma once

// First homology, torsion linking forms and the parity data (alpha, beta,
// gamma) that the closed-form invariants depend on.

#include <optional>
#include <vector>

#include "abinv/cell_complex.hpp"
#include "abinv/exact_linalg.hpp"

namespace abinv {

struct HomologyProfile {
  Index b1 = 0;
  std::vector<BigInt> torsion;  // p_1 | p_2 | ... | p_d, all >= 2

  Index d() const { return static_cast<Index>(torsion.size()); }
  BigInt torsion_order() const;
  bool operator==(const HomologyProfile&) const = default;
};

/// Checks the divisor chain and p_i >= 2; throws InvariantViolation.
void validate(const HomologyProfile& h);

/// Normal form of Z^b1 + (+)_i Z_{orders_i}: any orders >= 0 (0 adds a free
/// summand, 1 is dropped).
HomologyProfile normalize_profile(Index b1, const std::vector<BigInt>& orders);

/// Q_ij = q_ij / p_i on T = (+) Z_{p_i}; entries stored in [0, p_i).
struct LinkingForm {
  std::vector<BigInt> orders;
  IntegerMatrix q;

  Index d() const { return static_cast<Index>(orders.size()); }
  /// gcd(q_ii, p_i) = 1 for every i.
  bool primitive_diagonal() const;
};

bool operator==(const LinkingForm& a, const LinkingForm& b);

/// Reduces entries, then checks shape (DimensionMismatch), symmetry mod 1,
/// primitive diagonal and nondegeneracy (InvariantViolation).
LinkingForm make_linking_form(std::vector<BigInt> orders, const IntegerMatrix& q);

/// Same as make_linking_form but a non-primitive diagonal is tolerated after an
/// attempt to find a better basis; used for forms computed from other data.
LinkingForm derived_linking_form(std::vector<BigInt> orders, const IntegerMatrix& q);

/// Q(kappa, tau) in [0, 1).
Rational linking_eval(const LinkingForm& form, const std::vector<BigInt>& kappa, const std::vector<BigInt>& tau);

bool is_symmetric_mod_one(const LinkingForm& form);
/// Structural test via solution counting; valid at every size.
bool is_nondegenerate(const LinkingForm& form);
/// Exhaustive radical search; throws TorsionTooLarge above `limit` elements.
bool is_nondegenerate_bruteforce(const LinkingForm& form, std::int64_t limit = 10000);

/// Searches for a chain basis x_1..x_d (order of x_i = p_i) in which every
/// Q(x_i, x_i) has exact denominator p_i.  Returns the form in that basis, or
/// nullopt when no such basis exists (or the group exceeds `limit`).
std::optional<LinkingForm> adapt_basis(const LinkingForm& form, std::int64_t limit = 100000);

/// Evaluates the form on new generators given as columns of `gens` (old
/// coordinates) whose orders are `new_orders`.
LinkingForm change_basis(const LinkingForm& form, const IntegerMatrix& gens, const std::vector<BigInt>& new_orders);

HomologyProfile homology_from_complex(const CellComplex& c, int degree);

/// |H^1(M, Z_n)| = n^b1 * prod gcd(n, p_i).
BigInt h1_order_mod_n(const HomologyProfile& h, const BigInt& n);

struct ParityClassification {
  Index alpha = 0;
  Index beta = 0;
  Index gamma = 0;
  std::vector<BigInt> p_prime;
  std::vector<BigInt> k_prime;
};

ParityClassification classify_parity(const HomologyProfile& h, const BigInt& k);

/// beta == 0.  Stated to be equivalent to the vanishing of every triple cup
/// product a u a u a on H^1(M, Z_2k); only the beta side is computed.
bool cup_obstruction_vanishes(const HomologyProfile& h, const BigInt& k);

}  // namespace abinv
