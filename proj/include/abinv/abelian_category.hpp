#pragma once

// The ribbon category of Z_N-graded vector spaces with c_{1,1} = exp(2 pi i/N)
// and twist sign epsilon.  Every structure constant is a 2N-th root of unity.

#include <cstdint>
#include <vector>

#include "abinv/cyclotomic.hpp"
#include "abinv/report.hpp"

namespace abinv {

struct CategoryZn {
  std::int64_t n = 1;
  int epsilon = 1;

  CategoryZn() = default;
  CategoryZn(std::int64_t level, int eps = 1);

  /// exp(2 pi i e / 2N)
  PhaseExponent phase(std::int64_t e) const { return {e, 2 * n}; }
  std::int64_t reduce(std::int64_t p) const;
};

/// c_{p,q} = c_{1,1}^{pq}
PhaseExponent braiding(const CategoryZn& cat, std::int64_t p, std::int64_t q);
/// theta_p = epsilon^p c_{1,1}^{p^2}, p taken in [0, N)
PhaseExponent twist(const CategoryZn& cat, std::int64_t p);
/// S_{p,q} = epsilon^{p+q} c_{q,p} c_{p,q}
PhaseExponent s_entry(const CategoryZn& cat, std::int64_t p, std::int64_t q);
std::vector<std::vector<PhaseExponent>> s_matrix(const CategoryZn& cat);
/// dim(p) = S_{p,0} = epsilon^p
PhaseExponent dimension(const CategoryZn& cat, std::int64_t p);

/// S is a Vandermonde matrix in alpha_p = c_{1,1}^{2p}; invertible iff the
/// alpha_p are distinct.  Throws Internal if that disagrees with N odd.
bool is_modular(const CategoryZn& cat);

/// Delta_N = sum_{p < N} exp(-2 pi i p^2 / N)
CyclotomicSum gauss_sum(std::int64_t n);
ComplexValue gauss_delta(std::int64_t n);
/// Delta' = sum_{p < 2k} exp(-2 pi i p^2 / 4k), so that 2 Delta' = Delta_{4k}
CyclotomicSum gauss_sum_half(std::int64_t k);
ComplexValue gauss_delta_half(std::int64_t k);

/// Exact |Delta_N|^2: N for odd N, 2N for N = 0 mod 4, 0 for N = 2 mod 4.
std::int64_t gauss_delta_norm_squared(std::int64_t n);
/// Delta_N / |Delta_N| as an exact 8th root of unity (throws for N = 2 mod 4).
PhaseExponent gauss_delta_phase(std::int64_t n);

/// Exhaustive check of the braiding/twist axioms over Z_N x Z_N.
Report verify_ribbon_axioms(const CategoryZn& cat);

}  // namespace abinv
