#pragma once

// Abelian Turaev-Viro state sums over Z_N-labelings of a cell complex.

#include <cstdint>
#include <vector>

#include "abinv/cell_complex.hpp"
#include "abinv/manifolds.hpp"
#include "abinv/report.hpp"

namespace abinv {

/// One charge per unoriented edge; the reversed edge carries N - l.
struct Labeling {
  std::vector<std::int64_t> values;
  std::int64_t n = 1;
};

/// One charge per vertex.
struct Gauging {
  std::vector<std::int64_t> values;
  std::int64_t n = 1;
};

constexpr std::int64_t kTvEnumerationLimit = 10'000'000;

/// (d2^T l)_face mod N; the face contributes a nonzero state space iff this is 0.
std::int64_t face_sum(const CellComplex& c, const Labeling& l, Index face);
bool is_closed(const CellComplex& c, const Labeling& l);
/// d1^T g mod N
Labeling gauging_differential(const CellComplex& c, const Gauging& g);

/// Exhaustive count of labelings with every face sum zero.
BigInt closed_labelings_bruteforce(const CellComplex& c, std::int64_t n);
/// Same count through the Smith form of d2^T.
BigInt closed_labelings_algebraic(const CellComplex& c, std::int64_t n);

/// Upsilon_N = N^{-(v-1)} * #closed labelings.  NonIntegralInvariant when the
/// complex is disconnected or the division is inexact; EnumerationTooLarge
/// past the brute-force cap.
BigInt tv_bruteforce(const CellComplex& c, std::int64_t n);
BigInt tv_algebraic(const CellComplex& c, std::int64_t n);

Report verify_lemma3_tv(const ManifoldPresentation& m, std::int64_t n);

}  // namespace abinv
