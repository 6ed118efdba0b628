#include "abinv/cell_complex.hpp"

#include <numeric>
#include <string>

namespace abinv {

bool same_matrix(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

bool operator==(const CellComplex& a, const CellComplex& b) {
  return same_matrix(a.d1, b.d1) && same_matrix(a.d2, b.d2) && same_matrix(a.d3, b.d3);
}

IntegerMatrix CellComplex::boundary(int i) const {
  switch (i) {
    case 0: return IntegerMatrix(0, vertices());
    case 1: return d1;
    case 2: return d2;
    case 3: return d3;
    case 4: return IntegerMatrix(polyhedra(), 0);
    default: fail(ErrorKind::IndexOutOfRange, "boundary degree must be in 0..4");
  }
}

bool CellComplex::connected() const {
  const Index v = vertices();
  if (v == 0) return false;
  std::vector<Index> parent(static_cast<std::size_t>(v));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (Index e = 0; e < d1.cols(); ++e) {
    Index first = -1;
    for (Index x = 0; x < v; ++x) {
      if (d1(x, e) == 0) continue;
      if (first < 0) first = x;
      else parent[static_cast<std::size_t>(find(x))] = find(first);
    }
  }
  const Index root = find(0);
  for (Index x = 1; x < v; ++x)
    if (find(x) != root) return false;
  return true;
}

CellComplex make_cell_complex(IntegerMatrix d1, IntegerMatrix d2, IntegerMatrix d3) {
  if (d1.cols() != d2.rows())
    fail(ErrorKind::DimensionMismatch, "boundary1 has " + std::to_string(d1.cols()) +
                                           " columns but boundary2 has " + std::to_string(d2.rows()) + " rows");
  if (d2.cols() != d3.rows())
    fail(ErrorKind::DimensionMismatch, "boundary2 has " + std::to_string(d2.cols()) +
                                           " columns but boundary3 has " + std::to_string(d3.rows()) + " rows");
  if (d1.size() > 0 && d2.size() > 0 && !(d1 * d2).isZero())
    fail(ErrorKind::NotAComplex, "boundary1 * boundary2 != 0");
  if (d2.size() > 0 && d3.size() > 0 && !(d2 * d3).isZero())
    fail(ErrorKind::NotAComplex, "boundary2 * boundary3 != 0");
  return {std::move(d1), std::move(d2), std::move(d3)};
}

namespace fixtures {

CellComplex s3_heegaard() {
  return make_cell_complex(integer_matrix({{0}}), integer_matrix({{1, -1}}),
                           integer_matrix({{1, -1}, {1, -1}}));
}

CellComplex s1xs2_heegaard() {
  return make_cell_complex(IntegerMatrix(IntegerMatrix::Zero(1, 2)), integer_matrix({{0, 0}, {0, 1}}),
                           integer_matrix({{0}, {0}}));
}

CellComplex rp3_heegaard() {
  // rows are the edges i, j, k, m, n; columns the five faces
  IntegerMatrix d2 = integer_matrix({{1, 0, 1, 0, -1},
                                     {1, 0, 0, -1, 1},
                                     {0, 0, -1, 1, 0},
                                     {0, 1, 0, 1, -1},
                                     {0, 1, -1, 0, 1}});
  IntegerMatrix d1 = integer_matrix({{1, -1, 0, -1, 1}, {-1, 1, 0, 1, -1}});
  IntegerMatrix d3 = integer_matrix({{0, 0}, {0, 0}, {1, -1}, {1, -1}, {1, -1}});
  return make_cell_complex(std::move(d1), std::move(d2), std::move(d3));
}

CellComplex lens_cells(long p) {
  return make_cell_complex(integer_matrix({{0}}), integer_matrix({{p}}), integer_matrix({{0}}));
}

}  // namespace fixtures

}  // namespace abinv
