#pragma once

// Oriented polyhedral decompositions given by their boundary matrices.

#include "abinv/exact_linalg.hpp"

namespace abinv {

struct CellComplex {
  IntegerMatrix d1;  // vertices x edges, "final minus initial"
  IntegerMatrix d2;  // edges x faces
  IntegerMatrix d3;  // faces x polyhedra

  Index vertices() const { return d1.rows(); }
  Index edges() const { return d2.rows(); }
  Index faces() const { return d3.rows(); }
  Index polyhedra() const { return d3.cols(); }

  /// Boundary map from i-chains to (i-1)-chains, with the zero maps at the ends.
  IntegerMatrix boundary(int i) const;

  /// 1-skeleton connected (every vertex reachable along edges).
  bool connected() const;
};

/// Checks shapes (DimensionMismatch) and d1 d2 = 0, d2 d3 = 0 (NotAComplex).
CellComplex make_cell_complex(IntegerMatrix d1, IntegerMatrix d2, IntegerMatrix d3);

bool operator==(const CellComplex& a, const CellComplex& b);

/// Shape-aware equality (Eigen's operator== asserts on mismatched shapes).
bool same_matrix(const IntegerMatrix& a, const IntegerMatrix& b);

namespace fixtures {

/// Genus-0 Heegaard splitting of S^3: one vertex, one edge, two faces, the
/// constraint i = 0.
CellComplex s3_heegaard();
/// S^1 x S^2: one vertex, edges i, j, faces giving {0 = 0, j = 0}.
CellComplex s1xs2_heegaard();
/// RP^3 from a genus-2 style decomposition: vertices 2, edges i,j,k,m,n, face
/// constraints {i+j, m+n, i-k-n, -j+k+m, -i+j-m+n}.
CellComplex rp3_heegaard();
/// One cell per dimension with d2 = [p]: the standard CW structure of L(p,q).
CellComplex lens_cells(long p);

}  // namespace fixtures

}  // namespace abinv
