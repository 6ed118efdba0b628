#pragma once

// Presentations of closed oriented 3-manifolds and the conversions between
// them.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "abinv/cell_complex.hpp"
#include "abinv/topology.hpp"

namespace abinv {

/// Framed link in S^3 through its linking matrix (framings on the diagonal).
struct SurgeryLink {
  IntegerMatrix l;
  Index components() const { return l.rows(); }
};

bool operator==(const SurgeryLink& a, const SurgeryLink& b);

/// Throws NonSymmetric.
SurgeryLink make_surgery_link(IntegerMatrix l);
/// Adds an unlinked unknot with framing `framing` (block-diagonal append).
SurgeryLink blow_up(const SurgeryLink& link, long framing);

struct HomologyData {
  HomologyProfile profile;
  std::optional<LinkingForm> linking;  // absent when only the groups are known
  bool operator==(const HomologyData& o) const;
};

struct ManifoldPresentation;

struct SurgeryPresentation {
  SurgeryLink link;
  bool operator==(const SurgeryPresentation&) const = default;
};
struct CellsPresentation {
  CellComplex complex;
  bool operator==(const CellsPresentation&) const = default;
};
struct ConnectedSum {
  std::vector<ManifoldPresentation> parts;
  bool operator==(const ConnectedSum& o) const;
};
/// Built-in families: "s3", "s1xs2", "lens" (params p, q).
struct Named {
  std::string id;
  std::vector<long> params;
  bool operator==(const Named&) const = default;
};

struct ManifoldPresentation {
  std::variant<HomologyData, SurgeryPresentation, CellsPresentation, ConnectedSum, Named> data;
  bool operator==(const ManifoldPresentation& o) const { return data == o.data; }
};

ManifoldPresentation sphere3();
ManifoldPresentation s1_x_s2();
/// Throws BadRange unless 1 <= q < p, NotCoprime unless gcd(p, q) = 1.
ManifoldPresentation lens_space(long p, long q);
ManifoldPresentation connected_sum(std::vector<ManifoldPresentation> parts);

/// Negative continued fraction chain with coker of order p.  q is taken mod p.
SurgeryLink lens_chain(long p, long q);

/// H_1 = coker(L) and the linking form -L^{-1} on its torsion.
HomologyData from_surgery(const SurgeryLink& link);

/// Block sum of homology data, renormalized to a divisor chain.
HomologyData direct_sum(const std::vector<HomologyData>& parts);

/// Lowering.  to_homology always succeeds; the others return nullopt when the
/// presentation carries no such data.
HomologyData to_homology(const ManifoldPresentation& m);
std::optional<SurgeryLink> to_surgery(const ManifoldPresentation& m);
std::optional<CellComplex> to_cells(const ManifoldPresentation& m);

/// Names of the data a presentation can supply: "homology", "linking_form",
/// "surgery", "cells".
std::vector<std::string> available_data(const ManifoldPresentation& m);

/// Same group and forms related by an isometry up to overall sign.  Cyclic
/// groups only (q1 = +-u^2 q2 for a unit u); throws UnsupportedPresentation
/// otherwise.
bool linking_forms_equivalent_up_to_sign(const LinkingForm& a, const LinkingForm& b);

/// JSON ingestion.  SchemaError carries a JSON pointer to the offending node;
/// InvariantViolation names the violated rule.
ManifoldPresentation parse_manifold(const std::string& text);
std::string serialize_manifold(const ManifoldPresentation& m);

}  // namespace abinv
