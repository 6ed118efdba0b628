#include "abinv/manifolds.hpp"

#include <json.hpp>
#include <numeric>
#include <string>

namespace abinv {

using nlohmann::json;

bool operator==(const SurgeryLink& a, const SurgeryLink& b) { return same_matrix(a.l, b.l); }

bool HomologyData::operator==(const HomologyData& o) const {
  return profile == o.profile && linking == o.linking;
}

bool ConnectedSum::operator==(const ConnectedSum& o) const { return parts == o.parts; }

SurgeryLink make_surgery_link(IntegerMatrix l) {
  if (!is_symmetric(l)) fail(ErrorKind::NonSymmetric, "linking matrix must be square and symmetric");
  return {std::move(l)};
}

SurgeryLink blow_up(const SurgeryLink& link, long framing) {
  const Index m = link.components();
  IntegerMatrix l = IntegerMatrix::Zero(m + 1, m + 1);
  l.topLeftCorner(m, m) = link.l;
  l(m, m) = framing;
  return {std::move(l)};
}

namespace {

LinkingForm empty_form() { return {{}, IntegerMatrix(0, 0)}; }

void check_lens(long p, long q) {
  if (p < 2) fail(ErrorKind::BadRange, "lens space needs p >= 2, got " + std::to_string(p));
  if (q < 1 || q >= p) fail(ErrorKind::BadRange, "lens space needs 1 <= q < p, got q = " + std::to_string(q));
  if (std::gcd(p, q) != 1)
    fail(ErrorKind::NotCoprime, "lens space needs gcd(p, q) = 1, got p = " + std::to_string(p) + ", q = " + std::to_string(q));
}

IntegerMatrix integer_inverse(const IntegerMatrix& u) {
  const RationalMatrix inv = rational_inverse(u);
  IntegerMatrix out(u.rows(), u.cols());
  for (Index i = 0; i < u.rows(); ++i)
    for (Index j = 0; j < u.cols(); ++j) {
      if (inv(i, j).get_den() != 1) fail(ErrorKind::Internal, "transform is not unimodular");
      out(i, j) = inv(i, j).get_num();
    }
  return out;
}

IntegerMatrix block_diagonal(const std::vector<IntegerMatrix>& blocks) {
  Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  IntegerMatrix out = IntegerMatrix::Zero(n, n);
  Index at = 0;
  for (const auto& b : blocks) {
    out.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return out;
}

}  // namespace

ManifoldPresentation sphere3() { return {Named{"s3", {}}}; }
ManifoldPresentation s1_x_s2() { return {Named{"s1xs2", {}}}; }

ManifoldPresentation lens_space(long p, long q) {
  check_lens(p, q);
  return {Named{"lens", {p, q}}};
}

ManifoldPresentation connected_sum(std::vector<ManifoldPresentation> parts) {
  return {ConnectedSum{std::move(parts)}};
}

SurgeryLink lens_chain(long p, long q) {
  if (p < 2) fail(ErrorKind::BadRange, "lens chain needs p >= 2");
  q = ((q % p) + p) % p;
  if (std::gcd(p, q) != 1) fail(ErrorKind::NotCoprime, "lens chain needs gcd(p, q) = 1");
  // p/q = a_1 - 1/(a_2 - 1/(...)), a_i = ceil
  std::vector<long> a;
  long num = p;
  long den = q;
  while (den != 0) {
    const long ai = (num + den - 1) / den;
    a.push_back(ai);
    const long rest = ai * den - num;
    num = den;
    den = rest;
  }
  const Index n = static_cast<Index>(a.size());
  IntegerMatrix l = IntegerMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    l(i, i) = a[static_cast<std::size_t>(i)];
    if (i + 1 < n) l(i, i + 1) = l(i + 1, i) = -1;
  }
  return {std::move(l)};
}

HomologyData from_surgery(const SurgeryLink& link) {
  const Index m = link.components();
  const auto snf = smith_normal_form(link.l);
  HomologyData out;
  out.profile.b1 = m - snf.rank;
  std::vector<Index> tors;
  for (Index i = 0; i < static_cast<Index>(snf.divisors.size()); ++i)
    if (snf.divisors[static_cast<std::size_t>(i)] > 1) {
      tors.push_back(i);
      out.profile.torsion.push_back(snf.divisors[static_cast<std::size_t>(i)]);
    }
  // U L V = D.  The torsion generator g_a = U^{-1} e_a satisfies
  // d_a g_a = L V e_a, so lk(g_a, g_b) = -(V^T U^{-1})_{ab} / d_a.
  const IntegerMatrix w = snf.v.transpose() * integer_inverse(snf.u);
  const Index d = static_cast<Index>(tors.size());
  IntegerMatrix q(d, d);
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b) q(a, b) = -w(tors[static_cast<std::size_t>(a)], tors[static_cast<std::size_t>(b)]);
  out.linking = derived_linking_form(out.profile.torsion, q);
  return out;
}

HomologyData direct_sum(const std::vector<HomologyData>& parts) {
  Index b1 = 0;
  std::vector<BigInt> orders;
  std::vector<IntegerMatrix> blocks;
  bool have_forms = true;
  for (const auto& part : parts) {
    b1 += part.profile.b1;
    for (const auto& p : part.profile.torsion) orders.push_back(p);
    if (part.linking) blocks.push_back(part.linking->q);
    else if (part.profile.d() > 0) have_forms = false;
  }
  HomologyData out;
  out.profile.b1 = b1;

  const Index n = static_cast<Index>(orders.size());
  IntegerMatrix rel = IntegerMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) rel(i, i) = orders[static_cast<std::size_t>(i)];
  const auto snf = smith_normal_form(rel);
  const IntegerMatrix uinv = integer_inverse(snf.u);
  std::vector<Index> tors;
  for (Index i = 0; i < n; ++i)
    if (snf.divisors[static_cast<std::size_t>(i)] > 1) {
      tors.push_back(i);
      out.profile.torsion.push_back(snf.divisors[static_cast<std::size_t>(i)]);
    }
  if (!have_forms) return out;

  const LinkingForm block{orders, block_diagonal(blocks)};
  IntegerMatrix gens(n, static_cast<Index>(tors.size()));
  for (std::size_t a = 0; a < tors.size(); ++a)
    for (Index i = 0; i < n; ++i)
      gens(i, static_cast<Index>(a)) = mod_floor(uinv(i, tors[a]), orders[static_cast<std::size_t>(i)]);
  const LinkingForm renamed = change_basis(block, gens, out.profile.torsion);
  out.linking = derived_linking_form(out.profile.torsion, renamed.q);
  return out;
}

namespace {

HomologyData named_homology(const Named& n) {
  if (n.id == "s3") return {{0, {}}, empty_form()};
  if (n.id == "s1xs2") return {{1, {}}, empty_form()};
  if (n.id == "lens") {
    const long p = n.params.at(0);
    const long q = n.params.at(1);
    check_lens(p, q);
    long inv = 1;
    while ((inv * q) % p != 1) ++inv;
    return {{0, {BigInt(p)}}, make_linking_form({BigInt(p)}, integer_matrix({{inv}}))};
  }
  fail(ErrorKind::SchemaError, "unknown manifold builder '" + n.id + "'");
}

}  // namespace

HomologyData to_homology(const ManifoldPresentation& m) {
  return std::visit(
      [](const auto& v) -> HomologyData {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HomologyData>) {
          return v;
        } else if constexpr (std::is_same_v<T, SurgeryPresentation>) {
          return from_surgery(v.link);
        } else if constexpr (std::is_same_v<T, CellsPresentation>) {
          HomologyData h{homology_from_complex(v.complex, 1), std::nullopt};
          if (h.profile.d() == 0) h.linking = empty_form();
          return h;
        } else if constexpr (std::is_same_v<T, ConnectedSum>) {
          std::vector<HomologyData> parts;
          for (const auto& p : v.parts) parts.push_back(to_homology(p));
          return direct_sum(parts);
        } else {
          return named_homology(v);
        }
      },
      m.data);
}

std::optional<SurgeryLink> to_surgery(const ManifoldPresentation& m) {
  return std::visit(
      [](const auto& v) -> std::optional<SurgeryLink> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SurgeryPresentation>) {
          return v.link;
        } else if constexpr (std::is_same_v<T, ConnectedSum>) {
          std::vector<IntegerMatrix> blocks;
          for (const auto& p : v.parts) {
            auto s = to_surgery(p);
            if (!s) return std::nullopt;
            blocks.push_back(s->l);
          }
          return SurgeryLink{block_diagonal(blocks)};
        } else if constexpr (std::is_same_v<T, Named>) {
          if (v.id == "s3") return SurgeryLink{IntegerMatrix(0, 0)};
          if (v.id == "s1xs2") return SurgeryLink{integer_matrix({{0}})};
          if (v.id == "lens") return lens_chain(v.params.at(0), v.params.at(1));
          return std::nullopt;
        } else {
          return std::nullopt;
        }
      },
      m.data);
}

std::optional<CellComplex> to_cells(const ManifoldPresentation& m) {
  if (const auto* c = std::get_if<CellsPresentation>(&m.data)) return c->complex;
  if (const auto* n = std::get_if<Named>(&m.data)) {
    if (n->id == "s3") return fixtures::s3_heegaard();
    if (n->id == "s1xs2") return fixtures::s1xs2_heegaard();
    if (n->id == "lens") return fixtures::lens_cells(n->params.at(0));
  }
  return std::nullopt;
}

std::vector<std::string> available_data(const ManifoldPresentation& m) {
  std::vector<std::string> out{"homology"};
  if (to_homology(m).linking) out.push_back("linking_form");
  if (to_surgery(m)) out.push_back("surgery");
  if (to_cells(m)) out.push_back("cells");
  return out;
}

bool linking_forms_equivalent_up_to_sign(const LinkingForm& a, const LinkingForm& b) {
  if (a.orders != b.orders) return false;
  if (a.d() == 0) return true;
  if (a.d() == 1) {
    const BigInt& p = a.orders[0];
    for (BigInt u = 1; u < p; ++u) {
      if (gcd(u, p) != 1) continue;
      const BigInt t = mod_floor(u * u * b.q(0, 0), p);
      if (t == a.q(0, 0) || mod_floor(-t, p) == a.q(0, 0)) return true;
    }
    return false;
  }
  fail(ErrorKind::UnsupportedPresentation, "isometry test is implemented for cyclic groups only");
}

// --- JSON ------------------------------------------------------------------

namespace {

[[noreturn]] void schema(const std::string& ptr, const std::string& what) {
  fail(ErrorKind::SchemaError, (ptr.empty() ? std::string("/") : ptr) + ": " + what);
}

long get_long(const json& j, const std::string& key, const std::string& ptr) {
  if (!j.contains(key)) schema(ptr, "missing field '" + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_integer()) schema(ptr + "/" + key, "expected an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
    schema(ptr + "/" + key, "integer out of range");
  return v.get<long>();
}

IntegerMatrix get_matrix(const json& j, const std::string& key, const std::string& ptr, Index cols_if_empty = 0) {
  if (!j.contains(key)) schema(ptr, "missing field '" + key + "'");
  const json& rows = j.at(key);
  const std::string here = ptr + "/" + key;
  if (!rows.is_array()) schema(here, "expected an array of rows");
  std::vector<std::vector<BigInt>> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string rp = here + "/" + std::to_string(i);
    if (!rows[i].is_array()) schema(rp, "expected an array of integers");
    if (!out.empty() && rows[i].size() != out.front().size()) schema(rp, "ragged matrix row");
    std::vector<BigInt> row;
    for (std::size_t c = 0; c < rows[i].size(); ++c) {
      if (!rows[i][c].is_number_integer()) schema(rp + "/" + std::to_string(c), "expected an integer");
      row.emplace_back(rows[i][c].get<long>());
    }
    out.push_back(std::move(row));
  }
  return integer_matrix(out, cols_if_empty);
}

void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& ptr) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) schema(ptr + "/" + it.key(), "unknown field");
  }
}

ManifoldPresentation parse_node(const json& j, const std::string& ptr) {
  if (!j.is_object()) schema(ptr, "expected an object");
  if (!j.contains("type") || !j.at("type").is_string()) schema(ptr + "/type", "expected a string");
  const std::string type = j.at("type").get<std::string>();
  if (type == "s3") {
    only_keys(j, {"type"}, ptr);
    return sphere3();
  }
  if (type == "s1xs2") {
    only_keys(j, {"type"}, ptr);
    return s1_x_s2();
  }
  if (type == "lens") {
    only_keys(j, {"type", "p", "q"}, ptr);
    return lens_space(get_long(j, "p", ptr), get_long(j, "q", ptr));
  }
  if (type == "surgery") {
    only_keys(j, {"type", "matrix"}, ptr);
    IntegerMatrix l = get_matrix(j, "matrix", ptr);
    if (!is_symmetric(l)) fail(ErrorKind::InvariantViolation, ptr + "/matrix: linking matrix must be symmetric");
    return {SurgeryPresentation{{std::move(l)}}};
  }
  if (type == "homology") {
    only_keys(j, {"type", "b1", "torsion", "q_matrix"}, ptr);
    HomologyData h;
    const long b1 = get_long(j, "b1", ptr);
    if (b1 < 0) fail(ErrorKind::InvariantViolation, ptr + "/b1: b1 must be nonnegative");
    h.profile.b1 = b1;
    if (!j.contains("torsion") || !j.at("torsion").is_array()) schema(ptr + "/torsion", "expected an array");
    const json& t = j.at("torsion");
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!t[i].is_number_integer()) schema(ptr + "/torsion/" + std::to_string(i), "expected an integer");
      h.profile.torsion.emplace_back(t[i].get<long>());
    }
    validate(h.profile);
    if (j.contains("q_matrix")) {
      const IntegerMatrix q = get_matrix(j, "q_matrix", ptr, h.profile.d());
      if (q.rows() != h.profile.d() || q.cols() != h.profile.d())
        fail(ErrorKind::InvariantViolation, ptr + "/q_matrix: must be d x d with d = number of torsion factors");
      try {
        h.linking = make_linking_form(h.profile.torsion, q);
      } catch (const Error& e) {
        fail(ErrorKind::InvariantViolation, ptr + "/q_matrix: " + e.what());
      }
    } else if (h.profile.d() == 0) {
      h.linking = empty_form();
    }
    return {std::move(h)};
  }
  if (type == "cells") {
    only_keys(j, {"type", "boundary1", "boundary2", "boundary3"}, ptr);
    IntegerMatrix d3 = get_matrix(j, "boundary3", ptr);
    IntegerMatrix d2 = get_matrix(j, "boundary2", ptr, d3.rows());
    IntegerMatrix d1 = get_matrix(j, "boundary1", ptr, d2.rows());
    try {
      return {CellsPresentation{make_cell_complex(std::move(d1), std::move(d2), std::move(d3))}};
    } catch (const Error& e) {
      fail(ErrorKind::InvariantViolation, ptr + ": " + e.what());
    }
  }
  if (type == "connected_sum") {
    only_keys(j, {"type", "parts"}, ptr);
    if (!j.contains("parts") || !j.at("parts").is_array()) schema(ptr + "/parts", "expected an array");
    std::vector<ManifoldPresentation> parts;
    const json& ps = j.at("parts");
    for (std::size_t i = 0; i < ps.size(); ++i) parts.push_back(parse_node(ps[i], ptr + "/parts/" + std::to_string(i)));
    return connected_sum(std::move(parts));
  }
  schema(ptr + "/type", "unknown manifold type '" + type + "'");
}

json int_json(const BigInt& x) { return to_int64(x, ErrorKind::Internal); }

json matrix_json(const IntegerMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(int_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const ManifoldPresentation& m) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HomologyData>) {
          json t = json::array();
          for (const auto& p : v.profile.torsion) t.push_back(int_json(p));
          json j{{"type", "homology"}, {"b1", v.profile.b1}, {"torsion", t}};
          if (v.linking) j["q_matrix"] = matrix_json(v.linking->q);
          return j;
        } else if constexpr (std::is_same_v<T, SurgeryPresentation>) {
          return json{{"type", "surgery"}, {"matrix", matrix_json(v.link.l)}};
        } else if constexpr (std::is_same_v<T, CellsPresentation>) {
          return json{{"type", "cells"},
                      {"boundary1", matrix_json(v.complex.d1)},
                      {"boundary2", matrix_json(v.complex.d2)},
                      {"boundary3", matrix_json(v.complex.d3)}};
        } else if constexpr (std::is_same_v<T, ConnectedSum>) {
          json parts = json::array();
          for (const auto& p : v.parts) parts.push_back(to_json(p));
          return json{{"type", "connected_sum"}, {"parts", parts}};
        } else {
          if (v.id == "lens") return json{{"type", "lens"}, {"p", v.params.at(0)}, {"q", v.params.at(1)}};
          return json{{"type", v.id}};
        }
      },
      m.data);
}

}  // namespace

ManifoldPresentation parse_manifold(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::SchemaError, std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  return parse_node(j, "");
}

std::string serialize_manifold(const ManifoldPresentation& m) { return to_json(m).dump(); }

}  // namespace abinv
