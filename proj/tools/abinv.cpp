// abinv: command-line front end for the abelian invariant library.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "abinv/abelian_category.hpp"
#include "abinv/manifolds.hpp"
#include "abinv/partition_functions.hpp"
#include "abinv/rt_invariant.hpp"
#include "abinv/tv_invariant.hpp"

using json = nlohmann::ordered_json;
using namespace abinv;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kParse = 2, kInput = 3, kUnsupported = 4, kNoInvariant = 5 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::SchemaError:
      return kParse;
    case ErrorKind::UnsupportedPresentation:
      return kUnsupported;
    case ErrorKind::NoInvariantAtLevel:
    case ErrorKind::EvenLevel:
      return kNoInvariant;
    default:
      return kInput;
  }
}

struct Options {
  std::string manifold;
  std::optional<long> k;
  std::optional<long> level;
  std::string normalization = "moo";
  std::string output = "json";
  long pmax = 8;
  long kmax = 8;
  long nmax = 12;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::SchemaError, "cannot read manifold file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ManifoldPresentation resolve_manifold(const std::string& src) {
  if (src.empty()) fail(ErrorKind::SchemaError, "--manifold is required");
  if (src == "s3") return sphere3();
  if (src == "s1xs2") return s1_x_s2();
  if (src == "rp3") return lens_space(2, 1);
  if (src == "rp3-heegaard") return {CellsPresentation{fixtures::rp3_heegaard()}};
  static const std::regex lens(R"(\s*lens\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*)");
  std::smatch m;
  if (std::regex_match(src, m, lens)) return lens_space(std::stol(m[1]), std::stol(m[2]));
  const auto first = src.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && src[first] == '{') return parse_manifold(src);
  return parse_manifold(read_file(src));
}

long require_positive(const std::optional<long>& v, const char* flag, ErrorKind kind) {
  if (!v) fail(ErrorKind::SchemaError, std::string(flag) + " is required");
  if (*v < 1) fail(kind, std::string(flag) + " must be a positive integer, got " + std::to_string(*v));
  return *v;
}

json matrix_json(const IntegerMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(json::parse(m(i, j).get_str()));
    rows.push_back(row);
  }
  return rows;
}

json big(const BigInt& n) { return json::parse(n.get_str()); }

json rational_json(const Rational& r) {
  if (r.get_den() == 1) return big(r.get_num());
  return r.get_str();
}

std::string fmt(double x) {
  if (x == 0.0) x = 0.0;  // no negative zero in output
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double clean(double x) { return std::abs(x) < 1e-12 ? 0.0 : x; }

json complex_json(const ComplexValue& v) {
  json j{{"re", clean(v.re())}, {"im", clean(v.im())}};
  if (v.exact) {
    if (const auto* n = std::get_if<BigInt>(&*v.exact))
      j["exact"] = {{"kind", "integer"}, {"value", big(*n)}};
    else {
      const auto& p = std::get<PhaseExponent>(*v.exact);
      j["exact"] = {{"kind", "phase"}, {"num", p.num}, {"den", p.den}};
    }
  }
  return j;
}

std::string complex_text(const ComplexValue& v) {
  if (v.exact) {
    if (const auto* n = std::get_if<BigInt>(&*v.exact)) return n->get_str();
    const auto& p = std::get<PhaseExponent>(*v.exact);
    return "exp(2 pi i " + std::to_string(p.num) + "/" + std::to_string(p.den) + ")";
  }
  const double im = clean(v.im());
  return fmt(clean(v.re())) + (im < 0 ? " - " : " + ") + fmt(std::abs(im)) + "i";
}

json torsion_json(const HomologyProfile& h) {
  json t = json::array();
  for (const auto& p : h.torsion) t.push_back(big(p));
  return t;
}

std::string torsion_text(const HomologyProfile& h) {
  std::string s = "[";
  for (std::size_t i = 0; i < h.torsion.size(); ++i) s += (i ? ", " : "") + h.torsion[i].get_str();
  return s + "]";
}

void emit(const json& j, const Options& o, const std::vector<std::pair<std::string, std::string>>& rows) {
  if (o.output == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  for (const auto& r : rows) std::cout << r.first << std::string(w - r.first.size() + 2, ' ') << r.second << "\n";
}

// --- homology ---------------------------------------------------------------

int run_homology(const Options& o) {
  const auto m = resolve_manifold(o.manifold);
  const auto h = to_homology(m);
  json j{{"b1", h.profile.b1}, {"torsion", torsion_json(h.profile)}};
  std::vector<std::pair<std::string, std::string>> rows{{"b1", std::to_string(h.profile.b1)},
                                                        {"torsion", torsion_text(h.profile)}};
  if (h.linking) {
    j["linking_form"] = {{"orders", torsion_json(h.profile)}, {"q", matrix_json(h.linking->q)},
                         {"primitive_diagonal", h.linking->primitive_diagonal()}};
    std::ostringstream q;
    for (Index i = 0; i < h.linking->q.rows(); ++i) {
      q << (i ? "; " : "");
      for (Index c = 0; c < h.linking->q.cols(); ++c) q << (c ? " " : "") << h.linking->q(i, c).get_str();
    }
    rows.emplace_back("Q numerators", "[" + q.str() + "]");
  } else {
    j["linking_form"] = nullptr;
  }
  json avail = json::array();
  for (const auto& a : available_data(m)) avail.push_back(a);
  j["available"] = avail;
  emit(j, o, rows);
  return kOk;
}

// --- invariant --------------------------------------------------------------

[[noreturn]] void unsupported(const ManifoldPresentation& m, const std::string& what, const std::string& needs) {
  std::string have;
  for (const auto& a : available_data(m)) have += (have.empty() ? "" : ", ") + a;
  fail(ErrorKind::UnsupportedPresentation,
       what + " needs " + needs + "; this presentation provides: " + (have.empty() ? "nothing" : have));
}

int run_invariant(const std::string& which, const Options& o) {
  const auto m = resolve_manifold(o.manifold);
  json j{{"invariant", which}};
  std::vector<std::pair<std::string, std::string>> rows{{"invariant", which}};
  bool ok = true;

  if (which == "cs" || which == "bf") {
    const long k = require_positive(o.k, "--k", ErrorKind::InvalidCoupling);
    const auto h = to_homology(m);
    if (!h.linking) unsupported(m, which, "a linking form (homology with q_matrix, surgery, lens or a connected sum of those)");
    j["k"] = k;
    rows.emplace_back("k", std::to_string(k));
    if (which == "cs") {
      const auto z = cs_partition(h, k);
      j["value"] = complex_json(z.value);
      rows.emplace_back("value", complex_text(z.value));
      const BigInt closed = cs_abs_squared_closed(h.profile, k);
      j["abs_squared"] = z.abs_squared ? big(*z.abs_squared) : json(z.value.abs_squared());
      rows.emplace_back("|Z|^2", z.abs_squared ? z.abs_squared->get_str() : fmt(z.value.abs_squared()));
      if (h.linking->primitive_diagonal()) {
        const bool agree = z.abs_squared ? *z.abs_squared == closed : approx_integer(z.value.abs_squared(), closed);
        ok = agree;
        j["closed_form"] = {{"abs_squared", big(closed)}, {"agrees", agree}};
        rows.emplace_back("closed |Z|^2", closed.get_str() + (agree ? " (agrees)" : " (DISAGREES)"));
      } else {
        j["closed_form"] = nullptr;
        rows.emplace_back("closed |Z|^2", "n/a (linking form not diagonal)");
      }
      j["provenance"] = "sum over T of exp(+2 pi i k Q(x,x)); closed form 2^gamma delta_{beta,0} prod gcd(k,p) p";
    } else {
      const auto z = bf_partition_bruteforce(h, k);
      const BigInt closed = bf_partition_closed(h.profile, k);
      j["value"] = complex_json(z.value);
      rows.emplace_back("value", complex_text(z.value));
      const auto r = round_if_integral(z.value.re());
      const bool agree = r && *r == closed && std::abs(z.value.im()) < 1e-6;
      ok = agree;
      j["closed_form"] = {{"value", big(closed)}, {"agrees", agree}};
      rows.emplace_back("closed", closed.get_str() + (agree ? " (agrees)" : " (DISAGREES)"));
      j["provenance"] = "double sum over T of exp(-2 pi i k Q(x,y)); closed form prod gcd(k,p) p";
    }
  } else if (which == "rt") {
    const long n = require_positive(o.level, "--level", ErrorKind::InvalidModulus);
    const auto link = to_surgery(m);
    if (!link) unsupported(m, "rt", "a surgery presentation (surgery, lens, s3, s1xs2 or a connected sum of those)");
    const Normalization norm = o.normalization == "raw" ? Normalization::Raw : Normalization::Moo;
    const RtValue t = rt_at_level(*link, n, norm);
    j["level"] = n;
    j["normalization"] = o.normalization;
    j["value"] = complex_json(t.value);
    j["abs_squared"] = t.abs_squared_exact ? rational_json(*t.abs_squared_exact) : json(t.value.abs_squared());
    rows.emplace_back("level", std::to_string(n));
    rows.emplace_back("normalization", o.normalization);
    rows.emplace_back("value", complex_text(t.value));
    rows.emplace_back("|tau|^2", t.abs_squared_exact ? t.abs_squared_exact->get_str() : fmt(t.value.abs_squared()));
    const auto h = from_surgery(*link);
    std::optional<BigInt> closed;
    if (norm == Normalization::Moo) {
      if (n % 2 == 1) closed = tau_odd_abs_squared_closed(h.profile, n);
      else if (h.linking->primitive_diagonal()) closed = tau_abs_squared_closed(h.profile, n / 4);
    }
    if (closed) {
      const bool agree = t.abs_squared_exact ? *t.abs_squared_exact == Rational(*closed)
                                             : approx_integer(t.value.abs_squared(), *closed);
      ok = agree;
      j["closed_form"] = {{"abs_squared", big(*closed)}, {"agrees", agree}};
      rows.emplace_back("closed |tau|^2", closed->get_str() + (agree ? " (agrees)" : " (DISAGREES)"));
    } else {
      j["closed_form"] = nullptr;
    }
    j["provenance"] = norm == Normalization::Raw
                          ? "Delta_N^sigma D^{-sigma-m-1} sum_{(Z_N)^m} F"
                          : (n % 2 ? "odd-level Gauss-sum normalized charge sum over (Z_N)^m"
                                   : "reduced charge sum over (Z_{2k})^m at N = 4k");
  } else if (which == "tv") {
    const long n = require_positive(o.level, "--level", ErrorKind::InvalidModulus);
    const auto cells = to_cells(m);
    if (!cells) unsupported(m, "tv", "a cell presentation (cells, s3, s1xs2 or lens)");
    const BigInt alg = tv_algebraic(*cells, n);
    j["level"] = n;
    j["value"] = {{"re", alg.get_d()}, {"im", 0.0}, {"exact", {{"kind", "integer"}, {"value", big(alg)}}}};
    rows.emplace_back("level", std::to_string(n));
    rows.emplace_back("value", alg.get_str());
    try {
      const BigInt brute = tv_bruteforce(*cells, n);
      j["bruteforce"] = big(brute);
      ok = ok && brute == alg;
      rows.emplace_back("brute force", brute.get_str());
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EnumerationTooLarge) throw;
      j["bruteforce"] = nullptr;
      rows.emplace_back("brute force", "skipped (too many labelings)");
    }
    const BigInt h1 = h1_order_mod_n(homology_from_complex(*cells, 1), n);
    j["closed_form"] = {{"value", big(h1)}, {"agrees", h1 == alg}};
    ok = ok && h1 == alg;
    rows.emplace_back("|H^1(M;Z_N)|", h1.get_str() + (h1 == alg ? " (agrees)" : " (DISAGREES)"));
    j["provenance"] = "N^{-(v-1)} * #closed Z_N labelings; closed form |H^1(M;Z_N)|";
  } else {
    fail(ErrorKind::SchemaError, "unknown invariant '" + which + "'");
  }
  emit(j, o, rows);
  return ok ? kOk : kVerifyFailed;
}

// --- verify -----------------------------------------------------------------

struct Suite {
  json cases = json::array();
  std::size_t total = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;

  void add(const std::string& label, const Report& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
      json cj{{"identity", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"passed", c.passed}};
      if (!c.note.empty()) cj["note"] = c.note;
      checks.push_back(cj);
      ++total;
      if (!c.passed) {
        ++failed;
        failures.push_back(label + ": " + c.name + " (" + c.lhs + " vs " + c.rhs + ")");
      }
    }
    cases.push_back({{"case", label}, {"passed", r.passed()}, {"checks", checks}});
  }
};

// Deterministic link generator; no dependence on library distribution details.
struct LinkSource {
  std::uint64_t state;
  std::uint64_t next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state >> 33;
  }
  long range(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  SurgeryLink link(long maxdim, long bound) {
    const long m = range(1, maxdim);
    IntegerMatrix l(m, m);
    for (long i = 0; i < m; ++i)
      for (long j = i; j < m; ++j) l(i, j) = l(j, i) = range(-bound, bound);
    return {l};
  }
};

std::string lens_label(long p, long q) { return "L(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

int run_verify(const std::string& suite, const Options& o) {
  if (o.pmax < 1 || o.kmax < 1 || o.nmax < 1) fail(ErrorKind::BadRange, "grid bounds must be positive");
  Suite s;
  std::optional<ManifoldPresentation> given;
  if (!o.manifold.empty()) given = resolve_manifold(o.manifold);

  if (suite == "lemma2") {
    if (given) {
      const auto h = to_homology(*given);
      for (long k = 1; k <= o.kmax; ++k) s.add("k=" + std::to_string(k), verify_lemma2(h, k));
    } else {
      for (long p = 2; p <= o.pmax; ++p)
        for (long q = 1; q < p; ++q) {
          if (std::gcd(p, q) != 1) continue;
          const auto h = to_homology(lens_space(p, q));
          for (long k = 1; k <= o.kmax; ++k) s.add(lens_label(p, q) + " k=" + std::to_string(k), verify_lemma2(h, k));
        }
    }
  } else if (suite == "lemma3-rt") {
    if (given) {
      for (long k = 1; k <= o.kmax; ++k) s.add("k=" + std::to_string(k), verify_lemma3_part1(*given, k));
    } else {
      for (long p = 2; p <= o.pmax; ++p)
        for (long q = 1; q < p; ++q) {
          if (std::gcd(p, q) != 1) continue;
          const ManifoldPresentation chain{SurgeryPresentation{lens_chain(p, q)}};
          for (long k = 1; k <= o.kmax; ++k)
            s.add(lens_label(p, q) + " k=" + std::to_string(k), verify_lemma3_part1(chain, k));
        }
    }
  } else if (suite == "lemma3-tv") {
    std::vector<std::pair<std::string, ManifoldPresentation>> ms;
    if (given) ms.emplace_back("manifold", *given);
    else {
      ms.emplace_back("s3", sphere3());
      ms.emplace_back("s1xs2", s1_x_s2());
      ms.emplace_back("rp3-heegaard", ManifoldPresentation{CellsPresentation{fixtures::rp3_heegaard()}});
      for (long p = 2; p <= o.pmax; ++p) ms.emplace_back(lens_label(p, 1), lens_space(p, 1));
    }
    for (const auto& [name, m] : ms)
      for (long n = 1; n <= o.nmax; ++n) s.add(name + " n=" + std::to_string(n), verify_lemma3_tv(m, n));
  } else if (suite == "ribbon") {
    for (long n = 1; n <= o.nmax; ++n)
      for (int eps : {1, -1}) {
        Report r = verify_ribbon_axioms(CategoryZn(n, eps));
        s.add("N=" + std::to_string(n) + " eps=" + std::to_string(eps), r);
      }
  } else if (suite == "kirby") {
    const Normalization norm = o.normalization == "raw" ? Normalization::Raw : Normalization::Moo;
    std::vector<long> levels;
    for (long n = 1; n <= o.nmax; ++n)
      if (n % 4 != 2) levels.push_back(n);
    if (given) {
      const auto link = to_surgery(*given);
      if (!link) unsupported(*given, "kirby", "a surgery presentation");
      for (long n : levels) s.add("N=" + std::to_string(n), kirby_blowup_check(*link, n, norm));
    } else {
      LinkSource src{12345};
      for (int t = 0; t < 50; ++t) {
        const auto link = src.link(2, 5);
        for (long n : {3L, 5L, 8L, 12L})
          s.add("link " + std::to_string(t) + " N=" + std::to_string(n), kirby_blowup_check(link, n, norm));
      }
    }
  } else {
    fail(ErrorKind::SchemaError, "unknown suite '" + suite + "'");
  }

  json j{{"suite", suite}, {"checks", s.total}, {"failed", s.failed}, {"passed", s.failed == 0}, {"cases", s.cases}};
  if (o.output == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& c : s.cases) {
      std::cout << (c["passed"].get<bool>() ? "PASS  " : "FAIL  ") << c["case"].get<std::string>() << "\n";
      for (const auto& ch : c["checks"])
        if (!ch["passed"].get<bool>())
          std::cout << "      " << ch["identity"].get<std::string>() << ": " << ch["lhs"].get<std::string>() << " vs "
                    << ch["rhs"].get<std::string>() << "\n";
    }
    std::cout << suite << ": " << (s.total - s.failed) << "/" << s.total << " checks passed\n";
  }
  for (const auto& f : s.failures) std::cerr << "failed: " << f << "\n";
  return s.failed == 0 ? kOk : kVerifyFailed;
}

void print_error(const std::string& kind, const std::string& message) {
  json e{{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << e.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact abelian quantum invariants of closed 3-manifolds"};
  app.require_subcommand(1);
  Options o;
  std::string which;
  std::string suite;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--manifold", o.manifold, "path, inline JSON, or one of s3, s1xs2, rp3, rp3-heegaard, lens(p,q)");
    sub->add_option("--output", o.output)->check(CLI::IsMember({"json", "table"}));
  };
  auto* hom = app.add_subcommand("homology", "first homology and linking form");
  add_common(hom);
  auto* inv = app.add_subcommand("invariant", "compute cs, bf, rt or tv");
  inv->add_option("which", which)->required()->check(CLI::IsMember({"cs", "bf", "rt", "tv"}));
  add_common(inv);
  inv->add_option("--k", o.k, "coupling for cs and bf");
  inv->add_option("--level", o.level, "level N for rt and tv");
  inv->add_option("--normalization", o.normalization)->check(CLI::IsMember({"moo", "raw"}));
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", suite)->required()->check(CLI::IsMember({"lemma2", "lemma3-rt", "lemma3-tv", "ribbon", "kirby"}));
  add_common(ver);
  ver->add_option("--pmax", o.pmax);
  ver->add_option("--kmax", o.kmax);
  ver->add_option("--nmax", o.nmax);
  ver->add_option("--normalization", o.normalization)->check(CLI::IsMember({"moo", "raw"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("SchemaError", e.what());
    return kParse;
  }

  try {
    if (hom->parsed()) return run_homology(o);
    if (inv->parsed()) return run_invariant(which, o);
    return run_verify(suite, o);
  } catch (const Error& e) {
    print_error(std::string(to_string(e.kind())), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    print_error("Internal", e.what());
    return kInput;
  }
}
