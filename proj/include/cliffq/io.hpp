#pragma once

// JSON and CSV rendering of reports, and lossless matrix export/import.

#include <json.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "clifford.hpp"
#include "decomp.hpp"
#include "gram.hpp"
#include "report.hpp"

namespace cliffq {

using json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PointParams {
  int m = 0;
  int n = 0;
  int k = 2;
  int l = 1;

  friend bool operator==(const PointParams&, const PointParams&) = default;
};

inline json provenance_json(const PointParams& p) {
  return {{"m", p.m},
          {"n", p.n},
          {"k", p.k},
          {"l", p.l},
          {"basis_order", "occupation vectors (r_1..r_{m+n}), mixed radix, last mode fastest"},
          {"field_order", 8 * p.k}};
}

inline json index_json(const IndexTuple& t) {
  json out = json::object();
  for (const auto& e : t) {
    if (e.is_sign) {
      out[e.name] = e.value > 0 ? "+" : "-";
    } else {
      out[e.name] = e.value;
    }
  }
  return out;
}

inline json entry_json(const CheckEntry& e) {
  json out = {{"suite", e.suite},        {"relation_id", e.id()},       {"relation", e.relation}, {"index", index_json(e.index)},
              {"backend", e.backend},    {"status", to_string(e.status)}, {"residual", e.residual}};
  if (!e.note.empty()) out["note"] = e.note;
  return out;
}

inline json summary_json(const VerificationReport& r) {
  return {{"total", r.entries().size()}, {"passed", r.passed()}, {"failed", r.failed()}, {"max_residual", r.max_residual()}};
}

inline json report_json(const PointParams& p, const VerificationReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries()) entries.push_back(entry_json(e));
  return {{"schema", schema_version}, {"provenance", provenance_json(p)}, {"entries", std::move(entries)}, {"summary", summary_json(r)}};
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Flat projection of the entries; one row per check.
inline std::string report_csv(const PointParams& p, const VerificationReport& r) {
  std::ostringstream os;
  os << "m,n,k,l,suite,relation_id,backend,status,residual,note\n";
  for (const auto& e : r.entries())
    os << p.m << ',' << p.n << ',' << p.k << ',' << p.l << ',' << csv_quote(e.suite) << ',' << csv_quote(e.id()) << ','
       << e.backend << ',' << to_string(e.status) << ',' << json(e.residual).dump() << ',' << csv_quote(e.note) << '\n';
  return os.str();
}

inline std::string occupation_label(const OccupationVector& v) {
  std::string s = "|";
  for (std::size_t j = 0; j < v.size(); ++j) s += (j ? "," : "") + std::to_string(v[j]);
  return s + ">";
}

inline json positivity_json(const PositivityAnalysis& a) {
  json out = {{"positive_definite", a.positive_definite}};
  out["first_negative"] = a.first_negative ? json(occupation_label(*a.first_negative)) : json(nullptr);
  std::size_t negative = 0;
  for (const auto& row : a.rows) negative += row.sign == Sign::negative ? 1 : 0;
  out["negative_count"] = negative;
  return out;
}

inline json decomposition_json(const DecompositionRecord& d) {
  json grades = json::array();
  for (const auto& g : d.grades) grades.push_back({{"r", g.r}, {"dim", g.dim}, {"irreducible", g.irreducible}});
  return {{"schema", schema_version}, {"m", d.m}, {"n", d.n}, {"k", d.k}, {"l", d.l},
          {"grades", std::move(grades)}, {"count", d.count}, {"total", d.total}};
}

// ---- scalars ----

inline json scalar_json(const CycloScalar& x, int order) {
  json coeffs = json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(c.get_num().get_str() + "/" + c.get_den().get_str());
  return {{"order", order}, {"coeffs", std::move(coeffs)}};
}

inline json scalar_json(const FloatScalar& x, int) { return json::array({x.real(), x.imag()}); }

inline CycloScalar scalar_from_json(const json& j, const CyclotomicField& F) {
  if (!j.is_object() || !j.contains("order") || !j.contains("coeffs")) throw SchemaError("exact scalar must be {order, coeffs}");
  if (j["order"].get<int>() != F.order())
    throw SchemaError("scalar field order " + std::to_string(j["order"].get<int>()) + " does not match " + std::to_string(F.order()));
  const auto& cs = j["coeffs"];
  if (!cs.is_array() || cs.size() != static_cast<std::size_t>(F.degree())) throw SchemaError("exact scalar has the wrong coefficient count");
  std::vector<mpq_class> coeffs;
  for (const auto& c : cs) {
    if (!c.is_string()) throw SchemaError("exact coefficient must be a \"num/den\" string");
    mpq_class v;
    if (v.set_str(c.get<std::string>(), 10) != 0 || v.get_den() == 0) throw SchemaError("corrupted coefficient '" + c.get<std::string>() + "'");
    v.canonicalize();
    coeffs.push_back(v);
  }
  return {F.context(), std::move(coeffs)};
}

inline FloatScalar scalar_from_json(const json& j, const FloatField&) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) throw SchemaError("float scalar must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

// ---- matrices ----

template <class Scalar>
json matrix_json(const std::string& name, const OperatorMatrix<Scalar>& m, int order) {
  json triplets = json::array();
  m.for_each([&](std::size_t r, std::size_t c, const Scalar& v) { triplets.push_back({r, c, scalar_json(v, order)}); });
  json parity = m.parity() ? json(to_int(*m.parity())) : json(nullptr);
  return {{"name", name}, {"parity", parity}, {"triplets", std::move(triplets)}};
}

template <class Field>
json export_bundle(const RepresentationBundle<Field>& b) {
  const FockModule& mod = b.module;
  json mats = json::array();
  const int order = 8 * mod.k();
  for (int i = 1; i <= b.modes(); ++i) {
    mats.push_back(matrix_json("c+" + std::to_string(i), b.c_plus(i), order));
    mats.push_back(matrix_json("c-" + std::to_string(i), b.c_minus(i), order));
    mats.push_back(matrix_json("N" + std::to_string(i), b.N(i), order));
  }
  return {{"schema", schema_version}, {"m", mod.m()}, {"n", mod.n()}, {"k", mod.k()}, {"l", mod.l()}, {"basis", to_string(b.basis)},
          {"backend", Field::backend_name}, {"dim", mod.dim()}, {"matrices", std::move(mats)}};
}

namespace detail {

template <class Field>
OperatorMatrix<typename Field::scalar_type> matrix_from_json(const json& j, std::size_t dim, const Field& F) {
  using Matrix = OperatorMatrix<typename Field::scalar_type>;
  std::optional<Parity> parity;
  if (!j.at("parity").is_null()) parity = static_cast<Parity>(j.at("parity").get<int>());
  Matrix m = Matrix::square(dim, parity);
  for (const auto& t : j.at("triplets")) {
    if (!t.is_array() || t.size() != 3) throw SchemaError("triplet must be [row, col, value]");
    const auto r = t[0].get<std::size_t>();
    const auto c = t[1].get<std::size_t>();
    if (r >= dim || c >= dim) throw SchemaError("triplet index outside the module");
    m.set(r, c, scalar_from_json(t[2], F));
  }
  return m;
}

template <class Field>
RepresentationBundle<Field> bundle_from_json(const json& j, const FockModule& mod, const Field& F, BasisKind basis) {
  RepresentationBundle<Field> b{mod, F, basis, {}, {}, {}};
  std::map<std::string, json> by_name;
  for (const auto& mj : j.at("matrices")) by_name[mj.at("name").get<std::string>()] = mj;
  for (int i = 1; i <= mod.modes(); ++i) {
    for (const char* prefix : {"c+", "c-", "N"}) {
      const std::string name = prefix + std::to_string(i);
      auto it = by_name.find(name);
      if (it == by_name.end()) throw SchemaError("missing matrix " + name);
      auto mat = matrix_from_json(it->second, mod.dim(), F);
      if (prefix[0] == 'N') {
        b.number.push_back(std::move(mat));
      } else if (prefix[1] == '+') {
        b.raise.push_back(std::move(mat));
      } else {
        b.lower.push_back(std::move(mat));
      }
    }
  }
  return b;
}

}  // namespace detail

/// Rebuilds a bundle from an export document. With `expected` set, the
/// document's parameters must match it.
inline AnyBundle import_bundle(const json& j, const std::optional<PointParams>& expected = std::nullopt) {
  try {
    if (!j.is_object() || !j.contains("schema")) throw SchemaError("not a matrix export document");
    if (j["schema"].get<int>() != schema_version)
      throw SchemaError("schema " + std::to_string(j["schema"].get<int>()) + " unsupported (expected " + std::to_string(schema_version) + ")");
    const PointParams p{j.at("m").get<int>(), j.at("n").get<int>(), j.at("k").get<int>(), j.at("l").get<int>()};
    if (expected) {
      if (expected->k != p.k) throw SchemaError("k mismatch: file has k=" + std::to_string(p.k) + ", expected " + std::to_string(expected->k));
      if (!(*expected == p)) throw SchemaError("parameter mismatch between file and expected (m,n,k,l)");
    }
    const FockModule mod = FockModule::quotient(p.m, p.n, p.k, p.l);
    if (j.contains("dim") && j["dim"].get<std::size_t>() != mod.dim()) throw SchemaError("dimension does not match (m,n,k)");
    const std::string basis = j.at("basis").get<std::string>();
    const std::string backend = j.at("backend").get<std::string>();
    const BasisKind bk = basis == "raw" ? BasisKind::raw : basis == "orthonormal" ? BasisKind::orthonormal : throw SchemaError("unknown basis " + basis);
    if (backend == "exact") {
      if (bk != BasisKind::raw) throw SchemaError("exact export must use the raw basis");
      return detail::bundle_from_json(j, mod, CyclotomicField(p.k, p.l), bk);
    }
    if (backend == "float") return detail::bundle_from_json(j, mod, FloatField(p.k, p.l), bk);
    throw SchemaError("unknown backend " + backend);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed export document: ") + e.what());
  }
}

}  // namespace cliffq
