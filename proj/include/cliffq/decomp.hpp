#pragma once

// Invariant subspaces: orbit spans under a set of generators, the grade
// decomposition of the Fock module under U_q[sl(m|n)], and irreducibility.

#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "clifford.hpp"
#include "cyclo.hpp"
#include "fock.hpp"
#include "report.hpp"
#include "slmn.hpp"

namespace cliffq {

class SubspaceLeakError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A float pivot fell in the band where rank cannot be decided reliably.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Scalar>
using SparseVector = std::map<std::size_t, Scalar>;

namespace detail {

template <class Scalar>
constexpr bool is_exact_scalar = std::is_same_v<Scalar, CycloScalar>;

constexpr double pivot_threshold = 1e-10;
constexpr double zero_threshold = 1e-12;

// Column-major copy for applying a sparse matrix to a sparse vector.
template <class Scalar>
std::vector<std::vector<std::pair<std::size_t, Scalar>>> columns_of(const OperatorMatrix<Scalar>& m) {
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> cols(m.cols());
  m.for_each([&](std::size_t r, std::size_t c, const Scalar& v) { cols[c].emplace_back(r, v); });
  return cols;
}

/// Row-echelon basis built incrementally. Each stored row is 1 at its pivot
/// and 0 at the pivots of all earlier rows.
template <class Scalar>
class EchelonBasis {
 public:
  [[nodiscard]] std::size_t size() const { return rows_.size(); }
  [[nodiscard]] const SparseVector<Scalar>& row(std::size_t t) const { return rows_[t]; }

  /// Reduces v against the basis; appends it if independent. Returns the
  /// index of the new row or nullopt.
  std::optional<std::size_t> insert(SparseVector<Scalar> v) {
    for (std::size_t t = 0; t < rows_.size(); ++t) {
      auto it = v.find(pivots_[t]);
      if (it == v.end()) continue;
      const Scalar factor = it->second;
      for (const auto& [c, x] : rows_[t]) {
        Scalar& slot = v[c];
        slot = slot - factor * x;
      }
      v.erase(pivots_[t]);
      prune(v);
    }
    if (v.empty()) return std::nullopt;
    std::size_t pivot = v.begin()->first;
    if constexpr (!is_exact_scalar<Scalar>) {
      double best = 0.0;
      for (const auto& [c, x] : v)
        if (magnitude(x) > best) {
          best = magnitude(x);
          pivot = c;
        }
      if (best <= zero_threshold) return std::nullopt;
      if (best < pivot_threshold)
        throw PrecisionError("pivot magnitude " + std::to_string(best) + " between 1e-12 and 1e-10; rank undecidable");
    }
    Scalar inv;
    if constexpr (is_exact_scalar<Scalar>) {
      inv = v.at(pivot).inverse();
    } else {
      inv = Scalar(1) / v.at(pivot);
    }
    for (auto& [c, x] : v) x = x * inv;
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return rows_.size() - 1;
  }

 private:
  static void prune(SparseVector<Scalar>& v) {
    for (auto it = v.begin(); it != v.end();) {
      bool drop = false;
      if constexpr (is_exact_scalar<Scalar>) {
        drop = is_zero(it->second);
      } else {
        drop = magnitude(it->second) <= zero_threshold;
      }
      it = drop ? v.erase(it) : std::next(it);
    }
  }

  std::vector<SparseVector<Scalar>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace detail

/// Dimension of the smallest subspace containing `seed` and invariant under
/// every generator. With `subspace` given, a generator image with support
/// outside it throws SubspaceLeakError.
template <class Scalar>
std::size_t orbit_span(const std::vector<OperatorMatrix<Scalar>>& generators, const SparseVector<Scalar>& seed,
                       const std::optional<std::vector<std::size_t>>& subspace = std::nullopt) {
  std::vector<std::vector<std::vector<std::pair<std::size_t, Scalar>>>> cols;
  cols.reserve(generators.size());
  for (const auto& g : generators) cols.push_back(detail::columns_of(g));
  std::vector<bool> allowed;
  if (subspace) {
    const std::size_t dim = generators.empty() ? 0 : generators.front().rows();
    allowed.assign(dim, false);
    for (std::size_t j : *subspace) allowed.at(j) = true;
    for (const auto& [c, x] : seed)
      if (!allowed.at(c)) throw SubspaceLeakError("orbit_span: seed outside the declared subspace");
  }

  detail::EchelonBasis<Scalar> basis;
  std::deque<std::size_t> pending;
  if (auto t = basis.insert(seed)) pending.push_back(*t);
  while (!pending.empty()) {
    const SparseVector<Scalar> v = basis.row(pending.front());
    pending.pop_front();
    for (const auto& gc : cols) {
      SparseVector<Scalar> w;
      for (const auto& [c, x] : v)
        for (const auto& [r, y] : gc[c]) {
          Scalar& slot = w[r];
          slot = slot + y * x;
        }
      for (const auto& [r, y] : w)
        if (subspace && !allowed.at(r) && !is_zero(y))
          throw SubspaceLeakError("orbit_span: generator maps the subspace outside itself (row " + std::to_string(r) + ")");
      if (auto t = basis.insert(std::move(w))) pending.push_back(*t);
    }
  }
  return basis.size();
}

template <class Scalar>
SparseVector<Scalar> unit_vector(std::size_t j, const Scalar& one) {
  return {{j, one}};
}

/// Every single-step ladder coefficient that the irreducibility argument
/// needs is nonzero: lowering from r_j > 0, raising below the top rung.
inline VerificationReport structural_irreducibility(const RepresentationBundle<CyclotomicField>& b) {
  if (b.basis != BasisKind::raw) throw std::invalid_argument("structural_irreducibility expects the raw basis");
  const FockModule& module = b.module;
  VerificationReport rep("decomp");
  for (int mode = 1; mode <= module.modes(); ++mode) {
    const auto slot = static_cast<std::size_t>(mode - 1);
    bool lower_ok = true;
    bool raise_ok = true;
    for (std::size_t col = 0; col < module.dim(); ++col) {
      const OccupationVector& r = module.vector_at(col);
      if (r[slot] > 0) {
        OccupationVector down = r;
        --down[slot];
        lower_ok = lower_ok && !is_zero(b.c_minus(mode).get(module.rank(down), col));
      }
      if (r[slot] < module.max_occupation(mode)) {
        OccupationVector up = r;
        ++up[slot];
        raise_ok = raise_ok && !is_zero(b.c_plus(mode).get(module.rank(up), col));
      }
    }
    rep.check_true("decomp.structural.lower", {idx("i", mode)}, lower_ok, "exact");
    rep.check_true("decomp.structural.raise", {idx("i", mode)}, raise_ok, "exact");
  }
  return rep;
}

/// Orbit of every basis vector under all c_i^+- fills the module.
template <class Field>
VerificationReport module_irreducibility(const RepresentationBundle<Field>& b) {
  using Scalar = typename Field::scalar_type;
  std::vector<OperatorMatrix<Scalar>> gens;
  for (int mode = 1; mode <= b.modes(); ++mode) {
    gens.push_back(b.c_plus(mode));
    gens.push_back(b.c_minus(mode));
  }
  VerificationReport rep("decomp");
  for (std::size_t j = 0; j < b.module.dim(); ++j) {
    const std::size_t span = orbit_span(gens, unit_vector(j, b.field.one()));
    rep.check_true("decomp.module_irreducible", {idx("seed", static_cast<int>(j))}, span == b.module.dim(), Field::backend_name,
                   span == b.module.dim() ? std::string{} : "span " + std::to_string(span));
  }
  return rep;
}

struct GradeRecord {
  int r = 0;
  std::size_t dim = 0;
  bool irreducible = false;

  friend bool operator==(const GradeRecord&, const GradeRecord&) = default;
};

struct DecompositionRecord {
  int m = 0;
  int n = 0;
  int k = 0;
  int l = 0;
  std::vector<GradeRecord> grades;
  std::size_t total = 0;
  std::size_t count = 0;

  [[nodiscard]] std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    for (const auto& g : grades) out.push_back(g.dim);
    return out;
  }
  friend bool operator==(const DecompositionRecord&, const DecompositionRecord&) = default;
};

struct Decomposition {
  DecompositionRecord record;
  VerificationReport report;
};

/// Splits the module into grade subspaces F_r, checks each is invariant
/// under every e_ij and H~_i, and runs the orbit from every basis vector of
/// F_r. Irreducibility is established for l = 1 only; for other l the
/// verdict is recorded without being a pass/fail criterion.
template <class Field>
Decomposition decompose_sl(const CartanWeylBasis<Field>& cw) {
  using Scalar = typename Field::scalar_type;
  const FockModule& module = cw.module;
  const std::string backend = Field::backend_name;
  std::vector<OperatorMatrix<Scalar>> gens;
  for (const auto& [key, x] : cw.root) gens.push_back(x);
  for (const auto& h : cw.cartan) gens.push_back(h.matrix(cw.field));

  Decomposition out{{module.m(), module.n(), module.k(), module.l(), {}, module.dim(), 0}, VerificationReport("decomp")};
  std::size_t sum = 0;
  for (int r = 0; r <= module.max_grade(); ++r) {
    const auto sub = module.grade_subspace(r);
    if (sub.empty()) continue;
    bool invariant = true;
    bool irreducible = true;
    for (std::size_t j : sub) {
      try {
        if (orbit_span(gens, unit_vector(j, cw.field.one()), sub) != sub.size()) irreducible = false;
      } catch (const SubspaceLeakError&) {
        invariant = false;
        irreducible = false;
      }
    }
    out.record.grades.push_back({r, sub.size(), irreducible});
    sum += sub.size();
    out.report.check_true("decomp.grade_invariant", {idx("r", r)}, invariant, backend);
    if (module.l() == 1) {
      out.report.check_true("decomp.grade_irreducible", {idx("r", r)}, irreducible, backend);
    } else {
      out.report.check_true("decomp.grade_irreducible_observed", {idx("r", r)}, true, backend,
                            irreducible ? "irreducible" : "reducible");
    }
  }
  out.record.count = out.record.grades.size();
  const long expected_count = static_cast<long>(module.m()) * module.k() - module.m() + module.n() + 1;
  out.report.check_true("decomp.grade_count", {}, static_cast<long>(out.record.count) == expected_count, backend,
                        std::to_string(out.record.count) + " vs " + std::to_string(expected_count));
  std::size_t expected_total = 1;
  for (int t = 0; t < module.m(); ++t) expected_total *= static_cast<std::size_t>(module.k());
  for (int t = 0; t < module.n(); ++t) expected_total *= 2;
  out.report.check_true("decomp.total_dim", {}, sum == expected_total && module.dim() == expected_total, backend,
                        std::to_string(sum) + " vs " + std::to_string(expected_total));
  return out;
}

/// Grade-by-grade agreement of the exact raw-basis orbit dimensions with the
/// float orthonormal-basis ones (l = 1).
inline VerificationReport crosscheck_orbit_backends(const FockModule& module) {
  const auto exact = decompose_sl(build_cartan_weyl(build_clifford_raw(module, CyclotomicField(module.k(), module.l()))));
  const auto flt = decompose_sl(build_cartan_weyl_closed_form(module));
  VerificationReport rep("decomp");
  rep.check_true("decomp.backend_agreement", {}, exact.record.grades == flt.record.grades, "both");
  return rep;
}

/// For fixed (m,n), records at different k must have different graded
/// dimension lists.
inline VerificationReport inequivalence_check(const std::vector<DecompositionRecord>& records) {
  VerificationReport rep("decomp");
  for (std::size_t a = 0; a < records.size(); ++a)
    for (std::size_t b = a + 1; b < records.size(); ++b) {
      const auto& x = records[a];
      const auto& y = records[b];
      if (x.m != y.m || x.n != y.n || x.k == y.k) continue;
      rep.check_true("decomp.inequivalent", {idx("m", x.m), idx("n", x.n), idx("k1", x.k), idx("k2", y.k)}, x.dims() != y.dims(),
                     "exact");
    }
  return rep;
}

}  // namespace cliffq
