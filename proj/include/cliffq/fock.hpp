#pragma once

// Occupation-number bases of the root-of-unity Fock module and of bounded
// truncations of the generic Fock space.

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclo.hpp"
#include "qcore.hpp"

namespace cliffq {

/// (r_1, ..., r_{m+n}); stored 0-based, r[mode-1].
using OccupationVector = std::vector<int>;

enum class ModuleKind {
  quotient,   // F_{l/k}: bosonic occupations 0..k-1
  truncated,  // generic Fock space cut at a bosonic cap, for testing only
};

class FockModule {
 public:
  /// The quotient module; bosonic occupations 0..k-1, fermionic 0..1.
  static FockModule quotient(int m, int n, int k, int l) {
    check_admissible(k, l);
    return FockModule(GradingMap(m, n), k, l, k - 1, ModuleKind::quotient);
  }

  /// Bounded piece of the generic module with bosonic occupations 0..cap.
  /// Operators on it are exact only on vectors whose bosonic entries stay
  /// strictly below the cap.
  static FockModule truncated(int m, int n, int k, int l, int cap) {
    check_admissible(k, l);
    if (cap < 1) throw std::invalid_argument("truncated module needs cap >= 1");
    return FockModule(GradingMap(m, n), k, l, cap, ModuleKind::truncated);
  }

  [[nodiscard]] const GradingMap& grading() const { return grading_; }
  [[nodiscard]] int m() const { return grading_.m(); }
  [[nodiscard]] int n() const { return grading_.n(); }
  [[nodiscard]] int modes() const { return grading_.modes(); }
  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] int l() const { return l_; }
  [[nodiscard]] ModuleKind kind() const { return kind_; }
  [[nodiscard]] int boson_cap() const { return cap_; }
  [[nodiscard]] std::size_t dim() const { return basis_.size(); }
  [[nodiscard]] const std::vector<OccupationVector>& basis() const { return basis_; }
  [[nodiscard]] const OccupationVector& vector_at(std::size_t index) const { return basis_.at(index); }

  /// Largest allowed occupation of the given mode (1-based).
  [[nodiscard]] int max_occupation(int mode) const { return grading_.is_boson(mode) ? cap_ : 1; }

  [[nodiscard]] bool contains(const OccupationVector& v) const {
    if (v.size() != static_cast<std::size_t>(modes())) return false;
    for (int mode = 1; mode <= modes(); ++mode) {
      const int r = v[static_cast<std::size_t>(mode - 1)];
      if (r < 0 || r > max_occupation(mode)) return false;
    }
    return true;
  }

  /// Mixed-radix index, last mode fastest.
  [[nodiscard]] std::size_t rank(const OccupationVector& v) const {
    if (!contains(v)) throw std::out_of_range("rank: occupation vector outside the module");
    std::size_t idx = 0;
    for (int mode = 1; mode <= modes(); ++mode)
      idx = idx * static_cast<std::size_t>(max_occupation(mode) + 1) + static_cast<std::size_t>(v[static_cast<std::size_t>(mode - 1)]);
    return idx;
  }

  [[nodiscard]] OccupationVector unrank(std::size_t index) const {
    if (index >= dim()) throw std::out_of_range("unrank: index " + std::to_string(index) + " >= dim");
    OccupationVector v(static_cast<std::size_t>(modes()));
    for (int mode = modes(); mode >= 1; --mode) {
      const auto radix = static_cast<std::size_t>(max_occupation(mode) + 1);
      v[static_cast<std::size_t>(mode - 1)] = static_cast<int>(index % radix);
      index /= radix;
    }
    return v;
  }

  /// Highest total occupation, m*cap + n.
  [[nodiscard]] int max_grade() const { return m() * cap_ + n(); }

  /// Indices of all basis vectors with total occupation r; empty if r is out of range.
  [[nodiscard]] std::vector<std::size_t> grade_subspace(int r) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < basis_.size(); ++j)
      if (grade(basis_[j]) == r) out.push_back(j);
    return out;
  }

  static int grade(const OccupationVector& v) { return std::accumulate(v.begin(), v.end(), 0); }

  /// Membership in the invariant subspace spanned by vectors with at least
  /// one bosonic occupation >= k (the span factored out by the quotient).
  static bool is_in_invariant_subspace(const OccupationVector& v, const GradingMap& g, int k) {
    for (int mode = 1; mode <= g.m(); ++mode)
      if (v.at(static_cast<std::size_t>(mode - 1)) >= k) return true;
    return false;
  }

  [[nodiscard]] std::string label(std::size_t index) const {
    const auto& v = basis_.at(index);
    std::string s = "|";
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j) s += ",";
      s += std::to_string(v[j]);
    }
    return s + ">";
  }

 private:
  FockModule(GradingMap g, int k, int l, int cap, ModuleKind kind)
      : grading_(g), k_(k), l_(l), cap_(cap), kind_(kind) {
    if (g.modes() < 1) throw std::invalid_argument("Fock module needs m+n >= 1");
    std::size_t total = 1;
    for (int mode = 1; mode <= g.modes(); ++mode) total *= static_cast<std::size_t>(max_occupation(mode) + 1);
    basis_.reserve(total);
    for (std::size_t j = 0; j < total; ++j) basis_.push_back(unrank_raw(j));
  }

  [[nodiscard]] OccupationVector unrank_raw(std::size_t index) const {
    OccupationVector v(static_cast<std::size_t>(modes()));
    for (int mode = modes(); mode >= 1; --mode) {
      const auto radix = static_cast<std::size_t>(max_occupation(mode) + 1);
      v[static_cast<std::size_t>(mode - 1)] = static_cast<int>(index % radix);
      index /= radix;
    }
    return v;
  }

  GradingMap grading_;
  int k_;
  int l_;
  int cap_;
  ModuleKind kind_;
  std::vector<OccupationVector> basis_;
};

}  // namespace cliffq
