#pragma once

// Per-relation check records.

#include <algorithm>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "operator_matrix.hpp"

namespace cliffq {

enum class CheckStatus { exact_zero, within_tolerance, failed };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::exact_zero: return "exact_zero";
    case CheckStatus::within_tolerance: return "within_tolerance";
    case CheckStatus::failed: return "FAILED";
  }
  return "?";
}

/// One named index of a relation instance, e.g. {"i", 2} or {"xi", -1}.
struct IndexEntry {
  std::string name;
  int value = 0;
  bool is_sign = false;  // rendered as +/-

  friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
};

using IndexTuple = std::vector<IndexEntry>;

inline IndexEntry idx(std::string name, int value) { return {std::move(name), value, false}; }
inline IndexEntry sgn_idx(std::string name, int value) { return {std::move(name), value, true}; }

inline std::string render(const IndexTuple& t) {
  std::string s;
  for (const auto& e : t) {
    if (!s.empty()) s += ",";
    s += e.name + "=";
    s += e.is_sign ? (e.value > 0 ? "+" : "-") : std::to_string(e.value);
  }
  return s;
}

struct CheckEntry {
  std::string suite;
  std::string relation;
  IndexTuple index;
  std::string backend;
  CheckStatus status = CheckStatus::failed;
  double residual = 0.0;
  std::string note;

  [[nodiscard]] bool passed() const { return status != CheckStatus::failed; }
  [[nodiscard]] std::string id() const {
    return index.empty() ? relation : relation + "[" + render(index) + "]";
  }
};

class VerificationReport {
 public:
  VerificationReport() = default;
  explicit VerificationReport(std::string suite, double tolerance = 1e-10)
      : suite_(std::move(suite)), tolerance_(tolerance) {}

  [[nodiscard]] const std::string& suite() const { return suite_; }
  [[nodiscard]] double tolerance() const { return tolerance_; }
  [[nodiscard]] const std::vector<CheckEntry>& entries() const { return entries_; }

  /// Records a residual matrix: exact backends pass only on an exactly zero
  /// matrix, float backends when the largest entry is within tolerance.
  template <class Scalar>
  void check_zero(const std::string& relation, IndexTuple index, const OperatorMatrix<Scalar>& residual,
                  const std::string& backend, bool exact) {
    CheckEntry e{suite_, relation, std::move(index), backend, CheckStatus::failed, residual.max_abs(), {}};
    if (exact) {
      e.status = residual.is_zero_matrix() ? CheckStatus::exact_zero : CheckStatus::failed;
    } else {
      e.status = e.residual <= tolerance_ ? CheckStatus::within_tolerance : CheckStatus::failed;
    }
    entries_.push_back(std::move(e));
  }

  /// Records a boolean outcome (structural and counting checks).
  void check_true(const std::string& relation, IndexTuple index, bool ok, const std::string& backend,
                  std::string note = {}) {
    entries_.push_back({suite_, relation, std::move(index), backend,
                        ok ? CheckStatus::exact_zero : CheckStatus::failed, ok ? 0.0 : 1.0, std::move(note)});
  }

  /// Records a float discrepancy against the tolerance.
  void check_within(const std::string& relation, IndexTuple index, double discrepancy, const std::string& backend) {
    entries_.push_back({suite_, relation, std::move(index), backend,
                        discrepancy <= tolerance_ ? CheckStatus::within_tolerance : CheckStatus::failed, discrepancy, {}});
  }

  void append_entry(CheckEntry e) { entries_.push_back(std::move(e)); }

  void append(const VerificationReport& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  }

  /// Orders entries by suite, relation id, then index tuple values.
  void sort() {
    std::stable_sort(entries_.begin(), entries_.end(), [](const CheckEntry& a, const CheckEntry& b) {
      auto key = [](const CheckEntry& e) {
        std::vector<int> vals;
        for (const auto& ix : e.index) vals.push_back(ix.value);
        return std::make_tuple(e.suite, e.relation, vals, e.backend);
      };
      return key(a) < key(b);
    });
  }

  [[nodiscard]] std::size_t passed() const {
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [](const auto& e) { return e.passed(); }));
  }
  [[nodiscard]] std::size_t failed() const { return entries_.size() - passed(); }
  [[nodiscard]] bool all_passed() const { return failed() == 0; }

  [[nodiscard]] std::vector<CheckEntry> failures() const {
    std::vector<CheckEntry> out;
    for (const auto& e : entries_)
      if (!e.passed()) out.push_back(e);
    return out;
  }

  [[nodiscard]] double max_residual() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, e.residual);
    return m;
  }

 private:
  std::string suite_;
  double tolerance_ = 1e-10;
  std::vector<CheckEntry> entries_;
};

}  // namespace cliffq
