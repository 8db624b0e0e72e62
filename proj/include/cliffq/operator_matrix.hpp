#pragma once

// Sparse matrices with an optional Z2 parity tag.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclo.hpp"

namespace cliffq {

enum class Parity : int { even = 0, odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) % 2);
}

inline int to_int(Parity p) { return static_cast<int>(p); }

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

template <class Scalar>
class OperatorMatrix {
 public:
  using scalar_type = Scalar;
  using Row = std::map<std::size_t, Scalar>;

  OperatorMatrix() = default;
  OperatorMatrix(std::size_t rows, std::size_t cols, std::optional<Parity> parity = std::nullopt)
      : cols_(cols), data_(rows), parity_(parity) {}

  static OperatorMatrix square(std::size_t dim, std::optional<Parity> parity = std::nullopt) {
    return OperatorMatrix(dim, dim, parity);
  }

  static OperatorMatrix diagonal(const std::vector<Scalar>& diag) {
    OperatorMatrix m(diag.size(), diag.size(), Parity::even);
    for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return data_.size(); }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::optional<Parity> parity() const { return parity_; }
  void set_parity(std::optional<Parity> p) { parity_ = p; }

  /// Stores value at (r, c); exact zeros are not stored.
  void set(std::size_t r, std::size_t c, const Scalar& value) {
    bounds(r, c);
    if (is_zero(value)) {
      data_[r].erase(c);
    } else {
      data_[r][c] = value;
    }
  }

  void add_to(std::size_t r, std::size_t c, const Scalar& value) {
    bounds(r, c);
    if (is_zero(value)) return;
    auto it = data_[r].find(c);
    if (it == data_[r].end()) {
      data_[r].emplace(c, value);
      return;
    }
    it->second += value;
    if (is_zero(it->second)) data_[r].erase(it);
  }

  [[nodiscard]] Scalar get(std::size_t r, std::size_t c) const {
    bounds(r, c);
    auto it = data_[r].find(c);
    return it == data_[r].end() ? Scalar{} : it->second;
  }

  [[nodiscard]] const Row& row(std::size_t r) const { return data_[r]; }

  [[nodiscard]] std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  [[nodiscard]] bool is_zero_matrix() const {
    return std::all_of(data_.begin(), data_.end(), [](const Row& r) { return r.empty(); });
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t r = 0; r < data_.size(); ++r)
      for (const auto& [c, v] : data_[r]) fn(r, c, v);
  }

  /// Largest |entry| under the complex embedding; 0 for the zero matrix.
  [[nodiscard]] double max_abs() const {
    double m = 0.0;
    for_each([&](std::size_t, std::size_t, const Scalar& v) { m = std::max(m, magnitude(v)); });
    return m;
  }

  [[nodiscard]] OperatorMatrix scaled(const Scalar& s) const {
    OperatorMatrix out(rows(), cols_, parity_);
    if (is_zero(s)) return out;
    for_each([&](std::size_t r, std::size_t c, const Scalar& v) { out.set(r, c, v * s); });
    return out;
  }

  /// Conjugate transpose.
  [[nodiscard]] OperatorMatrix adjoint() const {
    OperatorMatrix out(cols_, rows(), parity_);
    for_each([&](std::size_t r, std::size_t c, const Scalar& v) { out.set(c, r, conj(v)); });
    return out;
  }

  [[nodiscard]] std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
    if (v.size() != cols_) throw DimensionError("apply: vector size mismatch");
    std::vector<Scalar> out(rows());
    for (std::size_t r = 0; r < rows(); ++r)
      for (const auto& [c, a] : data_[r])
        if (!is_zero(v[c])) out[r] += a * v[c];
    return out;
  }

  OperatorMatrix& operator+=(const OperatorMatrix& o) {
    same_shape(o, "+");
    for (std::size_t r = 0; r < o.rows(); ++r)
      for (const auto& [c, v] : o.data_[r]) add_to(r, c, v);
    parity_ = combine_sum(parity_, o.parity_);
    return *this;
  }

  OperatorMatrix& operator-=(const OperatorMatrix& o) {
    same_shape(o, "-");
    for (std::size_t r = 0; r < o.rows(); ++r)
      for (const auto& [c, v] : o.data_[r]) add_to(r, c, -v);
    parity_ = combine_sum(parity_, o.parity_);
    return *this;
  }

  friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
  friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
  friend OperatorMatrix operator-(const OperatorMatrix& a) {
    OperatorMatrix out(a.rows(), a.cols_, a.parity_);
    a.for_each([&](std::size_t r, std::size_t c, const Scalar& v) { out.set(r, c, -v); });
    return out;
  }

  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.cols_ != b.rows())
      throw DimensionError("matrix product: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols_) + " times " +
                           std::to_string(b.rows()) + "x" + std::to_string(b.cols_));
    std::optional<Parity> p;
    if (a.parity_ && b.parity_) p = *a.parity_ + *b.parity_;
    OperatorMatrix out(a.rows(), b.cols_, p);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      auto& dst = out.data_[r];
      for (const auto& [mid, av] : a.data_[r]) {
        for (const auto& [c, bv] : b.data_[mid]) {
          auto it = dst.find(c);
          if (it == dst.end()) {
            dst.emplace(c, av * bv);
          } else {
            it->second += av * bv;
          }
        }
      }
      std::erase_if(dst, [](const auto& kv) { return is_zero(kv.second); });
    }
    return out;
  }

  friend bool operator==(const OperatorMatrix& a, const OperatorMatrix& b) {
    return a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  static std::optional<Parity> combine_sum(std::optional<Parity> a, std::optional<Parity> b) {
    if (a && b && *a == *b) return a;
    return std::nullopt;
  }

  void bounds(std::size_t r, std::size_t c) const {
    if (r >= rows() || c >= cols_)
      throw DimensionError("index (" + std::to_string(r) + "," + std::to_string(c) + ") outside " +
                           std::to_string(rows()) + "x" + std::to_string(cols_));
  }

  void same_shape(const OperatorMatrix& o, const char* op) const {
    if (rows() != o.rows() || cols_ != o.cols_)
      throw DimensionError(std::string("matrix ") + op + ": shape mismatch");
  }

  std::size_t cols_ = 0;
  std::vector<Row> data_;
  std::optional<Parity> parity_;
};

}  // namespace cliffq
