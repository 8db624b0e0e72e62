#pragma once

// q-numbers, the graded brackets and the two Cartan matrices.

#include <optional>
#include <stdexcept>
#include <vector>

#include "cyclo.hpp"
#include "operator_matrix.hpp"

namespace cliffq {

/// Z2 grading of the m+n modes. Modes are numbered 1..m+n; the first m are
/// the (odd) bosonic modes, the remaining n the (even) fermionic ones.
class GradingMap {
 public:
  GradingMap(int m, int n) : m_(m), n_(n) {
    if (m < 0 || n < 0) throw std::invalid_argument("GradingMap: negative mode count");
  }

  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int modes() const { return m_ + n_; }

  [[nodiscard]] bool is_boson(int mode) const { return mode <= m_; }
  /// <i>: 1 for i <= m, 0 otherwise. Defined for every integer, so <N+1> = 0.
  [[nodiscard]] int degree(int mode) const { return mode <= m_ ? 1 : 0; }
  [[nodiscard]] Parity parity(int mode) const { return static_cast<Parity>(degree(mode)); }
  /// (-1)^<i>
  [[nodiscard]] int sign(int mode) const { return mode <= m_ ? -1 : 1; }
  /// theta_i = 1 - <i>
  [[nodiscard]] int theta(int mode) const { return 1 - degree(mode); }
  [[nodiscard]] int theta(int a, int b) const { return (theta(a) + theta(b)) % 2; }

 private:
  int m_;
  int n_;
};

inline int neg_one_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

/// [x] = (q^x - q^-x) / (q - q^-1).
template <class Field>
typename Field::scalar_type q_bracket(long x, const Field& field) {
  return (field.q_pow(x) - field.q_pow(-x)) * field.q_minus_qbar_inv();
}

/// [r]! = [r][r-1]...[1], with [0]! = 1.
template <class Field>
typename Field::scalar_type q_factorial(long r, const Field& field) {
  auto acc = field.one();
  for (long s = 2; s <= r; ++s) acc = acc * q_bracket(s, field);
  return acc;
}

/// c_q = 2 / (q^(1/2) + q^(-1/2)).
template <class Field>
typename Field::scalar_type c_q(const Field& field) {
  return field.c_q();
}

enum class BracketKind { graded, commutator, anticommutator };

/// AB - s*x*BA with s = 1 (commutator), -1 (anticommutator) or
/// (-1)^(deg A deg B) (graded). Without a twist x = 1.
template <class Scalar>
OperatorMatrix<Scalar> bracket(const OperatorMatrix<Scalar>& a, const OperatorMatrix<Scalar>& b,
                               BracketKind kind = BracketKind::graded,
                               const std::optional<Scalar>& twist = std::nullopt) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DimensionError("bracket: operands must be square of equal size");
  if (!a.parity() || !b.parity()) throw ParityError("bracket: operand without parity");
  int sign = 1;
  switch (kind) {
    case BracketKind::commutator: sign = 1; break;
    case BracketKind::anticommutator: sign = -1; break;
    case BracketKind::graded: sign = (to_int(*a.parity()) * to_int(*b.parity()) == 1) ? -1 : 1; break;
  }
  OperatorMatrix<Scalar> ba = b * a;
  if (twist) ba = ba.scaled(*twist);
  OperatorMatrix<Scalar> out = a * b;
  if (sign == 1) {
    out -= ba;
  } else {
    out += ba;
  }
  out.set_parity(*a.parity() + *b.parity());
  return out;
}

/// [[a, b]]_x
template <class Scalar>
OperatorMatrix<Scalar> graded_bracket(const OperatorMatrix<Scalar>& a, const OperatorMatrix<Scalar>& b,
                                      const std::optional<Scalar>& twist = std::nullopt) {
  return bracket(a, b, BracketKind::graded, twist);
}

/// [a, b]_x
template <class Scalar>
OperatorMatrix<Scalar> commutator(const OperatorMatrix<Scalar>& a, const OperatorMatrix<Scalar>& b,
                                  const std::optional<Scalar>& twist = std::nullopt) {
  return bracket(a, b, BracketKind::commutator, twist);
}

/// {a, b}_x
template <class Scalar>
OperatorMatrix<Scalar> anticommutator(const OperatorMatrix<Scalar>& a, const OperatorMatrix<Scalar>& b,
                                      const std::optional<Scalar>& twist = std::nullopt) {
  return bracket(a, b, BracketKind::anticommutator, twist);
}

/// Square integer matrix with 1-based accessors.
class CartanMatrix {
 public:
  explicit CartanMatrix(int size) : size_(size), entries_(static_cast<std::size_t>(size * size), 0) {}

  [[nodiscard]] int size() const { return size_; }
  [[nodiscard]] int operator()(int i, int j) const { return entries_[index(i, j)]; }
  int& operator()(int i, int j) { return entries_[index(i, j)]; }

  [[nodiscard]] bool is_symmetric() const {
    for (int i = 1; i <= size_; ++i)
      for (int j = 1; j <= size_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

 private:
  [[nodiscard]] std::size_t index(int i, int j) const {
    if (i < 1 || j < 1 || i > size_ || j > size_) throw std::out_of_range("CartanMatrix index");
    return static_cast<std::size_t>((i - 1) * size_ + (j - 1));
  }

  int size_;
  std::vector<int> entries_;
};

inline int kron(int a, int b) { return a == b ? 1 : 0; }

/// Symmetric (m+n)x(m+n) Cartan matrix of osp(2n+1|2m).
inline CartanMatrix build_cartan_osp(const GradingMap& g) {
  const int size = g.modes();
  if (size < 1) throw std::invalid_argument("build_cartan_osp: need m+n >= 1");
  CartanMatrix a(size);
  for (int i = 1; i <= size; ++i) {
    for (int j = 1; j <= size; ++j) {
      a(i, j) = g.sign(j) * kron(i + 1, j) + g.sign(i) * kron(i, j + 1) -
                (g.sign(j + 1) + g.sign(j)) * kron(i, j) + kron(i, size) * kron(j, size);
    }
  }
  return a;
}

/// (m+n-1)x(m+n-1) Cartan matrix of sl(m|n).
inline CartanMatrix build_cartan_sl(const GradingMap& g) {
  const int size = g.modes() - 1;
  if (size < 1) throw std::invalid_argument("build_cartan_sl: need m+n >= 2");
  CartanMatrix a(size);
  for (int i = 1; i <= size; ++i) {
    const int s = neg_one_pow(g.theta(i, i + 1));
    for (int j = 1; j <= size; ++j) a(i, j) = (1 + s) * kron(i, j) - s * kron(i, j - 1) - kron(i - 1, j);
  }
  return a;
}

}  // namespace cliffq
