#pragma once

// The contravariant Hermitian form on the Fock module and the unitarity
// analysis built on it.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "clifford.hpp"
#include "cyclo.hpp"
#include "fock.hpp"
#include "report.hpp"

namespace cliffq {

/// Diagonal of the form in the raw basis (distinct basis vectors are
/// orthogonal): (|r>, |r>) = c_q^(r_1+...+r_N) [r_1]! ... [r_m]!.
template <class Field>
struct GramMatrix {
  using Scalar = typename Field::scalar_type;
  FockModule module;
  Field field;
  std::vector<Scalar> diagonal;

  [[nodiscard]] OperatorMatrix<Scalar> matrix() const { return OperatorMatrix<Scalar>::diagonal(diagonal); }

  /// (v, w) = sum_a conj(v_a) g_a w_a, antilinear in the first slot.
  [[nodiscard]] Scalar pair(const std::vector<Scalar>& v, const std::vector<Scalar>& w) const {
    Scalar acc = field.zero();
    for (std::size_t a = 0; a < diagonal.size(); ++a)
      if (!is_zero(v[a]) && !is_zero(w[a])) acc += conj(v[a]) * diagonal[a] * w[a];
    return acc;
  }
};

template <class Field>
GramMatrix<Field> build_gram(const FockModule& module, const Field& field) {
  GramMatrix<Field> g{module, field, {}};
  g.diagonal.reserve(module.dim());
  const auto cq = field.c_q();
  for (const auto& r : module.basis()) {
    auto value = field.one();
    for (int mode = 1; mode <= module.modes(); ++mode) {
      const int occ = r[static_cast<std::size_t>(mode - 1)];
      for (int t = 0; t < occ; ++t) value = value * cq;
      if (module.grading().is_boson(mode)) value = value * q_factorial(occ, field);
    }
    g.diagonal.push_back(value);
  }
  return g;
}

/// (X v, w) = (v, w(X) w) for every generator, with w(c^+-) = c^-+ and
/// w(N) = N, i.e. X^dagger G = G w(X) as matrices.
template <class Field>
VerificationReport verify_contravariance(const RepresentationBundle<Field>& b, const GramMatrix<Field>& gram,
                                         double tolerance = 1e-10) {
  using Matrix = OperatorMatrix<typename Field::scalar_type>;
  if (b.basis != BasisKind::raw) throw std::invalid_argument("contravariance check expects the raw basis");
  VerificationReport rep("gram", tolerance);
  const Matrix G = gram.matrix();
  auto check = [&](const std::string& name, int mode, const Matrix& x, const Matrix& image) {
    Matrix res = x.adjoint() * G - G * image;
    res.set_parity(std::nullopt);
    rep.check_zero(name, {idx("i", mode)}, res, Field::backend_name, Field::is_exact);
  };
  for (int i = 1; i <= b.modes(); ++i) {
    check("gram.contravariant_raise", i, b.c_plus(i), b.c_minus(i));
    check("gram.contravariant_lower", i, b.c_minus(i), b.c_plus(i));
    check("gram.contravariant_number", i, b.N(i), b.N(i));
  }
  return rep;
}

/// The form computed from first principles: (|r>, w) is the vacuum
/// component of (c_N^-)^r_N ... (c_1^-)^r_1 w, using only the ladder
/// matrices. Returns the full (not assumed diagonal) pairing matrix.
template <class Field>
OperatorMatrix<typename Field::scalar_type> derived_form(const RepresentationBundle<Field>& b) {
  using Matrix = OperatorMatrix<typename Field::scalar_type>;
  const FockModule& module = b.module;
  const std::size_t vacuum = module.rank(OccupationVector(static_cast<std::size_t>(module.modes()), 0));
  Matrix out = Matrix::square(module.dim());
  for (std::size_t row = 0; row < module.dim(); ++row) {
    const auto& r = module.vector_at(row);
    Matrix lowering = b.identity();
    for (int mode = 1; mode <= module.modes(); ++mode)
      for (int t = 0; t < r[static_cast<std::size_t>(mode - 1)]; ++t) lowering = b.c_minus(mode) * lowering;
    for (const auto& [col, v] : lowering.row(vacuum)) out.set(row, col, v);
  }
  return out;
}

/// Both evaluation orders of (|1,1,0..>, |1,1,0..>) on a module with at least
/// two bosonic modes. The first moves c_1^+ across; the second first
/// reorders c_1^+ c_2^+ = q c_2^+ c_1^+ and picks up |q|^2.
template <class Field>
std::pair<typename Field::scalar_type, typename Field::scalar_type> two_mode_norm_routes(
    const RepresentationBundle<Field>& b, const GramMatrix<Field>& gram) {
  using Scalar = typename Field::scalar_type;
  if (b.grading().m() < 2) throw std::invalid_argument("two_mode_norm_routes needs two bosonic modes");
  const Field& F = b.field;
  const FockModule& module = b.module;
  std::vector<Scalar> vac(module.dim());
  vac[module.rank(OccupationVector(static_cast<std::size_t>(module.modes()), 0))] = F.one();
  const auto c1 = b.c_plus(1).apply(vac);
  const auto c2 = b.c_plus(2).apply(vac);
  // route one: (c_2^+|0>, c_1^- c_1^+ c_2^+ |0>)
  const Scalar first = gram.pair(c2, b.c_minus(1).apply(b.c_plus(1).apply(c2)));
  // route two: |q|^2 (c_1^+|0>, c_2^- c_2^+ c_1^+ |0>)
  const Scalar q = F.q();
  const Scalar second = conj(q) * q * gram.pair(c1, b.c_minus(2).apply(b.c_plus(2).apply(c1)));
  return {first, second};
}

struct PositivityRow {
  OccupationVector occupation;
  Sign sign = Sign::zero;
  double float_value = 0.0;
};

struct PositivityAnalysis {
  bool positive_definite = true;
  std::optional<OccupationVector> first_negative;
  std::vector<PositivityRow> rows;
};

/// Certified signs of every norm; the first negative one in basis order.
inline PositivityAnalysis positivity_analysis(const GramMatrix<CyclotomicField>& gram) {
  PositivityAnalysis out;
  for (std::size_t j = 0; j < gram.diagonal.size(); ++j) {
    const Sign s = sign_of_real(gram.diagonal[j]);
    out.rows.push_back({gram.module.vector_at(j), s, gram.diagonal[j].embed().real()});
    if (s != Sign::positive) out.positive_definite = false;
    if (s == Sign::negative && !out.first_negative) out.first_negative = gram.module.vector_at(j);
  }
  return out;
}

/// Unitarity in the orthonormal basis: (c_i^+)^dagger = c_i^- and N_i Hermitian.
inline VerificationReport orthonormality_check(const RepresentationBundle<FloatField>& b, double tolerance = 1e-10) {
  if (b.basis != BasisKind::orthonormal) throw std::invalid_argument("orthonormality check expects the orthonormal basis");
  VerificationReport rep("gram", tolerance);
  for (int i = 1; i <= b.modes(); ++i) {
    rep.check_within("gram.adjoint_pair", {idx("i", i)}, (b.c_plus(i).adjoint() - b.c_minus(i)).max_abs(), "float");
    rep.check_within("gram.number_hermitian", {idx("i", i)}, (b.N(i).adjoint() - b.N(i)).max_abs(), "float");
  }
  return rep;
}

/// sqrt of the (positive) norms, for passing from the raw to the orthonormal basis.
inline std::vector<double> normalization_diagonal(const GramMatrix<CyclotomicField>& gram) {
  std::vector<double> out;
  out.reserve(gram.diagonal.size());
  for (const auto& g : gram.diagonal) {
    const double v = g.embed().real();
    if (!(v > 0)) throw std::domain_error("normalization needs a positive definite form (l = 1)");
    out.push_back(std::sqrt(v));
  }
  return out;
}

/// D X D^-1 with D = diag(sqrt norms), embedded to complex double.
template <class Scalar>
OperatorMatrix<FloatScalar> to_orthonormal(const OperatorMatrix<Scalar>& raw, const std::vector<double>& norms) {
  OperatorMatrix<FloatScalar> out(raw.rows(), raw.cols(), raw.parity());
  raw.for_each([&](std::size_t r, std::size_t c, const Scalar& v) { out.set(r, c, to_complex(v) * (norms[r] / norms[c])); });
  return out;
}

}  // namespace cliffq
