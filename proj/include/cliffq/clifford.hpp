#pragma once

// Generator matrices c_i^+, c_i^-, N_i of the deformed Clifford superalgebra
// on a Fock module, and checks of its defining relations.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cyclo.hpp"
#include "fock.hpp"
#include "operator_matrix.hpp"
#include "qcore.hpp"
#include "report.hpp"

namespace cliffq {

enum class BasisKind { raw, orthonormal };
enum class Backend { exact, floating };

inline const char* to_string(BasisKind b) { return b == BasisKind::raw ? "raw" : "orthonormal"; }
inline const char* to_string(Backend b) { return b == Backend::exact ? "exact" : "float"; }

/// Diagonal operator whose entry on |r> is fn(r).
template <class Scalar, class Fn>
OperatorMatrix<Scalar> diagonal_of(const FockModule& module, Fn&& fn) {
  OperatorMatrix<Scalar> out = OperatorMatrix<Scalar>::square(module.dim(), Parity::even);
  for (std::size_t j = 0; j < module.dim(); ++j) out.set(j, j, fn(module.vector_at(j)));
  return out;
}

template <class Field>
struct RepresentationBundle {
  using field_type = Field;
  using Scalar = typename Field::scalar_type;
  using Matrix = OperatorMatrix<Scalar>;

  FockModule module;
  Field field;
  BasisKind basis = BasisKind::raw;
  std::vector<Matrix> raise;   // c_i^+, index mode-1
  std::vector<Matrix> lower;   // c_i^-
  std::vector<Matrix> number;  // N_i

  [[nodiscard]] int modes() const { return module.modes(); }
  [[nodiscard]] const GradingMap& grading() const { return module.grading(); }
  [[nodiscard]] const Matrix& c_plus(int mode) const { return raise.at(static_cast<std::size_t>(mode - 1)); }
  [[nodiscard]] const Matrix& c_minus(int mode) const { return lower.at(static_cast<std::size_t>(mode - 1)); }
  /// c_i^sign for sign = +1 / -1.
  [[nodiscard]] const Matrix& c(int sign, int mode) const { return sign > 0 ? c_plus(mode) : c_minus(mode); }
  [[nodiscard]] const Matrix& N(int mode) const { return number.at(static_cast<std::size_t>(mode - 1)); }

  [[nodiscard]] Matrix zero(Parity p = Parity::even) const { return Matrix::square(module.dim(), p); }
  [[nodiscard]] Matrix identity() const {
    return diagonal_of<Scalar>(module, [&](const OccupationVector&) { return field.one(); });
  }
  /// q^(s * N_i) as an explicit diagonal.
  [[nodiscard]] Matrix q_power_of_number(int mode, int s) const {
    return diagonal_of<Scalar>(module, [&](const OccupationVector& r) {
      return field.q_pow(static_cast<long>(s) * r[static_cast<std::size_t>(mode - 1)]);
    });
  }
};

namespace detail {

inline int prefix_sum(const OccupationVector& r, int mode) {
  int s = 0;
  for (int t = 1; t < mode; ++t) s += r[static_cast<std::size_t>(t - 1)];
  return s;
}

}  // namespace detail

/// Raw (non-normalized) basis |r> = (c_1^+)^r_1 ... (c_N^+)^r_N |0>.
/// c_i^+ at the top bosonic rung maps to zero: that is the quotient.
template <class Field>
RepresentationBundle<Field> build_clifford_raw(const FockModule& module, const Field& field) {
  using Scalar = typename Field::scalar_type;
  using Matrix = OperatorMatrix<Scalar>;
  if (field.k() != module.k() || field.l() != module.l())
    throw std::invalid_argument("build_clifford: field and module disagree on (k, l)");
  const GradingMap& g = module.grading();
  RepresentationBundle<Field> b{module, field, BasisKind::raw, {}, {}, {}};
  const Scalar cq = field.c_q();
  for (int mode = 1; mode <= g.modes(); ++mode) {
    const Parity p = g.parity(mode);
    const int even_mode = 1 - g.degree(mode);  // 1 - <i>
    Matrix plus = Matrix::square(module.dim(), p);
    Matrix minus = Matrix::square(module.dim(), p);
    const auto slot = static_cast<std::size_t>(mode - 1);
    for (std::size_t col = 0; col < module.dim(); ++col) {
      const OccupationVector& r = module.vector_at(col);
      const int pre = detail::prefix_sum(r, mode);
      const int sign = neg_one_pow(static_cast<long>(even_mode) * pre);
      OccupationVector up = r;
      ++up[slot];
      const int factor = 1 - even_mode * r[slot];
      if (factor != 0 && module.contains(up)) plus.set(module.rank(up), col, field.q_pow(-pre) * field.from_int(sign * factor));
      if (r[slot] > 0) {
        OccupationVector down = r;
        --down[slot];
        minus.set(module.rank(down), col, q_bracket(r[slot], field) * cq * field.q_pow(pre) * field.from_int(sign));
      }
    }
    b.raise.push_back(std::move(plus));
    b.lower.push_back(std::move(minus));
    b.number.push_back(diagonal_of<Scalar>(module, [&](const OccupationVector& r) { return field.from_int(r[slot]); }));
  }
  return b;
}

/// Orthonormal basis of the unitary (l = 1) quotient module, complex double.
inline RepresentationBundle<FloatField> build_clifford_orthonormal(const FockModule& module) {
  if (module.l() != 1) throw AdmissibilityError("orthonormal basis exists only for l = 1 (primitive root of unity)");
  if (module.kind() != ModuleKind::quotient) throw std::invalid_argument("orthonormal basis requires the quotient module");
  using Matrix = OperatorMatrix<FloatScalar>;
  const GradingMap& g = module.grading();
  const FloatField field(module.k(), module.l());
  const double k = module.k();
  const double pi = std::numbers::pi;
  const double s1 = std::sin(pi / k);
  const double sh = std::sin(pi / (2 * k));
  RepresentationBundle<FloatField> b{module, field, BasisKind::orthonormal, {}, {}, {}};
  for (int mode = 1; mode <= g.modes(); ++mode) {
    const Parity p = g.parity(mode);
    Matrix plus = Matrix::square(module.dim(), p);
    Matrix minus = Matrix::square(module.dim(), p);
    const auto slot = static_cast<std::size_t>(mode - 1);
    for (std::size_t col = 0; col < module.dim(); ++col) {
      const OccupationVector& r = module.vector_at(col);
      const int pre = detail::prefix_sum(r, mode);
      const int rj = r[slot];
      const FloatScalar down_phase = std::polar(1.0, -pi * pre / k);
      const FloatScalar up_phase = std::polar(1.0, pi * pre / k);
      OccupationVector up = r;
      ++up[slot];
      OccupationVector down = r;
      --down[slot];
      if (g.is_boson(mode)) {
        if (module.contains(up))
          plus.set(module.rank(up), col, down_phase * std::sqrt(2.0 * std::sin(pi * (rj + 1) / k) * sh / (s1 * s1)));
        if (rj > 0) minus.set(module.rank(down), col, up_phase * std::sqrt(2.0 * std::sin(pi * rj / k) * sh / (s1 * s1)));
      } else {
        const double amp = std::sqrt(1.0 / std::cos(pi / (2 * k)));
        const double sign = neg_one_pow(pre);
        if (rj == 0) plus.set(module.rank(up), col, sign * down_phase * amp);
        if (rj == 1) minus.set(module.rank(down), col, sign * up_phase * amp);
      }
    }
    b.raise.push_back(std::move(plus));
    b.lower.push_back(std::move(minus));
    b.number.push_back(diagonal_of<FloatScalar>(module, [&](const OccupationVector& r) { return FloatScalar(r[slot], 0.0); }));
  }
  return b;
}

using AnyBundle = std::variant<RepresentationBundle<CyclotomicField>, RepresentationBundle<FloatField>>;

/// Runtime dispatch over backend and basis; the orthonormal basis exists
/// only over the float backend and only for l = 1.
inline AnyBundle build_clifford(const FockModule& module, Backend backend, BasisKind basis) {
  if (basis == BasisKind::orthonormal) {
    if (backend == Backend::exact)
      throw std::invalid_argument("orthonormal basis entries involve square roots of sines; use the float backend");
    return build_clifford_orthonormal(module);
  }
  if (backend == Backend::exact) return build_clifford_raw(module, CyclotomicField(module.k(), module.l()));
  return build_clifford_raw(module, FloatField(module.k(), module.l()));
}

/// Zeroes the columns of vectors whose bosonic occupations come within
/// `margin` of the truncation cap. No-op on quotient modules.
template <class Scalar>
OperatorMatrix<Scalar> restrict_to_safe_columns(const OperatorMatrix<Scalar>& m, const FockModule& module, int margin) {
  if (module.kind() == ModuleKind::quotient) return m;
  OperatorMatrix<Scalar> out(m.rows(), m.cols(), m.parity());
  m.for_each([&](std::size_t r, std::size_t c, const Scalar& v) {
    const auto& occ = module.vector_at(c);
    for (int mode = 1; mode <= module.m(); ++mode)
      if (occ[static_cast<std::size_t>(mode - 1)] > module.boson_cap() - margin) return;
    out.set(r, c, v);
  });
  return out;
}

/// Checks every defining relation of the deformed Clifford superalgebra:
/// number operators commute, shift the ladder operators, the q-deformed
/// pair relation in both branches, the mode-exchange relation for i < j,
/// nilpotency of fermionic ladders, and the closed diagonal forms of
/// c^+c^- and c^-c^+.
template <class Field>
VerificationReport verify_clifford_relations(const RepresentationBundle<Field>& b, double tolerance = 1e-10) {
  using Scalar = typename Field::scalar_type;
  using Matrix = OperatorMatrix<Scalar>;
  const Field& F = b.field;
  const GradingMap& g = b.grading();
  const int N = b.modes();
  constexpr bool exact = Field::is_exact;
  const std::string backend = Field::backend_name;
  VerificationReport rep("clifford", tolerance);
  auto safe = [&](const Matrix& m) { return restrict_to_safe_columns(m, b.module, 1); };

  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) rep.check_zero("cl.number_commute", {idx("i", i), idx("j", j)}, safe(commutator(b.N(i), b.N(j))), backend, exact);

  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      for (int s : {+1, -1}) {
        Matrix res = commutator(b.N(i), b.c(s, j));
        if (i == j) res -= b.c(s, j).scaled(F.from_int(s));
        rep.check_zero("cl.number_shift", {idx("i", i), idx("j", j), sgn_idx("sign", s)}, safe(res), backend, exact);
      }

  for (int i = 1; i <= N; ++i)
    for (int s : {+1, -1}) {
      Matrix lhs = b.c_minus(i) * b.c_plus(i) + (b.c_plus(i) * b.c_minus(i)).scaled(F.q_pow(s) * F.from_int(g.sign(i)));
      Matrix rhs = diagonal_of<Scalar>(b.module, [&](const OccupationVector& r) {
        return F.c_q() * F.q_pow(static_cast<long>(s) * g.sign(i) * r[static_cast<std::size_t>(i - 1)]);
      });
      rep.check_zero("cl.pair", {idx("i", i), sgn_idx("branch", s)}, safe(lhs - rhs), backend, exact);
    }

  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j)
      for (int xi : {+1, -1})
        for (int eta : {+1, -1}) {
          Matrix res = b.c(xi, i) * b.c(eta, j) + (b.c(eta, j) * b.c(xi, i)).scaled(F.q_pow(xi * eta) * F.from_int(g.sign(j)));
          rep.check_zero("cl.exchange", {idx("i", i), idx("j", j), sgn_idx("xi", xi), sgn_idx("eta", eta)}, safe(res), backend, exact);
        }

  for (int i = g.m() + 1; i <= N; ++i)
    for (int s : {+1, -1}) rep.check_zero("cl.fermion_square", {idx("i", i), sgn_idx("sign", s)}, safe(b.c(s, i) * b.c(s, i)), backend, exact);

  for (int i = 1; i <= N; ++i) {
    const auto slot = static_cast<std::size_t>(i - 1);
    Matrix raise_lower = diagonal_of<Scalar>(b.module, [&](const OccupationVector& r) {
      return F.c_q() * (F.q_pow(r[slot]) - F.q_pow(-r[slot])) * F.q_minus_qbar_inv();
    });
    Matrix lower_raise = diagonal_of<Scalar>(b.module, [&](const OccupationVector& r) {
      const long e = 1 - static_cast<long>(g.sign(i)) * r[slot];
      return F.c_q() * (F.q_pow(e) - F.q_pow(-e)) * F.q_minus_qbar_inv();
    });
    rep.check_zero("cl.raise_lower", {idx("i", i)}, safe(b.c_plus(i) * b.c_minus(i) - raise_lower), backend, exact);
    rep.check_zero("cl.lower_raise", {idx("i", i)}, safe(b.c_minus(i) * b.c_plus(i) - lower_raise), backend, exact);
  }
  return rep;
}

/// c^-(c^+)^p = q^-p (c^+)^p c^- + c_q [p] (c^+)^(p-1) q^N for a bosonic mode.
template <class Field>
VerificationReport verify_power_exchange(const RepresentationBundle<Field>& b, int mode, int p, double tolerance = 1e-10) {
  using Scalar = typename Field::scalar_type;
  using Matrix = OperatorMatrix<Scalar>;
  if (!b.grading().is_boson(mode)) throw std::invalid_argument("power exchange identity needs a bosonic mode");
  if (p < 0) throw std::invalid_argument("power exchange identity needs p >= 0");
  const Field& F = b.field;
  VerificationReport rep("clifford", tolerance);
  auto power = [&](int e) {
    Matrix acc = b.identity();
    for (int t = 0; t < e; ++t) acc = acc * b.c_plus(mode);
    return acc;
  };
  const Matrix cp_p = power(p);
  Matrix rhs = (cp_p * b.c_minus(mode)).scaled(F.q_pow(-p));
  if (p >= 1) rhs += (power(p - 1) * b.q_power_of_number(mode, 1)).scaled(F.c_q() * q_bracket(p, F));
  Matrix res = b.c_minus(mode) * cp_p - rhs;
  res.set_parity(std::nullopt);
  rep.check_zero("cl.power_exchange", {idx("i", mode), idx("p", p)}, restrict_to_safe_columns(res, b.module, p),
                 Field::backend_name, Field::is_exact);
  return rep;
}

/// The closed forms of c^+c^- and c^-c^+ as diagonal identities, and the
/// scalar identity showing they reproduce both branches of the pair relation.
template <class Field>
VerificationReport check_pair_closed_forms(const RepresentationBundle<Field>& b, double tolerance = 1e-10) {
  using Scalar = typename Field::scalar_type;
  const Field& F = b.field;
  const GradingMap& g = b.grading();
  VerificationReport rep("clifford", tolerance);
  const std::string backend = Field::backend_name;
  for (int i = 1; i <= b.modes(); ++i) {
    const auto slot = static_cast<std::size_t>(i - 1);
    auto f_form = [&](const OccupationVector& r) { return F.c_q() * q_bracket(r[slot], F); };
    auto g_form = [&](const OccupationVector& r) { return F.c_q() * q_bracket(1 - static_cast<long>(g.sign(i)) * r[slot], F); };
    auto fm = diagonal_of<Scalar>(b.module, f_form);
    auto gm = diagonal_of<Scalar>(b.module, g_form);
    rep.check_zero("cl.raise_lower", {idx("i", i)}, restrict_to_safe_columns(b.c_plus(i) * b.c_minus(i) - fm, b.module, 1), backend, Field::is_exact);
    rep.check_zero("cl.lower_raise", {idx("i", i)}, restrict_to_safe_columns(b.c_minus(i) * b.c_plus(i) - gm, b.module, 1), backend, Field::is_exact);
    for (int s : {+1, -1}) {
      // g + (-1)^<i> q^s f == c_q q^(s (-1)^<i> r), per basis vector, from the closed forms alone.
      auto res = diagonal_of<Scalar>(b.module, [&](const OccupationVector& r) {
        return g_form(r) + F.from_int(g.sign(i)) * F.q_pow(s) * f_form(r) -
               F.c_q() * F.q_pow(static_cast<long>(s) * g.sign(i) * r[slot]);
      });
      rep.check_zero("cl.pair_from_closed_forms", {idx("i", i), sgn_idx("branch", s)}, res, backend, Field::is_exact);
    }
  }
  return rep;
}

/// 1 + q^2 + ... + q^2n + q^-2 + ... + q^-2n = [2n+1] and
/// q + q^3 + ... + q^(2n+1) + q^-1 + ... + q^-(2n+1) = [2n+2], for n = 0..n_max.
template <class Field>
VerificationReport verify_q_sum_identities(const Field& F, int n_max, double tolerance = 1e-10) {
  using Scalar = typename Field::scalar_type;
  VerificationReport rep("clifford", tolerance);
  for (int n = 0; n <= n_max; ++n) {
    Scalar even = F.one();
    Scalar odd = F.zero();
    for (int t = 1; t <= n; ++t) even = even + F.q_pow(2 * t) + F.q_pow(-2 * t);
    for (int t = 0; t <= n; ++t) odd = odd + F.q_pow(2 * t + 1) + F.q_pow(-(2 * t + 1));
    const Scalar d_even = even - q_bracket(2 * n + 1, F);
    const Scalar d_odd = odd - q_bracket(2 * n + 2, F);
    if constexpr (Field::is_exact) {
      rep.check_true("cl.qsum_even", {idx("n", n)}, is_zero(d_even), Field::backend_name);
      rep.check_true("cl.qsum_odd", {idx("n", n)}, is_zero(d_odd), Field::backend_name);
    } else {
      rep.check_within("cl.qsum_even", {idx("n", n)}, magnitude(d_even), Field::backend_name);
      rep.check_within("cl.qsum_odd", {idx("n", n)}, magnitude(d_odd), Field::backend_name);
    }
  }
  return rep;
}

}  // namespace cliffq
