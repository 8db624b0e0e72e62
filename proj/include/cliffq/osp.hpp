#pragma once

// U_q[osp(2n+1|2m)] on the Fock module through the Clifford homomorphism:
// Green generators a_i^+-, H_i, Chevalley generators e_i, f_i, h_i, and the
// checks of both presentations.

#include <stdexcept>
#include <string>
#include <vector>

#include "clifford.hpp"
#include "qcore.hpp"
#include "report.hpp"

namespace cliffq {

/// Diagonal operator with half-integer eigenvalues, stored doubled so that
/// q-powers stay integral powers of q^(1/2).
struct CartanDiagonal {
  std::vector<long> twice;

  friend CartanDiagonal operator+(const CartanDiagonal& a, const CartanDiagonal& b) {
    CartanDiagonal out = a;
    for (std::size_t j = 0; j < out.twice.size(); ++j) out.twice[j] += b.twice.at(j);
    return out;
  }
  friend CartanDiagonal operator-(const CartanDiagonal& a, const CartanDiagonal& b) {
    CartanDiagonal out = a;
    for (std::size_t j = 0; j < out.twice.size(); ++j) out.twice[j] -= b.twice.at(j);
    return out;
  }
  friend CartanDiagonal operator*(long s, const CartanDiagonal& a) {
    CartanDiagonal out = a;
    for (auto& t : out.twice) t *= s;
    return out;
  }
  friend bool operator==(const CartanDiagonal&, const CartanDiagonal&) = default;

  template <class Field>
  [[nodiscard]] OperatorMatrix<typename Field::scalar_type> matrix(const Field& F) const {
    OperatorMatrix<typename Field::scalar_type> out = OperatorMatrix<typename Field::scalar_type>::square(twice.size(), Parity::even);
    for (std::size_t j = 0; j < twice.size(); ++j) out.set(j, j, F.from_ratio(twice[j], 2));
    return out;
  }

  /// q^(s * this) as a diagonal matrix.
  template <class Field>
  [[nodiscard]] OperatorMatrix<typename Field::scalar_type> q_power(const Field& F, long s = 1) const {
    OperatorMatrix<typename Field::scalar_type> out = OperatorMatrix<typename Field::scalar_type>::square(twice.size(), Parity::even);
    for (std::size_t j = 0; j < twice.size(); ++j) out.set(j, j, F.q_half_pow(s * twice[j]));
    return out;
  }
};

template <class Field>
struct OspBundle {
  using Scalar = typename Field::scalar_type;
  using Matrix = OperatorMatrix<Scalar>;

  RepresentationBundle<Field> clifford;
  std::vector<CartanDiagonal> H;  // Green Cartan generators, index mode-1
  std::vector<Matrix> e;           // Chevalley, index node-1
  std::vector<Matrix> f;
  std::vector<CartanDiagonal> h;

  [[nodiscard]] const Field& field() const { return clifford.field; }
  [[nodiscard]] const GradingMap& grading() const { return clifford.grading(); }
  [[nodiscard]] int rank() const { return clifford.modes(); }
  [[nodiscard]] const Matrix& a(int sign, int mode) const { return clifford.c(sign, mode); }
  [[nodiscard]] const CartanDiagonal& H_of(int mode) const { return H.at(static_cast<std::size_t>(mode - 1)); }
  [[nodiscard]] Matrix L(int mode) const { return H_of(mode).q_power(field(), 1); }
  [[nodiscard]] Matrix L_bar(int mode) const { return H_of(mode).q_power(field(), -1); }
  [[nodiscard]] const Matrix& e_of(int node) const { return e.at(static_cast<std::size_t>(node - 1)); }
  [[nodiscard]] const Matrix& f_of(int node) const { return f.at(static_cast<std::size_t>(node - 1)); }
  [[nodiscard]] const CartanDiagonal& h_of(int node) const { return h.at(static_cast<std::size_t>(node - 1)); }
};

/// Images under the homomorphism: a_i^+- = c_i^+-, H_i = (-1)^<i> N_i - 1/2;
/// then e_i, f_i, h_i from the Green generators.
template <class Field>
OspBundle<Field> build_osp(const RepresentationBundle<Field>& b) {
  if (b.basis != BasisKind::raw) throw std::invalid_argument("build_osp expects the raw basis");
  const Field& F = b.field;
  const GradingMap& g = b.grading();
  const int N = b.modes();
  OspBundle<Field> o{b, {}, {}, {}, {}};
  for (int mode = 1; mode <= N; ++mode) {
    CartanDiagonal d;
    for (const auto& r : b.module.basis()) d.twice.push_back(2L * g.sign(mode) * r[static_cast<std::size_t>(mode - 1)] - 1);
    o.H.push_back(std::move(d));
  }
  const auto half = F.from_ratio(1, 2);
  const auto inv_sqrt2 = F.sqrt2() * half;
  for (int i = 1; i < N; ++i) {
    o.e.push_back((o.L_bar(i + 1) * graded_bracket(o.a(-1, i), o.a(+1, i + 1))).scaled(half));
    o.f.push_back((graded_bracket(o.a(+1, i), o.a(-1, i + 1)) * o.L(i + 1)).scaled(half));
    o.h.push_back(o.H_of(i) - o.H_of(i + 1));
  }
  o.e.push_back(o.a(-1, N).scaled(inv_sqrt2));
  o.f.push_back(o.a(+1, N).scaled(-inv_sqrt2));
  o.h.push_back(o.H_of(N));
  return o;
}

/// Defining relations of the Green-generator presentation.
template <class Field>
VerificationReport verify_green_relations(const OspBundle<Field>& o, double tolerance = 1e-10) {
  using Scalar = typename Field::scalar_type;
  using Matrix = OperatorMatrix<Scalar>;
  const Field& F = o.field();
  const GradingMap& g = o.grading();
  const int N = o.rank();
  const std::string backend = Field::backend_name;
  constexpr bool exact = Field::is_exact;
  VerificationReport rep("osp", tolerance);

  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      rep.check_zero("osp.green.cartan_commute", {idx("i", i), idx("j", j)},
                     commutator(o.H_of(i).matrix(F), o.H_of(j).matrix(F)), backend, exact);

  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      for (int s : {+1, -1}) {
        Matrix res = commutator(o.H_of(i).matrix(F), o.a(s, j));
        if (i == j) res -= o.a(s, j).scaled(F.from_int(s * g.sign(i)));
        rep.check_zero("osp.green.weight", {idx("i", i), idx("j", j), sgn_idx("sign", s)}, res, backend, exact);
      }

  for (int i = 1; i <= N; ++i) {
    Matrix rhs = (o.L(i) - o.L_bar(i)).scaled(F.from_int(-2) * F.q_minus_qbar_inv());
    rep.check_zero("osp.green.pair", {idx("i", i)}, graded_bracket(o.a(-1, i), o.a(+1, i)) - rhs, backend, exact);
  }

  if (N >= 2) {
    for (int xi : {+1, -1}) {
      const Scalar twist = F.q_pow(-g.sign(N));
      Matrix res = graded_bracket(graded_bracket(o.a(xi, N - 1), o.a(xi, N)), o.a(xi, N), std::optional<Scalar>(twist));
      rep.check_zero("osp.green.boundary", {sgn_idx("xi", xi)}, res, backend, exact);
    }
  }

  for (int i = 1; i <= N; ++i)
    for (int xi : {+1, -1}) {
      if (i + xi < 1 || i + xi > N) continue;
      for (int j = 1; j <= N; ++j)
        for (int eta : {+1, -1}) {
          const Scalar twist = F.q_pow(-static_cast<long>(xi) * g.sign(i) * kron(i, j));
          Matrix lhs = graded_bracket(graded_bracket(o.a(eta, i), o.a(-eta, i + xi)), o.a(eta, j), std::optional<Scalar>(twist));
          if (j == i + xi) {
            // 2 eta^<j> L_j^(-xi eta) a_i^eta
            const Matrix Lj = (-xi * eta > 0) ? o.L(j) : o.L_bar(j);
            const int eta_pow = g.degree(j) == 1 ? eta : 1;
            lhs -= (Lj * o.a(eta, i)).scaled(F.from_int(2 * eta_pow));
          }
          rep.check_zero("osp.green.triple", {idx("i", i), idx("j", j), sgn_idx("xi", xi), sgn_idx("eta", eta)}, lhs,
                         backend, exact);
        }
    }
  return rep;
}

namespace detail {

// The Serre relations share their shape between e and f; `gens` is either
// list and `prefix` names it in relation ids.
template <class Field>
void serre_osp(VerificationReport& rep, const std::string& prefix, const std::vector<OperatorMatrix<typename Field::scalar_type>>& gens,
               const GradingMap& g, const Field& F) {
  using Scalar = typename Field::scalar_type;
  const int N = g.modes();
  const int m = g.m();
  const std::string backend = Field::backend_name;
  constexpr bool exact = Field::is_exact;
  auto X = [&](int i) -> const OperatorMatrix<Scalar>& { return gens.at(static_cast<std::size_t>(i - 1)); };
  const std::optional<Scalar> q = F.q();
  const std::optional<Scalar> qb = F.q_bar();

  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      if (i == j || std::abs(i - j) == 1) continue;
      rep.check_zero(prefix + ".commute", {idx("i", i), idx("j", j)}, graded_bracket(X(i), X(j)), backend, exact);
    }
  if (m >= 1 && g.n() >= 1) rep.check_zero(prefix + ".nilpotent", {idx("i", m)}, X(m) * X(m), backend, exact);

  for (int i = 1; i <= N; ++i) {
    if (i == m || i == N) continue;
    for (int d : {+1, -1}) {
      const int j = i + d;
      if (j < 1 || j > N) continue;
      rep.check_zero(prefix + ".cubic", {idx("i", i), sgn_idx("dir", d), sgn_idx("order", +1)},
                     commutator(X(i), commutator(X(i), X(j), qb), q), backend, exact);
      rep.check_zero(prefix + ".cubic", {idx("i", i), sgn_idx("dir", d), sgn_idx("order", -1)},
                     commutator(X(i), commutator(X(i), X(j), q), qb), backend, exact);
    }
  }

  if (m >= 2 && m + 1 <= N) {
    rep.check_zero(prefix + ".odd_node", {sgn_idx("order", +1)},
                   anticommutator(commutator(X(m), X(m - 1), q), commutator(X(m), X(m + 1), qb)), backend, exact);
    rep.check_zero(prefix + ".odd_node", {sgn_idx("order", -1)},
                   anticommutator(commutator(X(m), X(m - 1), qb), commutator(X(m), X(m + 1), q)), backend, exact);
  }

  if (N >= 2) {
    rep.check_zero(prefix + ".quartic", {sgn_idx("order", +1)},
                   commutator(X(N), graded_bracket(X(N), commutator(X(N), X(N - 1), qb)), q), backend, exact);
    rep.check_zero(prefix + ".quartic", {sgn_idx("order", -1)},
                   commutator(X(N), graded_bracket(X(N), commutator(X(N), X(N - 1), q)), qb), backend, exact);
  }
}

}  // namespace detail

/// Cartan-Kac and Serre relations of the Chevalley presentation.
template <class Field>
VerificationReport verify_chevalley_relations(const OspBundle<Field>& o, double tolerance = 1e-10) {
  using Matrix = OperatorMatrix<typename Field::scalar_type>;
  const Field& F = o.field();
  const GradingMap& g = o.grading();
  const int N = o.rank();
  const std::string backend = Field::backend_name;
  constexpr bool exact = Field::is_exact;
  const CartanMatrix a = build_cartan_osp(g);
  VerificationReport rep("osp", tolerance);

  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      const Matrix hi = o.h_of(i).matrix(F);
      rep.check_zero("osp.chev.cartan_commute", {idx("i", i), idx("j", j)}, commutator(hi, o.h_of(j).matrix(F)), backend, exact);
      rep.check_zero("osp.chev.weight_e", {idx("i", i), idx("j", j)},
                     commutator(hi, o.e_of(j)) - o.e_of(j).scaled(F.from_int(a(i, j))), backend, exact);
      rep.check_zero("osp.chev.weight_f", {idx("i", i), idx("j", j)},
                     commutator(hi, o.f_of(j)) + o.f_of(j).scaled(F.from_int(a(i, j))), backend, exact);
      Matrix ef = graded_bracket(o.e_of(i), o.f_of(j));
      if (i == j) ef -= (o.h_of(i).q_power(F, 1) - o.h_of(i).q_power(F, -1)).scaled(F.q_minus_qbar_inv());
      rep.check_zero("osp.chev.ef", {idx("i", i), idx("j", j)}, ef, backend, exact);
    }

  detail::serre_osp(rep, "osp.serre_e", o.e, g, F);
  detail::serre_osp(rep, "osp.serre_f", o.f, g, F);

  for (int i = 1; i <= N; ++i) {
    const Parity expected = (i == g.m()) ? Parity::odd : Parity::even;
    const bool ok = o.e_of(i).parity() == expected && o.f_of(i).parity() == expected;
    rep.check_true("osp.chev.parity", {idx("i", i)}, ok, backend);
  }
  return rep;
}

/// Green generators rebuilt from the Chevalley ones through nested twisted
/// commutators, compared with the homomorphism images.
template <class Field>
VerificationReport reconstruct_green(const OspBundle<Field>& o, double tolerance = 1e-10) {
  using Scalar = typename Field::scalar_type;
  using Matrix = OperatorMatrix<Scalar>;
  const Field& F = o.field();
  const GradingMap& g = o.grading();
  const int N = o.rank();
  const int m = g.m();
  const std::string backend = Field::backend_name;
  constexpr bool exact = Field::is_exact;
  VerificationReport rep("osp", tolerance);
  // q_i = q^((-1)^<i+1>): q^-1 for i < m, q for i >= m.
  auto twist = [&](int i) { return F.q_pow(g.sign(i + 1)); };
  auto twist_bar = [&](int i) { return F.q_pow(-g.sign(i + 1)); };

  for (int i = 1; i <= N; ++i) {
    Matrix lower;
    Matrix raise;
    if (i == N) {
      lower = o.e_of(N).scaled(F.sqrt2());
      raise = o.f_of(N).scaled(-F.sqrt2());
    } else {
      Matrix t = o.e_of(N);
      for (int j = N - 1; j >= i; --j) t = commutator(o.e_of(j), t, std::optional<Scalar>(twist(j)));
      lower = t.scaled(F.from_int(neg_one_pow(static_cast<long>(m - i) * g.degree(i))) * F.sqrt2());
      Matrix u = o.f_of(N);
      for (int j = N - 1; j >= i; --j) u = commutator(u, o.f_of(j), std::optional<Scalar>(twist_bar(j)));
      raise = u.scaled(F.from_int(neg_one_pow(N - i + 1)) * F.sqrt2());
    }
    rep.check_zero("osp.green_from_chevalley.lower", {idx("i", i)}, lower - o.a(-1, i), backend, exact);
    rep.check_zero("osp.green_from_chevalley.raise", {idx("i", i)}, raise - o.a(+1, i), backend, exact);
    CartanDiagonal sum = o.h_of(i);
    for (int t = i + 1; t <= N; ++t) sum = sum + o.h_of(t);
    rep.check_zero("osp.green_from_chevalley.cartan", {idx("i", i)}, sum.matrix(F) - o.H_of(i).matrix(F), backend, exact);
  }
  return rep;
}

}  // namespace cliffq
