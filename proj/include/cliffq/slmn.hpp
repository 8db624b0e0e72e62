#pragma once

// U_q[sl(m|n)] inside the osp image: the Chevalley generators, the full
// Cartan-Weyl basis in three independent realizations, and their relations.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clifford.hpp"
#include "gram.hpp"
#include "osp.hpp"
#include "qcore.hpp"
#include "report.hpp"

namespace cliffq {

template <class Field>
struct SlChevalley {
  using Scalar = typename Field::scalar_type;
  using Matrix = OperatorMatrix<Scalar>;

  Field field;
  GradingMap grading;
  std::vector<Matrix> e;  // index node-1, nodes 1..m+n-1
  std::vector<Matrix> f;
  std::vector<CartanDiagonal> h;

  [[nodiscard]] int nodes() const { return static_cast<int>(e.size()); }
  [[nodiscard]] const Matrix& e_of(int i) const { return e.at(static_cast<std::size_t>(i - 1)); }
  [[nodiscard]] const Matrix& f_of(int i) const { return f.at(static_cast<std::size_t>(i - 1)); }
  [[nodiscard]] const CartanDiagonal& h_of(int i) const { return h.at(static_cast<std::size_t>(i - 1)); }
};

/// h^_i = h_i, e^_i = e_i for i <= m; h^_i = -h_i, e^_i = -e_i for i > m;
/// f^_i = f_i. Empty for a single mode.
template <class Field>
SlChevalley<Field> build_sl_chevalley(const OspBundle<Field>& o) {
  const Field& F = o.field();
  SlChevalley<Field> s{F, o.grading(), {}, {}, {}};
  const int m = o.grading().m();
  for (int i = 1; i < o.rank(); ++i) {
    const int sg = i <= m ? 1 : -1;
    s.e.push_back(o.e_of(i).scaled(F.from_int(sg)));
    s.f.push_back(o.f_of(i));
    s.h.push_back(sg * o.h_of(i));
  }
  return s;
}

namespace detail {

template <class Field>
void serre_sl(VerificationReport& rep, const std::string& prefix, const std::vector<OperatorMatrix<typename Field::scalar_type>>& gens,
              int m, const Field& F) {
  using Scalar = typename Field::scalar_type;
  const int size = static_cast<int>(gens.size());
  const std::string backend = Field::backend_name;
  constexpr bool exact = Field::is_exact;
  auto X = [&](int i) -> const OperatorMatrix<Scalar>& { return gens.at(static_cast<std::size_t>(i - 1)); };
  const std::optional<Scalar> q = F.q();
  const std::optional<Scalar> qb = F.q_bar();

  for (int i = 1; i <= size; ++i)
    for (int j = 1; j <= size; ++j) {
      if (i == j || std::abs(i - j) == 1) continue;
      rep.check_zero(prefix + ".commute", {idx("i", i), idx("j", j)}, commutator(X(i), X(j)), backend, exact);
    }
  if (m >= 1 && m <= size) rep.check_zero(prefix + ".nilpotent", {idx("i", m)}, X(m) * X(m), backend, exact);

  for (int i = 1; i <= size; ++i) {
    if (i == m) continue;
    for (int d : {+1, -1}) {
      const int j = i + d;
      if (j < 1 || j > size) continue;
      rep.check_zero(prefix + ".cubic", {idx("i", i), sgn_idx("dir", d), sgn_idx("order", +1)},
                     commutator(X(i), commutator(X(i), X(j), qb), q), backend, exact);
      rep.check_zero(prefix + ".cubic", {idx("i", i), sgn_idx("dir", d), sgn_idx("order", -1)},
                     commutator(X(i), commutator(X(i), X(j), q), qb), backend, exact);
    }
  }

  if (m >= 2 && m + 1 <= size) {
    rep.check_zero(prefix + ".odd_node", {sgn_idx("order", +1)},
                   anticommutator(X(m), commutator(commutator(X(m - 1), X(m), q), X(m + 1), qb)), backend, exact);
    rep.check_zero(prefix + ".odd_node", {sgn_idx("order", -1)},
                   anticommutator(X(m), commutator(commutator(X(m - 1), X(m), qb), X(m + 1), q)), backend, exact);
  }
}

}  // namespace detail

template <class Field>
VerificationReport verify_sl_chevalley_relations(const SlChevalley<Field>& s, double tolerance = 1e-10) {
  using Matrix = OperatorMatrix<typename Field::scalar_type>;
  const Field& F = s.field;
  const std::string backend = Field::backend_name;
  constexpr bool exact = Field::is_exact;
  VerificationReport rep("sl", tolerance);
  const int size = s.nodes();
  if (size < 1) return rep;
  const CartanMatrix a = build_cartan_sl(s.grading);

  for (int i = 1; i <= size; ++i)
    for (int j = 1; j <= size; ++j) {
      const Matrix hi = s.h_of(i).matrix(F);
      rep.check_zero("sl.chev.cartan_commute", {idx("i", i), idx("j", j)}, commutator(hi, s.h_of(j).matrix(F)), backend, exact);
      rep.check_zero("sl.chev.weight_e", {idx("i", i), idx("j", j)},
                     commutator(hi, s.e_of(j)) - s.e_of(j).scaled(F.from_int(a(i, j))), backend, exact);
      rep.check_zero("sl.chev.weight_f", {idx("i", i), idx("j", j)},
                     commutator(hi, s.f_of(j)) + s.f_of(j).scaled(F.from_int(a(i, j))), backend, exact);
      Matrix ef = graded_bracket(s.e_of(i), s.f_of(j));
      if (i == j) ef -= (s.h_of(i).q_power(F, 1) - s.h_of(i).q_power(F, -1)).scaled(F.q_minus_qbar_inv());
      rep.check_zero("sl.chev.ef", {idx("i", i), idx("j", j)}, ef, backend, exact);
    }
  detail::serre_sl(rep, "sl.serre_e", s.e, s.grading.m(), F);
  detail::serre_sl(rep, "sl.serre_f", s.f, s.grading.m(), F);
  return rep;
}

enum class Realization {
  commutator_form,  // q-power of a number operator times a graded commutator of ladders
  ladder_form,      // exponential of a number operator times a ladder product, orthonormal basis
  closed_form,      // explicit matrix elements, orthonormal basis
};

inline const char* to_string(Realization r) {
  switch (r) {
    case Realization::commutator_form: return "commutator";
    case Realization::ladder_form: return "ladder";
    case Realization::closed_form: return "closed";
  }
  return "?";
}

/// Root vector label with its place in the normal order:
/// positive roots < negative roots < Cartan elements, ties by (i, j).
struct NormalOrderKey {
  enum class Kind { positive = 0, negative = 1, cartan = 2 };
  Kind kind;
  int i;
  int j;

  static NormalOrderKey root(int i, int j) {
    if (i == j) throw std::invalid_argument("root vector needs i != j");
    return {i < j ? Kind::positive : Kind::negative, i, j};
  }
  static NormalOrderKey cartan_element(int i) { return {Kind::cartan, i, i}; }

  friend bool operator<(const NormalOrderKey& a, const NormalOrderKey& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }
  friend bool operator==(const NormalOrderKey&, const NormalOrderKey&) = default;
};

template <class Field>
struct CartanWeylBasis {
  using Scalar = typename Field::scalar_type;
  using Matrix = OperatorMatrix<Scalar>;

  FockModule module;
  Field field;
  BasisKind basis = BasisKind::raw;
  Realization realization = Realization::commutator_form;
  std::map<std::pair<int, int>, Matrix> root;  // e_ij, i != j
  std::vector<CartanDiagonal> cartan;          // H~_0 .. H~_{m+n-1}

  [[nodiscard]] const GradingMap& grading() const { return module.grading(); }
  [[nodiscard]] int modes() const { return module.modes(); }
  [[nodiscard]] const Matrix& e(int i, int j) const { return root.at({i, j}); }
  /// L~_i^s = q^(s H~_i)
  [[nodiscard]] Matrix L(int i, long s = 1) const { return cartan.at(static_cast<std::size_t>(i)).q_power(field, s); }
};

namespace detail {

/// H~_i = -N_1 - (-1)^<i+1> N_{i+1}, i = 0..m+n-1 (H~_0 included).
inline std::vector<CartanDiagonal> cartan_weyl_cartan(const FockModule& module) {
  const GradingMap& g = module.grading();
  std::vector<CartanDiagonal> out;
  for (int i = 0; i < g.modes(); ++i) {
    CartanDiagonal d;
    for (const auto& r : module.basis()) d.twice.push_back(2L * (-r[0] - g.sign(i + 1) * r[static_cast<std::size_t>(i)]));
    out.push_back(std::move(d));
  }
  return out;
}

inline double sum_range(const OccupationVector& r, int from, int to) {  // r_from + ... + r_to, 1-based, inclusive
  double s = 0;
  for (int t = from; t <= to; ++t) s += r[static_cast<std::size_t>(t - 1)];
  return s;
}

}  // namespace detail

/// e_ij = 1/2 (-1)^<i> q^-((-1)^<j> N_j - 1/2) [[c_i^-, c_j^+]]   (i < j)
/// e_ij = 1/2 (-1)^<i> [[c_i^-, c_j^+]] q^((-1)^<i> N_i - 1/2)     (i > j)
template <class Field>
CartanWeylBasis<Field> build_cartan_weyl(const RepresentationBundle<Field>& b) {
  using Matrix = OperatorMatrix<typename Field::scalar_type>;
  if (b.basis != BasisKind::raw) throw std::invalid_argument("commutator realization expects the raw basis");
  const Field& F = b.field;
  const GradingMap& g = b.grading();
  const int N = b.modes();
  CartanWeylBasis<Field> cw{b.module, F, BasisKind::raw, Realization::commutator_form, {}, detail::cartan_weyl_cartan(b.module)};
  auto shifted = [&](int mode, long s) {  // q^(s((-1)^<mode> N_mode - 1/2))
    CartanDiagonal d;
    for (const auto& r : b.module.basis()) d.twice.push_back(2L * g.sign(mode) * r[static_cast<std::size_t>(mode - 1)] - 1);
    return d.q_power(F, s);
  };
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      if (i == j) continue;
      const Matrix G = graded_bracket(b.c_minus(i), b.c_plus(j));
      const auto coeff = F.from_ratio(g.sign(i), 2);
      cw.root.emplace(std::pair{i, j}, (i < j ? shifted(j, -1) * G : G * shifted(i, 1)).scaled(coeff));
    }
  return cw;
}

/// rho(e_ij) = -(-1)^(<i>+<j>) cos(pi/2k) exp(-(-1)^<j> i pi N_j / k) c_j^+ c_i^-   (i < j)
/// rho(e_ij) = -cos(pi/2k) c_j^+ c_i^- exp((-1)^<i> i pi N_i / k)                  (i > j)
/// built from the orthonormal ladders.
inline CartanWeylBasis<FloatField> build_cartan_weyl_ladder(const RepresentationBundle<FloatField>& b) {
  using Matrix = OperatorMatrix<FloatScalar>;
  if (b.basis != BasisKind::orthonormal) throw std::invalid_argument("ladder realization expects the orthonormal basis");
  const GradingMap& g = b.grading();
  const int N = b.modes();
  const double k = b.module.k();
  const double pi = std::numbers::pi;
  const double c = std::cos(pi / (2 * k));
  CartanWeylBasis<FloatField> cw{b.module, b.field, BasisKind::orthonormal, Realization::ladder_form, {},
                                 detail::cartan_weyl_cartan(b.module)};
  auto phase = [&](int mode, double s) {
    return diagonal_of<FloatScalar>(b.module, [&](const OccupationVector& r) {
      return std::polar(1.0, s * pi * r[static_cast<std::size_t>(mode - 1)] / k);
    });
  };
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      if (i == j) continue;
      const Matrix prod = b.c_plus(j) * b.c_minus(i);
      Matrix x = i < j ? (phase(j, -g.sign(j)) * prod).scaled(-neg_one_pow(g.degree(i) + g.degree(j)) * c)
                       : (prod * phase(i, g.sign(i))).scaled(-c);
      cw.root.emplace(std::pair{i, j}, std::move(x));
    }
  return cw;
}

/// The same operators from their explicit matrix elements in the
/// orthonormal basis, with no matrix products (l = 1 only).
inline CartanWeylBasis<FloatField> build_cartan_weyl_closed_form(const FockModule& module) {
  using Matrix = OperatorMatrix<FloatScalar>;
  if (module.l() != 1) throw AdmissibilityError("closed-form realization exists only for l = 1");
  const GradingMap& g = module.grading();
  const int N = module.modes();
  const double k = module.k();
  const double pi = std::numbers::pi;
  const double s1 = std::sin(pi / k);
  CartanWeylBasis<FloatField> cw{module, FloatField(module.k(), 1), BasisKind::orthonormal, Realization::closed_form, {},
                                 detail::cartan_weyl_cartan(module)};
  for (int j = 1; j <= N; ++j)
    for (int l = 1; l <= N; ++l) {
      if (j == l) continue;
      const int dj = g.degree(j);
      const int dl = g.degree(l);
      Matrix x = Matrix::square(module.dim(), g.parity(j) + g.parity(l));
      for (std::size_t col = 0; col < module.dim(); ++col) {
        const OccupationVector& r = module.vector_at(col);
        OccupationVector t = r;
        --t[static_cast<std::size_t>(j - 1)];
        ++t[static_cast<std::size_t>(l - 1)];
        if (!module.contains(t)) continue;
        const int rj = r[static_cast<std::size_t>(j - 1)];
        const int rl = r[static_cast<std::size_t>(l - 1)];
        const double mag = std::sqrt(std::max(0.0, std::sin(pi * rj / k) * std::sin(pi * (rl + 1) / k)) / (s1 * s1));
        int sign = 0;
        double angle = 0;
        if (j < l) {
          sign = neg_one_pow(static_cast<long>((dj - dl) * detail::sum_range(r, 1, j) + (1 - dl) * detail::sum_range(r, j + 1, l - 1)));
          angle = -pi * (detail::sum_range(r, j, l - 1) + neg_one_pow(dl) * rl - 2 * dl) / k;
        } else {
          sign = neg_one_pow(static_cast<long>((dl - dj) * detail::sum_range(r, 1, l) + (1 - dj) * detail::sum_range(r, l + 1, j - 1)));
          angle = pi * (detail::sum_range(r, l, j - 1) + neg_one_pow(dj) * rj) / k;
        }
        const double weight = -(1 - (1 - dl) * rl) * sign * mag;
        if (weight != 0.0) x.set(module.rank(t), col, std::polar(1.0, angle) * weight);
      }
      cw.root.emplace(std::pair{j, l}, std::move(x));
    }
  return cw;
}

/// The Chevalley generators sit in the Cartan-Weyl basis with a uniform
/// sign: e^_i = -e_{i,i+1}, f^_i = -e_{i+1,i}.
template <class Field>
VerificationReport verify_sl_embedding(const SlChevalley<Field>& s, const CartanWeylBasis<Field>& cw, double tolerance = 1e-10) {
  VerificationReport rep("sl", tolerance);
  for (int i = 1; i <= s.nodes(); ++i) {
    rep.check_zero("sl.embedding.raise", {idx("i", i)}, s.e_of(i) + cw.e(i, i + 1), Field::backend_name, Field::is_exact);
    rep.check_zero("sl.embedding.lower", {idx("i", i)}, s.f_of(i) + cw.e(i + 1, i), Field::backend_name, Field::is_exact);
  }
  return rep;
}

/// Commutation relations of the Cartan-Weyl basis.
template <class Field>
VerificationReport verify_cartan_weyl_relations(const CartanWeylBasis<Field>& cw, double tolerance = 1e-10) {
  using Scalar = typename Field::scalar_type;
  using Matrix = OperatorMatrix<Scalar>;
  const Field& F = cw.field;
  const GradingMap& g = cw.grading();
  const int N = cw.modes();
  const std::string backend = Field::backend_name;
  constexpr bool exact = Field::is_exact;
  VerificationReport rep("sl", tolerance);
  auto th = [&](int i) { return g.theta(i); };
  auto desc = [](std::initializer_list<int> xs) {  // x_1 > x_2 > ...
    const int* p = xs.begin();
    for (std::size_t t = 0; t + 1 < xs.size(); ++t)
      if (!(p[t] > p[t + 1])) return false;
    return true;
  };
  const Scalar q_minus_qbar = F.q() - F.q_bar();
  const Matrix zero = Matrix::square(cw.module.dim(), Parity::even);

  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      rep.check_zero("sl.cw.cartan_commute", {idx("i", i), idx("j", j)},
                     commutator(cw.cartan[static_cast<std::size_t>(i)].matrix(F), cw.cartan[static_cast<std::size_t>(j)].matrix(F)),
                     backend, exact);

  for (int i = 1; i < N; ++i)
    for (const auto& [key, x] : cw.root) {
      const auto [j, k] = key;
      const int co = kron(1, j) - kron(1, k) - neg_one_pow(th(i + 1)) * (kron(i + 1, j) - kron(i + 1, k));
      rep.check_zero("sl.cw.weight", {idx("i", i), idx("j", j), idx("k", k)},
                     commutator(cw.cartan[static_cast<std::size_t>(i)].matrix(F), x) - x.scaled(F.from_int(co)), backend, exact);
    }

  std::vector<std::pair<int, int>> pos;
  std::vector<std::pair<int, int>> neg;
  for (const auto& [key, x] : cw.root) (key.first < key.second ? pos : neg).push_back(key);

  for (const auto& [i, j] : pos)
    for (const auto& [k, l] : neg) {
      Matrix t1 = zero;
      if (desc({j, k, i, l})) t1 += (cw.e(k, j) * cw.e(i, l)).scaled(q_minus_qbar * F.from_int(neg_one_pow(th(k))));
      if (i == l && j > k) t1 -= cw.e(k, j).scaled(F.from_int(neg_one_pow(th(k) + th(l))));
      if (j == k && i > l) t1 += cw.e(i, l);
      Matrix rhs = t1 * cw.L(i - 1) * cw.L(k - 1, -1);
      Matrix t2 = zero;
      if (desc({k, j, l, i})) t2 -= (cw.e(i, l) * cw.e(k, j)).scaled(q_minus_qbar * F.from_int(neg_one_pow(th(j))));
      if (i == l && k > j) t2 -= cw.e(k, j).scaled(F.from_int(neg_one_pow(th(i) + th(j))));
      if (j == k && l > i) t2 += cw.e(i, l);
      rhs += cw.L(j - 1) * cw.L(l - 1, -1) * t2;
      if (i == l && j == k) {
        const long s = neg_one_pow(th(i));
        const CartanDiagonal diff = cw.cartan[static_cast<std::size_t>(j - 1)] - cw.cartan[static_cast<std::size_t>(i - 1)];
        rhs += (diff.q_power(F, s) - diff.q_power(F, -s)).scaled(F.q_minus_qbar_inv());
      }
      rep.check_zero("sl.cw.pos_neg", {idx("i", i), idx("j", j), idx("k", k), idx("l", l)},
                     graded_bracket(cw.e(i, j), cw.e(k, l)) - rhs, backend, exact);
    }

  // pairs e_ij < e_kl in the normal order, among positives and among negatives
  for (int sgn : {+1, -1}) {
    const auto& X = sgn > 0 ? pos : neg;
    for (std::size_t a1 = 0; a1 < X.size(); ++a1)
      for (std::size_t a2 = a1 + 1; a2 < X.size(); ++a2) {
        auto [i, j] = X[a1];
        auto [k, l] = X[a2];
        if (sgn < 0) {
          std::tie(i, j) = X[a2];
          std::tie(k, l) = X[a1];
        }
        const long ex = neg_one_pow(th(j)) * kron(j, l) - neg_one_pow(th(j)) * kron(j, k) + neg_one_pow(th(i)) * kron(i, k);
        Matrix res = graded_bracket(cw.e(i, j), cw.e(k, l), std::optional<Scalar>(F.q_pow(sgn * ex)));
        if (j == k) res -= cw.e(i, l);
        if (sgn > 0 && desc({l, j, k, i})) res -= (cw.e(k, j) * cw.e(i, l)).scaled(q_minus_qbar * F.from_int(neg_one_pow(th(k))));
        if (sgn < 0 && desc({i, k, j, l})) res += (cw.e(k, j) * cw.e(i, l)).scaled(q_minus_qbar * F.from_int(neg_one_pow(th(k))));
        rep.check_zero(sgn > 0 ? "sl.cw.pos_pos" : "sl.cw.neg_neg", {idx("i", i), idx("j", j), idx("k", k), idx("l", l)}, res,
                       backend, exact);
      }
  }

  for (const auto& [key, x] : cw.root)
    if (g.theta(key.first, key.second) == 1)
      rep.check_zero("sl.cw.odd_square", {idx("i", key.first), idx("j", key.second)}, x * x, backend, exact);
  return rep;
}

/// Pairwise agreement of the three realizations in the orthonormal basis
/// (the commutator form is normalized by the square roots of the norms).
inline VerificationReport crosscheck_realizations(const FockModule& module, double tolerance = 1e-10) {
  const CyclotomicField F(module.k(), module.l());
  const auto raw = build_clifford_raw(module, F);
  const auto norms = normalization_diagonal(build_gram(module, F));
  const auto exact = build_cartan_weyl(raw);
  const auto ladder = build_cartan_weyl_ladder(build_clifford_orthonormal(module));
  const auto closed = build_cartan_weyl_closed_form(module);
  VerificationReport rep("sl", tolerance);
  for (const auto& [key, x] : exact.root) {
    const auto normalized = to_orthonormal(x, norms);
    const IndexTuple ix{idx("i", key.first), idx("j", key.second)};
    rep.check_within("sl.realizations.commutator_vs_ladder", ix, (normalized - ladder.e(key.first, key.second)).max_abs(), "float");
    rep.check_within("sl.realizations.commutator_vs_closed", ix, (normalized - closed.e(key.first, key.second)).max_abs(), "float");
    rep.check_within("sl.realizations.ladder_vs_closed", ix,
                     (ladder.e(key.first, key.second) - closed.e(key.first, key.second)).max_abs(), "float");
  }
  rep.check_true("sl.realizations.cartan", {}, exact.cartan == ladder.cartan && exact.cartan == closed.cartan, "exact");
  return rep;
}

}  // namespace cliffq
