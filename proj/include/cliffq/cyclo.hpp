#pragma once

// Exact arithmetic in the cyclotomic field Q(w), w = exp(i*pi/(4k)), and a
// complex double backend exposing the same constants.
//
// Elements are stored in the power basis {1, w, ..., w^(d-1)} reduced modulo
// the 8k-th cyclotomic polynomial (d = phi(8k)), so equality and zero tests
// are coefficient comparisons.

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cliffq {

class AdmissibilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws unless 1 <= l < k and gcd(l, k) == 1.
inline void check_admissible(int k, int l) {
  if (k < 2 || l < 1 || l >= k) {
    throw AdmissibilityError("inadmissible root of unity: need 1 <= l < k (got k=" + std::to_string(k) +
                             ", l=" + std::to_string(l) + ")");
  }
  if (std::gcd(k, l) != 1) {
    throw AdmissibilityError("inadmissible root of unity: l and k must be coprime (gcd(" + std::to_string(l) +
                             "," + std::to_string(k) + ") = " + std::to_string(std::gcd(k, l)) + ")");
  }
}

namespace detail {

using IntPoly = std::vector<mpz_class>;
using RatPoly = std::vector<mpq_class>;

inline void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline void trim(RatPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

// Exact division of integer polynomials; the divisor must be monic.
inline IntPoly exact_div(IntPoly num, const IntPoly& den) {
  if (den.empty() || den.back() != 1) throw std::logic_error("exact_div: divisor must be monic");
  trim(num);
  if (num.size() < den.size()) {
    if (!num.empty()) throw std::logic_error("exact_div: nonzero remainder");
    return {};
  }
  IntPoly quot(num.size() - den.size() + 1, 0);
  for (std::size_t i = num.size(); i-- >= den.size();) {
    const mpz_class c = num[i];
    if (c == 0) continue;
    const std::size_t shift = i - (den.size() - 1);
    quot[shift] = c;
    for (std::size_t t = 0; t < den.size(); ++t) num[shift + t] -= c * den[t];
  }
  trim(num);
  if (!num.empty()) throw std::logic_error("exact_div: nonzero remainder");
  trim(quot);
  return quot;
}

inline int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

/// Phi_n(x) = prod_{d | n} (x^d - 1)^{mu(n/d)}.
inline IntPoly cyclotomic_polynomial(int n) {
  IntPoly num{1};
  IntPoly den{1};
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const int mu = mobius(n / d);
    if (mu == 0) continue;
    IntPoly factor(static_cast<std::size_t>(d) + 1, 0);
    factor[0] = -1;
    factor[static_cast<std::size_t>(d)] = 1;
    if (mu > 0) {
      num = mul(num, factor);
    } else {
      den = mul(den, factor);
    }
  }
  return exact_div(num, den);
}

// Quotient and remainder of rational polynomials; b must be nonzero.
inline std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
  trim(a);
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  if (a.size() < b.size()) return {RatPoly{}, a};
  RatPoly quot(a.size() - b.size() + 1);
  const mpq_class lead = b.back();
  for (std::size_t i = a.size(); i-- >= b.size();) {
    if (sgn(a[i]) == 0) continue;
    const mpq_class c = a[i] / lead;
    const std::size_t shift = i - (b.size() - 1);
    quot[shift] = c;
    for (std::size_t t = 0; t < b.size(); ++t) a[shift + t] -= c * b[t];
  }
  trim(a);
  trim(quot);
  return {quot, a};
}

inline RatPoly sub(const RatPoly& a, const RatPoly& b) {
  RatPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (sgn(b[j]) == 0) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  trim(r);
  return r;
}

/// Immutable reduction tables for one field order.
struct CycloContext {
  int k = 0;
  int l = 0;
  int order = 0;   // 8k
  int degree = 0;  // phi(8k)
  IntPoly modulus;
  // Reduced power-basis coordinates of w^e for e in [0, order), sparse.
  std::vector<std::vector<std::pair<int, mpz_class>>> powers;

  CycloContext(int k_, int l_) : k(k_), l(l_), order(8 * k_) {
    modulus = cyclotomic_polynomial(order);
    degree = static_cast<int>(modulus.size()) - 1;
    powers.resize(static_cast<std::size_t>(order));
    // w^e for e < degree is the basis vector itself; beyond that multiply by w
    // and fold the top coefficient through the monic modulus.
    std::vector<mpz_class> cur(static_cast<std::size_t>(degree), 0);
    cur[0] = 1;
    for (int e = 0; e < order; ++e) {
      auto& sparse = powers[static_cast<std::size_t>(e)];
      for (int t = 0; t < degree; ++t)
        if (cur[static_cast<std::size_t>(t)] != 0) sparse.emplace_back(t, cur[static_cast<std::size_t>(t)]);
      const mpz_class top = cur.back();
      for (int t = degree - 1; t > 0; --t) cur[static_cast<std::size_t>(t)] = cur[static_cast<std::size_t>(t - 1)];
      cur[0] = 0;
      if (top != 0)
        for (int t = 0; t < degree; ++t) cur[static_cast<std::size_t>(t)] -= top * modulus[static_cast<std::size_t>(t)];
    }
  }
};

}  // namespace detail

/// Element of Q(w), w a primitive 8k-th root of unity. A default-constructed
/// value is the zero of whichever field it is combined with.
class CycloScalar {
 public:
  CycloScalar() = default;

  CycloScalar(std::shared_ptr<const detail::CycloContext> ctx, std::vector<mpq_class> coeffs)
      : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != static_cast<std::size_t>(ctx_->degree))
      throw std::invalid_argument("CycloScalar: coefficient count must equal the field degree");
  }

  [[nodiscard]] bool is_zero() const {
    for (const auto& c : coeffs_)
      if (sgn(c) != 0) return false;
    return true;
  }

  /// Field order 8k, or 0 for a context-free zero.
  [[nodiscard]] int order() const { return ctx_ ? ctx_->order : 0; }
  [[nodiscard]] const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  [[nodiscard]] const std::shared_ptr<const detail::CycloContext>& context() const { return ctx_; }

  /// sum_j coeffs[j] * exp(i*pi*j/(4k)), summed in ascending j.
  /// Evaluated in 160-bit MPFR so coefficient cancellation does not leak
  /// into the double result.
  [[nodiscard]] std::complex<double> embed() const {
    if (!ctx_) return {0.0, 0.0};
    mpfr_t pi, angle, c, s, re, im;
    mpfr_inits2(160, pi, angle, c, s, re, im, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      if (sgn(coeffs_[j]) == 0) continue;
      mpfr_mul_ui(angle, pi, static_cast<unsigned long>(j), MPFR_RNDN);
      mpfr_div_ui(angle, angle, static_cast<unsigned long>(4 * ctx_->k), MPFR_RNDN);
      mpfr_sin_cos(s, c, angle, MPFR_RNDN);
      mpfr_mul_q(c, c, coeffs_[j].get_mpq_t(), MPFR_RNDN);
      mpfr_mul_q(s, s, coeffs_[j].get_mpq_t(), MPFR_RNDN);
      mpfr_add(re, re, c, MPFR_RNDN);
      mpfr_add(im, im, s, MPFR_RNDN);
    }
    const std::complex<double> out{mpfr_get_d(re, MPFR_RNDN), mpfr_get_d(im, MPFR_RNDN)};
    mpfr_clears(pi, angle, c, s, re, im, static_cast<mpfr_ptr>(nullptr));
    return out;
  }

  /// Complex conjugation, w -> w^(8k-1).
  [[nodiscard]] CycloScalar conj() const {
    if (!ctx_) return {};
    std::vector<mpq_class> out(coeffs_.size());
    const int n = ctx_->order;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      if (sgn(coeffs_[j]) == 0) continue;
      const auto e = static_cast<std::size_t>((n - static_cast<int>(j)) % n);
      for (const auto& [t, c] : ctx_->powers[e]) out[static_cast<std::size_t>(t)] += coeffs_[j] * c;
    }
    return {ctx_, std::move(out)};
  }

  [[nodiscard]] CycloScalar inverse() const;

  CycloScalar& operator+=(const CycloScalar& o) {
    if (!o.ctx_) return *this;
    if (!ctx_) return *this = o;
    same_field(o);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
    return *this;
  }

  CycloScalar& operator-=(const CycloScalar& o) {
    if (!o.ctx_) return *this;
    if (!ctx_) return *this = -o;
    same_field(o);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
    return *this;
  }

  CycloScalar operator-() const {
    CycloScalar r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend CycloScalar operator+(CycloScalar a, const CycloScalar& b) { return a += b; }
  friend CycloScalar operator-(CycloScalar a, const CycloScalar& b) { return a -= b; }

  friend CycloScalar operator*(const CycloScalar& a, const CycloScalar& b) {
    if (!a.ctx_ || !b.ctx_) return {};
    a.same_field(b);
    const auto& ctx = *a.ctx_;
    const auto d = static_cast<std::size_t>(ctx.degree);
    std::vector<mpq_class> raw(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
      if (sgn(a.coeffs_[i]) == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (sgn(b.coeffs_[j]) == 0) continue;
        raw[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    std::vector<mpq_class> out(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(d));
    for (std::size_t e = d; e < raw.size(); ++e) {
      if (sgn(raw[e]) == 0) continue;
      for (const auto& [t, c] : ctx.powers[e]) out[static_cast<std::size_t>(t)] += raw[e] * c;
    }
    return {a.ctx_, std::move(out)};
  }

  friend CycloScalar operator/(const CycloScalar& a, const CycloScalar& b) { return a * b.inverse(); }

  CycloScalar& operator*=(const CycloScalar& o) { return *this = *this * o; }

  friend bool operator==(const CycloScalar& a, const CycloScalar& b) {
    if (!a.ctx_ || !b.ctx_) return a.is_zero() && b.is_zero();
    if (a.ctx_->order != b.ctx_->order) return false;
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void same_field(const CycloScalar& o) const {
    if (ctx_->order != o.ctx_->order) throw std::invalid_argument("CycloScalar: operands from fields of different order");
  }

  std::shared_ptr<const detail::CycloContext> ctx_;
  std::vector<mpq_class> coeffs_;
};

inline CycloScalar CycloScalar::inverse() const {
  if (!ctx_ || is_zero()) throw std::domain_error("CycloScalar: division by exact zero");
  // Extended Euclid on (modulus, a): track s with s*a = r (mod modulus).
  detail::RatPoly r0(ctx_->modulus.begin(), ctx_->modulus.end());
  detail::RatPoly r1(coeffs_.begin(), coeffs_.end());
  detail::trim(r1);
  detail::RatPoly s0;
  detail::RatPoly s1{mpq_class(1)};
  while (!r1.empty()) {
    auto [quot, rem] = detail::divmod(r0, r1);
    detail::RatPoly s2 = detail::sub(s0, detail::mul(quot, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // The modulus is irreducible, so the gcd r0 is a nonzero constant.
  if (r0.size() != 1) throw std::logic_error("CycloScalar::inverse: modulus not coprime to element");
  const mpq_class scale = 1 / r0[0];
  const detail::RatPoly reduced = detail::divmod(s0, detail::RatPoly(ctx_->modulus.begin(), ctx_->modulus.end())).second;
  std::vector<mpq_class> out(static_cast<std::size_t>(ctx_->degree));
  for (std::size_t j = 0; j < reduced.size(); ++j) out[j] = reduced[j] * scale;
  return {ctx_, std::move(out)};
}

// Scalar free functions shared by all templated code. Both backends provide
// the same set: is_zero, conj, magnitude, to_complex.

inline bool is_zero(const CycloScalar& a) { return a.is_zero(); }
inline CycloScalar conj(const CycloScalar& a) { return a.conj(); }
inline double magnitude(const CycloScalar& a) { return std::abs(a.embed()); }
inline std::complex<double> to_complex(const CycloScalar& a) { return a.embed(); }

inline bool is_zero(const std::complex<double>& a) { return a == std::complex<double>{}; }
inline std::complex<double> conj(const std::complex<double>& a) { return std::conj(a); }
inline double magnitude(const std::complex<double>& a) { return std::abs(a); }
inline std::complex<double> to_complex(const std::complex<double>& a) { return a; }

using FloatScalar = std::complex<double>;

/// Exact field handle for q = exp(i*pi*l/k). Cheap to copy.
class CyclotomicField {
 public:
  using scalar_type = CycloScalar;
  static constexpr bool is_exact = true;
  static constexpr const char* backend_name = "exact";

  CyclotomicField(int k, int l) {
    check_admissible(k, l);
    ctx_ = std::make_shared<const detail::CycloContext>(k, l);
    q_minus_qbar_inv_ = (q_pow(1) - q_pow(-1)).inverse();
    c_q_ = from_int(2) / (q_half_pow(1) + q_half_pow(-1));
  }

  [[nodiscard]] int k() const { return ctx_->k; }
  [[nodiscard]] int l() const { return ctx_->l; }
  [[nodiscard]] int order() const { return ctx_->order; }
  [[nodiscard]] int degree() const { return ctx_->degree; }
  [[nodiscard]] const std::shared_ptr<const detail::CycloContext>& context() const { return ctx_; }

  [[nodiscard]] CycloScalar zero() const { return {ctx_, std::vector<mpq_class>(static_cast<std::size_t>(ctx_->degree))}; }
  [[nodiscard]] CycloScalar one() const { return from_int(1); }
  [[nodiscard]] CycloScalar from_int(long v) const { return from_rational(mpq_class(v)); }
  [[nodiscard]] CycloScalar from_ratio(long num, long den) const {
    mpq_class r(num, den);
    r.canonicalize();
    return from_rational(r);
  }
  [[nodiscard]] CycloScalar from_rational(const mpq_class& r) const {
    std::vector<mpq_class> c(static_cast<std::size_t>(ctx_->degree));
    c[0] = r;
    return {ctx_, std::move(c)};
  }

  /// w^e for any integer e.
  [[nodiscard]] CycloScalar omega_pow(long e) const {
    const long n = ctx_->order;
    const auto idx = static_cast<std::size_t>(((e % n) + n) % n);
    std::vector<mpq_class> c(static_cast<std::size_t>(ctx_->degree));
    for (const auto& [t, v] : ctx_->powers[idx]) c[static_cast<std::size_t>(t)] = v;
    return {ctx_, std::move(c)};
  }

  [[nodiscard]] CycloScalar q() const { return q_pow(1); }
  [[nodiscard]] CycloScalar q_bar() const { return q_pow(-1); }
  /// q^e = w^(4le).
  [[nodiscard]] CycloScalar q_pow(long e) const { return omega_pow(4L * ctx_->l * e); }
  /// q^(e/2) = w^(2le).
  [[nodiscard]] CycloScalar q_half_pow(long e) const { return omega_pow(2L * ctx_->l * e); }
  /// w^k + w^-k = 2cos(pi/4), the positive square root of two.
  [[nodiscard]] CycloScalar sqrt2() const { return omega_pow(ctx_->k) + omega_pow(-ctx_->k); }
  [[nodiscard]] const CycloScalar& q_minus_qbar_inv() const { return q_minus_qbar_inv_; }
  /// 2 / (q^(1/2) + q^(-1/2)).
  [[nodiscard]] const CycloScalar& c_q() const { return c_q_; }

 private:
  std::shared_ptr<const detail::CycloContext> ctx_;
  CycloScalar q_minus_qbar_inv_;
  CycloScalar c_q_;
};

/// Complex double backend with the same interface as CyclotomicField.
class FloatField {
 public:
  using scalar_type = FloatScalar;
  static constexpr bool is_exact = false;
  static constexpr const char* backend_name = "float";

  FloatField(int k, int l) : k_(k), l_(l) {
    check_admissible(k, l);
    c_q_ = 2.0 / (q_half_pow(1) + q_half_pow(-1));
    q_minus_qbar_inv_ = 1.0 / (q_pow(1) - q_pow(-1));
  }

  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] int l() const { return l_; }
  [[nodiscard]] int order() const { return 8 * k_; }

  [[nodiscard]] FloatScalar zero() const { return {}; }
  [[nodiscard]] FloatScalar one() const { return {1.0, 0.0}; }
  [[nodiscard]] FloatScalar from_int(long v) const { return {static_cast<double>(v), 0.0}; }
  [[nodiscard]] FloatScalar from_ratio(long num, long den) const {
    return {static_cast<double>(num) / static_cast<double>(den), 0.0};
  }
  [[nodiscard]] FloatScalar from_rational(const mpq_class& r) const { return {r.get_d(), 0.0}; }

  [[nodiscard]] FloatScalar omega_pow(long e) const {
    const long n = order();
    const long idx = ((e % n) + n) % n;
    return std::polar(1.0, std::numbers::pi * static_cast<double>(idx) / (4.0 * k_));
  }
  [[nodiscard]] FloatScalar q() const { return q_pow(1); }
  [[nodiscard]] FloatScalar q_bar() const { return q_pow(-1); }
  [[nodiscard]] FloatScalar q_pow(long e) const { return omega_pow(4L * l_ * e); }
  [[nodiscard]] FloatScalar q_half_pow(long e) const { return omega_pow(2L * l_ * e); }
  [[nodiscard]] FloatScalar sqrt2() const { return {std::sqrt(2.0), 0.0}; }
  [[nodiscard]] const FloatScalar& q_minus_qbar_inv() const { return q_minus_qbar_inv_; }
  [[nodiscard]] const FloatScalar& c_q() const { return c_q_; }

 private:
  int k_;
  int l_;
  FloatScalar c_q_;
  FloatScalar q_minus_qbar_inv_;
};

/// Exact-to-float embedding.
inline FloatScalar embed_float(const CycloScalar& a) { return a.embed(); }

enum class Sign { negative = -1, zero = 0, positive = 1 };

inline const char* to_string(Sign s) {
  switch (s) {
    case Sign::negative: return "negative";
    case Sign::zero: return "zero";
    case Sign::positive: return "positive";
  }
  return "?";
}

namespace detail {

// Evaluate sum_j c_j cos(pi j / 4k) with MPFR at the given precision; returns
// the value and a bound on its absolute error.
inline std::pair<double, double> certified_real_part(const CycloScalar& a, mpfr_prec_t prec, int& sign_out) {
  const int k = a.context()->k;
  mpfr_t pi, angle, term, sum;
  mpfr_inits2(prec, pi, angle, term, sum, static_cast<mpfr_ptr>(nullptr));
  mpfr_const_pi(pi, MPFR_RNDN);
  mpfr_set_zero(sum, 1);
  double weight = 1.0;
  const auto& cs = a.coeffs();
  for (std::size_t j = 0; j < cs.size(); ++j) {
    if (sgn(cs[j]) == 0) continue;
    mpfr_mul_ui(angle, pi, static_cast<unsigned long>(j), MPFR_RNDN);
    mpfr_div_ui(angle, angle, static_cast<unsigned long>(4 * k), MPFR_RNDN);
    mpfr_cos(term, angle, MPFR_RNDN);
    mpfr_mul_q(term, term, cs[j].get_mpq_t(), MPFR_RNDN);
    mpfr_add(sum, sum, term, MPFR_RNDN);
    weight += std::abs(cs[j].get_d()) + 1.0;
  }
  // Each of the ~6 rounded operations per term contributes at most a few ulps
  // relative to the term magnitude; 64 ulps per unit weight is a safe ceiling.
  const double bound = std::ldexp(weight * 64.0 * static_cast<double>(cs.size()), -static_cast<int>(prec));
  sign_out = mpfr_sgn(sum);
  mpfr_abs(sum, sum, MPFR_RNDN);
  const double value = mpfr_get_d(sum, MPFR_RNDN);
  mpfr_clears(pi, angle, term, sum, static_cast<mpfr_ptr>(nullptr));
  return {value, bound};
}

}  // namespace detail

/// Certified sign of a real element. Exact zero comes from the canonical
/// form; magnitudes below 1e-9 are re-evaluated at increasing precision
/// until the error bound separates the value from zero.
inline Sign sign_of_real(const CycloScalar& a) {
  if (a.is_zero()) return Sign::zero;
  if (!(a.conj() == a)) throw std::invalid_argument("sign_of_real: element is not real");
  const double approx = a.embed().real();
  if (std::abs(approx) >= 1e-9) return approx > 0 ? Sign::positive : Sign::negative;
  for (mpfr_prec_t prec = 128; prec <= (1 << 20); prec *= 2) {
    int s = 0;
    const auto [value, bound] = detail::certified_real_part(a, prec, s);
    if (value > bound) return s > 0 ? Sign::positive : Sign::negative;
  }
  throw std::runtime_error("sign_of_real: could not certify sign");
}

}  // namespace cliffq
