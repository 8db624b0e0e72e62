#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "cliffq/cyclo.hpp"
#include "cliffq/qcore.hpp"

using namespace cliffq;

namespace {

int totient(int n) {
  int c = 0;
  for (int j = 1; j <= n; ++j) c += std::gcd(j, n) == 1;
  return c;
}

std::complex<double> q_of(int k, int l) { return std::polar(1.0, std::numbers::pi * l / k); }

CycloScalar random_element(const CyclotomicField& F, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  CycloScalar x = F.zero();
  for (int j = 0; j < F.degree(); ++j) x = x + F.from_ratio(num(rng), den(rng)) * F.omega_pow(j);
  return x;
}

}  // namespace

TEST(Admissibility, RejectsBadPairs) {
  EXPECT_THROW(check_admissible(4, 2), AdmissibilityError);
  EXPECT_THROW(check_admissible(2, 2), AdmissibilityError);
  EXPECT_THROW(check_admissible(3, 0), AdmissibilityError);
  EXPECT_THROW(check_admissible(1, 1), AdmissibilityError);
  EXPECT_NO_THROW(check_admissible(5, 2));
  EXPECT_NO_THROW(check_admissible(4, 3));
}

TEST(Admissibility, MessageNamesTheGcd) {
  try {
    check_admissible(4, 2);
    FAIL();
  } catch (const AdmissibilityError& e) {
    EXPECT_NE(std::string(e.what()).find("gcd"), std::string::npos);
  }
}

TEST(CyclotomicField, DegreeIsTotientOfOrder) {
  for (int k : {2, 3, 4, 5, 6, 7}) {
    CyclotomicField F(k, 1);
    EXPECT_EQ(F.order(), 8 * k);
    EXPECT_EQ(F.degree(), totient(8 * k)) << "k=" << k;
  }
}

TEST(CyclotomicField, OmegaHasOrderEightK) {
  for (int k : {2, 3, 5}) {
    CyclotomicField F(k, 1);
    EXPECT_EQ(F.omega_pow(8 * k), F.one());
    EXPECT_EQ(F.omega_pow(4 * k), F.from_int(-1));
    EXPECT_NE(F.omega_pow(4 * k / 2), F.one());
  }
}

TEST(CyclotomicField, EmbeddingOfQ) {
  for (auto [k, l] : {std::pair{3, 1}, {5, 2}, {4, 3}, {7, 3}}) {
    CyclotomicField F(k, l);
    EXPECT_LT(std::abs(F.q().embed() - q_of(k, l)), 1e-13);
    EXPECT_LT(std::abs(F.q_half_pow(1).embed() - std::polar(1.0, std::numbers::pi * l / (2.0 * k))), 1e-13);
    EXPECT_EQ(F.q() * F.q_bar(), F.one());
    EXPECT_EQ(F.q_pow(2 * k), F.one());
  }
}

TEST(CyclotomicField, SqrtTwoIsExactAndPositive) {
  for (int k : {2, 3, 5}) {
    CyclotomicField F(k, 1);
    EXPECT_EQ(F.sqrt2() * F.sqrt2(), F.from_int(2));
    EXPECT_NEAR(F.sqrt2().embed().real(), std::sqrt(2.0), 1e-14);
  }
}

TEST(CyclotomicField, InverseAndDivision) {
  std::mt19937 rng(7);
  for (auto [k, l] : {std::pair{2, 1}, {3, 1}, {5, 2}}) {
    CyclotomicField F(k, l);
    for (int t = 0; t < 10; ++t) {
      const CycloScalar x = random_element(F, rng);
      if (x.is_zero()) continue;
      EXPECT_EQ(x * x.inverse(), F.one());
      const CycloScalar y = random_element(F, rng);
      EXPECT_EQ((y / x) * x, y);
      EXPECT_LT(std::abs(x.inverse().embed() - 1.0 / x.embed()), 1e-9 * (1 + std::abs(1.0 / x.embed())));
    }
  }
}

TEST(CyclotomicField, ConjugationMatchesComplexConjugate) {
  std::mt19937 rng(11);
  CyclotomicField F(5, 2);
  for (int t = 0; t < 10; ++t) {
    const CycloScalar x = random_element(F, rng);
    EXPECT_LT(std::abs(x.conj().embed() - std::conj(x.embed())), 1e-12);
    EXPECT_EQ(x.conj().conj(), x);
  }
}

TEST(CyclotomicField, DefaultZeroCombinesWithAnyField) {
  CyclotomicField F(3, 1);
  const CycloScalar z;
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z + F.q(), F.q());
  EXPECT_EQ(F.q() - z, F.q());
  EXPECT_TRUE((z * F.q()).is_zero());
}

TEST(CyclotomicField, MixedFieldsRejected) {
  CyclotomicField A(3, 1);
  CyclotomicField B(5, 1);
  EXPECT_THROW(A.q() + B.q(), std::invalid_argument);
}

TEST(QNumbers, BracketAgainstSineRatio) {
  // [x] = sin(pi l x / k) / sin(pi l / k)
  for (auto [k, l] : {std::pair{5, 1}, {5, 2}, {7, 3}, {4, 1}}) {
    CyclotomicField F(k, l);
    for (int x = -3; x <= 2 * k; ++x) {
      const double oracle = std::sin(std::numbers::pi * l * x / k) / std::sin(std::numbers::pi * l / k);
      EXPECT_NEAR(q_bracket(x, F).embed().real(), oracle, 1e-12);
      EXPECT_NEAR(q_bracket(x, F).embed().imag(), 0.0, 1e-12);
    }
  }
}

TEST(QNumbers, GoldenRatioAtKFive) {
  CyclotomicField F(5, 1);
  EXPECT_NEAR(q_bracket(2, F).embed().real(), 1.618034, 1e-6);
}

TEST(QNumbers, BracketOfKVanishesExactly) {
  for (auto [k, l] : {std::pair{3, 1}, {5, 2}, {4, 3}}) {
    CyclotomicField F(k, l);
    EXPECT_TRUE(q_bracket(k, F).is_zero());
    for (int r = 1; r < k; ++r) EXPECT_FALSE(q_bracket(r, F).is_zero()) << "k=" << k << " l=" << l << " r=" << r;
  }
}

TEST(QNumbers, NormalizationConstant) {
  CyclotomicField F(3, 1);
  EXPECT_NEAR(F.c_q().embed().real(), 2.0 / std::sqrt(3.0), 1e-13);
  // c_q = 2 / (q^(1/2) + q^(-1/2)) in every field
  for (auto [k, l] : {std::pair{5, 2}, {4, 3}}) {
    CyclotomicField G(k, l);
    EXPECT_EQ(G.c_q() * (G.q_half_pow(1) + G.q_half_pow(-1)), G.from_int(2));
  }
}

TEST(FloatField, MatchesExactEmbedding) {
  for (auto [k, l] : {std::pair{3, 1}, {5, 2}}) {
    CyclotomicField E(k, l);
    FloatField F(k, l);
    EXPECT_LT(std::abs(F.q() - E.q().embed()), 1e-14);
    EXPECT_LT(std::abs(F.c_q() - E.c_q().embed()), 1e-13);
    EXPECT_LT(std::abs(F.q_minus_qbar_inv() - E.q_minus_qbar_inv().embed()), 1e-13);
    EXPECT_LT(std::abs(F.sqrt2() - E.sqrt2().embed()), 1e-14);
  }
}

TEST(SignCertification, ObviousSigns) {
  CyclotomicField F(5, 2);
  EXPECT_EQ(sign_of_real(F.zero()), Sign::zero);
  EXPECT_EQ(sign_of_real(F.from_int(3)), Sign::positive);
  // [3] at q = exp(2 pi i / 5): sin(6 pi/5) / sin(2 pi/5) < 0
  ASSERT_LT(std::sin(6 * std::numbers::pi / 5), 0.0);
  EXPECT_EQ(sign_of_real(q_bracket(3, F)), Sign::negative);
}

TEST(SignCertification, ResolvesValuesBelowDoublePrecision) {
  CyclotomicField F(2, 1);
  // sqrt(2) = 1.41421356237309504880...
  const CycloScalar below = F.from_rational(mpq_class("1414213562373/1000000000000")) - F.sqrt2();
  const CycloScalar above = F.from_rational(mpq_class("14142135623731/10000000000000")) - F.sqrt2();
  EXPECT_LT(std::abs(below.embed()), 1e-9);
  EXPECT_EQ(sign_of_real(below), Sign::negative);
  EXPECT_EQ(sign_of_real(above), Sign::positive);
  // sqrt(2) = 1.41421356237309504880168872420969..., so these differ by about 2e-28
  const CycloScalar tiny_below = F.from_rational(mpq_class("1414213562373095048801688724/1000000000000000000000000000")) - F.sqrt2();
  const CycloScalar tiny_above = F.from_rational(mpq_class("1414213562373095048801688725/1000000000000000000000000000")) - F.sqrt2();
  EXPECT_EQ(sign_of_real(tiny_below), Sign::negative);
  EXPECT_EQ(sign_of_real(tiny_above), Sign::positive);
}
