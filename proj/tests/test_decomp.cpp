#include <gtest/gtest.h>

#include "cliffq/decomp.hpp"

using namespace cliffq;

namespace {

using Exact = OperatorMatrix<CycloScalar>;
using Float = OperatorMatrix<FloatScalar>;

std::vector<std::size_t> grade_dims_oracle(int m, int n, int k) {
  std::vector<std::size_t> poly{1};
  auto times = [&](int len) {
    std::vector<std::size_t> out(poly.size() + static_cast<std::size_t>(len) - 1, 0);
    for (std::size_t a = 0; a < poly.size(); ++a)
      for (int b = 0; b < len; ++b) out[a + static_cast<std::size_t>(b)] += poly[a];
    poly = out;
  };
  for (int t = 0; t < m; ++t) times(k);
  for (int t = 0; t < n; ++t) times(2);
  return poly;
}

}  // namespace

TEST(OrbitSpan, NumberOperatorsFixEveryBasisVector) {
  const FockModule mod = FockModule::quotient(2, 1, 3, 1);
  const CyclotomicField F(3, 1);
  const auto b = build_clifford_raw(mod, F);
  std::vector<Exact> gens;
  for (int i = 1; i <= 3; ++i) gens.push_back(b.N(i));
  for (std::size_t j = 0; j < mod.dim(); ++j) EXPECT_EQ(orbit_span(gens, unit_vector(j, F.one())), 1u);
}

TEST(OrbitSpan, RaisingFromVacuumFillsTheModule) {
  const FockModule mod = FockModule::quotient(2, 1, 3, 2);
  const CyclotomicField F(3, 2);
  const auto b = build_clifford_raw(mod, F);
  std::vector<Exact> gens{b.c_plus(1), b.c_plus(2), b.c_plus(3)};
  EXPECT_EQ(orbit_span(gens, unit_vector(mod.rank({0, 0, 0}), F.one())), mod.dim());
  // and from the top vector nothing is reachable by raising
  EXPECT_EQ(orbit_span(gens, unit_vector(mod.rank({2, 2, 1}), F.one())), 1u);
}

TEST(OrbitSpan, LeakOutsideSubspaceThrows) {
  const FockModule mod = FockModule::quotient(1, 1, 3, 1);
  const CyclotomicField F(3, 1);
  const auto b = build_clifford_raw(mod, F);
  const std::vector<Exact> gens{b.c_plus(1)};
  const auto grade0 = mod.grade_subspace(0);
  EXPECT_THROW(orbit_span(gens, unit_vector(grade0.front(), F.one()), grade0), SubspaceLeakError);
  EXPECT_THROW(orbit_span(gens, unit_vector(mod.rank({1, 0}), F.one()), grade0), SubspaceLeakError);
}

TEST(OrbitSpan, FloatPivotThresholds) {
  Float g = Float::square(2);
  g.set(0, 0, {1.0, 0.0});
  g.set(1, 0, {1e-11, 0.0});
  EXPECT_THROW(orbit_span(std::vector<Float>{g}, unit_vector<FloatScalar>(0, {1.0, 0.0})), PrecisionError);
  g.set(1, 0, {1e-13, 0.0});
  EXPECT_EQ(orbit_span(std::vector<Float>{g}, unit_vector<FloatScalar>(0, {1.0, 0.0})), 1u);
  g.set(1, 0, {1e-9, 0.0});
  EXPECT_EQ(orbit_span(std::vector<Float>{g}, unit_vector<FloatScalar>(0, {1.0, 0.0})), 2u);
}

TEST(ModuleIrreducible, UnderAllLadders) {
  for (auto [m, n, k, l] : {std::array{1, 1, 2, 1}, {2, 1, 3, 1}, {1, 1, 5, 2}, {1, 0, 4, 3}}) {
    const FockModule mod = FockModule::quotient(m, n, k, l);
    EXPECT_TRUE(module_irreducibility(build_clifford_raw(mod, CyclotomicField(k, l))).all_passed());
    EXPECT_TRUE(module_irreducibility(build_clifford_raw(mod, FloatField(k, l))).all_passed());
    EXPECT_TRUE(structural_irreducibility(build_clifford_raw(mod, CyclotomicField(k, l))).all_passed());
  }
}

TEST(Decomposition, GradesAtTwoOneThree) {
  const auto d = decompose_sl(build_cartan_weyl(build_clifford_raw(FockModule::quotient(2, 1, 3, 1), CyclotomicField(3, 1))));
  EXPECT_TRUE(d.report.all_passed());
  EXPECT_EQ(d.record.dims(), (std::vector<std::size_t>{1, 3, 5, 5, 3, 1}));
  EXPECT_EQ(d.record.count, 6u);
  EXPECT_EQ(d.record.total, 18u);
  for (const auto& g : d.record.grades) EXPECT_TRUE(g.irreducible);
}

TEST(Decomposition, CountsAndDimsMatchOracle) {
  for (auto [m, n, k] : {std::array{1, 1, 2}, {1, 1, 3}, {2, 1, 2}, {1, 2, 4}, {2, 2, 3}, {0, 2, 2}, {3, 0, 2}}) {
    const auto d = decompose_sl(build_cartan_weyl(build_clifford_raw(FockModule::quotient(m, n, k, 1), CyclotomicField(k, 1))));
    EXPECT_TRUE(d.report.all_passed()) << m << n << k;
    EXPECT_EQ(d.record.dims(), grade_dims_oracle(m, n, k));
    EXPECT_EQ(d.record.count, static_cast<std::size_t>(m * (k - 1) + n + 1));
  }
}

TEST(Decomposition, OtherRootsRecordedWithoutFailing) {
  const auto d = decompose_sl(build_cartan_weyl(build_clifford_raw(FockModule::quotient(1, 1, 5, 2), CyclotomicField(5, 2))));
  EXPECT_TRUE(d.report.all_passed());
  bool observed = false;
  for (const auto& e : d.report.entries()) observed = observed || e.relation == "decomp.grade_irreducible_observed";
  EXPECT_TRUE(observed);
}

TEST(Decomposition, BackendsAgree) {
  for (auto [m, n, k] : {std::array{1, 1, 2}, {2, 1, 3}, {1, 2, 4}})
    EXPECT_TRUE(crosscheck_orbit_backends(FockModule::quotient(m, n, k, 1)).all_passed());
}

TEST(Decomposition, InequivalentAcrossK) {
  std::vector<DecompositionRecord> records;
  for (int k : {2, 3, 4, 5})
    records.push_back(decompose_sl(build_cartan_weyl(build_clifford_raw(FockModule::quotient(1, 1, k, 1), CyclotomicField(k, 1)))).record);
  const auto rep = inequivalence_check(records);
  EXPECT_EQ(rep.entries().size(), 6u);
  EXPECT_TRUE(rep.all_passed());

  DecompositionRecord fake = records[0];
  fake.k = 7;
  records.push_back(fake);
  EXPECT_FALSE(inequivalence_check(records).all_passed());
}
