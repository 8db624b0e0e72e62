#include <gtest/gtest.h>

#include <map>

#include "cliffq/gram.hpp"
#include "cliffq/osp.hpp"

using namespace cliffq;

namespace {

const std::vector<std::array<int, 4>> points = {{1, 1, 2, 1}, {2, 1, 3, 1}, {1, 2, 3, 1}, {2, 2, 2, 1},
                                                {1, 1, 5, 2}, {1, 0, 4, 3}, {0, 2, 2, 1}, {3, 0, 2, 1}};

std::map<std::string, int> relation_counts(const VerificationReport& r) {
  std::map<std::string, int> c;
  for (const auto& e : r.entries()) ++c[e.relation];
  return c;
}

}  // namespace

TEST(Osp, HandEntriesForOneFermion) {
  // k = 2, l = 1: c_q = sqrt 2, so e_1 = a^-/sqrt2 sends |1> to |0> with weight 1.
  const CyclotomicField F(2, 1);
  const FockModule mod = FockModule::quotient(0, 1, 2, 1);
  const auto o = build_osp(build_clifford_raw(mod, F));
  EXPECT_EQ(o.e_of(1).get(0, 1), F.one());
  EXPECT_EQ(o.f_of(1).get(1, 0), F.sqrt2() * F.from_ratio(-1, 2));
  EXPECT_EQ(o.h_of(1).twice, (std::vector<long>{-1, 1}));
}

TEST(Osp, CartanValuesAreSignedNumberMinusHalf) {
  const FockModule mod = FockModule::quotient(1, 1, 3, 1);
  const auto o = build_osp(build_clifford_raw(mod, CyclotomicField(3, 1)));
  // boson: H = -N - 1/2, fermion: H = N - 1/2
  for (std::size_t j = 0; j < mod.dim(); ++j) {
    const auto& r = mod.vector_at(j);
    EXPECT_EQ(o.H_of(1).twice[j], -2L * r[0] - 1);
    EXPECT_EQ(o.H_of(2).twice[j], 2L * r[1] - 1);
  }
  EXPECT_EQ(o.h_of(1), o.H_of(1) - o.H_of(2));
  EXPECT_EQ(o.h_of(2), o.H_of(2));
}

TEST(Osp, GreenRelationsExact) {
  for (auto [m, n, k, l] : points) {
    const auto o = build_osp(build_clifford_raw(FockModule::quotient(m, n, k, l), CyclotomicField(k, l)));
    const auto rep = verify_green_relations(o);
    EXPECT_TRUE(rep.all_passed()) << m << n << k << l << (rep.failed() ? " " + rep.failures().front().id() : "");
  }
}

TEST(Osp, ChevalleyAndSerreExact) {
  for (auto [m, n, k, l] : points) {
    const auto o = build_osp(build_clifford_raw(FockModule::quotient(m, n, k, l), CyclotomicField(k, l)));
    const auto rep = verify_chevalley_relations(o);
    EXPECT_TRUE(rep.all_passed()) << m << n << k << l << (rep.failed() ? " " + rep.failures().front().id() : "");
    for (const auto& e : rep.entries()) EXPECT_EQ(e.status, CheckStatus::exact_zero);
  }
}

TEST(Osp, ChevalleyAndSerreFloat) {
  for (auto [m, n, k, l] : points) {
    const auto o = build_osp(build_clifford_raw(FockModule::quotient(m, n, k, l), FloatField(k, l)));
    const auto rep = verify_chevalley_relations(o);
    EXPECT_TRUE(rep.all_passed());
    EXPECT_LT(rep.max_residual(), 1e-11);
  }
}

TEST(Osp, SerreFamiliesPresentWhereTheyApply) {
  auto c = relation_counts(verify_chevalley_relations(build_osp(build_clifford_raw(FockModule::quotient(2, 1, 3, 1), CyclotomicField(3, 1)))));
  for (const char* id : {"osp.serre_e.commute", "osp.serre_e.nilpotent", "osp.serre_e.cubic", "osp.serre_e.odd_node", "osp.serre_e.quartic",
                         "osp.serre_f.commute", "osp.serre_f.nilpotent", "osp.serre_f.cubic", "osp.serre_f.odd_node", "osp.serre_f.quartic"})
    EXPECT_GT(c[id], 0) << id;
  // with no fermions the odd simple root is absent
  auto d = relation_counts(verify_chevalley_relations(build_osp(build_clifford_raw(FockModule::quotient(3, 0, 2, 1), CyclotomicField(2, 1)))));
  EXPECT_EQ(d["osp.serre_e.nilpotent"], 0);
  EXPECT_GT(d["osp.serre_e.quartic"], 0);
}

TEST(Osp, GreenReconstructedFromChevalley) {
  for (auto [m, n, k, l] : points) {
    const auto o = build_osp(build_clifford_raw(FockModule::quotient(m, n, k, l), CyclotomicField(k, l)));
    EXPECT_TRUE(reconstruct_green(o).all_passed()) << m << n << k << l;
  }
}

TEST(Osp, CorruptedGeneratorIsCaught) {
  const CyclotomicField F(3, 1);
  auto o = build_osp(build_clifford_raw(FockModule::quotient(2, 1, 3, 1), F));
  o.f.back() = o.f.back().scaled(F.from_int(2));
  const auto rep = verify_chevalley_relations(o);
  EXPECT_FALSE(rep.all_passed());
  bool ef = false;
  for (const auto& e : rep.failures()) ef = ef || e.relation == "osp.chev.ef";
  EXPECT_TRUE(ef);
}

TEST(Osp, BackendsBuildTheSameMatrices) {
  const FockModule mod = FockModule::quotient(2, 1, 5, 2);
  const auto x = build_osp(build_clifford_raw(mod, CyclotomicField(5, 2)));
  const auto y = build_osp(build_clifford_raw(mod, FloatField(5, 2)));
  for (int node = 1; node <= 3; ++node) {
    EXPECT_LT((to_orthonormal(x.e_of(node), std::vector<double>(mod.dim(), 1.0)) - y.e_of(node)).max_abs(), 1e-12);
    EXPECT_LT((to_orthonormal(x.f_of(node), std::vector<double>(mod.dim(), 1.0)) - y.f_of(node)).max_abs(), 1e-12);
  }
}
