#include <gtest/gtest.h>

#include <algorithm>

#include "cliffq/gram.hpp"
#include "cliffq/slmn.hpp"

using namespace cliffq;

namespace {

const std::vector<std::array<int, 4>> points = {{1, 1, 2, 1}, {2, 1, 3, 1}, {1, 2, 3, 1}, {2, 2, 2, 1},
                                                {1, 1, 5, 2}, {1, 0, 4, 3}, {0, 2, 2, 1}, {2, 1, 5, 3}};

}  // namespace

TEST(NormalOrder, PositiveThenNegativeThenCartan) {
  std::vector<NormalOrderKey> keys{NormalOrderKey::cartan_element(1), NormalOrderKey::root(3, 1), NormalOrderKey::root(1, 3),
                                   NormalOrderKey::root(2, 1), NormalOrderKey::root(1, 2), NormalOrderKey::cartan_element(0)};
  std::sort(keys.begin(), keys.end());
  const std::vector<NormalOrderKey> expected{NormalOrderKey::root(1, 2), NormalOrderKey::root(1, 3), NormalOrderKey::root(2, 1),
                                             NormalOrderKey::root(3, 1), NormalOrderKey::cartan_element(0), NormalOrderKey::cartan_element(1)};
  EXPECT_EQ(keys, expected);
  EXPECT_THROW(NormalOrderKey::root(2, 2), std::invalid_argument);
}

TEST(SlChevalley, RelationsExact) {
  for (auto [m, n, k, l] : points) {
    const auto s = build_sl_chevalley(build_osp(build_clifford_raw(FockModule::quotient(m, n, k, l), CyclotomicField(k, l))));
    const auto rep = verify_sl_chevalley_relations(s);
    EXPECT_TRUE(rep.all_passed()) << m << n << k << l << (rep.failed() ? " " + rep.failures().front().id() : "");
  }
}

TEST(SlChevalley, EmbeddingIntoCartanWeyl) {
  for (auto [m, n, k, l] : points) {
    const auto raw = build_clifford_raw(FockModule::quotient(m, n, k, l), CyclotomicField(k, l));
    const auto rep = verify_sl_embedding(build_sl_chevalley(build_osp(raw)), build_cartan_weyl(raw));
    EXPECT_TRUE(rep.all_passed()) << m << n << k << l;
  }
}

TEST(CartanWeyl, RelationsExactAndFloat) {
  for (auto [m, n, k, l] : points) {
    const FockModule mod = FockModule::quotient(m, n, k, l);
    const auto a = verify_cartan_weyl_relations(build_cartan_weyl(build_clifford_raw(mod, CyclotomicField(k, l))));
    EXPECT_TRUE(a.all_passed()) << m << n << k << l << (a.failed() ? " " + a.failures().front().id() : "");
    const auto b = verify_cartan_weyl_relations(build_cartan_weyl(build_clifford_raw(mod, FloatField(k, l))));
    EXPECT_TRUE(b.all_passed()) << m << n << k << l;
  }
}

TEST(CartanWeyl, LadderRealizationRelations) {
  for (auto [m, n, k] : {std::array{1, 1, 2}, {2, 1, 3}, {1, 2, 4}, {2, 2, 3}}) {
    const auto cw = build_cartan_weyl_ladder(build_clifford_orthonormal(FockModule::quotient(m, n, k, 1)));
    EXPECT_EQ(cw.realization, Realization::ladder_form);
    EXPECT_TRUE(verify_cartan_weyl_relations(cw).all_passed()) << m << n << k;
  }
}

TEST(CartanWeyl, ThreeRealizationsAgree) {
  for (auto [m, n, k] : {std::array{1, 1, 2}, {2, 1, 3}, {1, 2, 4}}) {
    const auto rep = crosscheck_realizations(FockModule::quotient(m, n, k, 1));
    EXPECT_TRUE(rep.all_passed()) << m << n << k << (rep.failed() ? " " + rep.failures().front().id() : "");
    EXPECT_LT(rep.max_residual(), 1e-12);
  }
}

TEST(CartanWeyl, ClosedFormNeedsPrimitiveRoot) {
  EXPECT_THROW(build_cartan_weyl_closed_form(FockModule::quotient(1, 1, 5, 2)), AdmissibilityError);
}

TEST(CartanWeyl, RootVectorsMoveOneQuantum) {
  // Every nonzero entry of e_ij connects |r> to |r - eps_i + eps_j>; so each
  // preserves the total occupation.
  const FockModule mod = FockModule::quotient(2, 2, 3, 1);
  const auto cw = build_cartan_weyl(build_clifford_raw(mod, CyclotomicField(3, 1)));
  for (const auto& [key, x] : cw.root) {
    const auto [i, j] = key;
    std::size_t entries = 0;
    x.for_each([&](std::size_t row, std::size_t col, const CycloScalar&) {
      OccupationVector r = mod.vector_at(col);
      --r[static_cast<std::size_t>(i - 1)];
      ++r[static_cast<std::size_t>(j - 1)];
      EXPECT_EQ(mod.vector_at(row), r) << "e_" << i << j;
      ++entries;
    });
    EXPECT_GT(entries, 0u);
  }
}

TEST(CartanWeyl, SimpleRootsAreNegatedChevalley) {
  const CyclotomicField F(3, 1);
  const auto raw = build_clifford_raw(FockModule::quotient(2, 1, 3, 1), F);
  const auto s = build_sl_chevalley(build_osp(raw));
  const auto cw = build_cartan_weyl(raw);
  for (int i = 1; i <= 2; ++i) {
    EXPECT_TRUE((cw.e(i, i + 1) + s.e_of(i)).is_zero_matrix());
    EXPECT_TRUE((cw.e(i + 1, i) + s.f_of(i)).is_zero_matrix());
  }
}

TEST(CartanWeyl, CartanDiagonals) {
  const FockModule mod = FockModule::quotient(1, 2, 3, 1);
  const auto cw = build_cartan_weyl(build_clifford_raw(mod, CyclotomicField(3, 1)));
  ASSERT_EQ(cw.cartan.size(), 3u);
  for (std::size_t a = 0; a < mod.dim(); ++a) {
    const auto& r = mod.vector_at(a);
    // H~_i = -N_1 - (-1)^<i+1> N_{i+1}; mode 1 is bosonic
    EXPECT_EQ(cw.cartan[0].twice[a], 0);
    EXPECT_EQ(cw.cartan[1].twice[a], -2L * (r[0] + r[1]));
    EXPECT_EQ(cw.cartan[2].twice[a], -2L * (r[0] + r[2]));
  }
}
