#include <gtest/gtest.h>

#include "cliffq/io.hpp"

using namespace cliffq;

namespace {

template <class Field>
void expect_same(const RepresentationBundle<Field>& a, const RepresentationBundle<Field>& b) {
  ASSERT_EQ(a.modes(), b.modes());
  using Member = std::vector<OperatorMatrix<typename Field::scalar_type>> RepresentationBundle<Field>::*;
  for (Member part : {&RepresentationBundle<Field>::raise, &RepresentationBundle<Field>::lower, &RepresentationBundle<Field>::number})
    for (int i = 1; i <= a.modes(); ++i) {
      const auto& x = (a.*part)[static_cast<std::size_t>(i - 1)];
      const auto& y = (b.*part)[static_cast<std::size_t>(i - 1)];
      EXPECT_EQ(x.nnz(), y.nnz());
      EXPECT_EQ(x.parity(), y.parity());
      x.for_each([&](std::size_t r, std::size_t c, const auto& v) { EXPECT_TRUE(v == y.get(r, c)) << r << "," << c; });
    }
}

json exported(int m, int n, int k, int l) {
  return export_bundle(build_clifford_raw(FockModule::quotient(m, n, k, l), CyclotomicField(k, l)));
}

}  // namespace

TEST(Export, LayoutAtOneOneTwo) {
  const json j = exported(1, 1, 2, 1);
  EXPECT_EQ(j["schema"], schema_version);
  EXPECT_EQ(j["dim"], 4);
  EXPECT_EQ(j["backend"], "exact");
  EXPECT_EQ(j["matrices"].size(), 6u);
  EXPECT_EQ(j["matrices"][0]["name"], "c+1");
  EXPECT_EQ(j["matrices"][0]["triplets"].size(), 2u);
  EXPECT_EQ(j["matrices"][0]["triplets"][0][2]["order"], 16);
}

TEST(Export, ExactRoundTripIsExact) {
  for (auto [m, n, k, l] : {std::array{1, 1, 2, 1}, {2, 1, 3, 1}, {1, 1, 5, 2}}) {
    const FockModule mod = FockModule::quotient(m, n, k, l);
    const auto b = build_clifford_raw(mod, CyclotomicField(k, l));
    const json text = json::parse(export_bundle(b).dump());
    const AnyBundle back = import_bundle(text);
    ASSERT_TRUE(std::holds_alternative<RepresentationBundle<CyclotomicField>>(back));
    expect_same(b, std::get<RepresentationBundle<CyclotomicField>>(back));
  }
}

TEST(Export, FloatRoundTripIsBitExact) {
  const FockModule mod = FockModule::quotient(2, 1, 3, 1);
  for (const auto& b : {build_clifford_raw(mod, FloatField(3, 1)), build_clifford_orthonormal(mod)}) {
    const AnyBundle back = import_bundle(json::parse(export_bundle(b).dump()));
    ASSERT_TRUE(std::holds_alternative<RepresentationBundle<FloatField>>(back));
    const auto& c = std::get<RepresentationBundle<FloatField>>(back);
    EXPECT_EQ(c.basis, b.basis);
    expect_same(b, c);
  }
}

TEST(Import, RejectsCorruptedCoefficient) {
  json j = exported(1, 1, 2, 1);
  j["matrices"][0]["triplets"][0][2]["coeffs"][0] = "1/x";
  EXPECT_THROW(import_bundle(j), SchemaError);
  j = exported(1, 1, 2, 1);
  j["matrices"][0]["triplets"][0][2]["coeffs"][0] = "1/0";
  EXPECT_THROW(import_bundle(j), SchemaError);
  j = exported(1, 1, 2, 1);
  j["matrices"][0]["triplets"][0][2]["coeffs"].erase(0);
  EXPECT_THROW(import_bundle(j), SchemaError);
}

TEST(Import, RejectsSchemaAndStructuralErrors) {
  json j = exported(1, 1, 2, 1);
  j["schema"] = 99;
  EXPECT_THROW(import_bundle(j), SchemaError);
  j = exported(1, 1, 2, 1);
  j.erase("m");
  EXPECT_THROW(import_bundle(j), SchemaError);
  j = exported(1, 1, 2, 1);
  j["matrices"][0]["triplets"][0][0] = 17;
  EXPECT_THROW(import_bundle(j), SchemaError);
  j = exported(1, 1, 2, 1);
  j["matrices"].erase(2);
  EXPECT_THROW(import_bundle(j), SchemaError);
  j = exported(1, 1, 2, 1);
  j["matrices"][0]["triplets"][0][2]["order"] = 24;
  EXPECT_THROW(import_bundle(j), SchemaError);
  EXPECT_THROW(import_bundle(json::array()), SchemaError);
}

TEST(Import, ParameterMismatchNamesK) {
  const json j = exported(1, 1, 3, 1);
  try {
    import_bundle(j, PointParams{1, 1, 2, 1});
    FAIL() << "no exception";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("k mismatch"), std::string::npos);
  }
  EXPECT_THROW(import_bundle(j, PointParams{2, 1, 3, 1}), SchemaError);
  EXPECT_NO_THROW(import_bundle(j, PointParams{1, 1, 3, 1}));
}

TEST(Import, TamperedEntryFailsVerification) {
  json j = exported(1, 1, 3, 1);
  j["matrices"][0]["triplets"][0][2]["coeffs"][0] = "2/1";
  const auto b = std::get<RepresentationBundle<CyclotomicField>>(import_bundle(j));
  EXPECT_FALSE(verify_clifford_relations(b).all_passed());
}

TEST(Report, JsonEntryShape) {
  VerificationReport r("clifford");
  r.check_true("cl.demo", {idx("i", 2), sgn_idx("s", -1)}, true, "exact");
  const json j = report_json({1, 1, 2, 1}, r);
  EXPECT_EQ(j["provenance"]["field_order"], 16);
  const auto& e = j["entries"][0];
  EXPECT_EQ(e["relation_id"], r.entries()[0].id());
  EXPECT_EQ(e["index"]["i"], 2);
  EXPECT_EQ(e["index"]["s"], "-");
  EXPECT_EQ(j["summary"]["passed"], 1);
}

TEST(Report, CsvQuotesNotes) {
  EXPECT_EQ(csv_quote("plain"), "plain");
  EXPECT_EQ(csv_quote("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_quote("say \"hi\""), "\"say \"\"hi\"\"\"");
  VerificationReport r("gram");
  r.check_true("gram.dichotomy", {}, true, "exact", "indefinite, first negative |3>");
  const std::string csv = report_csv({1, 0, 5, 2}, r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "m,n,k,l,suite,relation_id,backend,status,residual,note");
  EXPECT_NE(csv.find("\"indefinite, first negative |3>\""), std::string::npos);
}

TEST(Report, PositivityAndDecompositionJson) {
  const auto a = positivity_analysis(build_gram(FockModule::quotient(1, 0, 5, 2), CyclotomicField(5, 2)));
  const json p = positivity_json(a);
  EXPECT_EQ(p["positive_definite"], false);
  EXPECT_EQ(p["first_negative"], "|3>");
  EXPECT_EQ(p["negative_count"], 1);  // [1][2][3] < 0, [1]..[4] > 0
}
