#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "random_data.hpp"
#include "tvar/tvar.hpp"
#include "tvar/io.hpp"

using namespace tvar;
using tvar::testing::Gen;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sample(const char* name) { return slurp(std::filesystem::path(TVAR_SAMPLES_DIR) / name); }

ErrorKind kind_of(const std::string& text) {
  try {
    parse_input(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Invalid;
}

const char* kRankOneHead = R"({"lattice_rank": 1, "tail_cone": {"rays": [[1]]}, "base": {"kind": "P1"}, )";

}  // namespace

TEST(ParseInput, ExampleDocument) {
  auto s = parse_input(sample("example_i.json"));
  EXPECT_EQ(s.coefficients.size(), 3u);
  EXPECT_EQ(s.lattice_rank, 1u);
  auto d = to_divisor(s);
  EXPECT_TRUE(validate_input(d).empty());
  EXPECT_EQ(degree_at(d, RatVec{Rat(1)}), Rat(1, 4));
}

TEST(ParseInput, Errors) {
  EXPECT_EQ(kind_of(std::string(kRankOneHead) + R"("coefficients": [{"point": "0", "vertices": [["1/0"]]}]})"),
            ErrorKind::Parse);
  EXPECT_EQ(kind_of(R"({"lattice_rank": 2, "tail_cone": {"rays": [[0, 0]]}, "base": {"kind": "P1"}, "coefficients": []})"),
            ErrorKind::Invalid);
  try {
    parse_input("{\"lattice_rank\": 1,\n  \"tail_cone\": }");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_EQ(kind_of(std::string(kRankOneHead) + R"("coefficients": [{"point": "0", "vertices": [["1", "2"]]}]})"),
            ErrorKind::DimensionMismatch);
  EXPECT_EQ(kind_of(R"({"lattice_rank": 1, "tail_cone": {"rays": [[1]]}, "base": {"kind": "K3"}, "coefficients": []})"),
            ErrorKind::Parse);
  EXPECT_EQ(kind_of(std::string(kRankOneHead) +
                    R"("coefficients": [{"point": "0", "vertices": [["1"]]}, {"point": "0/5", "vertices": [["2"]]}]})"),
            ErrorKind::Invalid);
}

TEST(ParseInput, SemanticViolationsSurfaceThroughValidation) {
  auto s = parse_input(std::string(kRankOneHead) +
                       R"("coefficients": [{"point": "0", "vertices": [["1"]], "extra_rays": [[-1]]}]})");
  auto v = validate_input(to_divisor(s));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::TailMismatch);

  auto e = parse_input(R"({"lattice_rank": 1, "tail_cone": {"rays": [[1]]}, "base": {"kind": "elliptic", "a": "-1", "b": "0"},
      "coefficients": [{"point": {"x": "2", "y": "2"}, "vertices": [["1"]]}]})");
  auto w = validate_input(to_divisor(e));
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].kind, ViolationKind::PointNotOnCurve);
}

TEST(RoundTrip, Samples) {
  for (const auto& entry : std::filesystem::directory_iterator(TVAR_SAMPLES_DIR)) {
    auto s = parse_input(slurp(entry.path()));
    EXPECT_EQ(parse_input(emit_input(s)), s) << entry.path();
  }
}

TEST(RoundTrip, RandomDocuments) {
  Gen g(77);
  for (int i = 0; i < 100; ++i) {
    const std::size_t rank = static_cast<std::size_t>(g.uniform(1, 3));
    ProblemSpec s;
    s.lattice_rank = rank;
    for (int k = 0; k < g.uniform(0, 3); ++k) s.tail_rays.push_back(g.nonzero_vec(rank, 4));
    const int kind = static_cast<int>(g.uniform(0, 3));
    s.base.kind = std::vector<std::string>{"P1", "affine_space", "abstract", "affine_line"}[kind];
    if (kind == 1) s.base.dim = 3;
    if (kind == 2) s.base.genus = static_cast<unsigned>(g.uniform(0, 3));
    for (int k = 0; k < 3; ++k) {
      CoefficientSpec c;
      if (kind == 0) c.point = CurvePoint{k == 2 ? p1_infinity() : p1_affine(g.rat(5, 4) + k * 20)};
      else if (kind == 1) c.point = Hyperplane{static_cast<unsigned>(k + 1)};
      else c.point = CurvePoint{LabelPoint{"p" + std::to_string(k)}};
      for (int v = 0; v < g.uniform(1, 3); ++v) c.vertices.push_back(g.rat_vec(rank, 9, 6));
      if (g.coin()) c.extra_rays.push_back(g.nonzero_vec(rank, 3));
      s.coefficients.push_back(std::move(c));
    }
    EXPECT_EQ(parse_input(emit_input(s)), s);
  }
}

TEST(EmitReport, ExampleReportJson) {
  auto d = to_divisor(parse_input(sample("example_i.json")));
  auto j = to_json(classify_report(d, false));
  EXPECT_EQ(j["elliptic"]["verdict"], "yes");
  EXPECT_EQ(j["elliptic"]["witness_m"], 1);
  EXPECT_EQ(j["elliptic"]["minimal"], "yes");
  EXPECT_EQ(j["rational"]["verdict"], "no");
  EXPECT_EQ(j["rational"]["witness"], Json::array({1}));
  EXPECT_EQ(j["gorenstein"]["m_G"], "1");
  EXPECT_FALSE(mentions_unknown(j));
  EXPECT_EQ(emit_report(j, Format::Json), emit_report(classify_report(d, false), Format::Json));
}

TEST(EmitReport, AffineAndUnknown) {
  auto a = to_json(classify_report(to_divisor(parse_input(sample("affine_line.json"))), false));
  EXPECT_EQ(a["rational"]["verdict"], "yes");
  EXPECT_EQ(a["rational"]["criterion"], "affine-base-toroidal");

  auto u = to_json(classify_report(to_divisor(parse_input(sample("abstract_genus_one.json"))), false));
  EXPECT_EQ(u["elliptic"]["verdict"], "unknown");
  EXPECT_FALSE(u["elliptic"]["reason"].get<std::string>().empty());
  EXPECT_TRUE(mentions_unknown(u));
}

TEST(EmitReport, TextFormat) {
  auto d = to_divisor(parse_input(sample("example_i.json")));
  auto text = emit_report(classify_report(d, false), Format::Text);
  EXPECT_NE(text.find("elliptic.verdict: yes\n"), std::string::npos);
  EXPECT_NE(text.find("rational.witness: [1]\n"), std::string::npos);
  EXPECT_NE(text.find("h1.entries[1].h1: 1\n"), std::string::npos);
}
