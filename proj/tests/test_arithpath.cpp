#include <gtest/gtest.h>

#include <set>

#include "ayrel/arithpath.hpp"
#include "ayrel/linalg.hpp"

using namespace ayrel;

namespace {

std::vector<int> digits(const std::string& s) {
  std::vector<int> v;
  for (char c : s) v.push_back(c - '0');
  return v;
}

}  // namespace

TEST(Displacement, RelationAndRank) {
  auto ctx = make_context(3);
  NFElem sum = displacement_value(ctx, 1) + displacement_value(ctx, 2) + displacement_value(ctx, 3);
  EXPECT_EQ(sum, NFElem(ctx, Rational(1)));
  LatticePoint total{0, 0};
  for (int i = 1; i <= 3; ++i) {
    auto p = lattice_step({displacement_value(ctx, i), i, 1});
    total.first += p.first;
    total.second += p.second;
  }
  EXPECT_EQ(total, (LatticePoint{0, 0}));
  std::vector<std::vector<Rational>> vecs{displacement_value(ctx, 1).coeffs(), displacement_value(ctx, 2).coeffs(),
                                          NFElem(ctx, Rational(1)).coeffs()};
  EXPECT_EQ(rational_rank(vecs), 3);
}

TEST(Displacement, ClassificationIsExact) {
  auto ctx = make_context(3);
  for (int i = 1; i <= 3; ++i) {
    NFElem d = displacement_value(ctx, i);
    auto p = classify_displacement(d);
    EXPECT_EQ(p.index, i);
    EXPECT_EQ(p.sign, 1);
    auto n = classify_displacement(-d);
    EXPECT_EQ(n.sign, -1);
    EXPECT_EQ(classify_displacement(d - Rational(1)).sign, 1);
  }
  try {
    classify_displacement(NFElem(ctx, Rational(1, 3)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ClassificationFailure);
  }
}

TEST(ArithmeticOrbit, ShortestOrbitIsATriangle) {
  auto ctx = make_context(3);
  NFElem r = NFElem::alpha_pow(ctx, 3) / Rational(2) - NFElem::alpha_pow(ctx, 6);
  auto comps = periodic_components(ay_rel_iet(ctx, r));
  bool found = false;
  for (const auto& c : comps) {
    if (c.orbit.orbit_type.str() != "164") continue;
    found = true;
    auto path = arithmetic_orbit(ctx, r, (c.lo + c.hi) / Rational(2), 100);
    EXPECT_TRUE(path.closed);
    ASSERT_EQ(path.points.size(), 4u);
    EXPECT_EQ(path.points.front(), path.points.back());
    std::set<LatticePoint> distinct(path.points.begin(), path.points.end() - 1);
    EXPECT_EQ(distinct.size(), 3u);
  }
  EXPECT_TRUE(found);
}

TEST(ArithmeticOrbit, PeriodicOrbitsClose) {
  auto ctx = make_context(3);
  for (int d : {4, 8}) {
    NFElem r = NFElem::alpha_pow(ctx, 3) / Rational(d);
    for (const auto& c : periodic_components(ay_rel_iet(ctx, r))) {
      auto path = arithmetic_orbit(ctx, r, (c.lo + c.hi) / Rational(2), 100000);
      EXPECT_TRUE(path.closed);
      EXPECT_EQ(path.steps, c.orbit.period);
      EXPECT_EQ(path.points.back(), (LatticePoint{0, 0}));
    }
  }
}

TEST(ArithmeticOrbit, CapIsReported) {
  auto ctx = make_context(3);
  auto path = arithmetic_orbit(ctx, NFElem(ctx), NFElem(ctx, Rational(1, 3)), 50);
  EXPECT_FALSE(path.closed);
  EXPECT_EQ(path.steps, 50);
  EXPECT_THROW(arithmetic_orbit(ctx, NFElem(ctx), NFElem(ctx), 0), Error);
  EXPECT_THROW(arithmetic_orbit(make_context(4), NFElem(make_context(4)), NFElem(make_context(4)), 5), Error);
}

TEST(Substitution, KnownOrbitTypes) {
  auto orbit = substitution_orbit(digits("164"), 3);
  EXPECT_EQ(word_string(orbit[0]), "34216");
  EXPECT_EQ(word_string(orbit[1]), "151634342");
  EXPECT_EQ(word_string(orbit[2]), "34173421516351634");
  EXPECT_EQ(substitute(OrbitWord::parse("164")), OrbitWord::parse("34216"));
  EXPECT_EQ(substitute(OrbitWord::parse("34216")), OrbitWord::parse("151634342"));
  EXPECT_EQ(substitute(OrbitWord::parse("151634342")), OrbitWord::parse("34173421516351634"));
}

TEST(Substitution, ContextErrors) {
  for (const char* w : {"13", "23", "53"}) {
    try {
      substitute(OrbitWord::parse(w));
      FAIL() << w;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::SubstitutionContextUndefined);
    }
  }
  // Cyclic context: the leading 3 sees the trailing 4.
  EXPECT_EQ(word_string(substitute_word(digits("34"))), "3516");
  EXPECT_THROW(substitute_word(digits("18")), Error);
}

TEST(Substitution, GrowthAlongOrbit) {
  auto orbit = substitution_orbit(digits("164"), 11);
  std::vector<size_t> lengths{3};
  for (const auto& w : orbit) lengths.push_back(w.size());
  EXPECT_EQ(lengths[1], 5u);
  EXPECT_EQ(lengths[2], 9u);
  EXPECT_EQ(lengths[3], 17u);
  for (size_t i = 0; i + 1 < lengths.size(); ++i) {
    EXPECT_GT(lengths[i + 1], lengths[i]);
    EXPECT_LT(lengths[i + 1], 2 * lengths[i]);
  }
}

TEST(Tribonacci, FactorAndCommutation) {
  EXPECT_EQ(tribonacci_factor(OrbitWord::parse("164")), "acb");
  EXPECT_EQ(tribonacci_factor(digits("34216")), "abaac");
  std::vector<int> w = digits("164");
  for (int i = 0; i < 11; ++i) {
    std::vector<int> next = substitute_word(w);
    EXPECT_EQ(cyclic_canonical(tribonacci_factor(next)), cyclic_canonical(tribonacci_substitute(tribonacci_factor(w))))
        << "iterate " << i;
    w = next;
  }
  EXPECT_THROW(tribonacci_substitute("abd"), Error);
}

TEST(CrossOracle, OrbitTypesLieOnSubstitutionOrbit) {
  auto ctx = make_context(3);
  std::set<OrbitWord> known{OrbitWord::parse("164")};
  for (const auto& w : substitution_orbit(digits("164"), 12)) known.insert(OrbitWord(w));
  for (int d : {4, 8, 16}) {
    auto comps = periodic_components(ay_rel_iet(ctx, NFElem::alpha_pow(ctx, 3) / Rational(d)));
    NFElem cover(ctx);
    for (const auto& c : comps) cover += c.hi - c.lo;
    EXPECT_EQ(cover, NFElem(ctx, Rational(1)));
    for (const auto& t : orbit_types(comps)) EXPECT_TRUE(known.count(t)) << "r = a^3/" << d << ": " << t.str();
  }
}

TEST(Emit, SvgTriangle) {
  LatticePath p{{{0, 0}, {1, 0}, {1, 1}, {0, 0}}, true, 3};
  std::string svg = emit_path(p, PathFormat::Svg);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  auto a = svg.find("points=\"");
  ASSERT_NE(a, std::string::npos);
  auto b = svg.find('"', a + 8);
  std::string pts = svg.substr(a + 8, b - a - 8);
  EXPECT_EQ(std::count(pts.begin(), pts.end(), ' ') + 1, 4);
  EXPECT_EQ(pts.substr(0, pts.find(' ')), pts.substr(pts.rfind(' ') + 1));
  EXPECT_NE(pts.find("1.500000,-0.866025"), std::string::npos);
  EXPECT_EQ(svg, emit_path(p, PathFormat::Svg));
  EXPECT_THROW(emit_path(LatticePath{}, PathFormat::Svg), Error);
  EXPECT_THROW(emit_path(LatticePath{}, PathFormat::Json), Error);
}

TEST(Emit, JsonRoundTrip) {
  LatticePath p{{{0, 0}, {1, 0}, {0, -1}, {-1, -1}}, false, 3};
  auto q = path_from_json(nlohmann::json::parse(emit_path(p, PathFormat::Json)));
  EXPECT_EQ(q.points, p.points);
  EXPECT_EQ(q.closed, p.closed);
  EXPECT_EQ(q.steps, p.steps);
  EXPECT_THROW(path_from_json(nlohmann::json::parse(R"({"pts": []})")), Error);
}
