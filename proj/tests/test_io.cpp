#include <gtest/gtest.h>

#include <sstream>

#include "ayrel/io.hpp"

using namespace ayrel;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

size_t commas_outside_quotes(const std::string& l) {
  size_t n = 0;
  bool q = false;
  for (char c : l) {
    if (c == '"') q = !q;
    else if (c == ',' && !q) ++n;
  }
  return n;
}

}  // namespace

TEST(Json, IetRoundTrip) {
  for (int g = 2; g <= 4; ++g) {
    auto ctx = make_context(g);
    CircleIET f = ay_iet(ctx);
    Json j = Json::parse(to_json(f).dump());
    EXPECT_EQ(iet_from_json(ctx, j), f);
  }
  auto ctx = make_context(3);
  CircleIET r = ay_rel_iet(ctx, NFElem::alpha_pow(ctx, 3) / Rational(8));
  EXPECT_EQ(iet_from_json(ctx, to_json(r)), r);
  EXPECT_THROW(iet_from_json(ctx, Json::parse(R"({"breakpoints": [1]})")), Error);
}

TEST(Json, SurfaceRoundTrip) {
  auto ctx = make_context(3);
  const NFElem t = ay_beta(ctx) + NFElem::alpha(ctx) * Rational(2, 7);
  RectSurface x = build_x(ctx, t);
  RectSurface y = surface_from_json(ctx, Json::parse(to_json(x).dump()));
  ASSERT_EQ(y.rects.size(), x.rects.size());
  EXPECT_EQ(y.v.size(), x.v.size());
  EXPECT_EQ(y.h.size(), x.h.size());
  EXPECT_EQ(y.marks.size(), x.marks.size());
  EXPECT_NO_THROW(validate(y));
  EXPECT_EQ(y.area(), x.area());
  EXPECT_TRUE(canonical_form(y) == canonical_form(x));
}

TEST(Json, SurfaceErrors) {
  auto ctx = make_context(3);
  Json j = to_json(build_q0(ctx));
  EXPECT_THROW(surface_from_json(make_context(4), j), Error);
  Json bad = j;
  bad["rects"][0]["w"] = "a +";
  try {
    surface_from_json(ctx, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
  bad = j;
  bad.erase("v_gluings");
  EXPECT_THROW(surface_from_json(ctx, bad), Error);
}

TEST(Json, LabelNamesAccepted) {
  auto ctx = make_context(2);
  Json j = to_json(build_q0(ctx));
  Json named = Json::object();
  for (const auto& [k, v] : j["labels"].items()) named[k == "•" ? "filled" : "hollow"] = v;
  j["labels"] = named;
  RectSurface s = surface_from_json(ctx, j);
  EXPECT_TRUE(canonical_form(s) == canonical_form(build_q0(ctx)));
}

TEST(Json, DecompRoundTrip) {
  for (int g = 2; g <= 4; ++g) {
    auto ctx = make_context(g);
    auto d = horizontal_cylinders(build_x(ctx, ay_beta(ctx) / NFElem::alpha(ctx) + NFElem(ctx, Rational(1, 5))));
    auto e = decomp_from_json(ctx, Json::parse(to_json(d).dump()));
    EXPECT_EQ(e.cylinders, d.cylinders);
  }
}

TEST(Csv, DecompTable) {
  auto ctx = make_context(3);
  auto d = horizontal_cylinders(build_x(ctx, ay_beta(ctx) + NFElem::alpha(ctx) / Rational(2)));
  auto ls = lines(to_csv(d));
  ASSERT_EQ(ls.size(), d.cylinders.size() + 1);
  EXPECT_EQ(ls[0], "index,circumference,height,top_word,bottom_word,twist");
  for (const auto& l : ls) EXPECT_EQ(commas_outside_quotes(l), 5u) << l;
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
  EXPECT_EQ(csv_field("plain"), "plain");
}

TEST(Csv, FamilyMatchesClosedForm) {
  auto ctx = make_context(3);
  const NFElem beta = ay_beta(ctx), a = NFElem::alpha(ctx);
  const int steps = 6;
  auto ls = lines(family_csv(ctx, beta, beta / a, steps));
  ASSERT_EQ(ls.size(), static_cast<size_t>(steps + 2));
  const size_t cols = commas_outside_quotes(ls[0]);
  EXPECT_EQ(cols, 3u + 4u * 4u);
  for (const auto& l : ls) EXPECT_EQ(commas_outside_quotes(l), cols) << l;
  // Interior rows have four cylinders: 1, a, a^2, a^3.
  EXPECT_NE(ls[3].find(",a^2,"), std::string::npos);
  EXPECT_EQ(ls[1].substr(0, ls[1].find(',')), to_literal(beta));
  EXPECT_THROW(family_csv(ctx, beta, beta, 0), Error);
  EXPECT_THROW(family_csv(ctx, NFElem(ctx), beta, 3), Error);
}

TEST(Csv, DecimalRendering) {
  auto ctx = make_context(3);
  EXPECT_EQ(decimal(NFElem::alpha(ctx), 6).substr(0, 8), "0.543689");
  EXPECT_EQ(decimal(NFElem(ctx, Rational(-1, 4)), 3), "-0.250");
}
