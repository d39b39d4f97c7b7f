#pragma once

// Closed-form cylinder data along the rel ray, self-similarity, twist
// dynamics and rational-rank dimensions.

#include <optional>
#include <vector>

#include "ayrel/errors.hpp"
#include "ayrel/linalg.hpp"
#include "ayrel/qalpha.hpp"
#include "ayrel/surface.hpp"

namespace ayrel {

struct PredictedCylinder {
  NFElem circumference, height;
  std::optional<Label> top, bottom;  // empty when no label pattern is predicted
};

struct PredictedCylinders {
  int m = 0;
  NFElem s;
  std::vector<PredictedCylinder> cylinders;  // decreasing circumference
};

/// Heights of the g cylinders of q0, in decreasing-circumference order.
inline std::vector<NFElem> q0_heights(const Context& ctx) {
  const int g = ctx->degree();
  std::vector<NFElem> h{NFElem::alpha(ctx)};
  for (int k = 1; k < g; ++k) {
    NFElem x(ctx);
    for (int j = 2; j <= g - k + 1; ++j) x += NFElem::alpha_pow(ctx, j);
    h.push_back(x);
  }
  return h;
}

inline PredictedCylinders predicted_cylinders(const Context& ctx, const NFElem& t) {
  const RayPosition p = ray_position(t);
  const int g = ctx->degree();
  const NFElem am = NFElem::alpha_pow(ctx, p.m), aminus = NFElem::alpha_pow(ctx, -p.m);
  const NFElem a = NFElem::alpha(ctx), beta = ay_beta(ctx);
  PredictedCylinders out{p.m, p.s, {}};
  if (p.s.is_zero()) {
    auto h = q0_heights(ctx);
    for (int k = 0; k < g; ++k)
      out.cylinders.push_back({am * NFElem::alpha_pow(ctx, k), aminus * h[static_cast<size_t>(k)], std::nullopt, std::nullopt});
    return out;
  }
  out.cylinders.push_back({am, aminus * (a - p.s), Label::Filled, Label::Hollow});
  for (int k = 1; k <= g; ++k)
    out.cylinders.push_back({am * NFElem::alpha_pow(ctx, k), aminus * (p.s + beta - NFElem::alpha_pow(ctx, g - k) * beta),
                             Label::Hollow, Label::Filled});
  return out;
}

/// The single label on a boundary word; None for an empty word.
inline Label boundary_label(const std::vector<Saddle>& w) {
  if (w.empty()) return Label::None;
  for (const auto& s : w)
    if (s.label != w.front().label) throw Error(ErrorKind::NotSingleLabel, "boundary component carries several labels");
  return w.front().label;
}

/// Exact comparison of a computed decomposition against the prediction.
inline bool matches_prediction(const PredictedCylinders& p, const CylinderDecomp& d, std::string* why = nullptr) {
  auto fail = [&](std::string m) {
    if (why) *why = std::move(m);
    return false;
  };
  if (p.cylinders.size() != d.cylinders.size())
    return fail("expected " + std::to_string(p.cylinders.size()) + " cylinders, found " + std::to_string(d.cylinders.size()));
  for (size_t i = 0; i < p.cylinders.size(); ++i) {
    const auto& e = p.cylinders[i];
    const auto& c = d.cylinders[i];
    const std::string at = "cylinder " + std::to_string(i) + ": ";
    if (!(e.circumference == c.circumference)) return fail(at + "circumference " + to_literal(c.circumference));
    if (!(e.height == c.height)) return fail(at + "height " + to_literal(c.height) + " vs " + to_literal(e.height));
    if (e.top && *e.top != boundary_label(c.top)) return fail(at + "top label");
    if (e.bottom && *e.bottom != boundary_label(c.bottom)) return fail(at + "bottom label");
  }
  return true;
}

/// x_t built by moving along the rel leaf of a rescaled q0 instead of
/// rescaling a slit q0: slit(diag(a) q, s/a).
inline RectSurface build_x_via_rel(const Context& ctx, const NFElem& t) {
  const RayPosition p = ray_position(t);
  RectSurface q = apply_diag(build_q0(ctx), NFElem::alpha_pow(ctx, p.m));
  if (p.s.sign() > 0) q = slit_rel(q, NFElem::alpha_pow(ctx, -p.m) * p.s);
  return q;
}

inline bool same_surface(const RectSurface& a, const RectSurface& b) { return canonical_form(a) == canonical_form(b); }

/// Checks diag(1/alpha, alpha) x_{t/alpha} == x_t.
inline bool verify_self_similarity(const Context& ctx, const NFElem& t) {
  if (t.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "t must be positive");
  const NFElem a = NFElem::alpha(ctx);
  RectSurface lhs = apply_diag(build_x_via_rel(ctx, t / a), a.inverse());
  return same_surface(lhs, build_x(ctx, t));
}

using TwistVector = std::vector<int>;

inline TwistVector twist_direction(const CylinderDecomp& d) {
  TwistVector w;
  for (const auto& c : d.cylinders) {
    Label top = boundary_label(c.top), bot = boundary_label(c.bottom);
    if (bot == Label::Hollow && top == Label::Filled) w.push_back(-1);
    else if (bot == Label::Filled && top == Label::Hollow) w.push_back(1);
    else w.push_back(0);
  }
  return w;
}

inline CylinderDecomp apply_real_rel(const CylinderDecomp& d, const NFElem& r) {
  TwistVector w = twist_direction(d);
  CylinderDecomp out = d;
  for (size_t i = 0; i < out.cylinders.size(); ++i) {
    auto& c = out.cylinders[i];
    c.twist = (c.twist + r * Rational(w[i])).mod(c.circumference);
  }
  return out;
}

inline int relorbit_dimension(const CylinderDecomp& d) {
  TwistVector w = twist_direction(d);
  std::vector<std::vector<Rational>> vecs;
  for (size_t i = 0; i < w.size(); ++i)
    if (w[i] != 0) vecs.push_back((d.cylinders[i].circumference.inverse() * Rational(w[i])).coeffs());
  return rational_rank(vecs);
}

/// a + b*t, t a formal parameter.
struct RelNum {
  NFElem a;
  Rational b;

  RelNum(NFElem a_, Rational b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}
  static RelNum t(const Context& ctx) { return {NFElem(ctx), Rational(1)}; }

  /// Coordinates in the basis (1, alpha, ..., alpha^(g-1), t).
  std::vector<Rational> coordinates() const {
    auto v = a.coeffs();
    v.push_back(b);
    return v;
  }

  friend RelNum operator+(const RelNum& x, const RelNum& y) { return {x.a + y.a, x.b + y.b}; }
  friend RelNum operator-(const RelNum& x, const RelNum& y) { return {x.a - y.a, x.b - y.b}; }
  friend RelNum operator*(const Rational& q, const RelNum& x) { return {x.a * q, x.b * q}; }
  friend bool operator==(const RelNum& x, const RelNum& y) { return x.a == y.a && x.b == y.b; }
};

/// Heights of the g+1 cylinders of x_t as affine functions of t on the
/// window alpha^m t in [beta, beta/alpha).
inline std::vector<RelNum> family_heights(const Context& ctx, int m = 0) {
  const int g = ctx->degree();
  const NFElem a = NFElem::alpha(ctx), beta = ay_beta(ctx), aminus = NFElem::alpha_pow(ctx, -m);
  std::vector<RelNum> h;
  h.push_back({aminus * (a + beta), Rational(-1)});
  for (int k = 1; k <= g; ++k) h.push_back({aminus * (-(NFElem::alpha_pow(ctx, g - k) * beta)), Rational(1)});
  return h;
}

inline int rel_rank(const std::vector<RelNum>& xs) {
  std::vector<std::vector<Rational>> v;
  for (const auto& x : xs) v.push_back(x.coordinates());
  return rational_rank(v);
}

inline int family_rank_shadow(const Context& ctx, int m = 0) { return rel_rank(family_heights(ctx, m)); }

}  // namespace ayrel
