#pragma once

// Translation surfaces presented as finitely many axis-parallel rectangles
// with exact edge gluings.
//
// Gluing coordinates are local to each rectangle (origin at its bottom-left
// corner). A vertical gluing identifies part of the right side of `left` with
// part of the left side of `right`; its two local heights must agree, so every
// horizontal leaf is closed. Rect::x0/y0 are layout coordinates only.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ayrel/errors.hpp"
#include "ayrel/iet.hpp"
#include "ayrel/qalpha.hpp"

namespace ayrel {

enum class Label { None, Filled, Hollow };

inline const char* to_string(Label l) {
  switch (l) {
    case Label::Filled: return "•";
    case Label::Hollow: return "∘";
    case Label::None: break;
  }
  return "-";
}

inline Label parse_label(const std::string& s) {
  if (s == "•" || s == "filled" || s == "bullet") return Label::Filled;
  if (s == "∘" || s == "hollow" || s == "circ") return Label::Hollow;
  if (s == "-" || s == "none") return Label::None;
  throw Error(ErrorKind::ParseError, "unknown singularity label \"" + s + "\"");
}

struct Rect {
  NFElem x0, y0, w, h;
};

struct VGluing {
  int left, right;
  NFElem y_left, y_right, len;
};

struct HGluing {
  int below, above;
  NFElem x_below, x_above, len;
};

/// A labeled vertex, given by one of its boundary representatives.
struct Mark {
  int rect;
  NFElem x, y;
  Label label;
};

struct RectSurface {
  Context ctx;
  std::vector<Rect> rects;
  std::vector<VGluing> v;
  std::vector<HGluing> h;
  std::vector<Mark> marks;

  NFElem area() const {
    NFElem a(ctx);
    for (const auto& r : rects) a += r.w * r.h;
    return a;
  }
};

// ---------------------------------------------------------------------------
// Refined cell complex: vertices at all gluing-segment endpoints.

enum class Occ { BL, BR, TR, TL, B, T, L, R };

struct Occurrence {
  int rect;
  Occ kind;
  NFElem coord;  // x for B/T, y for L/R; zero for corners
};

struct Complex {
  std::vector<Occurrence> occ;
  std::vector<int> next;       // counter-clockwise successor around the vertex
  std::vector<int> vertex_of;  // occurrence -> vertex
  std::vector<std::vector<int>> cycles;
  std::vector<int> quarters;   // total angle of each vertex, in quarter turns
  std::vector<Label> labels;   // per vertex
  std::vector<std::vector<int>> by_rect_kind;
  int edges = 0;

  int find(int rect, Occ kind, const NFElem& coord) const {
    for (int i : by_rect_kind[static_cast<size_t>(rect) * 8 + static_cast<size_t>(kind)])
      if (kind <= Occ::TL || occ[static_cast<size_t>(i)].coord == coord) return i;
    return -1;
  }

  bool singular(int vertex) const {
    return quarters[static_cast<size_t>(vertex)] != 4 || labels[static_cast<size_t>(vertex)] != Label::None;
  }
};

namespace detail {

inline int quarter_of(Occ k) { return k <= Occ::TL ? 1 : 2; }

/// Occurrence kind and coordinate for a boundary point of rect r.
inline std::pair<Occ, NFElem> classify_point(const RectSurface& s, int r, const NFElem& x, const NFElem& y) {
  const Rect& R = s.rects[static_cast<size_t>(r)];
  const NFElem zero(s.ctx);
  bool x0 = x.is_zero(), xw = x == R.w, y0 = y.is_zero(), yh = y == R.h;
  if (x0 && y0) return {Occ::BL, zero};
  if (xw && y0) return {Occ::BR, zero};
  if (xw && yh) return {Occ::TR, zero};
  if (x0 && yh) return {Occ::TL, zero};
  if (y0) return {Occ::B, x};
  if (yh) return {Occ::T, x};
  if (x0) return {Occ::L, y};
  if (xw) return {Occ::R, y};
  throw Error(ErrorKind::InvalidSurface, "point is not on the boundary of rect " + std::to_string(r));
}

inline std::pair<NFElem, NFElem> occurrence_point(const RectSurface& s, const Occurrence& o) {
  const Rect& R = s.rects[static_cast<size_t>(o.rect)];
  const NFElem z(s.ctx);
  switch (o.kind) {
    case Occ::BL: return {z, z};
    case Occ::BR: return {R.w, z};
    case Occ::TR: return {R.w, R.h};
    case Occ::TL: return {z, R.h};
    case Occ::B: return {o.coord, z};
    case Occ::T: return {o.coord, R.h};
    case Occ::L: return {z, o.coord};
    case Occ::R: return {R.w, o.coord};
  }
  return {z, z};
}

}  // namespace detail

struct ValidationReport {
  bool ok = true;
  std::string message;
};

/// Checks that every side is partitioned exactly by gluing segments, that
/// lengths are positive, and that vertical gluings have zero vertical offset.
inline ValidationReport validate_structure(const RectSurface& s) {
  const size_t n = s.rects.size();
  auto fail = [](std::string m) { return ValidationReport{false, std::move(m)}; };
  if (n == 0) return fail("surface has no rectangles");
  // side index: rect*4 + {0 bottom, 1 right, 2 top, 3 left}
  std::vector<std::vector<std::pair<NFElem, NFElem>>> sides(4 * n);
  for (size_t i = 0; i < n; ++i)
    if (s.rects[i].w.sign() <= 0 || s.rects[i].h.sign() <= 0) return fail("rect " + std::to_string(i) + " has nonpositive size");
  auto in_range = [&](int r) { return r >= 0 && static_cast<size_t>(r) < n; };
  for (const auto& g : s.v) {
    if (!in_range(g.left) || !in_range(g.right)) return fail("vertical gluing references a missing rect");
    if (g.len.sign() <= 0) return fail("vertical gluing with nonpositive length");
    if (!(g.y_left == g.y_right))
      return fail("nonzero vertical offset between rects " + std::to_string(g.left) + " and " + std::to_string(g.right));
    sides[static_cast<size_t>(g.left) * 4 + 1].push_back({g.y_left, g.y_left + g.len});
    sides[static_cast<size_t>(g.right) * 4 + 3].push_back({g.y_right, g.y_right + g.len});
  }
  for (const auto& g : s.h) {
    if (!in_range(g.below) || !in_range(g.above)) return fail("horizontal gluing references a missing rect");
    if (g.len.sign() <= 0) return fail("horizontal gluing with nonpositive length");
    sides[static_cast<size_t>(g.below) * 4 + 2].push_back({g.x_below, g.x_below + g.len});
    sides[static_cast<size_t>(g.above) * 4 + 0].push_back({g.x_above, g.x_above + g.len});
  }
  static const char* names[] = {"bottom", "right", "top", "left"};
  for (size_t i = 0; i < n; ++i) {
    for (int side = 0; side < 4; ++side) {
      auto segs = sides[i * 4 + static_cast<size_t>(side)];
      std::sort(segs.begin(), segs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      NFElem at(s.ctx);
      const NFElem& full = side % 2 == 0 ? s.rects[i].w : s.rects[i].h;
      for (const auto& [lo, hi] : segs) {
        if (lo < at) return fail(std::string(names[side]) + " of rect " + std::to_string(i) + " is glued twice");
        if (at < lo) return fail(std::string(names[side]) + " of rect " + std::to_string(i) + " has an unglued segment");
        at = hi;
      }
      if (!(at == full)) return fail(std::string(names[side]) + " of rect " + std::to_string(i) + " is not fully glued");
    }
  }
  return {};
}

inline Complex build_complex(const RectSurface& s) {
  {
    auto rep = validate_structure(s);
    if (!rep.ok) throw Error(ErrorKind::InvalidSurface, rep.message);
  }
  Complex cx;
  const size_t n = s.rects.size();
  cx.by_rect_kind.assign(n * 8, {});
  auto add = [&](int r, Occ k, const NFElem& c) {
    cx.by_rect_kind[static_cast<size_t>(r) * 8 + static_cast<size_t>(k)].push_back(static_cast<int>(cx.occ.size()));
    cx.occ.push_back({r, k, c});
  };
  std::vector<std::vector<NFElem>> pts(4 * n);
  auto note = [&](size_t idx, const NFElem& a) {
    for (const auto& p : pts[idx])
      if (p == a) return;
    pts[idx].push_back(a);
  };
  for (const auto& g : s.v) {
    note(static_cast<size_t>(g.left) * 4 + 1, g.y_left);
    note(static_cast<size_t>(g.left) * 4 + 1, g.y_left + g.len);
    note(static_cast<size_t>(g.right) * 4 + 3, g.y_right);
    note(static_cast<size_t>(g.right) * 4 + 3, g.y_right + g.len);
  }
  for (const auto& g : s.h) {
    note(static_cast<size_t>(g.below) * 4 + 2, g.x_below);
    note(static_cast<size_t>(g.below) * 4 + 2, g.x_below + g.len);
    note(static_cast<size_t>(g.above) * 4 + 0, g.x_above);
    note(static_cast<size_t>(g.above) * 4 + 0, g.x_above + g.len);
  }
  cx.edges = static_cast<int>(s.v.size() + s.h.size());
  for (size_t i = 0; i < n; ++i) {
    const int r = static_cast<int>(i);
    const NFElem z(s.ctx);
    for (Occ k : {Occ::BL, Occ::BR, Occ::TR, Occ::TL}) add(r, k, z);
    const Rect& R = s.rects[i];
    for (const auto& p : pts[i * 4 + 0])
      if (!p.is_zero() && !(p == R.w)) add(r, Occ::B, p);
    for (const auto& p : pts[i * 4 + 2])
      if (!p.is_zero() && !(p == R.w)) add(r, Occ::T, p);
    for (const auto& p : pts[i * 4 + 3])
      if (!p.is_zero() && !(p == R.h)) add(r, Occ::L, p);
    for (const auto& p : pts[i * 4 + 1])
      if (!p.is_zero() && !(p == R.h)) add(r, Occ::R, p);
  }

  // Landing occurrences after crossing an edge.
  auto land_right_side = [&](int r, const NFElem& y) {  // on r's right side, sweeping into r from the north
    return y.is_zero() ? cx.find(r, Occ::BR, y) : cx.find(r, Occ::R, y);
  };
  auto land_top_side = [&](int r, const NFElem& x) {
    return x == s.rects[static_cast<size_t>(r)].w ? cx.find(r, Occ::TR, x) : cx.find(r, Occ::T, x);
  };
  auto land_left_side = [&](int r, const NFElem& y) {
    return y == s.rects[static_cast<size_t>(r)].h ? cx.find(r, Occ::TL, y) : cx.find(r, Occ::L, y);
  };
  auto land_bottom_side = [&](int r, const NFElem& x) {
    return x.is_zero() ? cx.find(r, Occ::BL, x) : cx.find(r, Occ::B, x);
  };
  auto left_seg_from = [&](int r, const NFElem& y) -> const VGluing& {
    for (const auto& g : s.v)
      if (g.right == r && g.y_right == y) return g;
    throw Error(ErrorKind::InternalError, "missing left-side segment");
  };
  auto right_seg_to = [&](int r, const NFElem& y) -> const VGluing& {
    for (const auto& g : s.v)
      if (g.left == r && g.y_left + g.len == y) return g;
    throw Error(ErrorKind::InternalError, "missing right-side segment");
  };
  auto top_seg_from = [&](int r, const NFElem& x) -> const HGluing& {
    for (const auto& g : s.h)
      if (g.below == r && g.x_below == x) return g;
    throw Error(ErrorKind::InternalError, "missing top segment");
  };
  auto bottom_seg_to = [&](int r, const NFElem& x) -> const HGluing& {
    for (const auto& g : s.h)
      if (g.above == r && g.x_above + g.len == x) return g;
    throw Error(ErrorKind::InternalError, "missing bottom segment");
  };

  cx.next.assign(cx.occ.size(), -1);
  for (size_t i = 0; i < cx.occ.size(); ++i) {
    const Occurrence& o = cx.occ[i];
    const Rect& R = s.rects[static_cast<size_t>(o.rect)];
    int nx = -1;
    switch (o.kind) {
      case Occ::BL: {
        const auto& g = left_seg_from(o.rect, NFElem(s.ctx));
        nx = land_right_side(g.left, g.y_left);
        break;
      }
      case Occ::L: {
        const auto& g = left_seg_from(o.rect, o.coord);
        nx = land_right_side(g.left, g.y_left);
        break;
      }
      case Occ::BR: {
        const auto& g = bottom_seg_to(o.rect, R.w);
        nx = land_top_side(g.below, g.x_below + g.len);
        break;
      }
      case Occ::B: {
        const auto& g = bottom_seg_to(o.rect, o.coord);
        nx = land_top_side(g.below, g.x_below + g.len);
        break;
      }
      case Occ::TR: {
        const auto& g = right_seg_to(o.rect, R.h);
        nx = land_left_side(g.right, g.y_right + g.len);
        break;
      }
      case Occ::R: {
        const auto& g = right_seg_to(o.rect, o.coord);
        nx = land_left_side(g.right, g.y_right + g.len);
        break;
      }
      case Occ::TL: {
        const auto& g = top_seg_from(o.rect, NFElem(s.ctx));
        nx = land_bottom_side(g.above, g.x_above);
        break;
      }
      case Occ::T: {
        const auto& g = top_seg_from(o.rect, o.coord);
        nx = land_bottom_side(g.above, g.x_above);
        break;
      }
    }
    if (nx < 0) throw Error(ErrorKind::InternalError, "corner traversal landed off the vertex set");
    cx.next[i] = nx;
  }

  cx.vertex_of.assign(cx.occ.size(), -1);
  for (size_t i = 0; i < cx.occ.size(); ++i) {
    if (cx.vertex_of[i] >= 0) continue;
    const int v = static_cast<int>(cx.cycles.size());
    cx.cycles.emplace_back();
    int q = 0;
    for (int j = static_cast<int>(i); cx.vertex_of[static_cast<size_t>(j)] < 0; j = cx.next[static_cast<size_t>(j)]) {
      cx.vertex_of[static_cast<size_t>(j)] = v;
      cx.cycles.back().push_back(j);
      q += detail::quarter_of(cx.occ[static_cast<size_t>(j)].kind);
    }
    cx.quarters.push_back(q);
  }
  cx.labels.assign(cx.cycles.size(), Label::None);
  for (const auto& m : s.marks) {
    auto [k, c] = detail::classify_point(s, m.rect, m.x, m.y);
    int o = cx.find(m.rect, k, c);
    if (o < 0) throw Error(ErrorKind::InvalidSurface, "labeled point is not a vertex");
    Label& l = cx.labels[static_cast<size_t>(cx.vertex_of[static_cast<size_t>(o)])];
    if (l != Label::None && l != m.label) throw Error(ErrorKind::InvalidSurface, "vertex carries two labels");
    l = m.label;
  }
  return cx;
}

struct ConePoint {
  Label label;
  int quarter_turns;  // cone angle in units of pi/2
  int rect;
  NFElem x, y;        // one representative
};

struct ConeData {
  std::vector<ConePoint> cones;
  int genus = 0;
  int euler_characteristic = 0;
  int vertices = 0, edges = 0, faces = 0;
  NFElem area;
};

inline ConeData cone_data(const RectSurface& s) {
  Complex cx = build_complex(s);
  ConeData d;
  d.vertices = static_cast<int>(cx.cycles.size());
  d.edges = cx.edges;
  d.faces = static_cast<int>(s.rects.size());
  d.euler_characteristic = d.vertices - d.edges + d.faces;
  if (d.euler_characteristic > 2 || d.euler_characteristic % 2 != 0)
    throw Error(ErrorKind::InvalidSurface, "Euler characteristic " + std::to_string(d.euler_characteristic) + " is not that of a closed surface");
  d.genus = (2 - d.euler_characteristic) / 2;
  int excess = 0;
  for (size_t v = 0; v < cx.cycles.size(); ++v) {
    excess += cx.quarters[v] - 4;
    if (!cx.singular(static_cast<int>(v))) continue;
    const auto& o = cx.occ[static_cast<size_t>(cx.cycles[v].front())];
    auto [x, y] = detail::occurrence_point(s, o);
    d.cones.push_back({cx.labels[v], cx.quarters[v], o.rect, x, y});
  }
  if (excess != -4 * d.euler_characteristic) throw Error(ErrorKind::InvalidSurface, "Gauss-Bonnet check failed");
  d.area = s.area();
  return d;
}

inline ValidationReport validate(const RectSurface& s) {
  auto rep = validate_structure(s);
  if (!rep.ok) return rep;
  try {
    cone_data(s);
  } catch (const Error& e) {
    return {false, e.what()};
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Cutting.

namespace detail {

using CutHook = std::function<void(int old_rect, int new_rect, bool horizontal, const NFElem& at)>;

/// Cuts rect r at local height c; the upper part becomes a new rect, whose index is returned.
inline int cut_h(RectSurface& s, int r, const NFElem& c, const CutHook& hook = {}) {
  const size_t ri = static_cast<size_t>(r);
  Rect up{s.rects[ri].x0, s.rects[ri].y0 + c, s.rects[ri].w, s.rects[ri].h - c};
  const int n = static_cast<int>(s.rects.size());
  s.rects.push_back(up);
  s.rects[ri].h = c;

  auto split_side = [&](std::vector<VGluing>& in, bool left_side) {
    std::vector<VGluing> out;
    for (auto g : in) {
      int& rect = left_side ? g.left : g.right;
      NFElem& y = left_side ? g.y_left : g.y_right;
      NFElem& other = left_side ? g.y_right : g.y_left;
      if (rect != r || y + g.len <= c) {
        out.push_back(g);
      } else if (y >= c) {
        rect = n;
        y -= c;
        out.push_back(g);
      } else {
        VGluing lower = g, upper = g;
        lower.len = c - y;
        NFElem& uy = left_side ? upper.y_left : upper.y_right;
        NFElem& uo = left_side ? upper.y_right : upper.y_left;
        (left_side ? upper.left : upper.right) = n;
        uy = NFElem(s.ctx);
        uo = other + lower.len;
        upper.len = g.len - lower.len;
        out.push_back(lower);
        out.push_back(upper);
      }
    }
    in = std::move(out);
  };
  split_side(s.v, true);
  split_side(s.v, false);
  for (auto& g : s.h)
    if (g.below == r) g.below = n;
  s.h.push_back({r, n, NFElem(s.ctx), NFElem(s.ctx), up.w});
  for (auto& m : s.marks)
    if (m.rect == r && m.y > c) {
      m.rect = n;
      m.y -= c;
    }
  if (hook) hook(r, n, true, c);
  return n;
}

/// Cuts rect r at local abscissa c; the right part becomes a new rect.
inline int cut_v(RectSurface& s, int r, const NFElem& c, const CutHook& hook = {}) {
  const size_t ri = static_cast<size_t>(r);
  Rect right{s.rects[ri].x0 + c, s.rects[ri].y0, s.rects[ri].w - c, s.rects[ri].h};
  const int n = static_cast<int>(s.rects.size());
  s.rects.push_back(right);
  s.rects[ri].w = c;

  auto split_side = [&](bool top_of_r) {
    std::vector<HGluing> out;
    for (auto g : s.h) {
      int& rect = top_of_r ? g.below : g.above;
      NFElem& x = top_of_r ? g.x_below : g.x_above;
      NFElem& other = top_of_r ? g.x_above : g.x_below;
      if (rect != r || x + g.len <= c) {
        out.push_back(g);
      } else if (x >= c) {
        rect = n;
        x -= c;
        out.push_back(g);
      } else {
        HGluing a = g, b = g;
        a.len = c - x;
        (top_of_r ? b.below : b.above) = n;
        (top_of_r ? b.x_below : b.x_above) = NFElem(s.ctx);
        (top_of_r ? b.x_above : b.x_below) = other + a.len;
        b.len = g.len - a.len;
        out.push_back(a);
        out.push_back(b);
      }
    }
    s.h = std::move(out);
  };
  split_side(true);
  split_side(false);
  for (auto& g : s.v)
    if (g.left == r) g.left = n;
  s.v.push_back({r, n, NFElem(s.ctx), NFElem(s.ctx), right.h});
  for (auto& m : s.marks)
    if (m.rect == r && m.x > c) {
      m.rect = n;
      m.x -= c;
    }
  if (hook) hook(r, n, false, c);
  return n;
}

/// Restores zero vertical offsets after cuts by cutting across the leaves.
inline void fix_offsets(RectSurface& s, const CutHook& hook = {}) {
  for (;;) {
    bool changed = false;
    for (size_t i = 0; i < s.v.size(); ++i) {
      const VGluing g = s.v[i];
      if (g.y_left == g.y_right) continue;
      if (g.y_left < g.y_right) cut_h(s, g.right, g.y_right - g.y_left, hook);
      else cut_h(s, g.left, g.y_left - g.y_right, hook);
      changed = true;
      break;
    }
    if (!changed) return;
  }
}

/// Cuts along the whole closed horizontal leaf at local height c of rect r.
inline void cut_leaf(RectSurface& s, int r, const NFElem& c, const CutHook& hook = {}) {
  cut_h(s, r, c, hook);
  fix_offsets(s, hook);
}

/// Walks the horizontal leaf at local height y starting in rect r (0 < y < h)
/// and reports whether it passes through a singular vertex.
inline bool leaf_hits_singular(const RectSurface& s, const Complex& cx, int r, const NFElem& y) {
  int cur = r;
  for (size_t steps = 0; steps <= s.rects.size() + 1; ++steps) {
    int o = cx.find(cur, Occ::R, y);
    if (o >= 0 && cx.singular(cx.vertex_of[static_cast<size_t>(o)])) return true;
    const VGluing* nxt = nullptr;
    for (const auto& g : s.v)
      if (g.left == cur && g.y_left <= y && y < g.y_left + g.len) nxt = &g;
    if (!nxt) throw Error(ErrorKind::InternalError, "horizontal leaf leaves the surface");
    cur = nxt->right;
    if (cur == r) return false;
  }
  throw Error(ErrorKind::InternalError, "horizontal leaf did not close");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Diagonal action.

/// diag(a, 1/a): horizontal data scaled by a, vertical by 1/a.
inline RectSurface apply_diag(const RectSurface& s, const NFElem& a) {
  if (a.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "diagonal factor must be positive");
  const NFElem b = a.inverse();
  RectSurface out = s;
  for (auto& r : out.rects) {
    r.x0 *= a;
    r.w *= a;
    r.y0 *= b;
    r.h *= b;
  }
  for (auto& g : out.v) {
    g.y_left *= b;
    g.y_right *= b;
    g.len *= b;
  }
  for (auto& g : out.h) {
    g.x_below *= a;
    g.x_above *= a;
    g.len *= a;
  }
  for (auto& m : out.marks) {
    m.x *= a;
    m.y *= b;
  }
  return out;
}

// ---------------------------------------------------------------------------
// The suspension q0.

inline RectSurface build_q0(const Context& ctx) {
  const int g = ctx->degree();
  const NFElem a = NFElem::alpha(ctx);
  const auto part = ay_partition(ctx);  // 0, a, a+a^2, ..., 1
  RectSurface s;
  s.ctx = ctx;
  const NFElem zero(ctx), one(ctx, Rational(1));
  s.rects.push_back({zero, zero, one, a});
  for (int k = 1; k < g; ++k) {
    NFElem h(ctx);
    for (int j = 2; j <= g - k + 1; ++j) h += NFElem::alpha_pow(ctx, j);
    s.rects.push_back({part[static_cast<size_t>(k - 1)], a, NFElem::alpha_pow(ctx, k), h});
  }
  for (int k = 0; k < g; ++k) s.v.push_back({k, k, zero, zero, s.rects[static_cast<size_t>(k)].h});
  for (int k = 1; k < g; ++k) s.h.push_back({0, k, part[static_cast<size_t>(k - 1)], zero, NFElem::alpha_pow(ctx, k)});

  // Remaining tops: (x, top) ~ (IE(x), 0) on the bottom of R_0.
  const CircleIET ie = ay_iet(ctx).normalized();
  auto glue_top = [&](int rect, const NFElem& lo, const NFElem& hi) {
    for (size_t i = 0; i < ie.size(); ++i) {
      NFElem plo = ie.breakpoints()[i], phi = ie.piece_end(i);
      NFElem u = plo < lo ? lo : plo, v = phi < hi ? phi : hi;
      if (u < v) s.h.push_back({rect, 0, u - s.rects[static_cast<size_t>(rect)].x0, u + ie.shift(i), v - u});
    }
  };
  for (int k = 1; k < g; ++k) glue_top(k, part[static_cast<size_t>(k - 1)], part[static_cast<size_t>(k)]);
  glue_top(0, part[static_cast<size_t>(g - 1)], one);

  s.marks.push_back({0, zero, a, Label::Filled});
  s.marks.push_back({0, part[static_cast<size_t>(g - 1)] + NFElem::alpha_pow(ctx, g) / Rational(2), a, Label::Hollow});
  return s;
}

/// Named edge lengths of the classical seven-interval presentation for g = 3.
inline std::map<std::string, NFElem> genus3_edge_lengths(const Context& ctx) {
  if (ctx->degree() != 3) throw Error(ErrorKind::InvalidGenus, "labelled edge lengths are defined for g = 3");
  NFElem a = NFElem::alpha(ctx), a2 = a * a, a3 = a2 * a, a4 = a3 * a;
  Rational h(1, 2);
  return {{"1", (Rational(1) - a) * h}, {"2", a - h},          {"3", a * h},  {"4", a2 * h}, {"5", a3 * h},
          {"A", a},                     {"B", (a + a3) * h},   {"C", a2},     {"D", (a2 + a4) * h},
          {"E", a3},                    {"F", a2 + a3}};
}

// ---------------------------------------------------------------------------
// Slit construction.

/// Downward prongs of the vertex labeled Filled, in counter-clockwise order,
/// as (rect, x, y) tops of the prospective slits.
struct Prong {
  int rect;
  NFElem x, y;
};

inline std::vector<Prong> filled_prongs(const RectSurface& s, const Complex& cx) {
  int v = -1;
  for (size_t i = 0; i < cx.labels.size(); ++i)
    if (cx.labels[i] == Label::Filled) v = static_cast<int>(i);
  if (v < 0) throw Error(ErrorKind::InvalidSurface, "no vertex labeled •");
  std::vector<Prong> out;
  for (int o : cx.cycles[static_cast<size_t>(v)]) {
    const Occurrence& oc = cx.occ[static_cast<size_t>(o)];
    const Rect& R = s.rects[static_cast<size_t>(oc.rect)];
    if (oc.kind == Occ::T) out.push_back({oc.rect, oc.coord, R.h});
    else if (oc.kind == Occ::TR) out.push_back({oc.rect, R.w, R.h});
    else if (oc.kind == Occ::R) out.push_back({oc.rect, R.w, oc.coord});
  }
  return out;
}

/// Cuts a vertical slit of length s below every downward prong of the Filled
/// vertex and reglues consecutive banks, moving that vertex down by s.
inline RectSurface slit_rel(const RectSurface& surf, const NFElem& s) {
  if (s.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "slit length must be positive");
  const ConeData before = cone_data(surf);
  Complex cx = build_complex(surf);
  std::vector<Prong> prongs = filled_prongs(surf, cx);
  int filled_quarters = 0;
  for (size_t i = 0; i < cx.labels.size(); ++i)
    if (cx.labels[i] == Label::Filled) filled_quarters = cx.quarters[i];
  if (static_cast<int>(prongs.size()) * 4 != filled_quarters)
    throw Error(ErrorKind::InternalError, "prong count does not match the cone angle");

  struct Slit {
    int rect;
    NFElem x, bot, top;
  };
  std::vector<Slit> slits;
  for (const auto& p : prongs) {
    if (!(s < p.y)) throw Error(ErrorKind::SlitCrossesSingularLevel, "slit of length " + to_literal(s) + " leaves its rectangle");
    NFElem bot = p.y - s;
    if (detail::leaf_hits_singular(surf, cx, p.rect, bot))
      throw Error(ErrorKind::SlitCrossesSingularLevel, "slit bottom lies on a singular horizontal leaf");
    if (p.x == surf.rects[static_cast<size_t>(p.rect)].w) {
      for (size_t i = 0; i < cx.occ.size(); ++i) {
        const auto& o = cx.occ[i];
        if (o.rect == p.rect && o.kind == Occ::R && bot <= o.coord && o.coord < p.y &&
            cx.singular(cx.vertex_of[i]))
          throw Error(ErrorKind::SlitCrossesSingularLevel, "slit runs into a singular point");
      }
    }
    slits.push_back({p.rect, p.x, bot, p.y});
  }

  RectSurface out = surf;
  detail::CutHook track = [&](int old_r, int new_r, bool horizontal, const NFElem& at) {
    for (auto& sl : slits) {
      if (sl.rect != old_r) continue;
      if (horizontal) {
        if (sl.bot >= at) {
          sl.rect = new_r;
          sl.bot -= at;
          sl.top -= at;
        } else if (at < sl.top) {
          throw Error(ErrorKind::SlitCrossesSingularLevel, "slits start at different heights");
        }
      } else if (sl.x > at) {
        sl.rect = new_r;
        sl.x -= at;
      }
    }
  };
  for (size_t i = 0; i < slits.size(); ++i)
    if (slits[i].bot.sign() > 0) {
      const NFElem at = slits[i].bot;
      detail::cut_leaf(out, slits[i].rect, at, track);
    }
  for (size_t i = 0; i < slits.size(); ++i)
    if (slits[i].x < out.rects[static_cast<size_t>(slits[i].rect)].w) {
      const NFElem at = slits[i].x;
      detail::cut_v(out, slits[i].rect, at, track);
    }

  std::vector<size_t> seg(slits.size());
  for (size_t i = 0; i < slits.size(); ++i) {
    const auto& sl = slits[i];
    bool found = false;
    for (size_t j = 0; j < out.v.size(); ++j) {
      const auto& g = out.v[j];
      if (g.left == sl.rect && g.y_left == sl.bot && g.len == sl.top - sl.bot) {
        seg[i] = j;
        found = true;
      }
    }
    if (!found) throw Error(ErrorKind::SlitCrossesSingularLevel, "slit is not a single gluing segment");
  }
  std::vector<VGluing> reglued;
  const size_t n = slits.size();
  for (size_t i = 0; i < n; ++i) {
    const VGluing& a = out.v[seg[(i + 1) % n]];
    const VGluing& b = out.v[seg[i]];
    reglued.push_back({a.left, b.right, a.y_left, b.y_right, b.len});
  }
  const VGluing first = out.v[seg[0]];
  std::vector<VGluing> kept;
  for (size_t j = 0; j < out.v.size(); ++j)
    if (std::find(seg.begin(), seg.end(), j) == seg.end()) kept.push_back(out.v[j]);
  kept.insert(kept.end(), reglued.begin(), reglued.end());
  out.v = std::move(kept);

  out.marks.erase(std::remove_if(out.marks.begin(), out.marks.end(), [](const Mark& m) { return m.label == Label::Filled; }),
                  out.marks.end());
  out.marks.push_back({first.left, out.rects[static_cast<size_t>(first.left)].w, first.y_left, Label::Filled});

  const ConeData after = cone_data(out);
  if (after.genus != before.genus || !(after.area == before.area) || after.cones.size() != before.cones.size())
    throw Error(ErrorKind::InternalError, "slit surgery changed the topology");
  for (const auto& c : before.cones) {
    bool match = false;
    for (const auto& d : after.cones) match = match || (d.label == c.label && d.quarter_turns == c.quarter_turns);
    if (!match) throw Error(ErrorKind::InternalError, "slit surgery changed a cone angle");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Horizontal cylinders.

struct Saddle {
  NFElem length;
  Label label;  // label of the left endpoint
  friend bool operator==(const Saddle&, const Saddle&) = default;
};

struct Cylinder {
  NFElem circumference, height;
  std::vector<Saddle> top, bottom;  // read left to right, starting at the marked saddle
  NFElem twist;                     // top marker minus bottom marker, mod circumference
  std::vector<std::pair<int, int>> top_partner;  // (cylinder, bottom index) glued to each top saddle
  friend bool operator==(const Cylinder&, const Cylinder&) = default;
};

struct CylinderDecomp {
  Context ctx;
  std::vector<Cylinder> cylinders;  // decreasing circumference
};

inline NFElem mod_positive(const NFElem& x, const NFElem& c) { return x.mod(c); }

inline CylinderDecomp horizontal_cylinders(const RectSurface& surf) {
  RectSurface s = surf;
  {
    // Cut every rectangle at every interior vertex height on its vertical sides.
    for (;;) {
      Complex cx = build_complex(s);
      bool cut = false;
      for (const auto& o : cx.occ) {
        if (o.kind == Occ::L || o.kind == Occ::R) {
          const NFElem at = o.coord;
          detail::cut_leaf(s, o.rect, at);
          cut = true;
          break;
        }
      }
      if (!cut) break;
    }
  }
  Complex cx = build_complex(s);
  const size_t n = s.rects.size();
  std::vector<int> right(n, -1);
  for (const auto& g : s.v) right[static_cast<size_t>(g.left)] = g.right;

  // Annuli: cycles of the right-neighbour permutation.
  struct Annulus {
    std::vector<int> rects;
    std::vector<NFElem> offset;
    NFElem width;
  };
  std::vector<Annulus> ann;
  std::vector<int> ann_of(n, -1);
  std::vector<NFElem> off_of(n);
  for (size_t i = 0; i < n; ++i) {
    if (ann_of[i] >= 0) continue;
    Annulus a{{}, {}, NFElem(s.ctx)};
    for (int r = static_cast<int>(i); ann_of[static_cast<size_t>(r)] < 0; r = right[static_cast<size_t>(r)]) {
      ann_of[static_cast<size_t>(r)] = static_cast<int>(ann.size());
      a.rects.push_back(r);
      a.offset.push_back(a.width);
      off_of[static_cast<size_t>(r)] = a.width;
      a.width += s.rects[static_cast<size_t>(r)].w;
    }
    ann.push_back(std::move(a));
  }

  // Singular points along a boundary: (position, vertex).
  auto boundary_points = [&](const Annulus& a, bool top) {
    std::vector<std::pair<NFElem, int>> pts;
    for (size_t k = 0; k < a.rects.size(); ++k) {
      int r = a.rects[k];
      for (int o : cx.by_rect_kind[static_cast<size_t>(r) * 8 + static_cast<size_t>(top ? Occ::TL : Occ::BL)])
        pts.push_back({a.offset[k], cx.vertex_of[static_cast<size_t>(o)]});
      for (int o : cx.by_rect_kind[static_cast<size_t>(r) * 8 + static_cast<size_t>(top ? Occ::T : Occ::B)])
        pts.push_back({a.offset[k] + cx.occ[static_cast<size_t>(o)].coord, cx.vertex_of[static_cast<size_t>(o)]});
    }
    std::vector<std::pair<NFElem, int>> sing;
    for (auto& p : pts)
      if (cx.singular(p.second)) sing.push_back(p);
    std::sort(sing.begin(), sing.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return sing;
  };

  // Position in the annulus above, for a point on the top of annulus a.
  auto across_top = [&](const Annulus& a, const NFElem& p) -> std::pair<int, NFElem> {
    size_t k = 0;
    while (k + 1 < a.rects.size() && a.offset[k + 1] <= p) ++k;
    NFElem x = p - a.offset[k];
    for (const auto& g : s.h)
      if (g.below == a.rects[k] && g.x_below <= x && x < g.x_below + g.len) {
        NFElem xa = g.x_above + (x - g.x_below);
        return {ann_of[static_cast<size_t>(g.above)], off_of[static_cast<size_t>(g.above)] + xa};
      }
    throw Error(ErrorKind::InternalError, "top boundary point is not glued");
  };

  struct Stack {
    std::vector<int> annuli;
    NFElem shift;  // top-annulus coordinate minus base coordinate
  };
  std::vector<Stack> stacks;
  std::vector<bool> used(ann.size(), false);
  auto build_stack = [&](int base) {
    Stack st{{}, NFElem(s.ctx)};
    int cur = base;
    for (;;) {
      used[static_cast<size_t>(cur)] = true;
      st.annuli.push_back(cur);
      if (!boundary_points(ann[static_cast<size_t>(cur)], true).empty()) break;
      auto [up, pos] = across_top(ann[static_cast<size_t>(cur)], NFElem(s.ctx));
      st.shift = (st.shift + pos).mod(ann[static_cast<size_t>(up)].width);
      if (up == base) break;  // no singular points at all: a closed stack
      cur = up;
    }
    stacks.push_back(st);
  };
  for (size_t i = 0; i < ann.size(); ++i)
    if (!boundary_points(ann[i], false).empty()) build_stack(static_cast<int>(i));
  for (size_t i = 0; i < ann.size(); ++i)
    if (!used[i]) build_stack(static_cast<int>(i));

  auto make_word = [&](const std::vector<std::pair<NFElem, int>>& pts, const NFElem& c) {
    std::vector<Saddle> w;
    for (size_t i = 0; i < pts.size(); ++i) {
      NFElem nxt = i + 1 < pts.size() ? pts[i + 1].first : pts[0].first + c;
      w.push_back({nxt - pts[i].first, cx.labels[static_cast<size_t>(pts[i].second)]});
    }
    return w;
  };

  struct Raw {
    Cylinder cyl;
    std::vector<std::pair<NFElem, int>> top_pts, bottom_pts;  // in base coordinates
    int top_annulus;
    NFElem shift;
  };
  std::vector<Raw> raw;
  std::vector<int> cyl_of_base(ann.size(), -1);
  for (const auto& st : stacks) {
    const Annulus& base = ann[static_cast<size_t>(st.annuli.front())];
    const Annulus& topa = ann[static_cast<size_t>(st.annuli.back())];
    Raw rc;
    rc.cyl.circumference = base.width;
    rc.cyl.height = NFElem(s.ctx);
    for (int a : st.annuli) rc.cyl.height += s.rects[static_cast<size_t>(ann[static_cast<size_t>(a)].rects[0])].h;
    rc.bottom_pts = boundary_points(base, false);
    auto tp = boundary_points(topa, true);
    for (auto& p : tp) p.first = (p.first - st.shift).mod(base.width);
    std::sort(tp.begin(), tp.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    rc.top_pts = tp;
    rc.cyl.bottom = make_word(rc.bottom_pts, base.width);
    rc.cyl.top = make_word(rc.top_pts, base.width);
    NFElem tpos = rc.top_pts.empty() ? NFElem(s.ctx) : rc.top_pts[0].first;
    NFElem bpos = rc.bottom_pts.empty() ? NFElem(s.ctx) : rc.bottom_pts[0].first;
    rc.cyl.twist = (tpos - bpos).mod(base.width);
    rc.top_annulus = st.annuli.back();
    rc.shift = st.shift;
    cyl_of_base[static_cast<size_t>(st.annuli.front())] = static_cast<int>(raw.size());
    raw.push_back(std::move(rc));
  }

  // Order by decreasing circumference (stable on ties).
  std::vector<size_t> order(raw.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return raw[a].cyl.circumference > raw[b].cyl.circumference; });
  std::vector<int> rank(raw.size());
  for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);

  for (auto& rc : raw) {
    const Annulus& topa = ann[static_cast<size_t>(rc.top_annulus)];
    const NFElem& c = rc.cyl.circumference;
    for (size_t i = 0; i < rc.top_pts.size(); ++i) {
      NFElem mid = rc.top_pts[i].first + rc.cyl.top[i].length / Rational(2);
      NFElem in_top = (mid + rc.shift).mod(topa.width);
      auto [up, pos] = across_top(topa, in_top);
      int j = cyl_of_base[static_cast<size_t>(up)];
      if (j < 0) throw Error(ErrorKind::InternalError, "saddle connection does not bound a cylinder bottom");
      const Raw& other = raw[static_cast<size_t>(j)];
      int idx = -1;
      for (size_t b = 0; b < other.bottom_pts.size(); ++b) {
        NFElem d = (pos - other.bottom_pts[b].first).mod(other.cyl.circumference);
        if (d < other.cyl.bottom[b].length) idx = static_cast<int>(b);
      }
      if (idx < 0) throw Error(ErrorKind::InternalError, "saddle partner not found");
      rc.cyl.top_partner.push_back({rank[static_cast<size_t>(j)], idx});
    }
    (void)c;
  }

  CylinderDecomp d{surf.ctx, {}};
  for (size_t i : order) d.cylinders.push_back(raw[i].cyl);

  NFElem total(surf.ctx);
  for (const auto& cy : d.cylinders) {
    total += cy.circumference * cy.height;
    for (const auto* w : {&cy.top, &cy.bottom}) {
      if (w->empty()) continue;
      NFElem sum(surf.ctx);
      for (const auto& sd : *w) sum += sd.length;
      if (!(sum == cy.circumference)) throw Error(ErrorKind::InternalError, "boundary word does not sum to the circumference");
    }
  }
  if (!(total == surf.area())) throw Error(ErrorKind::InternalError, "cylinder areas do not sum to the surface area");
  return d;
}

// ---------------------------------------------------------------------------
// Canonical form.

struct CanonicalSurface {
  std::vector<Cylinder> cylinders;
  friend bool operator==(const CanonicalSurface&, const CanonicalSurface&) = default;
};

namespace detail {

inline bool saddle_less(const Saddle& a, const Saddle& b) {
  if (coeff_less(a.length, b.length)) return true;
  if (coeff_less(b.length, a.length)) return false;
  return static_cast<int>(a.label) < static_cast<int>(b.label);
}

/// Rotations achieving the lexicographically least form.
inline std::vector<size_t> minimal_rotations(const std::vector<Saddle>& w) {
  const size_t n = w.size();
  if (n == 0) return {0};
  auto cmp = [&](size_t a, size_t b) {  // -1, 0, 1
    for (size_t k = 0; k < n; ++k) {
      const Saddle &x = w[(a + k) % n], &y = w[(b + k) % n];
      if (saddle_less(x, y)) return -1;
      if (saddle_less(y, x)) return 1;
    }
    return 0;
  };
  std::vector<size_t> best{0};
  for (size_t r = 1; r < n; ++r) {
    int c = cmp(r, best[0]);
    if (c < 0) best = {r};
    else if (c == 0) best.push_back(r);
  }
  return best;
}

inline NFElem prefix_length(const std::vector<Saddle>& w, size_t k, const Context& ctx) {
  NFElem s(ctx);
  for (size_t i = 0; i < k; ++i) s += w[i].length;
  return s;
}

template <class T>
std::vector<T> rotated(const std::vector<T>& v, size_t k) {
  if (v.empty()) return v;
  std::vector<T> out(v.begin() + static_cast<long>(k), v.end());
  out.insert(out.end(), v.begin(), v.begin() + static_cast<long>(k));
  return out;
}

}  // namespace detail

inline CanonicalSurface canonical_form(const CylinderDecomp& d) {
  const size_t n = d.cylinders.size();
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return d.cylinders[a].circumference > d.cylinders[b].circumference; });
  for (size_t i = 0; i + 1 < n; ++i)
    if (d.cylinders[order[i]].circumference == d.cylinders[order[i + 1]].circumference)
      throw Error(ErrorKind::CanonicalizationAmbiguous,
                  "two cylinders share circumference " + to_literal(d.cylinders[order[i]].circumference));
  std::vector<size_t> rank(n);
  for (size_t i = 0; i < n; ++i) rank[order[i]] = i;

  std::vector<size_t> kb(n), kt(n);
  std::vector<NFElem> tw(n);
  for (size_t i = 0; i < n; ++i) {
    const Cylinder& c = d.cylinders[i];
    std::optional<NFElem> best;
    int ties = 0;
    for (size_t b : detail::minimal_rotations(c.bottom))
      for (size_t t : detail::minimal_rotations(c.top)) {
        NFElem x = (c.twist + detail::prefix_length(c.top, t, d.ctx) - detail::prefix_length(c.bottom, b, d.ctx))
                       .mod(c.circumference);
        if (!best || x < *best) {
          best = x;
          kb[i] = b;
          kt[i] = t;
          ties = 1;
        } else if (x == *best) {
          ++ties;
        }
      }
    if (ties > 1 && !c.top.empty())
      throw Error(ErrorKind::CanonicalizationAmbiguous, "cylinder boundary has a rotational symmetry");
    tw[i] = *best;
  }

  CanonicalSurface out;
  for (size_t i : order) {
    const Cylinder& c = d.cylinders[i];
    Cylinder cc;
    cc.circumference = c.circumference;
    cc.height = c.height;
    cc.twist = tw[i];
    cc.bottom = detail::rotated(c.bottom, kb[i]);
    cc.top = detail::rotated(c.top, kt[i]);
    auto partners = detail::rotated(c.top_partner, c.top_partner.empty() ? 0 : kt[i]);
    for (auto& [cyl, idx] : partners) {
      const size_t j = static_cast<size_t>(cyl);
      // partners refer to positions in d (already rank-ordered by horizontal_cylinders)
      const size_t src = j;
      const size_t m = d.cylinders[src].bottom.size();
      idx = static_cast<int>((static_cast<size_t>(idx) + m - kb[src]) % m);
      cyl = static_cast<int>(rank[src]);
    }
    cc.top_partner = partners;
    out.cylinders.push_back(std::move(cc));
  }
  return out;
}

inline CanonicalSurface canonical_form(const RectSurface& s) { return canonical_form(horizontal_cylinders(s)); }

// ---------------------------------------------------------------------------
// The rel ray.

inline const NFElem beta_of(const Context& ctx) { return ay_beta(ctx); }

struct RayPosition {
  int m;
  NFElem s;
};

/// The unique m with alpha^m t in [beta, beta/alpha), and s = alpha^m t - beta.
inline RayPosition ray_position(const NFElem& t) {
  if (t.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "t must be positive");
  const Context& ctx = t.context();
  const NFElem a = NFElem::alpha(ctx), ainv = a.inverse(), beta = ay_beta(ctx), top = beta * ainv;
  int m = 0;
  NFElem u = t;
  while (u < beta) {
    u *= ainv;
    --m;
  }
  while (u >= top) {
    u *= a;
    ++m;
  }
  return {m, u - beta};
}

inline RectSurface build_x(const Context& ctx, const NFElem& t) {
  RayPosition p = ray_position(t);
  RectSurface q = build_q0(ctx);
  if (p.s.sign() > 0) q = slit_rel(q, p.s);
  return apply_diag(q, NFElem::alpha_pow(ctx, p.m));
}

}  // namespace ayrel
