#pragma once

// JSON and CSV serialization. Field elements are written as exact literals.

#include <sstream>
#include <string>

#include "json.hpp"

#include "ayrel/iet.hpp"
#include "ayrel/qalpha.hpp"
#include "ayrel/rel.hpp"
#include "ayrel/surface.hpp"

namespace ayrel {

using Json = nlohmann::json;

namespace detail {

inline NFElem elem_from(const Context& ctx, const Json& j, const char* key) {
  try {
    return parse_literal(ctx, j.at(key).get<std::string>());
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("field \"") + key + "\": " + e.what());
  }
}

inline int int_from(const Json& j, const char* key) {
  try {
    return j.at(key).get<int>();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace detail

inline Json to_json(const CircleIET& f) {
  Json bps = Json::array(), shifts = Json::array();
  for (size_t i = 0; i < f.size(); ++i) {
    bps.push_back(to_literal(f.breakpoints()[i]));
    shifts.push_back(to_literal(f.shift(i)));
  }
  return {{"g", f.context()->degree()}, {"breakpoints", bps}, {"shifts", shifts}};
}

inline CircleIET iet_from_json(const Context& ctx, const Json& j) {
  std::vector<NFElem> bps, tr;
  try {
    for (const auto& b : j.at("breakpoints")) bps.push_back(parse_literal(ctx, b.get<std::string>()));
    for (const auto& s : j.at("shifts")) tr.push_back(parse_literal(ctx, s.get<std::string>()));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("bad IET JSON: ") + e.what());
  }
  return CircleIET::from_circle_data(ctx, bps, tr);
}

inline Json to_json(const RectSurface& s) {
  Json rects = Json::array(), v = Json::array(), h = Json::array(), labels = Json::object();
  for (size_t i = 0; i < s.rects.size(); ++i) {
    const Rect& r = s.rects[i];
    rects.push_back({{"id", i}, {"x", to_literal(r.x0)}, {"y", to_literal(r.y0)}, {"w", to_literal(r.w)}, {"h", to_literal(r.h)}});
  }
  for (const auto& g : s.v)
    v.push_back({{"left", g.left},
                 {"right", g.right},
                 {"y_left", to_literal(g.y_left)},
                 {"y_right", to_literal(g.y_right)},
                 {"len", to_literal(g.len)}});
  for (const auto& g : s.h)
    h.push_back({{"below", g.below},
                 {"above", g.above},
                 {"x_below", to_literal(g.x_below)},
                 {"x_above", to_literal(g.x_above)},
                 {"len", to_literal(g.len)}});
  for (const auto& m : s.marks)
    labels[to_string(m.label)].push_back({{"rect", m.rect}, {"x", to_literal(m.x)}, {"y", to_literal(m.y)}});
  return {{"g", s.ctx->degree()}, {"rects", rects}, {"v_gluings", v}, {"h_gluings", h}, {"labels", labels}};
}

inline RectSurface surface_from_json(const Context& ctx, const Json& j) {
  RectSurface s;
  s.ctx = ctx;
  try {
    if (j.at("g").get<int>() != ctx->degree()) throw Error(ErrorKind::ContextMismatch, "surface JSON is for another g");
    const auto& rects = j.at("rects");
    s.rects.resize(rects.size());
    for (const auto& r : rects) {
      int id = detail::int_from(r, "id");
      if (id < 0 || static_cast<size_t>(id) >= rects.size()) throw Error(ErrorKind::ParseError, "rect id out of range");
      NFElem zero(ctx);
      s.rects[static_cast<size_t>(id)] = {r.contains("x") ? detail::elem_from(ctx, r, "x") : zero,
                                          r.contains("y") ? detail::elem_from(ctx, r, "y") : zero,
                                          detail::elem_from(ctx, r, "w"), detail::elem_from(ctx, r, "h")};
    }
    for (const auto& g : j.at("v_gluings"))
      s.v.push_back({detail::int_from(g, "left"), detail::int_from(g, "right"), detail::elem_from(ctx, g, "y_left"),
                     detail::elem_from(ctx, g, "y_right"), detail::elem_from(ctx, g, "len")});
    for (const auto& g : j.at("h_gluings"))
      s.h.push_back({detail::int_from(g, "below"), detail::int_from(g, "above"), detail::elem_from(ctx, g, "x_below"),
                     detail::elem_from(ctx, g, "x_above"), detail::elem_from(ctx, g, "len")});
    if (j.contains("labels"))
      for (const auto& [name, pts] : j.at("labels").items())
        for (const auto& p : pts)
          s.marks.push_back({detail::int_from(p, "rect"), detail::elem_from(ctx, p, "x"), detail::elem_from(ctx, p, "y"),
                             parse_label(name)});
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("bad surface JSON: ") + e.what());
  }
  return s;
}

inline Json word_json(const std::vector<Saddle>& w) {
  Json out = Json::array();
  for (const auto& s : w) out.push_back({{"length", to_literal(s.length)}, {"label", to_string(s.label)}});
  return out;
}

inline Json to_json(const CylinderDecomp& d) {
  Json cyls = Json::array();
  for (const auto& c : d.cylinders) {
    Json partners = Json::array();
    for (const auto& [j, k] : c.top_partner) partners.push_back({j, k});
    cyls.push_back({{"circumference", to_literal(c.circumference)},
                    {"height", to_literal(c.height)},
                    {"twist", to_literal(c.twist)},
                    {"top", word_json(c.top)},
                    {"bottom", word_json(c.bottom)},
                    {"top_partners", partners}});
  }
  return {{"g", d.ctx->degree()}, {"cylinders", cyls}};
}

inline CylinderDecomp decomp_from_json(const Context& ctx, const Json& j) {
  CylinderDecomp d{ctx, {}};
  auto word = [&](const Json& w) {
    std::vector<Saddle> out;
    for (const auto& s : w) out.push_back({detail::elem_from(ctx, s, "length"), parse_label(s.at("label").get<std::string>())});
    return out;
  };
  try {
    for (const auto& c : j.at("cylinders")) {
      Cylinder cy{detail::elem_from(ctx, c, "circumference"), detail::elem_from(ctx, c, "height"), word(c.at("top")),
                  word(c.at("bottom")), detail::elem_from(ctx, c, "twist"), {}};
      if (c.contains("top_partners"))
        for (const auto& p : c.at("top_partners")) cy.top_partner.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
      d.cylinders.push_back(std::move(cy));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("bad cylinder JSON: ") + e.what());
  }
  return d;
}

inline std::string word_text(const std::vector<Saddle>& w) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += "; ";
    out += to_literal(w[i].length) + " " + to_string(w[i].label);
  }
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline std::string to_csv(const CylinderDecomp& d) {
  std::ostringstream os;
  os << "index,circumference,height,top_word,bottom_word,twist\n";
  for (size_t i = 0; i < d.cylinders.size(); ++i) {
    const auto& c = d.cylinders[i];
    os << i << ',' << csv_field(to_literal(c.circumference)) << ',' << csv_field(to_literal(c.height)) << ','
       << csv_field(word_text(c.top)) << ',' << csv_field(word_text(c.bottom)) << ',' << csv_field(to_literal(c.twist)) << '\n';
  }
  return os.str();
}

inline std::string decimal(const NFElem& x, int digits = 12) {
  return to_decimal(x.approx(Rational(1, 1000000000) / Rational(1000000000)), digits);
}

/// Cylinder data of x_t for t_j = t_min + (t_max - t_min) j / steps, j = 0..steps.
inline std::string family_csv(const Context& ctx, const NFElem& t_min, const NFElem& t_max, int steps) {
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "steps must be positive");
  if (t_min.sign() <= 0 || t_max < t_min) throw Error(ErrorKind::InvalidArgument, "need 0 < t_min <= t_max");
  const int g = ctx->degree();
  std::ostringstream os;
  os << "t,t_decimal,m,s";
  for (int k = 0; k <= g; ++k) os << ",c" << k << ",c" << k << "_decimal,h" << k << ",h" << k << "_decimal";
  os << '\n';
  for (int j = 0; j <= steps; ++j) {
    NFElem t = t_min + (t_max - t_min) * Rational(j, steps);
    RayPosition p = ray_position(t);
    CylinderDecomp d = horizontal_cylinders(build_x(ctx, t));
    os << csv_field(to_literal(t)) << ',' << decimal(t) << ',' << p.m << ',' << csv_field(to_literal(p.s));
    for (int k = 0; k <= g; ++k) {
      if (static_cast<size_t>(k) < d.cylinders.size()) {
        const auto& c = d.cylinders[static_cast<size_t>(k)];
        os << ',' << csv_field(to_literal(c.circumference)) << ',' << decimal(c.circumference) << ','
           << csv_field(to_literal(c.height)) << ',' << decimal(c.height);
      } else {
        os << ",,,,";
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace ayrel
