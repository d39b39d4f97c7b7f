#pragma once

// Genus-3 orbit combinatorics: displacements, lattice paths, the substitution
// on orbit types, its Tribonacci factor, and path emitters.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ayrel/errors.hpp"
#include "ayrel/iet.hpp"
#include "ayrel/qalpha.hpp"

namespace ayrel {

struct Displacement {
  NFElem value;
  int index = 0;  // 1, 2, 3
  int sign = 0;   // +1, -1
};

/// d_i = (1 - alpha^i)/2.
inline NFElem displacement_value(const Context& ctx, int i) {
  return (Rational(1) - NFElem::alpha_pow(ctx, i)) / Rational(2);
}

/// Classifies x' - x modulo 1 as one of +-d_1, +-d_2, +-d_3.
inline Displacement classify_displacement(const NFElem& diff) {
  const Context& ctx = diff.context();
  if (ctx->degree() != 3) throw Error(ErrorKind::InvalidGenus, "displacements are defined for g = 3");
  const NFElem one(ctx, Rational(1));
  const NFElem m = diff.mod(one);
  for (int i = 1; i <= 3; ++i) {
    NFElem d = displacement_value(ctx, i);
    if (m == d) return {d, i, 1};
    if (m == (-d).mod(one)) return {-d, i, -1};
  }
  throw Error(ErrorKind::ClassificationFailure, "displacement " + to_literal(diff) + " is not one of the six generators");
}

using LatticePoint = std::pair<long, long>;

struct LatticePath {
  std::vector<LatticePoint> points;  // starts at (0,0)
  bool closed = false;               // orbit returned to its start
  long steps = 0;
};

inline LatticePoint lattice_step(const Displacement& d) {
  static const LatticePoint gen[3] = {{1, 0}, {0, 1}, {-1, -1}};
  LatticePoint p = gen[d.index - 1];
  return {p.first * d.sign, p.second * d.sign};
}

/// Follows x, IE_r(x), ... accumulating lattice images of the displacements;
/// stops when the orbit returns to x or after `cap` steps.
inline LatticePath arithmetic_orbit(const Context& ctx, const NFElem& r, const NFElem& start, long cap) {
  if (cap < 1) throw Error(ErrorKind::InvalidArgument, "cap must be positive");
  const CircleIET f = ay_rel_iet(ctx, r);
  const NFElem x0 = start.mod(NFElem(ctx, Rational(1)));
  LatticePath path;
  path.points.push_back({0, 0});
  NFElem x = x0;
  for (long n = 0; n < cap; ++n) {
    NFElem y = f(x);
    LatticePoint st = lattice_step(classify_displacement(y - x));
    const LatticePoint& last = path.points.back();
    path.points.push_back({last.first + st.first, last.second + st.second});
    ++path.steps;
    x = y;
    if (x == x0) {
      path.closed = true;
      break;
    }
  }
  return path;
}

// ---------------------------------------------------------------------------
// Substitution on orbit types.

/// Image of a cyclic word without rotating; the context of the first symbol
/// is the last one.
inline std::vector<int> substitute_word(const std::vector<int>& w) {
  std::vector<int> out;
  const size_t n = w.size();
  for (size_t i = 0; i < n; ++i) {
    const int prev = w[(i + n - 1) % n];
    switch (w[i]) {
      case 1:
      case 2: out.insert(out.end(), {3, 4}); break;
      case 4: out.insert(out.end(), {1, 6}); break;
      case 5: out.insert(out.end(), {1, 7}); break;
      case 6: out.push_back(2); break;
      case 7: out.push_back(3); break;
      case 3:
        if (prev == 4 || prev == 7) out.insert(out.end(), {3, 5});
        else if (prev == 3 || prev == 6) out.insert(out.end(), {1, 5});
        else
          throw Error(ErrorKind::SubstitutionContextUndefined,
                      "symbol 3 preceded by " + std::to_string(prev) + " has no image");
        break;
      default:
        throw Error(ErrorKind::InvalidArgument, "symbol " + std::to_string(w[i]) + " is outside 1..7");
    }
  }
  return out;
}

inline OrbitWord substitute(const OrbitWord& w) { return OrbitWord(substitute_word(w.symbols())); }

/// The first `iters` images of `seed`, unrotated.
inline std::vector<std::vector<int>> substitution_orbit(const std::vector<int>& seed, int iters) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur = seed;
  for (int i = 0; i < iters; ++i) {
    cur = substitute_word(cur);
    out.push_back(cur);
  }
  return out;
}

inline std::string word_string(const std::vector<int>& w) {
  std::string s;
  for (int x : w) s += std::to_string(x);
  return s;
}

// ---------------------------------------------------------------------------
// Tribonacci factor.

inline std::string tribonacci_factor(const std::vector<int>& w) {
  std::string out;
  for (int x : w) {
    if (x >= 1 && x <= 3) out += 'a';
    else if (x == 4 || x == 5) out += 'b';
    else if (x == 6 || x == 7) out += 'c';
    else throw Error(ErrorKind::InvalidArgument, "symbol " + std::to_string(x) + " is outside 1..7");
  }
  return out;
}

inline std::string tribonacci_factor(const OrbitWord& w) { return tribonacci_factor(w.symbols()); }

inline std::string tribonacci_substitute(const std::string& w) {
  std::string out;
  for (char c : w) {
    if (c == 'a') out += "ab";
    else if (c == 'b') out += "ac";
    else if (c == 'c') out += "a";
    else throw Error(ErrorKind::InvalidArgument, std::string("letter ") + c + " is outside a, b, c");
  }
  return out;
}

/// Least rotation, for comparing cyclic words.
inline std::string cyclic_canonical(const std::string& w) {
  std::string best = w;
  for (size_t r = 1; r < w.size(); ++r) {
    std::string c = w.substr(r) + w.substr(0, r);
    if (c < best) best = c;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Emitters.

namespace detail {
inline std::string fixed6(double v) {
  if (std::fabs(v) < 5e-7) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}
}  // namespace detail

inline std::string emit_path_svg(const LatticePath& path) {
  if (path.points.empty()) throw Error(ErrorKind::InvalidArgument, "cannot emit an empty path");
  const double h = std::sqrt(3.0) / 2.0;
  std::vector<std::pair<double, double>> xy;
  double minx = 0, maxx = 0, miny = 0, maxy = 0;
  for (const auto& [i, j] : path.points) {
    double x = static_cast<double>(i) + 0.5 * static_cast<double>(j), y = h * static_cast<double>(j);
    xy.push_back({x, -y});  // SVG y axis points down
    minx = std::min(minx, x);
    maxx = std::max(maxx, x);
    miny = std::min(miny, -y);
    maxy = std::max(maxy, -y);
  }
  const double pad = 1.0;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << detail::fixed6(minx - pad) << " "
     << detail::fixed6(miny - pad) << " " << detail::fixed6(maxx - minx + 2 * pad) << " "
     << detail::fixed6(maxy - miny + 2 * pad) << "\">\n"
     << "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"0.05\" points=\"";
  for (size_t k = 0; k < xy.size(); ++k) {
    if (k) os << " ";
    os << detail::fixed6(xy[k].first) << "," << detail::fixed6(xy[k].second);
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

inline nlohmann::json path_to_json(const LatticePath& path) {
  if (path.points.empty()) throw Error(ErrorKind::InvalidArgument, "cannot emit an empty path");
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& [x, y] : path.points) pts.push_back({x, y});
  return {{"points", pts}, {"closed", path.closed}, {"steps", path.steps}};
}

inline LatticePath path_from_json(const nlohmann::json& j) {
  LatticePath p;
  try {
    for (const auto& pt : j.at("points")) p.points.push_back({pt.at(0).get<long>(), pt.at(1).get<long>()});
    p.closed = j.value("closed", false);
    p.steps = j.value("steps", static_cast<long>(p.points.size()) - 1);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("bad path JSON: ") + e.what());
  }
  return p;
}

enum class PathFormat { Svg, Json };

inline std::string emit_path(const LatticePath& path, PathFormat fmt) {
  return fmt == PathFormat::Svg ? emit_path_svg(path) : path_to_json(path).dump(2) + "\n";
}

}  // namespace ayrel
