#pragma once

// Interval exchanges of the circle R/Z with data in Q(alpha).
//
// A CircleIET is stored as an exchange of [0,1): half-open pieces
// [b_i, b_{i+1}) (b_0 = 0, b_n = 1) and a real shift per piece chosen so the
// image of the piece lies inside [0,1). A piece whose circle image wraps past 0
// is therefore stored as two pieces; `translation_mod1` recovers the circle data.

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ayrel/errors.hpp"
#include "ayrel/linalg.hpp"
#include "ayrel/qalpha.hpp"

namespace ayrel {

class CircleIET {
 public:
  CircleIET() = default;

  /// From breakpoints (strictly increasing, starting at 0, below 1) and
  /// circle translations taken mod 1. Pieces whose image wraps are split.
  static CircleIET from_circle_data(const Context& ctx, const std::vector<NFElem>& breakpoints,
                                    const std::vector<NFElem>& translations) {
    if (breakpoints.empty() || breakpoints.size() != translations.size())
      throw Error(ErrorKind::InvalidArgument, "breakpoints and translations must be nonempty and of equal length");
    CircleIET out;
    out.ctx_ = ctx;
    NFElem one(ctx, Rational(1));
    for (size_t i = 0; i < breakpoints.size(); ++i) {
      const NFElem& lo = breakpoints[i];
      const NFElem hi = i + 1 < breakpoints.size() ? breakpoints[i + 1] : one;
      NFElem t = translations[i].frac();
      NFElem cut = one - t;  // points at or beyond `cut` wrap
      if (cut <= lo) {
        out.push(lo, t - Rational(1));
      } else if (cut < hi) {
        out.push(lo, t);
        out.push(cut, t - Rational(1));
      } else {
        out.push(lo, t);
      }
    }
    out.check_valid();
    return out;
  }

  /// From interval lengths (domain order) and the image order: the interval
  /// `order[k]` (1-based) is placed k-th in the image.
  static CircleIET from_permutation(const Context& ctx, const std::vector<NFElem>& lengths,
                                    const std::vector<int>& order) {
    const size_t n = lengths.size();
    if (order.size() != n || n == 0) throw Error(ErrorKind::InvalidArgument, "permutation length mismatch");
    std::vector<NFElem> start(n, NFElem(ctx)), image(n, NFElem(ctx));
    for (size_t i = 1; i < n; ++i) start[i] = start[i - 1] + lengths[i - 1];
    NFElem acc(ctx);
    std::vector<bool> seen(n, false);
    for (int k : order) {
      if (k < 1 || static_cast<size_t>(k) > n || seen[static_cast<size_t>(k - 1)])
        throw Error(ErrorKind::InvalidArgument, "not a permutation");
      seen[static_cast<size_t>(k - 1)] = true;
      image[static_cast<size_t>(k - 1)] = acc;
      acc += lengths[static_cast<size_t>(k - 1)];
    }
    if (acc != NFElem(ctx, Rational(1))) throw Error(ErrorKind::InvalidArgument, "lengths must sum to 1");
    CircleIET out;
    out.ctx_ = ctx;
    for (size_t i = 0; i < n; ++i) {
      if (lengths[i].sign() <= 0) throw Error(ErrorKind::InvalidArgument, "lengths must be positive");
      out.push(start[i], image[i] - start[i]);
    }
    out.check_valid();
    return out;
  }

  static CircleIET identity(const Context& ctx) {
    CircleIET out;
    out.ctx_ = ctx;
    out.push(NFElem(ctx), NFElem(ctx));
    return out;
  }

  /// Rotation x -> x + theta of the circle.
  static CircleIET rotation(const Context& ctx, const NFElem& theta) {
    return from_circle_data(ctx, {NFElem(ctx)}, {theta});
  }

  const Context& context() const { return ctx_; }
  size_t size() const { return bp_.size(); }
  const std::vector<NFElem>& breakpoints() const { return bp_; }
  const std::vector<NFElem>& shifts() const { return shift_; }
  const NFElem& shift(size_t i) const { return shift_[i]; }
  NFElem translation_mod1(size_t i) const { return shift_[i].frac(); }
  NFElem piece_end(size_t i) const { return i + 1 < bp_.size() ? bp_[i + 1] : NFElem(ctx_, Rational(1)); }
  NFElem length(size_t i) const { return piece_end(i) - bp_[i]; }

  /// Index of the piece containing x in [0,1) (right-continuous).
  size_t piece_of(const NFElem& x) const {
    if (x.sign() < 0 || x >= NFElem(ctx_, Rational(1)))
      throw Error(ErrorKind::OutOfRange, "point " + to_literal(x) + " is outside [0,1)");
    size_t lo = 0, hi = bp_.size();
    while (hi - lo > 1) {
      size_t mid = (lo + hi) / 2;
      if (bp_[mid] <= x) lo = mid; else hi = mid;
    }
    return lo;
  }

  NFElem operator()(const NFElem& x) const { return x + shift_[piece_of(x)]; }

  /// Merges adjacent pieces with equal shift.
  CircleIET normalized() const {
    CircleIET out;
    out.ctx_ = ctx_;
    for (size_t i = 0; i < bp_.size(); ++i)
      if (out.bp_.empty() || !(out.shift_.back() == shift_[i])) out.push(bp_[i], shift_[i]);
    return out;
  }

  /// Number of intervals of continuity as an exchange of [0,1).
  size_t interval_count() const { return normalized().size(); }

  bool is_bijection() const {
    std::vector<size_t> idx(bp_.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<NFElem> img;
    for (size_t i = 0; i < bp_.size(); ++i) img.push_back(bp_[i] + shift_[i]);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return img[a] < img[b]; });
    NFElem at(ctx_);
    for (size_t i : idx) {
      if (!(img[i] == at)) return false;
      at = img[i] + length(i);
    }
    return at == NFElem(ctx_, Rational(1));
  }

  friend bool operator==(const CircleIET& a, const CircleIET& b) {
    CircleIET na = a.normalized(), nb = b.normalized();
    return na.bp_ == nb.bp_ && na.shift_ == nb.shift_;
  }

 private:
  void push(const NFElem& lo, const NFElem& shift) {
    if (!bp_.empty() && bp_.back() == lo) {
      shift_.back() = shift;  // zero-length piece replaced
      return;
    }
    bp_.push_back(lo);
    shift_.push_back(shift);
  }

  void check_valid() const {
    if (bp_.empty() || !bp_[0].is_zero()) throw Error(ErrorKind::InvalidArgument, "first breakpoint must be 0");
    for (size_t i = 0; i + 1 < bp_.size(); ++i)
      if (!(bp_[i] < bp_[i + 1])) throw Error(ErrorKind::InvalidArgument, "breakpoints must increase strictly");
    if (!(bp_.back() < NFElem(ctx_, Rational(1)))) throw Error(ErrorKind::InvalidArgument, "breakpoints must lie in [0,1)");
    if (!is_bijection()) throw Error(ErrorKind::InvalidArgument, "images do not tile [0,1)");
  }

  friend CircleIET compose(const CircleIET& a, const CircleIET& b);
  friend CircleIET inverse(const CircleIET& f);
  friend CircleIET first_return(const CircleIET& f, const NFElem& length, long step_cap);

  Context ctx_;
  std::vector<NFElem> bp_;
  std::vector<NFElem> shift_;
};

inline NFElem evaluate(const CircleIET& f, const NFElem& x) { return f(x); }

/// a after b.
inline CircleIET compose(const CircleIET& a, const CircleIET& b) {
  CircleIET out;
  out.ctx_ = b.ctx_;
  for (size_t i = 0; i < b.size(); ++i) {
    NFElem lo = b.bp_[i] + b.shift_[i];
    NFElem hi = b.piece_end(i) + b.shift_[i];
    size_t j = a.piece_of(lo);
    for (;;) {
      out.push(lo - b.shift_[i], b.shift_[i] + a.shift_[j]);
      NFElem end = a.piece_end(j);
      if (end >= hi) break;
      lo = end;
      ++j;
    }
  }
  return out.normalized();
}

inline CircleIET inverse(const CircleIET& f) {
  std::vector<size_t> idx(f.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<NFElem> img;
  for (size_t i = 0; i < f.size(); ++i) img.push_back(f.bp_[i] + f.shift_[i]);
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return img[a] < img[b]; });
  CircleIET out;
  out.ctx_ = f.ctx_;
  for (size_t i : idx) out.push(img[i], -f.shift_[i]);
  return out.normalized();
}

inline constexpr long kDefaultStepCap = 1000000;

/// First return map to [0, length), rescaled by 1/length to an exchange of [0,1).
inline CircleIET first_return(const CircleIET& f, const NFElem& length, long step_cap = kDefaultStepCap) {
  const Context& ctx = f.ctx_;
  const NFElem one(ctx, Rational(1));
  if (length.sign() <= 0 || length > one) throw Error(ErrorKind::OutOfRange, "return length must lie in (0,1]");
  struct Pending {
    NFElem dom_lo, len, image_lo, total;
    long steps;
  };
  struct Done {
    NFElem lo, total;
  };
  std::vector<Pending> stack{{NFElem(ctx), length, NFElem(ctx), NFElem(ctx), 0}};
  std::vector<Done> done;
  while (!stack.empty()) {
    Pending p = stack.back();
    stack.pop_back();
    if (p.steps >= step_cap)
      throw Error(ErrorKind::ReturnNotResolved, "orbit of " + to_literal(p.dom_lo) + " did not return within the cap");
    NFElem img_hi = p.image_lo + p.len;
    NFElem lo = p.image_lo;
    size_t j = f.piece_of(lo);
    for (;;) {
      NFElem end = f.piece_end(j);
      NFElem hi = end < img_hi ? end : img_hi;
      NFElem dom = p.dom_lo + (lo - p.image_lo);
      NFElem total = p.total + f.shift_[j];
      NFElem nlo = lo + f.shift_[j], nhi = hi + f.shift_[j];
      if (nhi <= length) {
        done.push_back({dom, total});
      } else if (nlo >= length) {
        stack.push_back({dom, hi - lo, nlo, total, p.steps + 1});
      } else {
        done.push_back({dom, total});
        stack.push_back({dom + (length - nlo), nhi - length, length, total, p.steps + 1});
      }
      if (end >= img_hi) break;
      lo = end;
      ++j;
    }
  }
  std::sort(done.begin(), done.end(), [](const Done& a, const Done& b) { return a.lo < b.lo; });
  CircleIET out;
  out.ctx_ = ctx;
  NFElem inv = length.inverse();
  for (const auto& d : done) out.push(d.lo * inv, d.total * inv);
  if (!out.is_bijection()) throw Error(ErrorKind::InternalError, "first return map is not a bijection");
  return out.normalized();
}

// ---------------------------------------------------------------------------
// The Arnoux-Yoccoz exchange.

/// Left endpoints 0, alpha, alpha+alpha^2, ... of J_1..J_g, followed by 1.
inline std::vector<NFElem> ay_partition(const Context& ctx) {
  std::vector<NFElem> a{NFElem(ctx)};
  for (int k = 1; k <= ctx->degree(); ++k) a.push_back(a.back() + NFElem::alpha_pow(ctx, k));
  return a;
}

/// Rotation of each J_k by half its length within itself.
inline CircleIET ay_involution_1(const Context& ctx) {
  auto a = ay_partition(ctx);
  std::vector<NFElem> bp, tr;
  for (int k = 1; k <= ctx->degree(); ++k) {
    NFElem half = NFElem::alpha_pow(ctx, k) / Rational(2);
    bp.push_back(a[static_cast<size_t>(k - 1)]);
    tr.push_back(half);
    bp.push_back(a[static_cast<size_t>(k - 1)] + half);
    tr.push_back(-half);
  }
  return CircleIET::from_circle_data(ctx, bp, tr);
}

/// Half-turn of the circle.
inline CircleIET ay_involution_2(const Context& ctx) {
  return CircleIET::rotation(ctx, NFElem(ctx, Rational(1, 2)));
}

inline CircleIET ay_iet(const Context& ctx) { return compose(ay_involution_2(ctx), ay_involution_1(ctx)); }

/// psi(s) = alpha^{-1} s + (alpha^{-1} - 1)/2 mod 1.
inline NFElem ay_psi(const NFElem& s) {
  const Context& ctx = s.context();
  NFElem ainv = NFElem::alpha_pow(ctx, -1);
  return (ainv * s + (ainv - Rational(1)) / Rational(2)).frac();
}

struct RenormalizationReport {
  bool passed = true;
  int points_checked = 0;
  int endpoints_checked = 0;
  int lemma_case1 = 0;
  int lemma_case2 = 0;
  std::string counterexample;  // empty on success
};

/// Checks psi o IE^ = IE o psi and both cases of the interplay lemma at
/// `n_samples` pseudo-random exact points of [0,alpha) and at every
/// endpoint of the return map.
inline RenormalizationReport verify_renormalization(const Context& ctx, int n_samples, uint64_t seed = 1) {
  if (n_samples < 0) throw Error(ErrorKind::InvalidArgument, "n_samples must be nonnegative");
  RenormalizationReport rep;
  const NFElem alpha = NFElem::alpha(ctx);
  const CircleIET ie = ay_iet(ctx);
  const CircleIET ret = first_return(ie, alpha);  // rescaled
  const NFElem last_j_lo = NFElem(ctx, Rational(1)) - NFElem::alpha_pow(ctx, ctx->degree());
  const NFElem ainv = alpha.inverse();

  auto check = [&](const NFElem& s) {
    NFElem ret_s = ret(s * ainv) * alpha;
    NFElem lhs = ay_psi(ret_s);
    NFElem psi_s = ay_psi(s);
    NFElem rhs = ie(psi_s);
    if (!(lhs == rhs)) {
      rep.passed = false;
      rep.counterexample = "s = " + to_literal(s) + ": psi(IE^(s)) = " + to_literal(lhs) + " but IE(psi(s)) = " + to_literal(rhs);
      return false;
    }
    NFElem ie_s = ie(s);
    if (ie_s >= alpha) {
      ++rep.lemma_case1;
      if (!(psi_s == ainv * ie_s - Rational(1))) {
        rep.passed = false;
        rep.counterexample = "s = " + to_literal(s) + ": lemma case 1 fails";
        return false;
      }
    } else {
      ++rep.lemma_case2;
      if (psi_s < last_j_lo || !(ie(psi_s) == ay_psi(ie_s))) {
        rep.passed = false;
        rep.counterexample = "s = " + to_literal(s) + ": lemma case 2 fails";
        return false;
      }
    }
    return true;
  };

  for (const auto& b : ret.breakpoints()) {
    if (!check(b * alpha)) return rep;
    ++rep.endpoints_checked;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-1000, 1000), den(1, 997);
  for (int i = 0; i < n_samples; ++i) {
    std::vector<Rational> c;
    for (int k = 0; k < ctx->degree(); ++k) c.push_back(make_rational(num(rng), den(rng)));
    NFElem s = NFElem(ctx, c).mod(alpha);
    if (!check(s)) return rep;
    ++rep.points_checked;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// The seven-interval family for g = 3.

/// Image order of the seven intervals.
inline const std::vector<int>& ay_rel_permutation() {
  static const std::vector<int> p{2, 5, 4, 7, 6, 3, 1};
  return p;
}

inline std::vector<NFElem> ay_rel_lengths(const Context& ctx, const NFElem& r) {
  NFElem a = NFElem::alpha(ctx), a2 = a * a, a3 = a2 * a;
  Rational h(1, 2);
  return {(Rational(1) - a) * h, a - h + r, a * h - r, a2 * h + r, a2 * h - r, a3 * h + r, a3 * h - r};
}

inline CircleIET ay_rel_iet(const Context& ctx, const NFElem& r) {
  if (ctx->degree() != 3) throw Error(ErrorKind::InvalidGenus, "the seven-interval family is defined for g = 3 only");
  NFElem cap = NFElem::alpha_pow(ctx, 3) / Rational(2);
  if (r.sign() < 0 || r >= cap) throw Error(ErrorKind::OutOfRange, "r must satisfy 0 <= r < a^3/2, got " + to_literal(r));
  return CircleIET::from_permutation(ctx, ay_rel_lengths(ctx, r), ay_rel_permutation());
}

// ---------------------------------------------------------------------------
// Periodic orbits.

/// Cyclic word over positive symbols, kept in its lexicographically least rotation.
class OrbitWord {
 public:
  OrbitWord() = default;
  explicit OrbitWord(std::vector<int> symbols) : s_(canonical_rotation(std::move(symbols))) {
    if (s_.empty()) throw Error(ErrorKind::InvalidArgument, "orbit word must be nonempty");
  }
  /// Parses a digit string such as "164".
  static OrbitWord parse(const std::string& text) {
    std::vector<int> v;
    for (char c : text) {
      if (c < '1' || c > '9') throw Error(ErrorKind::ParseError, "orbit word must consist of digits 1-9: \"" + text + "\"");
      v.push_back(c - '0');
    }
    return OrbitWord(std::move(v));
  }

  const std::vector<int>& symbols() const { return s_; }
  size_t size() const { return s_.size(); }

  std::string str() const {
    std::string out;
    bool digits = std::all_of(s_.begin(), s_.end(), [](int x) { return x >= 0 && x <= 9; });
    for (size_t i = 0; i < s_.size(); ++i) {
      if (!digits && i) out += ",";
      out += std::to_string(s_[i]);
    }
    return out;
  }

  static std::vector<int> canonical_rotation(std::vector<int> w) {
    const size_t n = w.size();
    if (n == 0) return w;
    size_t best = 0;
    for (size_t r = 1; r < n; ++r) {
      for (size_t k = 0; k < n; ++k) {
        int a = w[(r + k) % n], b = w[(best + k) % n];
        if (a != b) {
          if (a < b) best = r;
          break;
        }
      }
    }
    std::rotate(w.begin(), w.begin() + static_cast<long>(best), w.end());
    return w;
  }

  friend bool operator==(const OrbitWord&, const OrbitWord&) = default;
  friend bool operator<(const OrbitWord& a, const OrbitWord& b) {
    if (a.s_.size() != b.s_.size()) return a.s_.size() < b.s_.size();
    return a.s_ < b.s_;
  }

 private:
  std::vector<int> s_;
};

struct PeriodicOrbit {
  NFElem start;
  long period = 0;
  OrbitWord orbit_type;
};

struct PeriodicComponent {
  NFElem lo, hi;  // [lo, hi)
  PeriodicOrbit orbit;
};

/// Partitions [0,1) into maximal intervals of points with a common periodic
/// itinerary (symbols are 1-based piece indices of `f` as given).
inline std::vector<PeriodicComponent> periodic_components(const CircleIET& f, long step_cap = kDefaultStepCap) {
  if (step_cap < 1) throw Error(ErrorKind::InvalidArgument, "step_cap must be positive");
  const Context& ctx = f.context();
  const NFElem one(ctx, Rational(1));
  std::vector<PeriodicComponent> comps;

  auto covered = [&](const NFElem& x) {
    for (const auto& c : comps)
      if (c.lo <= x && x < c.hi) return true;
    return false;
  };

  auto explore = [&](const NFElem& x) {
    NFElem lo = f.breakpoints()[f.piece_of(x)], hi = f.piece_end(f.piece_of(x));
    NFElem y = x, tau(ctx);
    std::vector<int> itin;
    std::vector<NFElem> pts;
    for (long step = 0;; ++step) {
      if (step >= step_cap)
        throw Error(ErrorKind::AperiodicitySuspected,
                    "orbit of " + to_literal(x) + " did not close within " + std::to_string(step_cap) + " steps");
      size_t j = f.piece_of(y);
      // Restrict the window so its current image stays inside piece j.
      NFElem plo = f.breakpoints()[j] - tau, phi = f.piece_end(j) - tau;
      if (lo < plo) lo = plo;
      if (phi < hi) hi = phi;
      itin.push_back(static_cast<int>(j) + 1);
      pts.push_back(y);
      tau += f.shift(j);
      y = y + f.shift(j);
      if (y == x) break;
    }
    const long n = static_cast<long>(itin.size());
    // The images of the window under f^k are the components of the other phases.
    NFElem shift(ctx);
    for (long k = 0; k < n; ++k) {
      std::vector<int> rot(itin.begin() + k, itin.end());
      rot.insert(rot.end(), itin.begin(), itin.begin() + k);
      comps.push_back({lo + shift, hi + shift, {pts[static_cast<size_t>(k)], n, OrbitWord(rot)}});
      shift += f.shift(static_cast<size_t>(itin[static_cast<size_t>(k)] - 1));
    }
  };

  for (size_t i = 0; i < f.size(); ++i) {
    NFElem mid = (f.breakpoints()[i] + f.piece_end(i)) / Rational(2);
    if (!covered(mid)) explore(mid);
  }
  for (;;) {
    std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    std::optional<NFElem> gap_mid;
    NFElem at(ctx);
    for (const auto& c : comps) {
      if (at < c.lo) {
        gap_mid = (at + c.lo) / Rational(2);
        break;
      }
      if (c.lo < at) throw Error(ErrorKind::InternalError, "periodic components overlap");
      at = c.hi;
    }
    if (!gap_mid && at < one) gap_mid = (at + one) / Rational(2);
    if (!gap_mid) break;
    if (static_cast<long>(comps.size()) > step_cap)
      throw Error(ErrorKind::AperiodicitySuspected, "component count exceeded the cap");
    explore(*gap_mid);
  }
  NFElem total(ctx);
  for (const auto& c : comps) total += c.hi - c.lo;
  if (!(total == one)) throw Error(ErrorKind::InternalError, "component widths do not sum to 1");
  return comps;
}

/// Distinct orbit types among the components, shortest first.
inline std::vector<OrbitWord> orbit_types(const std::vector<PeriodicComponent>& comps) {
  std::vector<OrbitWord> out;
  for (const auto& c : comps)
    if (std::find(out.begin(), out.end(), c.orbit.orbit_type) == out.end()) out.push_back(c.orbit.orbit_type);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Sah-Arnoux-Fathi invariant.

/// Antisymmetric g x g rational matrix; entry (i,j), i<j, is the coefficient
/// of alpha^i ^ alpha^j.
struct SAFInvariant {
  std::vector<std::vector<Rational>> m;
  bool is_zero() const {
    for (const auto& row : m)
      for (const auto& q : row)
        if (q != 0) return false;
    return true;
  }
  friend bool operator==(const SAFInvariant&, const SAFInvariant&) = default;
};

/// Sum over pieces of length ^ shift, with the shifts of the exchange of [0,1)
/// (images inside [0,1)). This lift is independent of how pieces are subdivided.
inline SAFInvariant saf(const CircleIET& f) {
  const size_t g = static_cast<size_t>(f.context()->degree());
  SAFInvariant s{std::vector<std::vector<Rational>>(g, std::vector<Rational>(g, Rational(0)))};
  for (size_t i = 0; i < f.size(); ++i) {
    const auto a = f.length(i).coeffs();
    const auto b = f.shift(i).coeffs();
    for (size_t p = 0; p < g; ++p)
      for (size_t q = 0; q < g; ++q) s.m[p][q] += a[p] * b[q] - a[q] * b[p];
  }
  return s;
}

}  // namespace ayrel
