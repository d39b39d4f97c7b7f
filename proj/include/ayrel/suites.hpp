#pragma once

// Check suites shared by the command-line `verify` command.

#include <functional>
#include <string>
#include <vector>

#include "ayrel/iet.hpp"
#include "ayrel/rel.hpp"
#include "ayrel/surface.hpp"

namespace ayrel {

struct SuiteOptions {
  int renormalization_samples = 1000;
  int sweep_count = 20;
  uint64_t seed = 1;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::string detail;
  std::string counterexample;
};

namespace detail {

inline std::vector<NFElem> sweep_s(const Context& ctx, int n) {
  std::vector<NFElem> out;
  const NFElem a = NFElem::alpha(ctx);
  for (int j = 1; j <= n; ++j) out.push_back(a * Rational(j, n + 1));
  return out;
}

inline std::vector<NFElem> sweep_t(const Context& ctx, int n, bool include_endpoints) {
  std::vector<NFElem> out;
  const NFElem a = NFElem::alpha(ctx), beta = ay_beta(ctx);
  for (int j = 0; j < n; ++j) {
    int m = -3 + j % 7;
    NFElem s = include_endpoints && j % 5 == 0 ? NFElem(ctx) : a * Rational(1 + (7 * j) % 19, 20);
    out.push_back(NFElem::alpha_pow(ctx, -m) * (beta + s));
  }
  return out;
}

}  // namespace detail

inline SuiteResult suite_renormalization(const Context& ctx, const SuiteOptions& o) {
  SuiteResult r;
  r.name = "renormalization";
  auto rep = verify_renormalization(ctx, o.renormalization_samples, o.seed);
  r.passed = rep.passed;
  r.detail = std::to_string(rep.points_checked) + " points, " + std::to_string(rep.endpoints_checked) + " endpoints; case1 " +
             std::to_string(rep.lemma_case1) + ", case2 " + std::to_string(rep.lemma_case2);
  r.counterexample = rep.counterexample;
  return r;
}

inline SuiteResult suite_slit_cylinders(const Context& ctx, const SuiteOptions& o) {
  SuiteResult r;
  r.name = "slit-cylinders";
  const int g = ctx->degree();
  const NFElem a = NFElem::alpha(ctx), beta = ay_beta(ctx);
  const RectSurface q = build_q0(ctx);
  int checked = 0;
  for (const auto& s : detail::sweep_s(ctx, o.sweep_count)) {
    CylinderDecomp d = horizontal_cylinders(slit_rel(q, s));
    PredictedCylinders want{0, s, {}};
    want.cylinders.push_back({NFElem(ctx, Rational(1)), a - s, Label::Filled, Label::Hollow});
    for (int k = 1; k <= g; ++k)
      want.cylinders.push_back({NFElem::alpha_pow(ctx, k), s + beta - NFElem::alpha_pow(ctx, g - k) * beta, Label::Hollow,
                                Label::Filled});
    std::string why;
    if (!matches_prediction(want, d, &why)) {
      r.passed = false;
      r.counterexample = "s = " + to_literal(s) + ": " + why;
      break;
    }
    ++checked;
  }
  r.detail = std::to_string(checked) + " slit surfaces";
  return r;
}

inline SuiteResult suite_ray_closed_form(const Context& ctx, const SuiteOptions& o) {
  SuiteResult r;
  r.name = "ray-closed-form";
  int checked = 0;
  for (const auto& t : detail::sweep_t(ctx, o.sweep_count, true)) {
    std::string why;
    if (!matches_prediction(predicted_cylinders(ctx, t), horizontal_cylinders(build_x(ctx, t)), &why)) {
      r.passed = false;
      r.counterexample = "t = " + to_literal(t) + ": " + why;
      break;
    }
    ++checked;
  }
  r.detail = std::to_string(checked) + " values of t";
  return r;
}

inline SuiteResult suite_self_similarity(const Context& ctx, const SuiteOptions& o) {
  SuiteResult r;
  r.name = "self-similarity";
  int checked = 0;
  for (const auto& t : detail::sweep_t(ctx, o.sweep_count, false)) {
    if (!verify_self_similarity(ctx, t)) {
      r.passed = false;
      r.counterexample = "t = " + to_literal(t);
      break;
    }
    ++checked;
  }
  r.detail = std::to_string(checked) + " values of t";
  return r;
}

inline SuiteResult suite_saf(const Context& ctx, const SuiteOptions&) {
  SuiteResult r;
  r.name = "saf";
  if (!saf(ay_iet(ctx)).is_zero()) {
    r.passed = false;
    r.counterexample = "SAF of IE is nonzero";
    return r;
  }
  int checked = 1;
  if (ctx->degree() == 3) {
    for (int d : {4, 8, 16}) {
      NFElem rr = NFElem::alpha_pow(ctx, 3) / Rational(d);
      if (!saf(ay_rel_iet(ctx, rr)).is_zero()) {
        r.passed = false;
        r.counterexample = "r = " + to_literal(rr);
        return r;
      }
      ++checked;
    }
  }
  r.detail = std::to_string(checked) + " exchanges";
  return r;
}

inline SuiteResult suite_ranks(const Context& ctx, const SuiteOptions&) {
  SuiteResult r;
  r.name = "ranks";
  const int g = ctx->degree();
  NFElem t = ay_beta(ctx) + NFElem::alpha(ctx) / Rational(3);
  int dim = relorbit_dimension(horizontal_cylinders(build_x(ctx, t)));
  int shadow = family_rank_shadow(ctx);
  r.detail = "relorbit_dimension " + std::to_string(dim) + ", family_rank_shadow " + std::to_string(shadow);
  if (dim != g || shadow != g + 1) {
    r.passed = false;
    r.counterexample = "t = " + to_literal(t) + ": " + r.detail;
  }
  return r;
}

inline const std::vector<std::pair<std::string, std::function<SuiteResult(const Context&, const SuiteOptions&)>>>& all_suites() {
  static const std::vector<std::pair<std::string, std::function<SuiteResult(const Context&, const SuiteOptions&)>>> s{
      {"renormalization", suite_renormalization},
      {"slit-cylinders", suite_slit_cylinders},
      {"ray-closed-form", suite_ray_closed_form},
      {"self-similarity", suite_self_similarity},
      {"saf", suite_saf},
      {"ranks", suite_ranks},
  };
  return s;
}

/// Alternative spellings accepted on the command line.
inline std::string suite_name(const std::string& name) {
  if (name == "prop3.7") return "slit-cylinders";
  if (name == "thm3.6") return "ray-closed-form";
  return name;
}

inline SuiteResult run_suite(const std::string& requested, const Context& ctx, const SuiteOptions& o) {
  const std::string name = suite_name(requested);
  for (const auto& [n, fn] : all_suites())
    if (n == name) {
      try {
        return fn(ctx, o);
      } catch (const Error& e) {
        return {name, false, false, "error", e.what()};
      }
    }
  throw Error(ErrorKind::InvalidArgument, "unknown suite \"" + name + "\"");
}

}  // namespace ayrel
