// Command-line front end: check suites and data and path emitters.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ayrel/arithpath.hpp"
#include "ayrel/io.hpp"
#include "ayrel/poly.hpp"
#include "ayrel/suites.hpp"

using namespace ayrel;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::map<std::string, std::string> read_config(const std::string& path) {
  std::map<std::string, std::string> kv;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

int config_int(const std::map<std::string, std::string>& kv, const std::string& key, int fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  try {
    size_t used = 0;
    int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw UsageError("config key " + key + " needs an integer, got \"" + it->second + "\"");
  }
}

NFElem parse_value(const Context& ctx, const std::string& text, const char* flag) {
  try {
    return parse_expression(ctx, text);
  } catch (const Error& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

Context context_for(int g) {
  try {
    return make_context(g);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidGenus) throw UsageError(e.what());
    throw;
  }
}

std::string pad(const std::string& s, size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for the Arnoux-Yoccoz interval exchanges and their rel deformations", "ayrel"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value file overriding default sample counts");

  // verify
  auto* verify = app.add_subcommand("verify", "run check suites and print a pass/fail table");
  int v_g = 3;
  std::string v_suite;
  bool v_json = false;
  verify->add_option("--g", v_g, "genus")->required();
  verify->add_option("--suite", v_suite, "renormalization, slit-cylinders, ray-closed-form, self-similarity, saf or ranks");
  verify->add_flag("--json", v_json, "machine-readable output");

  // surface
  auto* surface = app.add_subcommand("surface", "build x_t and its horizontal cylinders");
  int s_g = 3;
  std::string s_t;
  bool s_json = false;
  surface->add_option("--g", s_g, "genus")->required();
  surface->add_option("--t", s_t, "ray parameter, e.g. beta+a/2")->required();
  surface->add_flag("--json", s_json, "emit the rectangle surface and cylinder data as JSON");

  // family
  auto* family = app.add_subcommand("family", "CSV of cylinder data along the rel ray");
  int f_g = 3, f_steps = 20;
  std::string f_tmin, f_tmax;
  family->add_option("--g", f_g, "genus")->required();
  family->add_option("--t-min", f_tmin, "first t")->required();
  family->add_option("--t-max", f_tmax, "last t")->required();
  family->add_option("--steps", f_steps, "number of subintervals");

  // orbit-types
  auto* otypes = app.add_subcommand("orbit-types", "periodic components of the seven-interval exchange");
  std::string o_r;
  long o_cap = kDefaultStepCap;
  bool o_json = false;
  otypes->add_option("--r", o_r, "parameter in [0, a^3/2)")->required();
  otypes->add_option("--cap", o_cap, "step cap per orbit");
  otypes->add_flag("--json", o_json, "machine-readable output");

  // arithpath
  auto* apath = app.add_subcommand("arithpath", "lattice path of an arithmetic orbit");
  std::string a_r, a_start, a_svg;
  long a_cap = 100000;
  bool a_json = false;
  apath->add_option("--r", a_r, "parameter in [0, a^3/2)")->required();
  apath->add_option("--start", a_start, "starting point")->required();
  apath->add_option("--svg", a_svg, "write an SVG drawing to this path");
  apath->add_option("--cap", a_cap, "maximum number of steps");
  apath->add_flag("--json", a_json, "print the path as JSON");

  // subst
  auto* subst = app.add_subcommand("subst", "iterate the substitution on orbit types");
  std::string u_seed = "164";
  int u_iters = 3;
  bool u_tri = false;
  subst->add_option("--seed", u_seed, "starting cyclic word");
  subst->add_option("--iters", u_iters, "number of iterates")->check(CLI::NonNegativeNumber);
  subst->add_flag("--tribonacci", u_tri, "also print the Tribonacci factor of each iterate");

  // fieldcheck
  auto* fieldcheck = app.add_subcommand("fieldcheck", "real roots, irreducibility and Pisot checks");
  int c_n = 3;
  long c_bound = 200;
  fieldcheck->add_option("--n", c_n, "degree")->required()->check(CLI::Range(2, 64));
  auto* bound_opt = fieldcheck->add_option("--bound", c_bound, "largest prime tried for an irreducibility witness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    std::map<std::string, std::string> cfg;
    if (!config_path.empty()) cfg = read_config(config_path);
    SuiteOptions opts;
    opts.renormalization_samples = config_int(cfg, "renormalization_samples", opts.renormalization_samples);
    opts.sweep_count = config_int(cfg, "sweep_count", opts.sweep_count);
    opts.seed = static_cast<uint64_t>(config_int(cfg, "seed", static_cast<int>(opts.seed)));
    if (bound_opt->count() == 0) c_bound = config_int(cfg, "witness_bound", static_cast<int>(c_bound));

    if (*verify) {
      Context ctx = context_for(v_g);
      std::vector<std::string> names;
      if (v_suite.empty()) {
        for (const auto& [n, fn] : all_suites()) names.push_back(n);
      } else {
        v_suite = suite_name(v_suite);
        names.push_back(v_suite);
        bool known = false;
        for (const auto& [n, fn] : all_suites()) known = known || n == v_suite;
        if (!known) throw UsageError("unknown suite \"" + v_suite + "\"");
      }
      bool ok = true;
      Json out = Json::array();
      for (const auto& n : names) {
        std::cerr << "running " << n << "\n";
        SuiteResult r = run_suite(n, ctx, opts);
        ok = ok && r.passed;
        if (v_json) {
          out.push_back({{"suite", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"counterexample", r.counterexample}});
        } else {
          std::cout << pad(r.name, 18) << (r.passed ? "PASS  " : "FAIL  ") << r.detail << "\n";
          if (!r.passed) std::cout << "  counterexample: " << r.counterexample << "\n";
        }
      }
      if (v_json) std::cout << Json{{"g", v_g}, {"passed", ok}, {"suites", out}}.dump(2) << "\n";
      return ok ? 0 : kExitFail;
    }

    if (*surface) {
      Context ctx = context_for(s_g);
      NFElem t = parse_value(ctx, s_t, "--t");
      if (t.sign() <= 0) throw UsageError("--t must be positive");
      RectSurface x = build_x(ctx, t);
      CylinderDecomp d = horizontal_cylinders(x);
      RayPosition p = ray_position(t);
      if (s_json) {
        std::cout << Json{{"t", to_literal(t)}, {"m", p.m}, {"s", to_literal(p.s)}, {"surface", to_json(x)}, {"cylinders", to_json(d)}}
                         .dump(2)
                  << "\n";
      } else {
        ConeData cd = cone_data(x);
        std::cout << "t = " << to_literal(t) << "  (m = " << p.m << ", s = " << to_literal(p.s) << ")\n";
        std::cout << "rectangles: " << x.rects.size() << ", genus " << cd.genus << ", area " << to_literal(cd.area) << "\n";
        for (const auto& c : cd.cones) std::cout << "cone " << to_string(c.label) << " angle " << c.quarter_turns << "*pi/2\n";
        std::cout << to_csv(d);
      }
      return 0;
    }

    if (*family) {
      Context ctx = context_for(f_g);
      std::cout << family_csv(ctx, parse_value(ctx, f_tmin, "--t-min"), parse_value(ctx, f_tmax, "--t-max"), f_steps);
      return 0;
    }

    if (*otypes) {
      Context ctx = context_for(3);
      NFElem r = parse_value(ctx, o_r, "--r");
      auto comps = periodic_components(ay_rel_iet(ctx, r), o_cap);
      if (o_json) {
        Json arr = Json::array();
        for (const auto& c : comps)
          arr.push_back({{"lo", to_literal(c.lo)}, {"hi", to_literal(c.hi)}, {"period", c.orbit.period}, {"type", c.orbit.orbit_type.str()}});
        Json types = Json::array();
        for (const auto& t : orbit_types(comps)) types.push_back(t.str());
        std::cout << Json{{"r", to_literal(r)}, {"components", arr}, {"types", types}}.dump(2) << "\n";
      } else {
        std::cout << "lo,hi,period,type\n";
        for (const auto& c : comps)
          std::cout << csv_field(to_literal(c.lo)) << ',' << csv_field(to_literal(c.hi)) << ',' << c.orbit.period << ','
                    << c.orbit.orbit_type.str() << "\n";
        std::cout << "# types:";
        for (const auto& t : orbit_types(comps)) std::cout << ' ' << t.str();
        std::cout << "\n";
      }
      return 0;
    }

    if (*apath) {
      Context ctx = context_for(3);
      NFElem r = parse_value(ctx, a_r, "--r"), x = parse_value(ctx, a_start, "--start");
      LatticePath path = arithmetic_orbit(ctx, r, x, a_cap);
      if (!a_svg.empty()) {
        std::ofstream out(a_svg);
        if (!out) throw UsageError("cannot write " + a_svg);
        out << emit_path(path, PathFormat::Svg);
      }
      if (a_json) {
        std::cout << emit_path(path, PathFormat::Json);
      } else {
        std::cout << "steps " << path.steps << (path.closed ? ", closed" : ", not closed within the cap") << ", end ("
                  << path.points.back().first << ", " << path.points.back().second << ")\n";
      }
      return path.closed || r.is_zero() ? 0 : kExitFail;
    }

    if (*subst) {
      OrbitWord seed;
      try {
        seed = OrbitWord::parse(u_seed);
      } catch (const Error& e) {
        throw UsageError(std::string("--seed: ") + e.what());
      }
      std::vector<int> w;
      for (char c : u_seed) w.push_back(c - '0');
      for (const auto& x : substitution_orbit(w, u_iters)) {
        std::cout << word_string(x);
        if (u_tri) std::cout << ' ' << tribonacci_factor(x);
        std::cout << "\n";
      }
      return 0;
    }

    if (*fieldcheck) {
      IntPoly gp = ay_minpoly(c_n), hp = ay_reciprocal_poly(c_n);
      int rg = sturm_real_roots(gp), rh = sturm_real_roots(hp);
      int64_t witness = find_irreducibility_witness(gp, c_bound);
      bool pisot = is_pisot(hp, 1e-6);
      std::cout << "real-roots(g)=" << rg << "\n";
      std::cout << "real-roots(h)=" << rh << "\n";
      if (witness) std::cout << "irreducible-mod=" << witness << "\n";
      else std::cout << "irreducible-mod=none (no witness up to " << c_bound << ")\n";
      std::cout << "pisot=" << (pisot ? "true" : "false") << "\n";
      const int want = c_n % 2 ? 1 : 2;
      return rg == want && rh == want && pisot ? 0 : kExitFail;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::ParseError ? kExitUsage : kExitFail;
  }
  return 0;
}
