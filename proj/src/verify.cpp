#include "sdgeom/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sdgeom/ansatz.hpp"
#include "sdgeom/corpus.hpp"
#include "sdgeom/curvature.hpp"
#include "sdgeom/dirac.hpp"
#include "sdgeom/expr.hpp"
#include "sdgeom/frames.hpp"
#include "sdgeom/jet_kernels.hpp"
#include "sdgeom/kahler.hpp"
#include "sdgeom/morphism.hpp"
#include "sdgeom/random.hpp"

#ifndef SDGEOM_SCENARIO_DIR
#define SDGEOM_SCENARIO_DIR "scenarios"
#endif

namespace sdgeom {

struct Model {
  std::optional<MetricField> metric;
  std::optional<MorphismDatum> morph;
  std::function<ChartPoint(const ChartPoint&)> to_morph;
  std::optional<BaseOneForm> locconn_A;
  std::optional<KahlerDatum> kahler;
  std::optional<FrameOneForm> form;
  std::function<Vec4(const ChartPoint&)> to_sphere;
  bool gh = false;
  Expr gh_u;
  std::array<Expr, 3> gh_A;
  std::vector<QuaternionField> dirac;
  FieldFn lambda;
  bool ode_constants = false;
  double cM = 0.0, cN = 0.0;
  int n = 3;
  std::optional<Expr> lambda_exact;
};

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------------------
// Assertion catalogue.

enum class Need { Metric, Morph, Locconn, Form, Wave, GH, Kahler, Dirac, Lambda, Ode, Exact };
enum class Bound { Upper, LowerMedian, LowerMin, Indicator };

struct AssertionDef {
  const char* name;
  int nargs;  // -1: one word
  Need need;
  Bound bound;
};

constexpr AssertionDef kAssertions[] = {
    {"riemann_zero", 0, Need::Metric, Bound::Upper},
    {"ricci_zero", 0, Need::Metric, Bound::Upper},
    {"einstein_zero", 0, Need::Metric, Bound::Upper},
    {"weyl_half_zero", 0, Need::Metric, Bound::Upper},
    {"constant_curvature", 1, Need::Metric, Bound::Upper},
    {"einstein_constant", 1, Need::Metric, Bound::Upper},
    {"negative_einstein", 0, Need::Metric, Bound::LowerMedian},
    {"monopole_zero", 0, Need::GH, Bound::Upper},
    {"monopole_nonzero", 0, Need::GH, Bound::LowerMedian},
    {"beltrami_zero", 1, Need::Form, Bound::Upper},
    {"beltrami_nonzero", 1, Need::Form, Bound::LowerMedian},
    {"coclosed_zero", 0, Need::Form, Bound::Upper},
    {"vector_wave_zero", 1, Need::Wave, Bound::Upper},
    {"unified_zero", 0, Need::Morph, Bound::Upper},
    {"constant_c", 1, Need::Morph, Bound::Upper},
    {"ricci_identities", 1, Need::Morph, Bound::Upper},
    {"riccixy_zero", 0, Need::Morph, Bound::Upper},
    {"base_ricci", 1, Need::Morph, Bound::Upper},
    {"locconn_zero", 1, Need::Locconn, Bound::Upper},
    {"locconn_nonzero", 1, Need::Locconn, Bound::LowerMedian},
    {"classification", -1, Need::Morph, Bound::Indicator},
    {"kahler_zero", 0, Need::Kahler, Bound::Upper},
    {"kahler_nonzero", 0, Need::Kahler, Bound::LowerMedian},
    {"dirac_identity", 0, Need::Dirac, Bound::Upper},
    {"dirac_flipped", 0, Need::Dirac, Bound::LowerMin},
    {"dirac_decomposition", 0, Need::Dirac, Bound::Upper},
    {"lambda_exact", 0, Need::Exact, Bound::Upper},
    {"ode_residual", 0, Need::Ode, Bound::Upper},
};

const AssertionDef* find_assertion(const std::string& name) {
  for (const auto& d : kAssertions)
    if (name == d.name) return &d;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Text helpers.

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  if (line > 0) throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
  throw ConfigError(origin + ": " + msg);
}

std::optional<double> to_number(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<double> number_list(const std::string& s, const std::string& origin, int line) {
  std::vector<double> out;
  for (const auto& tok : split_list(s)) {
    const auto v = to_number(tok);
    if (!v) fail(origin, line, "expected a number, got '" + tok + "'");
    out.push_back(*v);
  }
  return out;
}

/// "head(a, b, c)" -> {head, "a, b, c"}; no parentheses -> {s, ""}.
std::pair<std::string, std::string> call_form(const std::string& s, const std::string& origin, int line) {
  const std::string t = trim(s);
  const auto open = t.find('(');
  if (open == std::string::npos) return {t, ""};
  if (t.back() != ')') fail(origin, line, "unbalanced parentheses in '" + t + "'");
  return {trim(t.substr(0, open)), t.substr(open + 1, t.size() - open - 2)};
}

// ---------------------------------------------------------------------------
// Field section reader.

class Fields {
 public:
  Fields(const Scenario& s, std::set<std::string> allowed) : s_(s) {
    for (const auto& f : s.fields) {
      if (!allowed.count(f.key))
        fail(s.path, f.line, "unknown field '" + f.key + "' for ansatz " + ansatz_name(s.ansatz));
    }
  }

  const FieldEntry* get(const std::string& key) const {
    for (const auto& f : s_.fields)
      if (f.key == key) return &f;
    return nullptr;
  }
  bool has(const std::string& key) const { return get(key) != nullptr; }

  double number(const std::string& key, double fallback) const {
    const FieldEntry* f = get(key);
    if (!f) return fallback;
    const auto v = to_number(f->value);
    if (!v) fail(s_.path, f->line, "field '" + key + "' must be a number");
    return *v;
  }

  double required_number(const std::string& key) const {
    if (!has(key)) fail(s_.path, 0, "missing field '" + key + "'");
    return number(key, 0.0);
  }

  Expr expr(const FieldEntry& f, Chart chart) const {
    Expr e;
    try {
      e = parse_expr(f.value);
    } catch (const ParseError& err) {
      fail(s_.path, f.line, "field '" + f.key + "': column " + std::to_string(err.offset() + 1) + ": " + err.what());
    }
    try {
      require_chart_symbols(e, chart);
    } catch (const std::invalid_argument& err) {
      fail(s_.path, f.line, "field '" + f.key + "': " + err.what());
    }
    return e;
  }

  std::optional<Expr> expr(const std::string& key, Chart chart) const {
    const FieldEntry* f = get(key);
    if (!f) return std::nullopt;
    return expr(*f, chart);
  }

  /// "left_invariant(a, b, c)".
  std::optional<std::array<double, 3>> left_invariant(const FieldEntry& f) const {
    const auto [head, args] = call_form(f.value, s_.path, f.line);
    if (head != "left_invariant") return std::nullopt;
    const auto v = number_list(args, s_.path, f.line);
    if (v.size() != 3) fail(s_.path, f.line, "left_invariant takes three coefficients");
    return std::array<double, 3>{v[0], v[1], v[2]};
  }

  /// A = left_invariant(...) or A1..A3 as ambient expressions.
  std::optional<FrameOneForm> sphere_form(double radius) const {
    const FieldEntry* a = get("A");
    const bool comps = has("A1") || has("A2") || has("A3");
    if (a && comps) fail(s_.path, a->line, "give either A or A1..A3, not both");
    if (a) {
      const auto li = left_invariant(*a);
      if (!li) fail(s_.path, a->line, "unknown one-form '" + a->value + "'");
      return FrameOneForm::left_invariant((*li)[0], (*li)[1], (*li)[2], radius);
    }
    if (!comps) return std::nullopt;
    std::array<Expr, 3> e;
    for (int j = 0; j < 3; ++j) {
      if (auto x = expr("A" + std::to_string(j + 1), Chart::S3_AMBIENT)) e[static_cast<std::size_t>(j)] = *x;
    }
    return FrameOneForm::from_exprs(e[0], e[1], e[2], radius);
  }

  BaseGeometry base() const {
    const FieldEntry* f = get("base");
    const double r = number("radius", 1.0);
    if (!(r > 0.0)) fail(s_.path, get("radius")->line, "radius must be positive");
    if (!f || f->value == "flat") {
      if (has("radius")) fail(s_.path, get("radius")->line, "radius applies to the sphere base only");
      return BaseGeometry::flat();
    }
    if (f->value == "sphere") return BaseGeometry::sphere(r);
    fail(s_.path, f->line, "unknown base '" + f->value + "' (flat, sphere)");
  }

 private:
  const Scenario& s_;
};

bool uses_base_symbols(const Expr& e) {
  for (Symbol s : {Symbol::X1, Symbol::X2, Symbol::X3, Symbol::X4, Symbol::Y1, Symbol::Y2, Symbol::Y3})
    if (e.uses(s)) return true;
  return false;
}

ChartPoint beltrami_to_product(const ChartPoint& p) {
  const Vec4 x(p[0], p[1], p[2], p[3]);
  const double rho = x.norm();
  if (!(rho > 0.0)) throw DomainError("the Beltrami ansatz is singular at the origin");
  const Vec3 y = ambient_to_stereo(x / rho, 1.0);
  ChartPoint q;
  q.chart = Chart::PRODUCT_RHO_STEREO;
  q.coords = {0.5 * rho * rho, y[0], y[1], y[2]};
  q.radius = 1.0;
  return q;
}

Vec4 ambient_direction(const ChartPoint& p) {
  const Vec4 x(p[0], p[1], p[2], p[3]);
  const double n = x.norm();
  if (!(n > 0.0)) throw DomainError("point at the origin");
  return x / n;
}

ChartPoint identity_point(const ChartPoint& p) { return p; }

// ---------------------------------------------------------------------------
// Model construction per ansatz. Returns the singular sets implied by the data.

std::set<std::string> build_model(const Scenario& s, Model& m) {
  std::set<std::string> singular;
  m.to_morph = identity_point;
  switch (s.ansatz) {
    case Ansatz::GH: {
      Fields f(s, {"datum", "u", "A1", "A2", "A3", "dA1", "dA2", "dA3"});
      Expr u = parse_expr("1");
      std::array<Expr, 3> A = {parse_expr("0"), parse_expr("0"), parse_expr("0")};
      if (const FieldEntry* d = f.get("datum")) {
        if (d->value != "taub_nut_like") fail(s.path, d->line, "unknown GH datum '" + d->value + "'");
        u = taub_nut_u();
        A = taub_nut_potential();
        singular.insert("axis");
      }
      if (auto e = f.expr("u", Chart::R1xR3)) u = *e;
      for (int j = 0; j < 3; ++j) {
        const std::string k = std::to_string(j + 1);
        if (auto e = f.expr("A" + k, Chart::R1xR3)) A[static_cast<std::size_t>(j)] = *e;
        if (auto e = f.expr("dA" + k, Chart::R1xR3)) A[static_cast<std::size_t>(j)] = A[static_cast<std::size_t>(j)] + *e;
      }
      if (!u.is_constant()) singular.insert("origin");
      m.gh = true;
      m.gh_u = u;
      m.gh_A = A;
      const GHDatum d = gh_datum(u, A, s.name);
      m.metric = gh_metric(d);
      m.morph = bryant_from_gh(d);
      m.kahler = kahler_datum_gh(d);
      break;
    }
    case Ansatz::BELTRAMI: {
      Fields f(s, {"A", "A1", "A2", "A3"});
      auto A = f.sphere_form(1.0);
      if (!A) A = FrameOneForm::zero(1.0);
      m.form = *A;
      m.to_sphere = ambient_direction;
      const BeltramiDatum d{*A, s.name};
      m.metric = beltrami_metric(d);
      m.morph = bryant_from_beltrami(*A);
      m.to_morph = beltrami_to_product;
      m.locconn_A = pullback_frame_form(*A);
      m.kahler = kahler_datum_beltrami(d);
      singular.insert("origin");
      break;
    }
    case Ansatz::WARPED: {
      Fields f(s, {"base", "radius", "cM", "cN", "lambda", "lambda0", "t0", "branch", "lambda_exact"});
      WarpedDatum d;
      d.base = f.base();
      d.name = s.name;
      m.ode_constants = f.has("cM") && f.has("cN");
      m.cM = f.number("cM", 0.0);
      m.cN = f.number("cN", 0.0);
      d.cM = m.cM;
      d.cN = m.cN;
      const Chart chart = d.base.product_chart();
      const FieldEntry* lam = f.get("lambda");
      if (!lam) fail(s.path, 0, "missing field 'lambda'");
      if (lam->value == "ode") {
        if (!m.ode_constants) fail(s.path, lam->line, "lambda = ode needs cM and cN");
        const double t0 = f.required_number("t0");
        const double l0 = f.required_number("lambda0");
        const double br = f.number("branch", 1.0);
        if (br != 1.0 && br != -1.0) fail(s.path, f.get("branch")->line, "branch must be 1 or -1");
        const double lo = s.sampling.lo.empty() ? t0 : s.sampling.lo[0];
        const double hi = s.sampling.hi.empty() ? t0 : s.sampling.hi[0];
        if (t0 < lo || t0 > hi) fail(s.path, f.get("t0")->line, "t0 must lie in the sampled t-interval");
        try {
          const WarpedSolution sol = warped_ode_solve(m.cM, m.cN, 3, l0, t0, lo, hi, static_cast<int>(br));
          m.lambda = sol.as_field();
        } catch (const std::domain_error& e) {
          fail(s.path, lam->line, e.what());
        }
      } else {
        const Expr e = f.expr(*lam, chart);
        if (uses_base_symbols(e)) fail(s.path, lam->line, "lambda may depend on t only");
        m.lambda = field_from_expr(e, chart);
      }
      if (auto e = f.expr("lambda_exact", chart)) {
        if (uses_base_symbols(*e)) fail(s.path, f.get("lambda_exact")->line, "lambda_exact may depend on t only");
        m.lambda_exact = *e;
      }
      d.lambda = m.lambda;
      m.metric = warped_metric(d);
      break;
    }
    case Ansatz::BRYANT: {
      Fields f(s, {"datum", "base", "radius", "lambda", "a1", "a2", "a3"});
      if (const FieldEntry* dd = f.get("datum")) {
        for (const char* k : {"base", "radius", "lambda", "a1", "a2", "a3"})
          if (f.has(k)) fail(s.path, f.get(k)->line, std::string("field '") + k + "' conflicts with datum");
        const auto [head, arg] = call_form(dd->value, s.path, dd->line);
        if (head == "gh" && trim(arg) == "taub_nut_like") {
          m.morph = bryant_from_gh(taub_nut_like());
          singular.insert("origin");
          singular.insert("axis");
        } else if (head == "beltrami") {
          const FieldEntry inner{"datum", trim(arg), dd->line};
          const auto li = f.left_invariant(inner);
          if (!li) fail(s.path, dd->line, "beltrami(...) takes left_invariant(a, b, c)");
          const FrameOneForm A = FrameOneForm::left_invariant((*li)[0], (*li)[1], (*li)[2], 1.0);
          m.morph = bryant_from_beltrami(A);
          m.locconn_A = pullback_frame_form(A);
          m.form = A;
          m.to_sphere = [](const ChartPoint& p) { return stereo_to_ambient(Vec3(p[1], p[2], p[3]), 1.0); };
          singular.insert("nonpositive_t");
        } else if (head == "hyperbolic_warped" && arg.empty()) {
          m.morph = bryant_hyperbolic_warped();
          singular.insert("nonpositive_t");
        } else {
          fail(s.path, dd->line, "unknown Bryant datum '" + dd->value + "'");
        }
      } else {
        BryantDatum d;
        d.base = f.base();
        d.name = s.name;
        const Chart chart = d.base.product_chart();
        const auto lam = f.expr("lambda", chart);
        if (!lam) fail(s.path, 0, "missing field 'lambda'");
        d.lambda = field_from_expr(*lam, chart);
        d.a = zero_one_form();
        for (int j = 0; j < 3; ++j)
          if (auto e = f.expr("a" + std::to_string(j + 1), chart)) d.a[static_cast<std::size_t>(j)] = field_from_expr(*e, chart);
        m.morph = d;
      }
      m.metric = bryant_metric(*m.morph);
      break;
    }
    case Ansatz::HALF_SD: {
      Fields f(s, {"base", "radius", "A", "A1", "A2", "A3"});
      HalfSDDatum d;
      d.base = f.base();
      d.name = s.name;
      const Chart chart = d.base.product_chart();
      if (const FieldEntry* a = f.get("A")) {
        if (d.base.kind != BaseKind::Sphere) fail(s.path, a->line, "left-invariant forms need the sphere base");
        const auto form = f.sphere_form(d.base.radius);
        m.form = *form;
        const double R = d.base.radius;
        m.to_sphere = [R](const ChartPoint& p) { return stereo_to_ambient(Vec3(p[1], p[2], p[3]), R); };
        d.A = pullback_frame_form(*form);
      } else {
        d.A = zero_one_form();
        for (int j = 0; j < 3; ++j)
          if (auto e = f.expr("A" + std::to_string(j + 1), chart)) d.A[static_cast<std::size_t>(j)] = field_from_expr(*e, chart);
      }
      m.metric = half_sd_metric(d);
      singular.insert("nonpositive_t");
      break;
    }
    case Ansatz::DIRAC: {
      Fields f(s, {"random_fields", "field_seed", "f0", "f1", "f2", "f3"});
      const bool explicit_f = f.has("f0") || f.has("f1") || f.has("f2") || f.has("f3");
      if (f.has("random_fields")) {
        if (explicit_f) fail(s.path, f.get("random_fields")->line, "give either random_fields or f0..f3");
        const double n = f.number("random_fields", 1.0);
        if (n < 1.0 || n != std::floor(n)) fail(s.path, f.get("random_fields")->line, "random_fields must be a positive integer");
        const double seed = f.number("field_seed", 1.0);
        if (seed < 0.0 || seed != std::floor(seed)) fail(s.path, f.get("field_seed")->line, "field_seed must be a nonnegative integer");
        m.dirac = random_polynomial_fields(static_cast<std::uint64_t>(seed), static_cast<int>(n));
      } else {
        if (f.has("field_seed")) fail(s.path, f.get("field_seed")->line, "field_seed needs random_fields");
        std::array<Expr, 4> e = {parse_expr("0"), parse_expr("0"), parse_expr("0"), parse_expr("0")};
        for (int k = 0; k < 4; ++k)
          if (auto x = f.expr("f" + std::to_string(k), Chart::S3_AMBIENT)) e[static_cast<std::size_t>(k)] = *x;
        m.dirac.push_back(QuaternionField::from_exprs(e));
      }
      m.to_sphere = [](const ChartPoint& p) { return Vec4(p[0], p[1], p[2], p[3]); };
      break;
    }
    case Ansatz::BELTRAMI_PDE: {
      Fields f(s, {"A", "A1", "A2", "A3", "radius"});
      const double r = f.number("radius", 1.0);
      if (!(r > 0.0)) fail(s.path, f.get("radius")->line, "radius must be positive");
      auto A = f.sphere_form(r);
      if (!A) fail(s.path, 0, "missing field 'A'");
      m.form = *A;
      m.to_sphere = [](const ChartPoint& p) { return Vec4(p[0], p[1], p[2], p[3]); };
      break;
    }
  }
  return singular;
}

bool has_need(const Model& m, Need n) {
  switch (n) {
    case Need::Metric: return m.metric.has_value();
    case Need::Morph: return m.morph.has_value();
    case Need::Locconn: return m.morph.has_value() && m.locconn_A.has_value();
    case Need::Form: return m.form.has_value();
    case Need::Wave: return m.form.has_value() && !m.metric.has_value();
    case Need::GH: return m.gh;
    case Need::Kahler: return m.kahler.has_value();
    case Need::Dirac: return !m.dirac.empty();
    case Need::Lambda: return static_cast<bool>(m.lambda);
    case Need::Ode: return static_cast<bool>(m.lambda) && m.ode_constants;
    case Need::Exact: return static_cast<bool>(m.lambda) && m.lambda_exact.has_value();
  }
  return false;
}

Chart sampling_chart(const Scenario& s, const Model& m) {
  switch (s.ansatz) {
    case Ansatz::GH: return Chart::R1xR3;
    case Ansatz::BELTRAMI: return Chart::R4_CARTESIAN;
    case Ansatz::DIRAC:
    case Ansatz::BELTRAMI_PDE: return Chart::S3_AMBIENT;
    default: return m.metric->chart;
  }
}

bool interval_has_zero(const SamplingBox& b, int i) {
  return b.lo[static_cast<std::size_t>(i)] <= 0.0 && b.hi[static_cast<std::size_t>(i)] >= 0.0;
}

void check_singular(const Scenario& s, const std::set<std::string>& sets, int line) {
  const SamplingBox& b = s.sampling;
  for (const auto& name : sets) {
    bool meets = false;
    if (name == "origin") {
      if (b.domain == Domain::Shell) {
        meets = !(b.rho_lo > 0.0);
      } else if (b.domain == Domain::Box) {
        const int first = b.chart == Chart::R4_CARTESIAN ? 0 : 1;
        meets = true;
        for (int i = first; i < chart_dimension(b.chart); ++i) meets = meets && interval_has_zero(b, i);
      }
    } else if (name == "axis") {
      if (b.domain == Domain::Box) {
        const int first = b.chart == Chart::R4_CARTESIAN ? 0 : 1;
        meets = interval_has_zero(b, first) && interval_has_zero(b, first + 1);
      }
    } else if (name == "nonpositive_t") {
      if (b.domain == Domain::Box) meets = !(b.lo[0] > 0.0);
    } else {
      fail(s.path, line, "unknown singular set '" + name + "' (origin, axis, nonpositive_t)");
    }
    if (meets) fail(s.path, line, "sampling domain meets the singular set '" + name + "' of the field data");
  }
}

}  // namespace

// ---------------------------------------------------------------------------

const char* ansatz_name(Ansatz a) {
  switch (a) {
    case Ansatz::GH: return "GH";
    case Ansatz::WARPED: return "WARPED";
    case Ansatz::BELTRAMI: return "BELTRAMI";
    case Ansatz::BRYANT: return "BRYANT";
    case Ansatz::HALF_SD: return "HALF_SD";
    case Ansatz::DIRAC: return "DIRAC";
    case Ansatz::BELTRAMI_PDE: return "BELTRAMI_PDE";
  }
  return "?";
}

Ansatz ansatz_from_name(const std::string& name) {
  for (Ansatz a : {Ansatz::GH, Ansatz::WARPED, Ansatz::BELTRAMI, Ansatz::BRYANT, Ansatz::HALF_SD, Ansatz::DIRAC,
                   Ansatz::BELTRAMI_PDE})
    if (name == ansatz_name(a)) return a;
  throw ConfigError("unknown ansatz '" + name + "'");
}

std::vector<ChartPoint> sample_points(const SamplingBox& box, int count, std::uint64_t seed) {
  if (count < 1) throw ConfigError("sample count must be at least 1");
  SplitMix64 rng(seed);
  std::vector<ChartPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  switch (box.domain) {
    case Domain::Box: {
      const int dim = chart_dimension(box.chart);
      if (static_cast<int>(box.lo.size()) != dim || static_cast<int>(box.hi.size()) != dim)
        throw ConfigError("box needs " + std::to_string(dim) + " intervals for chart " + std::string(chart_name(box.chart)));
      for (int k = 0; k < dim; ++k)
        if (!(box.lo[static_cast<std::size_t>(k)] < box.hi[static_cast<std::size_t>(k)])) throw ConfigError("empty sampling box");
      for (int i = 0; i < count; ++i) {
        ChartPoint p;
        p.chart = box.chart;
        p.radius = box.radius;
        for (int k = 0; k < dim; ++k)
          p.coords[static_cast<std::size_t>(k)] = rng.uniform(box.lo[static_cast<std::size_t>(k)], box.hi[static_cast<std::size_t>(k)]);
        out.push_back(p);
      }
      break;
    }
    case Domain::Shell: {
      if (!(box.rho_lo < box.rho_hi) || !(box.rho_lo > 0.0)) throw ConfigError("empty sampling shell");
      for (int i = 0; i < count; ++i) {
        const Vec4 d = random_sphere_point(rng, 1.0);
        const double rho = rng.uniform(box.rho_lo, box.rho_hi);
        ChartPoint p;
        p.chart = Chart::R4_CARTESIAN;
        for (int k = 0; k < 4; ++k) p.coords[static_cast<std::size_t>(k)] = rho * d[k];
        out.push_back(p);
      }
      break;
    }
    case Domain::Sphere: {
      if (!(box.radius > 0.0)) throw ConfigError("sphere radius must be positive");
      for (int i = 0; i < count; ++i) {
        const Vec4 q = random_sphere_point(rng, box.radius);
        ChartPoint p;
        p.chart = Chart::S3_AMBIENT;
        p.radius = box.radius;
        for (int k = 0; k < 4; ++k) p.coords[static_cast<std::size_t>(k)] = q[k];
        out.push_back(p);
      }
      break;
    }
  }
  return out;
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  Scenario s;
  s.path = origin;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  std::map<std::string, int> seen;  // "section.key" -> line
  std::map<std::string, std::pair<std::string, int>> scen, samp;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find_first_of("#;");
    const std::string t = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') fail(origin, line, "malformed section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section != "scenario" && section != "fields" && section != "sampling" && section != "assertions")
        fail(origin, line, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) fail(origin, line, "expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (section.empty()) fail(origin, line, "key outside a section");
    if (key.empty()) fail(origin, line, "empty key");
    const std::string full = section + "." + key;
    if (seen.count(full)) fail(origin, line, "duplicate key '" + key + "' (first at line " + std::to_string(seen[full]) + ")");
    seen[full] = line;
    if (section == "scenario") {
      if (key != "name" && key != "ansatz" && key != "description") fail(origin, line, "unknown key '" + key + "' in [scenario]");
      scen[key] = {value, line};
    } else if (section == "fields") {
      s.fields.push_back({key, value, line});
    } else if (section == "sampling") {
      if (key != "domain" && key != "lo" && key != "hi" && key != "rho" && key != "count" && key != "seed" && key != "exclude")
        fail(origin, line, "unknown key '" + key + "' in [sampling]");
      samp[key] = {value, line};
    } else {
      AssertionSpec a;
      a.label = key;
      a.line = line;
      const auto [head, args] = call_form(key, origin, line);
      a.name = head;
      const AssertionDef* def = find_assertion(head);
      if (!def) fail(origin, line, "unknown assertion '" + head + "'");
      if (def->nargs == -1) {
        a.word = trim(args);
        if (a.word.empty()) fail(origin, line, "assertion '" + head + "' needs an argument");
      } else {
        a.args = number_list(args, origin, line);
        if (static_cast<int>(a.args.size()) != def->nargs)
          fail(origin, line, "assertion '" + head + "' takes " + std::to_string(def->nargs) + " argument(s)");
      }
      const auto thr = to_number(value);
      if (!thr || *thr < 0.0) fail(origin, line, "threshold must be a nonnegative number");
      a.threshold = *thr;
      s.assertions.push_back(a);
    }
  }

  if (!scen.count("name") || scen["name"].first.empty()) fail(origin, 0, "missing [scenario] name");
  if (!scen.count("ansatz")) fail(origin, 0, "missing [scenario] ansatz");
  s.name = scen["name"].first;
  if (scen.count("description")) s.description = scen["description"].first;
  try {
    s.ansatz = ansatz_from_name(scen["ansatz"].first);
  } catch (const ConfigError& e) {
    fail(origin, scen["ansatz"].second, e.what());
  }
  if (s.assertions.empty()) fail(origin, 0, "no assertions declared");

  // sampling, part one (the ODE solve needs the t-interval)
  const std::string dom = samp.count("domain") ? samp["domain"].first : "box";
  if (dom == "box") s.sampling.domain = Domain::Box;
  else if (dom == "shell") s.sampling.domain = Domain::Shell;
  else if (dom == "sphere") s.sampling.domain = Domain::Sphere;
  else fail(origin, samp["domain"].second, "unknown domain '" + dom + "' (box, shell, sphere)");
  if (samp.count("lo")) s.sampling.lo = number_list(samp["lo"].first, origin, samp["lo"].second);
  if (samp.count("hi")) s.sampling.hi = number_list(samp["hi"].first, origin, samp["hi"].second);
  if (samp.count("rho")) {
    const auto r = number_list(samp["rho"].first, origin, samp["rho"].second);
    if (r.size() != 2) fail(origin, samp["rho"].second, "rho takes two numbers");
    s.sampling.rho_lo = r[0];
    s.sampling.rho_hi = r[1];
  }
  if (samp.count("count")) {
    const auto c = to_number(samp["count"].first);
    if (!c || *c < 1.0 || *c != std::floor(*c)) fail(origin, samp["count"].second, "count must be a positive integer");
    s.count = static_cast<int>(*c);
  }
  if (samp.count("seed")) {
    const std::string& v = samp["seed"].first;
    char* end = nullptr;
    const unsigned long long seed = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size() || v.front() == '-') fail(origin, samp["seed"].second, "seed must be an unsigned integer");
    s.seed = seed;
  }
  if (samp.count("exclude")) s.exclude = split_list(samp["exclude"].first);

  auto model = std::make_shared<Model>();
  std::set<std::string> singular;
  try {
    singular = build_model(s, *model);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(origin, 0, std::string("cannot build the field data: ") + e.what());
  }

  s.sampling.chart = sampling_chart(s, *model);
  if (model->form) s.sampling.radius = model->form->radius;
  const int dl = samp.count("domain") ? samp["domain"].second : 0;
  switch (s.ansatz) {
    case Ansatz::BELTRAMI:
      if (s.sampling.domain == Domain::Sphere) fail(origin, dl, "BELTRAMI samples a box or a shell");
      break;
    case Ansatz::DIRAC:
    case Ansatz::BELTRAMI_PDE:
      if (s.sampling.domain != Domain::Sphere) fail(origin, dl, std::string(ansatz_name(s.ansatz)) + " samples the sphere");
      break;
    default:
      if (s.sampling.domain != Domain::Box) fail(origin, dl, std::string(ansatz_name(s.ansatz)) + " samples a box");
  }
  if (s.sampling.domain == Domain::Box) {
    const int dim = chart_dimension(s.sampling.chart);
    const int ll = samp.count("lo") ? samp["lo"].second : 0;
    if (static_cast<int>(s.sampling.lo.size()) != dim || static_cast<int>(s.sampling.hi.size()) != dim)
      fail(origin, ll, "lo and hi need " + std::to_string(dim) + " numbers for chart " + std::string(chart_name(s.sampling.chart)));
    for (int k = 0; k < dim; ++k)
      if (!(s.sampling.lo[static_cast<std::size_t>(k)] < s.sampling.hi[static_cast<std::size_t>(k)]))
        fail(origin, ll, "empty sampling box");
  } else if (s.sampling.domain == Domain::Shell) {
    if (!samp.count("rho")) fail(origin, dl, "shell sampling needs rho");
    if (!(s.sampling.rho_lo < s.sampling.rho_hi)) fail(origin, samp["rho"].second, "empty sampling shell");
  }
  if (s.sampling.domain != Domain::Box && (samp.count("lo") || samp.count("hi")))
    fail(origin, samp.count("lo") ? samp["lo"].second : samp["hi"].second, "lo/hi apply to box sampling only");

  for (const auto& e : s.exclude) singular.insert(e);
  check_singular(s, singular, samp.count("exclude") ? samp["exclude"].second : (samp.count("lo") ? samp["lo"].second : dl));

  for (const auto& a : s.assertions) {
    const AssertionDef* def = find_assertion(a.name);
    if (!has_need(*model, def->need))
      fail(origin, a.line, "assertion '" + a.name + "' does not apply to this " + ansatz_name(s.ansatz) + " scenario");
    if (a.name == "classification" && a.word != "GH" && a.word != "WARPED" && a.word != "BELTRAMI")
      fail(origin, a.line, "classification expects GH, WARPED or BELTRAMI");
    if ((a.name == "locconn_zero" || a.name == "locconn_nonzero") && a.args[0] == 0.0)
      fail(origin, a.line, "the local connection form needs c != 0");
  }
  s.model = model;
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open scenario file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path);
}

// ---------------------------------------------------------------------------
// Running.

namespace {

struct PointAux {
  int half = 0;
  int hodge = 0;
  int laplacian = 0;
};

// A sign is decided at a point when the other choice is clearly worse.
int decided_sign(double best, double other, int sign) {
  return other > 1e-6 + 100.0 * best ? sign : 0;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Vec4 sphere_point(const Model& m, const ChartPoint& p) { return m.to_sphere(p); }

double dirac_value(const Model& m, const std::string& name, const Vec4& q, int& lap) {
  double worst = 0.0;
  for (const auto& f : m.dirac) {
    if (name == "dirac_identity") {
      const DiracIdentity r = dirac_identity_residual(f, q);
      worst = std::max(worst, r.residual);
      const int s = decided_sign(r.residual, r.flipped, -1);
      const int t = decided_sign(r.flipped, r.residual, 1);
      const int here = s ? s : t;
      if (here) lap = (lap == 0 || lap == here) ? here : 2;
    } else if (name == "dirac_flipped") {
      const DiracIdentity r = dirac_identity_residual(f, q);
      worst = (&f == &m.dirac.front()) ? r.flipped : std::min(worst, r.flipped);
    } else {
      worst = std::max(worst, (dirac_apply(f, q) - dirac_from_forms(f, q)).norm());
    }
  }
  return worst;
}

double assertion_value(const Model& m, const AssertionSpec& a, const ChartPoint& p, const std::optional<CurvatureBundle>& b,
                PointAux& aux) {
  const std::string& n = a.name;
  if (n == "riemann_zero") return b->riemann_norm();
  if (n == "ricci_zero") return b->ricci_norm();
  if (n == "einstein_zero" || n == "negative_einstein") return einstein_residual(*b);
  if (n == "weyl_half_zero") {
    aux.half = b->vanishing_half();
    return b->weyl_half_min();
  }
  if (n == "constant_curvature") return constant_curvature_residual(*b, a.args[0]);
  if (n == "einstein_constant") return ricci_einstein_deviation(*b, a.args[0]);
  if (n == "monopole_zero" || n == "monopole_nonzero") return monopole_residual(m.gh_u, m.gh_A, Vec3(p[1], p[2], p[3])).norm();
  if (n == "beltrami_zero" || n == "beltrami_nonzero") return beltrami_residual(*m.form, a.args[0], sphere_point(m, p)).b.norm();
  if (n == "coclosed_zero") return std::abs(coclosed_residual(*m.form, sphere_point(m, p)));
  if (n == "vector_wave_zero") {
    const Vec4 q = sphere_point(m, p);
    const double c = a.args[0];
    const FrameOneForm B = vector_wave_to_beltrami(*m.form, c, {q});
    return (star_d(B, q).a - c * evaluate(B, q).a).norm();
  }
  if (n == "kahler_zero" || n == "kahler_nonzero") return kahler_form_residual(*m.kahler, p);
  if (n == "dirac_identity" || n == "dirac_flipped" || n == "dirac_decomposition") {
    int lap = 0;
    const double v = dirac_value(m, n, sphere_point(m, p), lap);
    if (n == "dirac_identity") aux.laplacian = lap == 2 ? 2 : lap;
    return v;
  }
  if (n == "lambda_exact") {
    const Jet2 l = m.lambda(seed_coordinates(p));
    return std::abs(l.value - eval_value(*m.lambda_exact, bind_chart(p.chart, p.coords)));
  }
  if (n == "ode_residual") {
    const Jet2 l = m.lambda(seed_coordinates(p));
    return std::abs(warped_ode_residual(m.cM, m.cN, m.n, l.value, l.d(0)));
  }
  const ChartPoint q = m.to_morph(p);
  if (n == "unified_zero") {
    const UnifiedResult r = unified_residual(*m.morph, q);
    aux.hodge = decided_sign(r.residual, r.residual_other, r.hodge_sign);
    return r.residual;
  }
  if (n == "constant_c") return std::abs(fundamental_derivative(*m.morph, q) - a.args[0]);
  if (n == "ricci_identities") return ricci_identities_residual(*m.morph, a.args[0], q).max();
  if (n == "riccixy_zero") {
    const RiccixyResult r = riccixy_residual(*m.morph, q);
    const int s = decided_sign(r.residual, r.residual_other, r.laplacian_sign);
    if (s) aux.laplacian = (aux.laplacian == 0 || aux.laplacian == s) ? s : 2;
    return r.residual;
  }
  if (n == "base_ricci") return base_ricci_residual(*m.morph, a.args[0], q);
  if (n == "locconn_zero" || n == "locconn_nonzero") return locconn_residual(*m.morph, *m.locconn_A, a.args[0], q);
  throw std::logic_error("unhandled assertion " + n);
}

std::optional<int> merge_signs(const std::vector<int>& signs) {
  std::optional<int> out;
  for (int s : signs) {
    if (s == 0) continue;
    if (s == 2) return 0;
    if (!out) out = s;
    else if (*out != s) return 0;
  }
  return out;
}

}  // namespace

bool VerificationReport::pass() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const AssertionResult& a) { return a.pass; });
}

VerificationReport run_scenario(const Scenario& s, const RunOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  if (!s.model) throw ConfigError(s.path + ": scenario was not validated");
  if (!(opt.tol_scale > 0.0)) throw ConfigError("tol-scale must be positive");
  const Model& m = *s.model;
  VerificationReport r;
  r.scenario = s.name;
  r.seed = opt.seed.value_or(s.seed);
  const int count = opt.samples.value_or(s.count);
  r.points = sample_points(s.sampling, count, r.seed);

  const std::size_t na = s.assertions.size();
  const std::size_t np = r.points.size();
  r.per_point.assign(na, std::vector<double>(np, kNaN));
  std::vector<std::vector<std::string>> errors(na, std::vector<std::string>(np));
  std::vector<PointAux> aux(np);
  std::vector<std::vector<int>> hodge(np), lap(np);
  std::vector<int> half(np, 0);

  bool need_bundle = false;
  for (const auto& a : s.assertions) need_bundle = need_bundle || find_assertion(a.name)->need == Need::Metric;

  auto work = [&](std::size_t i) {
    const ChartPoint& p = r.points[i];
    std::optional<CurvatureBundle> bundle;
    std::string bundle_error;
    if (need_bundle) {
      try {
        bundle = curvature_bundle(*m.metric, p);
      } catch (const std::exception& e) {
        bundle_error = e.what();
      }
    }
    for (std::size_t k = 0; k < na; ++k) {
      const AssertionSpec& a = s.assertions[k];
      if (a.name == "classification") continue;
      if (find_assertion(a.name)->need == Need::Metric && !bundle) {
        errors[k][i] = bundle_error;
        continue;
      }
      PointAux px;
      try {
        const double v = assertion_value(m, a, p, bundle, px);
        if (std::isfinite(v)) r.per_point[k][i] = v;
        else errors[k][i] = "non-finite residual";
      } catch (const std::exception& e) {
        errors[k][i] = e.what();
        continue;
      }
      if (a.name == "weyl_half_zero") half[i] = px.half;
      if (px.hodge) hodge[i].push_back(px.hodge);
      if (px.laplacian) lap[i].push_back(px.laplacian);
    }
  };

  int threads = opt.threads > 0 ? opt.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min<int>(threads, static_cast<int>(np));
  if (threads <= 1) {
    for (std::size_t i = 0; i < np; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < np; i = next++) work(i);
      });
    for (auto& th : pool) th.join();
  }

  for (std::size_t k = 0; k < na; ++k) {
    const AssertionSpec& a = s.assertions[k];
    const AssertionDef* def = find_assertion(a.name);
    AssertionResult res;
    res.name = a.label;
    res.samples = static_cast<int>(np);
    if (def->bound == Bound::Indicator) {
      std::vector<ChartPoint> q;
      try {
        for (const auto& p : r.points) q.push_back(m.to_morph(p));
        const Classification c = classify(*m.morph, q);
        const std::string want = a.word == "GH" ? construction_name(Construction::GibbonsHawking)
                                 : a.word == "WARPED" ? construction_name(Construction::Warped)
                                                      : construction_name(Construction::Beltrami);
        const double miss = want == construction_name(c.construction) ? 0.0 : 1.0;
        res.max = res.median = res.mean = miss;
        res.threshold = a.threshold;
        res.pass = miss <= a.threshold;
        std::ostringstream note;
        note.precision(6);
        note << construction_name(c.construction) << "; c mean " << c.c_mean << ", spread " << c.c_spread
             << "; |Omega| in [" << c.omega_min << ", " << c.omega_max << "]; |d_H lambda| in [" << c.dlambda_min
             << ", " << c.dlambda_max << "]";
        res.note = note.str();
        std::fill(r.per_point[k].begin(), r.per_point[k].end(), miss);
      } catch (const std::exception& e) {
        res.max = res.median = res.mean = kNaN;
        res.failed = res.samples;
        res.pass = false;
        res.note = e.what();
      }
      r.assertions.push_back(res);
      continue;
    }
    std::vector<double> ok;
    std::string first_error;
    for (std::size_t i = 0; i < np; ++i) {
      if (std::isnan(r.per_point[k][i])) {
        ++res.failed;
        if (first_error.empty()) first_error = errors[k][i];
      } else {
        ok.push_back(r.per_point[k][i]);
      }
    }
    res.threshold = def->bound == Bound::Upper ? a.threshold * opt.tol_scale : a.threshold;
    if (ok.empty()) {
      res.max = res.median = res.mean = kNaN;
    } else {
      double sum = 0.0;
      for (double v : ok) sum += v;
      res.max = *std::max_element(ok.begin(), ok.end());
      res.median = median_of(ok);
      res.mean = sum / static_cast<double>(ok.size());
    }
    const bool enough = !ok.empty() && res.failed * 100 <= res.samples;
    bool good = false;
    if (!ok.empty()) {
      switch (def->bound) {
        case Bound::Upper: good = res.max < res.threshold; break;
        case Bound::LowerMedian: good = res.median > res.threshold; break;
        case Bound::LowerMin: good = *std::min_element(ok.begin(), ok.end()) > res.threshold; break;
        case Bound::Indicator: break;
      }
    }
    res.pass = enough && good;
    if (def->bound == Bound::LowerMin && !ok.empty()) {
      std::ostringstream note;
      note.precision(6);
      note << "min " << *std::min_element(ok.begin(), ok.end());
      res.note = note.str();
    }
    if (res.failed > 0) res.note += (res.note.empty() ? "" : "; ") + std::to_string(res.failed) + " point(s) failed: " + first_error;
    if (a.name == "weyl_half_zero") {
      std::set<int> halves;
      for (std::size_t i = 0; i < np; ++i)
        if (!std::isnan(r.per_point[k][i])) halves.insert(half[i]);
      if (halves.size() > 1) {
        res.pass = false;
        r.weyl_half = "mixed";
        res.note += std::string(res.note.empty() ? "" : "; ") + "vanishing half changes between points";
      } else if (halves.size() == 1) {
        r.weyl_half = *halves.begin() > 0 ? "plus" : "minus";
      }
    }
    r.assertions.push_back(res);
  }

  std::vector<int> hs, ls;
  for (std::size_t i = 0; i < np; ++i) {
    hs.insert(hs.end(), hodge[i].begin(), hodge[i].end());
    ls.insert(ls.end(), lap[i].begin(), lap[i].end());
  }
  r.hodge_h_sign = merge_signs(hs);
  r.laplacian_sign = merge_signs(ls);
  if (opt.timing)
    r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return r;
}

namespace {

nlohmann::ordered_json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

nlohmann::ordered_json sign_json(const std::optional<int>& s) {
  if (!s) return nullptr;
  if (*s == 0) return "mixed";
  return *s;
}

}  // namespace

std::string report_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["scenario"] = r.scenario;
  j["seed"] = r.seed;
  j["assertions"] = nlohmann::ordered_json::array();
  for (const auto& a : r.assertions) {
    nlohmann::ordered_json e;
    e["name"] = a.name;
    e["samples"] = a.samples;
    e["max"] = number_or_null(a.max);
    e["median"] = number_or_null(a.median);
    e["mean"] = number_or_null(a.mean);
    e["threshold"] = a.threshold;
    e["pass"] = a.pass;
    e["failed"] = a.failed;
    if (!a.note.empty()) e["note"] = a.note;
    j["assertions"].push_back(e);
  }
  j["conventions"] = {{"weyl_half", r.weyl_half},
                      {"laplacian_sign", sign_json(r.laplacian_sign)},
                      {"hodge_h_sign", sign_json(r.hodge_h_sign)}};
  j["runtime_ms"] = r.runtime_ms;
  return j.dump(2) + "\n";
}

std::string report_csv(const VerificationReport& r) {
  std::ostringstream out;
  out << "index";
  const int dim = r.points.empty() ? 0 : r.points.front().dim();
  for (int k = 0; k < dim; ++k) out << ",x" << k;
  for (const auto& a : r.assertions) out << ",\"" << a.name << "\"";
  out << "\n";
  char buf[32];
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    out << i;
    for (int k = 0; k < dim; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", r.points[i][k]);
      out << "," << buf;
    }
    for (const auto& col : r.per_point) {
      if (std::isnan(col[i])) {
        out << ",nan";
      } else {
        std::snprintf(buf, sizeof buf, "%.17g", col[i]);
        out << "," << buf;
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string scenario_directory() {
  if (const char* env = std::getenv("SDGEOM_SCENARIOS")) return env;
  return SDGEOM_SCENARIO_DIR;
}

std::vector<std::string> bundled_scenarios() {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(scenario_directory(), ec))
    if (e.path().extension() == ".scn") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

std::vector<SelftestLine> run_selftest(std::uint64_t seed) {
  std::vector<SelftestLine> out;
  SplitMix64 rng(seed);
  auto random_jet = [&rng] {
    Jet2 j(rng.uniform(0.5, 2.0));
    for (auto& g : j.grad) g = rng.gaussian();
    for (int a = 0; a < kMaxDim; ++a)
      for (int b = a; b < kMaxDim; ++b) j.dd(a, b) = j.dd(b, a) = rng.gaussian();
    return j;
  };
  const simd::JetKernels& ref = simd::scalar_kernels();
  for (const simd::JetKernels* k : simd::available_kernels()) {
    if (k == &ref) continue;
    double mismatches = 0.0;
    for (int t = 0; t < 2000; ++t) {
      const Jet2 a = random_jet(), b = random_jet();
      const double f0 = rng.gaussian(), f1 = rng.gaussian(), f2 = rng.gaussian();
      Jet2 x, y;
      auto same = [&] { return std::memcmp(&x, &y, sizeof(Jet2)) == 0; };
      ref.add(a, b, x), k->add(a, b, y), mismatches += !same();
      ref.sub(a, b, x), k->sub(a, b, y), mismatches += !same();
      ref.mul(a, b, x), k->mul(a, b, y), mismatches += !same();
      ref.div(a, b, x), k->div(a, b, y), mismatches += !same();
      ref.chain(a, f0, f1, f2, x), k->chain(a, f0, f1, f2, y), mismatches += !same();
    }
    out.push_back({std::string("kernel_") + k->name + "_vs_scalar", mismatches, 0.0, mismatches == 0.0});
  }

  double grad = 0.0, hess = 0.0;
  for (const Expr& e : expression_corpus(seed, 40)) {
    for (int t = 0; t < 10; ++t) {
      ChartPoint p;
      p.chart = Chart::R4_CARTESIAN;
      for (int k = 0; k < 4; ++k) p.coords[static_cast<std::size_t>(k)] = rng.uniform(-1.0, 1.0);
      const Jet2 ad = eval_jet2(e, p);
      const Jet2 fd = fd_oracle(e, p);
      for (int a = 0; a < 4; ++a) {
        grad = std::max(grad, std::abs(ad.d(a) - fd.d(a)) / std::max(1.0, std::abs(fd.d(a))));
        for (int b = 0; b < 4; ++b)
          hess = std::max(hess, std::abs(ad.dd(a, b) - fd.dd(a, b)) / std::max(1.0, std::abs(fd.dd(a, b))));
      }
    }
  }
  out.push_back({"ad_vs_fd_gradient", grad, 1e-6, grad < 1e-6});
  out.push_back({"ad_vs_fd_hessian", hess, 1e-4, hess < 1e-4});
  return out;
}

}  // namespace sdgeom
