#include "scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "ired/asymptotics.hpp"
#include "ired/error.hpp"
#include "ired/sympquant.hpp"
#include "ired/triangle.hpp"

namespace ired::cli {

namespace {

constexpr const char* kKinds[] = {"gauss_constraint", "matching_verify",    "soft_relation",
                                  "symp_cross",       "null_extrapolation", "ir_scan"};

[[noreturn]] void invalid(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::Validation, "at " + (path.empty() ? std::string("/") : path) + ": " + msg);
}

const Json& member(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) invalid(path, "expected an object");
  if (!j.contains(key)) invalid(path + "/" + key, "missing");
  return j.at(key);
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) invalid(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) invalid(path, "not finite");
  return v;
}

double number_or(const Json& j, const std::string& path, const char* key, double fallback) {
  return j.contains(key) ? number(j.at(key), path + "/" + key) : fallback;
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) invalid(path, "expected an integer");
  return j.get<int>();
}

int integer_or(const Json& j, const std::string& path, const char* key, int fallback) {
  return j.contains(key) ? integer(j.at(key), path + "/" + key) : fallback;
}

std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) invalid(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> numbers(const Json& j, const std::string& path, std::size_t size = 0) {
  if (!j.is_array()) invalid(path, "expected an array");
  if (size && j.size() != size) invalid(path, "expected " + std::to_string(size) + " entries");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "/" + std::to_string(i)));
  return out;
}

Vec4 vec4(const Json& j, const std::string& path) {
  const auto v = numbers(j, path, 4);
  return {v[0], v[1], v[2], v[3]};
}

Vec3 vec3(const Json& j, const std::string& path) {
  const auto v = numbers(j, path, 3);
  return {v[0], v[1], v[2]};
}

Vec3 unit3(const Json& j, const std::string& path) {
  const Vec3 v = vec3(j, path);
  if (!(norm(v) > 0)) invalid(path, "zero direction");
  return normalized(v);
}

PointParticle particle(const Json& j, const std::string& path) {
  PointParticle p;
  p.q = number(member(j, path, "q"), path + "/q");
  if (j.contains("v")) {
    p.v = vec4(j.at("v"), path + "/v");
  } else if (j.contains("direction")) {
    p.v = four_velocity(unit3(j.at("direction"), path + "/direction"), number_or(j, path, "rapidity", 0));
  }
  try {
    p.validate();
  } catch (const Error& e) {
    invalid(path + "/v", e.what());
  }
  return p;
}

ScatteringEvent event(const Json& j, const std::string& path) {
  ScatteringEvent e;
  for (const char* side : {"incoming", "outgoing"}) {
    const std::string p = path + "/" + side;
    const Json& list = member(j, path, side);
    if (!list.is_array()) invalid(p, "expected an array");
    auto& dst = std::string(side) == "incoming" ? e.incoming : e.outgoing;
    for (std::size_t i = 0; i < list.size(); ++i) dst.push_back(particle(list[i], p + "/" + std::to_string(i)));
  }
  e.center = number_or(j, path, "center", 0);
  e.width = number_or(j, path, "width", 1);
  try {
    e.validate();
  } catch (const Error& err) {
    invalid(path, err.what());
  }
  return e;
}

ShapeKind shape_kind(const Json& j, const std::string& path) {
  const std::string s = text(j, path);
  if (s == "step") return ShapeKind::Step;
  if (s == "gauss") return ShapeKind::Gauss;
  if (s == "bump") return ShapeKind::Bump;
  if (s == "hermite") return ShapeKind::Hermite;
  invalid(path, "unknown shape '" + s + "' (step, gauss, bump, hermite)");
}

FreeFieldData field(const Json& j, const std::string& path) {
  FreeFieldData f;
  const Json& terms = member(j, path, "terms");
  if (!terms.is_array()) invalid(path + "/terms", "expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string p = path + "/terms/" + std::to_string(i);
    const Json& t = terms[i];
    FreeTerm term;
    term.shape.kind = shape_kind(member(t, p, "shape"), p + "/shape");
    term.shape.center = number_or(t, p, "center", 0);
    term.shape.width = number_or(t, p, "width", 1);
    if (!(term.shape.width > 0)) invalid(p + "/width", "must be positive");
    term.shape.index = integer_or(t, p, "index", 0);
    if (term.shape.index < 0) invalid(p + "/index", "must be non-negative");
    if (t.contains("amplitude")) {
      const Json& a = t.at("amplitude");
      if (!a.is_array()) invalid(p + "/amplitude", "expected an array of [l, m, value]");
      term.amplitude.clear();
      for (std::size_t k = 0; k < a.size(); ++k) {
        const std::string q = p + "/amplitude/" + std::to_string(k);
        if (!a[k].is_array() || a[k].size() != 3) invalid(q, "expected [l, m, value]");
        const int l = integer(a[k][0], q + "/0"), m = integer(a[k][1], q + "/1");
        if (l < 0 || std::abs(m) > l) invalid(q, "need l >= 0 and |m| <= l");
        term.amplitude.push_back({l, m, number(a[k][2], q + "/2")});
      }
    }
    if (t.contains("polarization")) term.polarization = vec4(t.at("polarization"), p + "/polarization");
    term.gauge = number_or(t, p, "gauge", 0);
    f.terms.push_back(term);
  }
  return f;
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{{"gauss_constraint", 1e-12}, {"matching_verify", 1e-8},
                                              {"soft_relation", 1e-6},     {"symp_cross", 1e-3},
                                              {"null_extrapolation", 1e-3}, {"ir_scan", 0.05}};
  return t;
}

void require_ref(const Json& params, const std::string& path, const char* key, const std::string& what,
                 const auto& table, bool optional = false) {
  if (!params.contains(key)) {
    if (optional) return;
    invalid(path + "/" + key, "missing");
  }
  const std::string name = text(params.at(key), path + "/" + key);
  if (!table.count(name)) invalid(path + "/" + key, "undefined " + what + " '" + name + "'");
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
  return s;
}

}  // namespace

Scenario parse_scenario(const Json& doc) {
  if (!doc.is_object()) invalid("", "expected an object");
  Scenario s;
  s.version = integer(member(doc, "", "version"), "/version");
  if (s.version != 1) invalid("/version", "unsupported version " + std::to_string(s.version));
  if (doc.contains("name")) s.name = text(doc.at("name"), "/name");
  if (doc.contains("constants")) {
    s.e = number_or(doc.at("constants"), "/constants", "e", 1);
    if (!(s.e > 0)) invalid("/constants/e", "must be positive");
  }
  if (doc.contains("quadrature")) {
    s.order = integer_or(doc.at("quadrature"), "/quadrature", "order", s.order);
    if (s.order < 1) invalid("/quadrature/order", "must be positive");
  }
  if (doc.contains("events")) {
    const Json& ev = doc.at("events");
    if (!ev.is_object()) invalid("/events", "expected an object");
    for (const auto& [k, v] : ev.items()) s.events[k] = event(v, "/events/" + k);
  }
  if (doc.contains("fields")) {
    const Json& fs = doc.at("fields");
    if (!fs.is_object()) invalid("/fields", "expected an object");
    for (const auto& [k, v] : fs.items()) s.fields[k] = field(v, "/fields/" + k);
  }

  const Json& checks = member(doc, "", "checks");
  if (!checks.is_array()) invalid("/checks", "expected an array");
  std::map<std::string, int> seen;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string p = "/checks/" + std::to_string(i);
    const Json& c = checks[i];
    CheckSpec spec;
    spec.kind = text(member(c, p, "check"), p + "/check");
    if (!default_tolerances().count(spec.kind)) {
      std::vector<std::string> known(std::begin(kKinds), std::end(kKinds));
      invalid(p + "/check", "unknown check '" + spec.kind + "' (" + join(known) + ")");
    }
    spec.tolerance = number_or(c, p, "tolerance", default_tolerances().at(spec.kind));
    if (!(spec.tolerance > 0)) invalid(p + "/tolerance", "must be positive");
    spec.params = c;

    if (spec.kind == "gauss_constraint" || spec.kind == "matching_verify") {
      require_ref(c, p, "event", "event", s.events);
      require_ref(c, p, "field", "field", s.fields, true);
    } else if (spec.kind == "soft_relation") {
      require_ref(c, p, "event", "event", s.events);
      require_ref(c, p, "field", "field", s.fields);
    } else if (spec.kind == "symp_cross") {
      require_ref(c, p, "field", "field", s.fields);
      require_ref(c, p, "field2", "field", s.fields);
    } else if (spec.kind == "null_extrapolation") {
      require_ref(c, p, "field", "field", s.fields);
      vec4(member(c, p, "x"), p + "/x");
      unit3(member(c, p, "direction"), p + "/direction");
      const int comp = integer_or(c, p, "component", 0);
      if (comp < 0 || comp > 3) invalid(p + "/component", "must be 0..3");
      const int sign = integer_or(c, p, "sign", 1);
      if (sign != 1 && sign != -1) invalid(p + "/sign", "must be 1 or -1");
    } else if (spec.kind == "ir_scan") {
      require_ref(c, p, "field", "field", s.fields);
      if (c.contains("omega_min")) {
        const auto w = numbers(c.at("omega_min"), p + "/omega_min");
        if (w.size() < 2) invalid(p + "/omega_min", "need at least two cutoffs");
        for (double x : w)
          if (!(x > 0)) invalid(p + "/omega_min", "cutoffs must be positive");
      }
    }
    if (c.contains("samples") && integer(c.at("samples"), p + "/samples") < 1) invalid(p + "/samples", "must be positive");
    if (c.contains("seed") && integer(c.at("seed"), p + "/seed") < 0) invalid(p + "/seed", "must be non-negative");
    if (c.contains("order") && integer(c.at("order"), p + "/order") < 1) invalid(p + "/order", "must be positive");
    if (c.contains("s_samples") && numbers(c.at("s_samples"), p + "/s_samples").empty())
      invalid(p + "/s_samples", "must not be empty");
    if (c.contains("directions")) {
      const Json& d = c.at("directions");
      if (!d.is_array() || d.empty()) invalid(p + "/directions", "expected a non-empty array");
      for (std::size_t k = 0; k < d.size(); ++k) unit3(d[k], p + "/directions/" + std::to_string(k));
    }

    std::string id = c.contains("id") ? text(c.at("id"), p + "/id") : spec.kind;
    if (const int n = ++seen[id]; n > 1) {
      if (c.contains("id")) invalid(p + "/id", "duplicate id '" + id + "'");
      id += "_" + std::to_string(n);
    }
    spec.id = id;
    s.checks.push_back(std::move(spec));
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Validation, std::string("malformed JSON in '") + path + "': " + e.what());
  }
  return parse_scenario(doc);
}

bool Report::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.pass; });
}

Json Report::to_json() const {
  Json j;
  j["version"] = 1;
  j["scenario"] = scenario;
  j["settings"] = {{"order", settings.order ? Json(*settings.order) : Json(nullptr)},
                   {"tolerance_scale", settings.tolerance_scale}};
  Json rs = Json::array();
  for (const Row& r : rows) {
    Json o;
    o["name"] = r.name;
    o["anchor"] = r.anchor;
    o["lhs"] = r.lhs;
    o["rhs"] = r.rhs;
    o["residual"] = r.residual;
    o["tolerance"] = r.tolerance;
    o["pass"] = r.pass;
    if (!r.error.empty()) o["error"] = r.error;
    if (!r.details.empty()) o["details"] = r.details;
    rs.push_back(o);
  }
  j["rows"] = rs;
  Json ss = Json::array();
  for (const Series& s : series) ss.push_back({{"name", s.name}, {"columns", s.columns}, {"points", s.rows.size()}});
  j["series"] = ss;
  const auto failed = std::count_if(rows.begin(), rows.end(), [](const Row& r) { return !r.pass; });
  j["summary"] = {{"checks", rows.size()}, {"failed", failed}, {"pass", failed == 0}};
  return j;
}

namespace {

struct Context {
  const Scenario& s;
  const Settings& settings;
  int order(const Json& p, int fallback) const {
    if (settings.order) return *settings.order;
    return p.contains("order") ? p.at("order").get<int>() : fallback;
  }
};

FreeFieldData field_or_empty(const Scenario& s, const Json& p, const char* key = "field") {
  return p.contains(key) ? s.fields.at(p.at(key).get<std::string>()) : FreeFieldData{};
}

void gauss_constraint(const Context& c, const CheckSpec& spec, Row& row) {
  const auto& ev = c.s.events.at(spec.params.at("event").get<std::string>());
  const AsymptoteProfile V = current_profile(ev);
  const int samples = spec.params.value("samples", 1000);
  std::mt19937 g(spec.params.value("seed", 1));
  std::uniform_real_distribution<double> U(-1, 1);
  std::normal_distribution<double> N;
  const double q = ev.total_charge();
  row.rhs = q;
  row.lhs = q;
  for (int k = 0; k < samples; ++k) {
    const Vec3 n = normalized(Vec3{N(g), N(g), N(g)});
    const double scale = std::exp(0.7 * U(g));
    const double s = 10 * U(g) * ev.width + ev.center;
    const double val = dot(scale * null_vector(n), V(s * scale, scale * null_vector(n)));
    if (std::abs(val - q) > row.residual) {
      row.residual = std::abs(val - q);
      row.lhs = val;
    }
  }
}

void matching(const Context& c, const CheckSpec& spec, Row& row) {
  const auto& ev = c.s.events.at(spec.params.at("event").get<std::string>());
  const auto t = total_asymptotes(ev, field_or_empty(c.s, spec.params));
  std::vector<double> s_samples{-4, -1, 0, 1, 4};
  if (spec.params.contains("s_samples")) s_samples = spec.params.at("s_samples").get<std::vector<double>>();
  const auto rows = matching_verify(t.V, t.V_past, t.Vj, sphere_quadrature(c.order(spec.params, c.s.order)), s_samples,
                                    &t.out, &t.in_past);
  for (const auto& r : rows) {
    row.details.push_back({{"relation", r.name}, {"residual", r.residual}});
    row.residual = std::max(row.residual, r.residual);
  }
  row.lhs = row.residual;
}

void soft(const Context& c, const CheckSpec& spec, Row& row) {
  const auto& ev = c.s.events.at(spec.params.at("event").get<std::string>());
  std::vector<Vec3> dirs{Vec3{0, 0, 1}, normalized(Vec3{1, 1, 0}), normalized(Vec3{-0.3, 0.2, -0.9})};
  if (spec.params.contains("directions")) {
    dirs.clear();
    for (const auto& d : spec.params.at("directions"))
      dirs.push_back(normalized(Vec3{d[0].get<double>(), d[1].get<double>(), d[2].get<double>()}));
  }
  const auto r = soft_relation(ev, field_or_empty(c.s, spec.params), dirs);
  double worst = -1;
  for (std::size_t i = 0; i < r.lhs.size(); ++i) {
    const double d = max_abs(r.lhs[i] - r.rhs[i]);
    if (d > worst) {
      worst = d;
      row.lhs = r.lhs[i][0];
      row.rhs = r.rhs[i][0];
    }
  }
  row.residual = r.residual;
  const auto label = [](const IrReport& c) { return std::string(c.kind == IrClass::Singular ? "singular" : "regular"); };
  row.details.push_back(Json{{"in", label(r.in_class)}, {"out", label(r.out_class)}});
}

void symp_cross(const Context& c, const CheckSpec& spec, Row& row) {
  const auto a = field_or_empty(c.s, spec.params).profile();
  const auto b = field_or_empty(c.s, spec.params, "field2").profile();
  CauchyOptions opts;
  opts.field_order = c.order(spec.params, opts.field_order);
  row.lhs = symp_null(a, b);
  const CauchyResult r = symp_cauchy(a, b, opts);
  row.rhs = r.value;
  row.residual = std::abs(row.lhs - row.rhs);
  row.details.push_back({{"tail", r.tail}, {"conclusive", r.conclusive}});
}

Series null_extrapolation(const Context& c, const CheckSpec& spec, Row& row) {
  const auto data = field_or_empty(c.s, spec.params).profile();
  const Json& p = spec.params;
  const Vec4 x{p["x"][0].get<double>(), p["x"][1].get<double>(), p["x"][2].get<double>(), p["x"][3].get<double>()};
  const NullDirection l(normalized(Vec3{p["direction"][0].get<double>(), p["direction"][1].get<double>(),
                                        p["direction"][2].get<double>()}));
  const int sign = p.value("sign", 1);
  const int comp = p.value("component", 0);
  const auto ex = extract_null_asymptote(kirchhoff_sampler(data, c.order(p, 32)), x, l, sign);
  const double s = dot(x, l.l());
  const Vec4 exact = sign > 0 ? data(s, l.l()) : data.minus_inf(l.l()) - data(s, l.l());
  row.lhs = ex.V[comp];
  row.rhs = exact[comp];
  row.residual = max_abs(ex.V - exact);
  row.details.push_back({{"error_estimate", ex.V_error}, {"converged", ex.converged}});

  Series out;
  out.name = spec.id;
  out.relation = "lim R A(x + R l) = V(x.l, l) as R -> infinity";
  out.columns = {"R", "R*A_" + std::to_string(comp)};
  for (const auto& [R, v] : ex.trace) out.rows.push_back({R, v[comp]});
  return out;
}

Series ir_scan(const Context& c, const CheckSpec& spec, Row& row) {
  const auto f = field_or_empty(c.s, spec.params);
  std::vector<double> w{1e-2, 1e-3, 1e-4, 1e-5};
  if (spec.params.contains("omega_min")) w = spec.params.at("omega_min").get<std::vector<double>>();
  FockOptions opts;
  opts.sphere_order = c.order(spec.params, opts.sphere_order);
  const IrScan scan = ir_divergence_scan(spectrum_of(f), w, opts);
  row.lhs = scan.slope;
  row.rhs = scan.predicted;
  row.residual = std::abs(scan.slope - scan.predicted) / std::max(std::abs(scan.predicted), 1e-300);

  Series out;
  out.name = spec.id;
  out.relation = "(V,V) above omega_min grows like int |Vdot~(0,l)|^2 d^2l ln(1/omega_min)";
  out.columns = {"ln(1/omega_min)", "value"};
  for (const auto& [om, v] : scan.points) out.rows.push_back({std::log(1 / om), v});
  return out;
}

const std::map<std::string, std::string>& anchors() {
  static const std::map<std::string, std::string> a{
      {"gauss_constraint", "l.V^j(s,l) = sum q"},
      {"matching_verify", "V(-inf,l) = V'(+inf,l) with V = V^j + V^out, V' = V^j' + V^in'"},
      {"soft_relation", "2pi lim w a_out(w,l) + sum q v/(v.l) = 2pi lim w a_in(w,l) + sum q' v'/(v'.l)"},
      {"symp_cross", "{V1,V2} on null infinity = sigma(A1,A2) on t = 0"},
      {"null_extrapolation", "lim R A(x + R l) = V(x.l, l)"},
      {"ir_scan", "slope of (V,V) in ln(1/omega_min) = int |Vdot~(0,l)|^2 d^2l (relative residual)"}};
  return a;
}

}  // namespace

Report run_scenario(const Scenario& s, const Settings& settings) {
  if (!(settings.tolerance_scale > 0)) throw Error(ErrorKind::Validation, "tolerance scale must be positive");
  if (settings.order && *settings.order < 1) throw Error(ErrorKind::Validation, "order must be positive");
  Report rep;
  rep.scenario = s.name;
  rep.settings = settings;
  const Context ctx{s, settings};
  for (const CheckSpec& spec : s.checks) {
    Row row;
    row.name = spec.id;
    row.anchor = anchors().at(spec.kind);
    row.tolerance = spec.tolerance * settings.tolerance_scale;
    try {
      if (spec.kind == "gauss_constraint") gauss_constraint(ctx, spec, row);
      else if (spec.kind == "matching_verify") matching(ctx, spec, row);
      else if (spec.kind == "soft_relation") soft(ctx, spec, row);
      else if (spec.kind == "symp_cross") symp_cross(ctx, spec, row);
      else if (spec.kind == "null_extrapolation") rep.series.push_back(null_extrapolation(ctx, spec, row));
      else if (spec.kind == "ir_scan") rep.series.push_back(ir_scan(ctx, spec, row));
      row.pass = row.residual <= row.tolerance;
    } catch (const Error& e) {
      row.error = e.what();
      row.residual = std::nan("");
      row.pass = false;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::string format_series(const Series& s) {
  std::ostringstream out;
  out << "# series: " << s.name << "\n# relation: " << s.relation << "\n#";
  for (const auto& c : s.columns) out << ' ' << c;
  out << '\n';
  out.precision(17);
  for (const auto& r : s.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? " " : "") << r[i];
    out << '\n';
  }
  return out.str();
}

std::vector<std::string> emit_plotdata(const Report& r, const std::vector<std::string>& selection,
                                       const std::string& dir) {
  std::vector<const Series*> chosen;
  if (selection.empty()) {
    for (const auto& s : r.series) chosen.push_back(&s);
  } else {
    for (const auto& name : selection) {
      auto it = std::find_if(r.series.begin(), r.series.end(), [&](const Series& s) { return s.name == name; });
      if (it == r.series.end()) {
        std::vector<std::string> names;
        for (const auto& s : r.series) names.push_back(s.name);
        throw Error(ErrorKind::Validation,
                    "unknown series '" + name + "'; available: " + (names.empty() ? "(none)" : join(names)));
      }
      chosen.push_back(&*it);
    }
  }
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  for (const Series* s : chosen) {
    const std::string path = (std::filesystem::path(dir) / (s->name + ".dat")).string();
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
    out << format_series(*s);
    written.push_back(path);
  }
  return written;
}

int run_command(int argc, const char* const* argv) {
  CLI::App app{"Checks of asymptotic electrodynamics identities"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "run the checks of a scenario file");
  std::string scenario_path, report_path, plot_dir;
  std::vector<std::string> plots;
  std::optional<int> order;
  double scale = 1;
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--report", report_path, "write the JSON report here (stdout otherwise)");
  run->add_option("--plot-dir", plot_dir, "write plot-data files into this directory");
  run->add_option("--plot", plots, "series to write (default: all)");
  run->add_option("--order", order, "quadrature order override")->check(CLI::PositiveNumber);
  run->add_option("--tolerance-scale", scale, "multiply every tolerance")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Scenario s = load_scenario(scenario_path);
    Settings settings;
    settings.order = order;
    settings.tolerance_scale = scale;
    const Report rep = run_scenario(s, settings);
    const std::string text = rep.to_json().dump(2) + "\n";
    if (report_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(report_path, std::ios::binary);
      if (!out) throw Error(ErrorKind::Io, "cannot write '" + report_path + "'");
      out << text;
    }
    if (!plot_dir.empty() || !plots.empty()) emit_plotdata(rep, plots, plot_dir.empty() ? "." : plot_dir);
    for (const Row& r : rep.rows)
      std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << " residual " << r.residual << " tolerance "
                << r.tolerance << (r.error.empty() ? "" : " (" + r.error + ")") << '\n';
    return rep.all_pass() ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace ired::cli
