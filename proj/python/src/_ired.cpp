#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>

#include "ired/asymptotics.hpp"
#include "ired/error.hpp"
#include "ired/staruszkiewicz.hpp"
#include "ired/sympquant.hpp"
#include "ired/triangle.hpp"
#include "scenario.hpp"

namespace py = pybind11;
using namespace ired;

namespace {

using A3 = std::array<double, 3>;
using A4 = std::array<double, 4>;

Vec3 v3(const A3& a) { return {a[0], a[1], a[2]}; }
Vec4 v4(const A4& a) { return {a[0], a[1], a[2], a[3]}; }
A4 a4(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

std::vector<std::array<double, 4>> rows(const Tensor2& t) {
  std::vector<std::array<double, 4>> r(4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) r[a][b] = t(a, b);
  return r;
}

ShapeKind shape_kind(const std::string& s) {
  if (s == "step") return ShapeKind::Step;
  if (s == "gauss") return ShapeKind::Gauss;
  if (s == "bump") return ShapeKind::Bump;
  if (s == "hermite") return ShapeKind::Hermite;
  throw Error(ErrorKind::InconsistentInput, "unknown shape '" + s + "'");
}

std::vector<HarmonicCoeff> harmonics(const std::vector<std::tuple<int, int, double>>& c) {
  std::vector<HarmonicCoeff> out;
  for (const auto& [l, m, v] : c) out.push_back({l, m, v});
  return out;
}

const char* ir_label(const IrReport& r) { return r.kind == IrClass::Singular ? "singular" : "regular"; }

}  // namespace

PYBIND11_MODULE(_ired, m) {
  m.doc() = "Asymptotic electrodynamics: null data, matching, symplectic forms and the charged sector";

  py::register_exception<Error>(m, "IredError", PyExc_RuntimeError);

  m.def("four_velocity", [](const A3& dir, double rapidity) { return a4(four_velocity(normalized(v3(dir)), rapidity)); },
        py::arg("direction"), py::arg("rapidity"));
  m.def("sphere_quadrature", [](int order) {
    const auto q = sphere_quadrature(order);
    std::vector<A3> nodes;
    for (const Vec3& n : q.nodes) nodes.push_back({n.x, n.y, n.z});
    return py::make_tuple(nodes, q.weights);
  }, py::arg("order"));

  py::class_<PointParticle>(m, "Particle")
      .def(py::init([](double q, const A4& v) {
             PointParticle p{q, v4(v)};
             p.validate();
             return p;
           }),
           py::arg("q"), py::arg("v"))
      .def_readonly("q", &PointParticle::q)
      .def_property_readonly("v", [](const PointParticle& p) { return a4(p.v); });

  py::class_<ScatteringEvent>(m, "Event")
      .def(py::init([](std::vector<PointParticle> in, std::vector<PointParticle> out, double center, double width) {
             ScatteringEvent e{std::move(in), std::move(out), center, width};
             e.validate();
             return e;
           }),
           py::arg("incoming"), py::arg("outgoing"), py::arg("center") = 0.0, py::arg("width") = 1.0)
      .def("total_charge", &ScatteringEvent::total_charge)
      .def("current_profile", [](const ScatteringEvent& e, double s, const A3& n) {
        return a4(current_profile(e)(s, null_vector(normalized(v3(n)))));
      }, py::arg("s"), py::arg("n"));

  py::class_<FreeFieldData>(m, "FreeField")
      .def(py::init<>())
      .def("add_term",
           [](FreeFieldData& f, const std::string& shape, double center, double width, int index,
              const std::vector<std::tuple<int, int, double>>& amplitude, const A4& polarization, double gauge) {
             if (!(width > 0)) throw Error(ErrorKind::InvalidWidth, "width must be positive");
             f.terms.push_back({Shape{shape_kind(shape), center, width, index}, harmonics(amplitude), v4(polarization), gauge});
             return &f;
           },
           py::arg("shape"), py::arg("center") = 0.0, py::arg("width") = 1.0, py::arg("index") = 0,
           py::arg("amplitude") = std::vector<std::tuple<int, int, double>>{{0, 0, 1.0}},
           py::arg("polarization") = A4{0, 1, 0, 0}, py::arg("gauge") = 0.0, py::return_value_policy::reference_internal)
      .def("value", [](const FreeFieldData& f, double s, const A3& n) { return a4(f.value(s, null_vector(normalized(v3(n))))); },
           py::arg("s"), py::arg("n"))
      .def("minus_inf", [](const FreeFieldData& f, const A3& n) { return a4(f.minus_inf(null_vector(normalized(v3(n))))); },
           py::arg("n"))
      .def("ir_regular", &FreeFieldData::ir_regular)
      .def("__len__", [](const FreeFieldData& f) { return f.terms.size(); });

  m.def("kirchhoff_eval", [](const FreeFieldData& f, const A4& x, int order) {
    const FieldValue v = kirchhoff_eval(f.profile(), v4(x), sphere_quadrature(order));
    return py::make_tuple(a4(v.A), rows(v.F));
  }, py::arg("field"), py::arg("x"), py::arg("order") = 32);

  m.def("extract_null_asymptote", [](const FreeFieldData& f, const A4& x, const A3& n, int direction, int order) {
    const auto r = extract_null_asymptote(kirchhoff_sampler(f.profile(), order), v4(x), NullDirection(normalized(v3(n))), direction);
    py::dict d;
    d["V"] = a4(r.V);
    d["error"] = r.V_error;
    d["converged"] = r.converged;
    std::vector<std::pair<double, A4>> trace;
    for (const auto& [R, v] : r.trace) trace.emplace_back(R, a4(v));
    d["trace"] = trace;
    return d;
  }, py::arg("field"), py::arg("x"), py::arg("n"), py::arg("direction") = 1, py::arg("order") = 32);

  m.def("matching_verify", [](const ScatteringEvent& e, const FreeFieldData& in, int order, std::vector<double> s) {
    const auto t = total_asymptotes(e, in);
    py::dict d;
    for (const auto& r : matching_verify(t.V, t.V_past, t.Vj, sphere_quadrature(order), s, &t.out, &t.in_past))
      d[py::str(r.name)] = r.residual;
    return d;
  }, py::arg("event"), py::arg("in_field") = FreeFieldData{}, py::arg("order") = 8,
        py::arg("s") = std::vector<double>{-4, -1, 0, 1, 4});

  m.def("soft_relation", [](const ScatteringEvent& e, const FreeFieldData& in, const std::vector<A3>& dirs) {
    std::vector<Vec3> d;
    for (const auto& n : dirs) d.push_back(normalized(v3(n)));
    const auto r = soft_relation(e, in, d);
    py::dict out;
    out["residual"] = r.residual;
    out["in_class"] = ir_label(r.in_class);
    out["out_class"] = ir_label(r.out_class);
    return out;
  }, py::arg("event"), py::arg("in_field"), py::arg("directions"));

  m.def("symp_null", [](const FreeFieldData& a, const FreeFieldData& b) { return symp_null(a.profile(), b.profile()); },
        py::arg("a"), py::arg("b"));
  m.def("symp_cauchy", [](const FreeFieldData& a, const FreeFieldData& b, int field_order, int angular_order) {
    CauchyOptions o;
    o.field_order = field_order;
    o.angular_order = angular_order;
    const auto r = symp_cauchy(a.profile(), b.profile(), o);
    py::dict d;
    d["value"] = r.value;
    d["tail"] = r.tail;
    d["conclusive"] = r.conclusive;
    return d;
  }, py::arg("a"), py::arg("b"), py::arg("field_order") = 12, py::arg("angular_order") = 4);

  m.def("fock_product", [](const FreeFieldData& a, const FreeFieldData& b) {
    return fock_product(spectrum_of(a), spectrum_of(b));
  }, py::arg("a"), py::arg("b"));
  m.def("ir_divergence_scan", [](const FreeFieldData& f, const std::vector<double>& omega_min) {
    const auto r = ir_divergence_scan(spectrum_of(f), omega_min);
    py::dict d;
    d["points"] = r.points;
    d["slope"] = r.slope;
    d["intercept"] = r.intercept;
    d["predicted"] = r.predicted;
    return d;
  }, py::arg("field"), py::arg("omega_min"));

  m.def("s_field",
        [](const std::vector<std::tuple<int, int, double>>& D, const std::vector<std::tuple<int, int, double>>& c,
           const std::vector<std::pair<double, A4>>& coulomb, double e, const A4& v, const A4& x) {
          std::vector<std::pair<double, Vec4>> q;
          for (const auto& [charge, u] : coulomb) q.emplace_back(charge, v4(u));
          const auto r = s_field(StarData::from_harmonics(harmonics(D), harmonics(c), q, e), v4(v), v4(x));
          return py::make_tuple(r.value, r.near_cone);
        },
        py::arg("D"), py::arg("c"), py::arg("coulomb"), py::arg("e"), py::arg("v"), py::arg("x"));

  m.def("casimir", [](double z) {
    const auto c = casimir(z);
    const char* regime = c.regime == CasimirRegime::DiscreteSupplementary ? "discrete-supplementary"
                         : c.regime == CasimirRegime::Boundary            ? "boundary"
                                                                          : "continuous-only";
    return py::make_tuple(c.value, c.nu, regime);
  }, py::arg("z"));

  m.def("run_scenario_json", [](const std::string& text, std::optional<int> order, double tolerance_scale) {
    cli::Json doc;
    try {
      doc = cli::Json::parse(text);
    } catch (const cli::Json::parse_error& e) {
      throw Error(ErrorKind::Validation, std::string("malformed JSON: ") + e.what());
    }
    cli::Settings s;
    s.order = order;
    s.tolerance_scale = tolerance_scale;
    return cli::run_scenario(cli::parse_scenario(doc), s).to_json().dump();
  }, py::arg("text"), py::arg("order") = std::nullopt, py::arg("tolerance_scale") = 1.0);
}
