#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ired/error.hpp"
#include "ired/sympquant.hpp"
#include "support.hpp"

using namespace ired;
using namespace ired::testing;

namespace {

constexpr double kPi = std::numbers::pi;

FreeFieldData pulse(ShapeKind kind, double center, double width, int index, std::vector<HarmonicCoeff> amp,
                    const Vec4& e) {
  FreeFieldData d;
  d.terms.push_back({Shape{kind, center, width, index}, std::move(amp), e, 0.0});
  return d;
}

FreeFieldData combine(const FreeFieldData& a, double ca, const FreeFieldData& b, double cb) {
  FreeFieldData d;
  for (auto t : a.terms) {
    for (auto& h : t.amplitude) h.value *= ca;
    t.gauge *= ca;
    d.terms.push_back(t);
  }
  for (auto t : b.terms) {
    for (auto& h : t.amplitude) h.value *= cb;
    t.gauge *= cb;
    d.terms.push_back(t);
  }
  return d;
}

VectorFn tangent(const FreeTerm& t) {
  return vector_from_sphere(-1, [t](const Vec3& n) { return t.angular(n); });
}

// Pulses used for the slower Cauchy-slice checks.
std::pair<FreeFieldData, FreeFieldData> cauchy_pair() {
  FreeFieldData a, b;
  a.terms.push_back({Shape{ShapeKind::Gauss, 0.3, 1.0, 0}, {{1, 0, 10.0}}, Vec4{0, 1, 0, 0}, 0.0});
  a.terms.push_back({Shape{ShapeKind::Hermite, -0.2, 0.8, 1}, {{0, 0, 7.0}}, Vec4{0, 0, 0, 1}, 0.0});
  b.terms.push_back({Shape{ShapeKind::Hermite, -0.4, 1.2, 1}, {{1, 1, 6.0}, {0, 0, 4.0}}, Vec4{0, 1, 0.5, 0}, 0.0});
  b.terms.push_back({Shape{ShapeKind::Gauss, 0.5, 0.9, 0}, {{2, -1, 5.0}}, Vec4{0, 0, 1, 0}, 0.0});
  return {a, b};
}

}  // namespace

TEST_CASE("null form: closed form for two Gaussian pulses") {
  // amplitude Y00, polarization e_z: V.V' = f f' Y00^2 (n_z^2 - 1), sphere integral -2/3
  for (auto [a, b] : {std::pair{0.7, -0.4}, std::pair{0.0, 1.5}, std::pair{-1.0, -1.0}}) {
    const auto V1 = pulse(ShapeKind::Gauss, a, 1.0, 0, {{0, 0, 1.0}}, Vec4{0, 0, 0, 1});
    const auto V2 = pulse(ShapeKind::Gauss, b, 1.0, 0, {{0, 0, 1.0}}, Vec4{0, 0, 0, 1});
    const double d = a - b;
    const double exact = -2.0 / 3 / (4 * kPi) * 2 * d * std::sqrt(kPi / 2) * std::exp(-d * d / 2);
    CHECK(std::abs(symp_null(V1.profile(), V2.profile()) - exact) < 1e-8);
  }
}

TEST_CASE("null form: antisymmetry, bilinearity and gauge invariance") {
  std::mt19937 g(5);
  double worst = 0;
  for (int k = 0; k < 4; ++k) {
    const auto a = random_regular_field(g), b = random_regular_field(g), c = random_regular_field(g);
    const double ab = symp_null(a.profile(), b.profile());
    worst = std::max(worst, std::abs(ab + symp_null(b.profile(), a.profile())));
    worst = std::max(worst, std::abs(symp_null(a.profile(), a.profile())));
    const double lin = symp_null(combine(a, 0.7, c, -1.3).profile(), b.profile());
    worst = std::max(worst, std::abs(lin - 0.7 * ab + 1.3 * symp_null(c.profile(), b.profile())));

    auto shifted = a;
    shifted.terms[0].gauge = 0.8;
    shifted.terms[1].gauge = -0.5;
    worst = std::max(worst, std::abs(symp_null(shifted.profile(), b.profile()) - ab));
  }
  CHECK(worst < 1e-8);

  // infrared singular data is admitted by the symplectic form
  const auto s = sample_field();
  CHECK(std::isfinite(symp_null(s.profile(), random_regular_field(g).profile())));

  AsymptoteProfile slow = s.profile();
  slow.eps = 0;
  CHECK_THROWS_AS(symp_null(slow, s.profile()), Error);
}

TEST_CASE("Cauchy form on t = 0 against the null form") {
  const auto [a, b] = cauchy_pair();
  const double null = symp_null(a.profile(), b.profile());
  const auto c = symp_cauchy(a.profile(), b.profile());
  CHECK(c.conclusive);
  CHECK(c.trace.size() == 3);
  CHECK(std::abs(c.value - null) < 1e-3 * std::max(1.0, std::abs(null)));

  CauchyOptions coarse;
  coarse.field_order = 8;
  const auto c8 = symp_cauchy(a.profile(), b.profile(), coarse);
  CHECK(std::abs(c.value - null) < std::abs(c8.value - null));

  const auto self = symp_cauchy(a.profile(), a.profile(), coarse);
  CHECK(std::abs(self.value) < 1e-12);

  CauchyOptions bad;
  bad.radii = {8, 16};
  CHECK_THROWS_AS(symp_cauchy(a.profile(), b.profile(), bad), Error);
}

TEST_CASE("current forms") {
  std::mt19937 g(21);
  const auto J1 = random_current(g), J2 = random_current(g);

  // the Gaussian profile is the plane integral of J
  const Vec3 n = random_unit(g);
  const Vec4 l = null_vector(n);
  const auto p = J1.profile();
  {
    const Vec3 e1 = normalized(cross(n, Vec3{0.3, 1, 0.2}));
    const Vec3 e2 = cross(n, e1);
    const Rule1D r = composite_gauss(-9.0, 9.0, 6, 12);
    for (double s : {-0.7, 0.4}) {
      Vec4 acc;
      for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r.size(); ++j)
          for (std::size_t k = 0; k < r.size(); ++k) {
            // basis of the plane x.l = s: (1, n) u + (0, e1) v + (0, e2) w, plus the offset
            const Vec4 x = (s / 2) * Vec4{1, -n} + r.nodes[i] * Vec4{1, n} + r.nodes[j] * Vec4{0, e1} +
                           r.nodes[k] * Vec4{0, e2};
            acc += (r.weights[i] * r.weights[j] * r.weights[k]) * J1(x);
          }
      // the parametrization has unit Jacobian
      CHECK(max_abs(acc - p(s, l)) < 1e-8);
    }
    CHECK(std::abs(dot(l, p(0.3, l))) < 1e-14);
  }

  const auto forms = symp_current(J1, J2);
  const double null = symp_null(J1.profile(), J2.profile());
  REQUIRE(forms.symp_local.has_value());
  CHECK(std::abs(forms.symp_j - null) < 1e-3 * std::max(1.0, std::abs(null)));
  CHECK(std::abs(forms.symp_j - *forms.symp_local) < 1e-4 * std::max(1.0, std::abs(null)));

  const auto cauchy = symp_cauchy(J1.profile(), J2.profile());
  CHECK(std::abs(cauchy.value - forms.symp_j) < 1e-3 * std::max(1.0, std::abs(null)));

  CurrentOptions light;
  light.hermite_points = 6;
  light.field_order = 8;
  const auto self = symp_current(J1, J1, light);
  CHECK(self.symp_j == 0.0);
  CHECK(std::abs(*self.symp_local) < 1e-12);

  // correlation against direct quadrature at one separation
  const Vec4 z{0.3, -0.2, 0.5, 0.1};
  const Rule1D r = composite_gauss(-6.0, 6.0, 8, 8);
  double direct = 0;
  for (std::size_t i0 = 0; i0 < r.size(); ++i0)
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < r.size(); ++j)
        for (std::size_t k = 0; k < r.size(); ++k) {
          const Vec4 x{r.nodes[i0], r.nodes[i], r.nodes[j], r.nodes[k]};
          direct += r.weights[i0] * r.weights[i] * r.weights[j] * r.weights[k] * dot(J1(x), J2(x - z));
        }
  CHECK(std::abs(direct - GaussianCurrent::correlation(J1, J2, z)) < 1e-8);

  CurrentSource s1{[J1](const Vec4& x) { return J1(x); }, J1.profile(), J1.center, J1.width, false};
  CurrentSource s2{[J2](const Vec4& x) { return J2(x); }, J2.profile(), J2.center, J2.width, true};
  const auto generic = symp_current(s1, s2, light);
  CHECK_FALSE(generic.symp_local.has_value());
  CHECK(generic.note.find("not absolutely integrable") != std::string::npos);

  GaussianCurrent bad = J1;
  bad.omega(0, 1) = bad.omega(1, 0);
  CHECK_THROWS_AS(bad.profile(), Error);
}

TEST_CASE("shift law") {
  const auto V1 = sample_field();
  auto V2 = pulse(ShapeKind::Step, -0.3, 1.1, 0, {{1, -1, 0.6}, {0, 0, 0.3}}, Vec4{0, 0.2, 0, 1});
  V2.terms.push_back({Shape{ShapeKind::Gauss, 0.4, 0.9, 0}, {{2, 1, 0.5}}, Vec4{0, 1, 1, 0}, 0.0});
  const FreeTerm t1{Shape{}, {{1, 0, 0.9}, {2, 2, 0.4}}, Vec4{0, 0, 1, 0.3}, 0.0};
  const FreeTerm t2{Shape{}, {{0, 0, 0.5}, {1, 1, -0.7}}, Vec4{0, 1, 0, 0.4}, 0.0};
  const VectorFn zero = vector_from_sphere(-1, [](const Vec3&) { return Vec4{}; });

  const auto none = symp_shift_law(V1.profile(), V2.profile(), zero, zero);
  CHECK(none.correction == 0.0);
  CHECK(std::abs(none.shifted - none.original) < 1e-12);

  const auto law = symp_shift_law(V1.profile(), V2.profile(), tangent(t1), tangent(t2));
  CHECK(std::abs(law.correction) > 1e-3);
  CHECK(std::abs(law.shifted - law.predicted) < 1e-6);

  const auto swapped = symp_shift_law(V2.profile(), V1.profile(), tangent(t2), tangent(t1));
  CHECK(std::abs(swapped.correction + law.correction) < 1e-12);

  CHECK_THROWS_AS(symp_shift_law(V1.profile(), V2.profile(), coulomb_field(1.0, time_axis()), zero), Error);
}

TEST_CASE("Fock product: commutator identity and positivity") {
  std::mt19937 g(8);
  double worst = 0;
  for (int k = 0; k < 4; ++k) {
    const auto a = random_regular_field(g), b = random_regular_field(g);
    const Spectrum sa = spectrum_of(a), sb = spectrum_of(b);
    const Complex lhs = fock_product(sa, sb) - fock_product(sb, sa);
    const double symp = symp_null(a.profile(), b.profile());
    worst = std::max(worst, std::abs(lhs - Complex(0, symp)));
    const Complex self = fock_product(sa, sa);
    CHECK(self.real() > 0);
    CHECK(std::abs(self.imag()) < 1e-12 * self.real());
  }
  CHECK(worst < 1e-6);

  // numerical transform of the same data
  const auto a = random_regular_field(g);
  FockOptions light;
  light.sphere_order = 6;
  light.panels = 12;
  const Complex exact = fock_product(spectrum_of(a), spectrum_of(a), light);
  const Complex numeric = fock_product(spectrum_of(a.profile(), spectrum_of(a).omega_max), spectrum_of(a), light);
  CHECK(std::abs(numeric - exact) < 1e-4 * std::abs(exact));
}

TEST_CASE("infrared divergence of the Fock norm") {
  const auto s = sample_field();
  const Spectrum sp = spectrum_of(s);
  CHECK_THROWS_AS(fock_product(sp, sp), Error);

  // a singular profile against a regular one stays finite
  std::mt19937 g(2);
  CHECK(std::isfinite(std::abs(fock_product(sp, spectrum_of(random_regular_field(g))))));

  const auto scan = ir_divergence_scan(sp, {1e-2, 1e-3, 1e-4, 1e-5});
  CHECK(scan.predicted > 0);
  CHECK(std::abs(scan.slope - scan.predicted) < 0.05 * scan.predicted);
  for (std::size_t k = 1; k < scan.points.size(); ++k) CHECK(scan.points[k].second > scan.points[k - 1].second);
  const std::string csv = scan.csv();
  CHECK(csv.find("omega_min,value") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);

  CHECK_THROWS_AS(ir_divergence_scan(sp, {1e-3}), Error);
  FockOptions bad;
  bad.omega_min = 0.0;
  CHECK_THROWS_AS(fock_product(sp, sp, bad), Error);
}

TEST_CASE("mode basis") {
  auto prims = ModeBasis::hermite_primitives(2, 1.0, {{1, 0, 1.0}, {1, 1, 1.0}}, Vec4{0, 1, 0, 0});
  CHECK(prims.size() == 4);
  const auto B = ModeBasis::build(prims, 4);
  CHECK(B.size() == 4);
  CHECK(B.dimension() == 625);
  CHECK(B.gram_error() < 1e-8);
  // a primitive lies in its own span
  const auto c = B.components(prims[2]);
  double norm = 0;
  for (const auto& z : c) norm += std::norm(z);
  CHECK(std::abs(norm - B.gram[2][2].real()) < 1e-10);

  auto dependent = prims;
  dependent.push_back(combine(prims[0], 2.0, prims[1], -1.0));
  CHECK_THROWS_AS(ModeBasis::build(dependent, 2), Error);
  CHECK_THROWS_AS(ModeBasis::build({sample_field()}, 2), Error);
  CHECK_THROWS_AS(ModeBasis::build(prims, 20), Error);
}

TEST_CASE("coherent shift on the truncated Fock space") {
  auto prims = ModeBasis::hermite_primitives(2, 1.0, {{1, 0, 1.0}}, Vec4{0, 1, 0, 0});
  prims.push_back(pulse(ShapeKind::Hermite, 0.0, 1.0, 0, {{0, 0, 1.0}}, Vec4{0, 0, 1, 0}));
  const auto V = combine(prims[0], 1.0, prims[2], 0.5);
  const auto V1 = combine(prims[1], 0.3, prims[2], -0.2);

  std::vector<double> residuals;
  for (int M : {4, 6, 8}) {
    const auto B = ModeBasis::build(prims, M);
    const auto r = coherent_shift_check(V, V1, B);
    residuals.push_back(r.residual);
    CHECK(r.projection_error < 1e-10);
    CHECK(std::abs(r.symp - r.symp_direct) < 1e-8);
    CHECK(std::abs(r.vacuum_mean - Complex(r.symp_direct, 0)) < 1e-6);
    if (M == 6) CHECK(r.residual < 1e-6);
  }
  CHECK(residuals[1] < residuals[0]);
  CHECK(residuals[2] < residuals[1]);

  const auto B = ModeBasis::build(prims, 6);
  const auto trivial = coherent_shift_check(V, FreeFieldData{}, B);
  CHECK(trivial.residual < 1e-14);
  CHECK(std::abs(trivial.vacuum_mean) < 1e-14);

  const auto outside = pulse(ShapeKind::Gauss, 1.5, 0.5, 0, {{2, 0, 1.0}}, Vec4{0, 0, 0, 1});
  CHECK_THROWS_AS(coherent_shift_check(outside, V1, B), Error);
}
