#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ired/asymptotics.hpp"
#include "ired/error.hpp"
#include "ired/staruszkiewicz.hpp"
#include "support.hpp"

using namespace ired;
using namespace ired::testing;

namespace {

constexpr double kPi = std::numbers::pi;

StarData sample_data() {
  return StarData::from_harmonics({{1, 0, 0.5}, {2, 1, 0.3}, {3, -2, 0.2}}, {{1, 1, 0.4}, {2, 0, 0.3}},
                                  {{1.0, four_velocity({0, 1, 0}, 0.6)}});
}

Vec4 random_spacelike(std::mt19937& g) {
  std::uniform_real_distribution<double> U(-0.8, 0.8);
  return Vec4{U(g), 1.5 * random_unit(g)};
}

std::array<Tensor2, 4> field_derivatives(const StarData& d, const Vec4& x, double h) {
  std::array<Tensor2, 4> dF;
  for (int a = 0; a < 4; ++a) {
    Vec4 e;
    e[a] = h;
    dF[a] = (8.0 * (star_field_strength(d, x + e) - star_field_strength(d, x - e)) -
             (star_field_strength(d, x + 2.0 * e) - star_field_strength(d, x - 2.0 * e))) *
            (1 / (12 * h));
  }
  return dF;
}

double maxwell_residual(const StarData& d, const Vec4& x, double h) {
  const auto dF = field_derivatives(d, x, h);
  double m = 0;
  for (int b = 0; b < 4; ++b) {
    double div = 0;
    for (int a = 0; a < 4; ++a) div += metric(a) * dF[a](a, b);
    m = std::max(m, std::abs(div));
    for (int a = 0; a < 4; ++a)
      for (int c = 0; c < 4; ++c) m = std::max(m, std::abs(dF[a](b, c) + dF[b](c, a) + dF[c](a, b)));
  }
  return m;
}

ScalarFn harmonic_fn(int degree, std::vector<HarmonicCoeff> c) {
  return scalar_from_sphere(degree, [c](const Vec3& n) { return harmonic_sum(c, n); });
}

}  // namespace

TEST_CASE("phase field: homogeneity and independence of v") {
  const auto d = sample_data();
  std::mt19937 g(4);
  const Vec4 v2 = four_velocity({1, 1, 0}, 0.9);
  double hom = 0, vind = 0;
  for (int k = 0; k < 6; ++k) {
    std::uniform_real_distribution<double> U(-2, 2);
    const Vec4 x{U(g), U(g), U(g), U(g)};
    const double s = s_field(d, time_axis(), x).value;
    hom = std::max(hom, std::abs(s_field(d, time_axis(), 2.0 * x).value - s));
    hom = std::max(hom, std::abs(s_field(d, time_axis(), 0.3 * x).value - s));
    vind = std::max(vind, std::abs(s_field(d, v2, x).value - s));
  }
  CHECK(hom < 1e-6);
  CHECK(vind < 1e-6);

  const SValue cone = s_field(d, time_axis(), Vec4{1, 0.6, 0.8, 0});
  CHECK(cone.near_cone);
  CHECK_FALSE(s_field(d, time_axis(), Vec4{1, 0.5, 0, 0}).near_cone);
  CHECK_THROWS_AS(s_field(d, time_axis(), Vec4{}), Error);
  CHECK_THROWS_AS(s_field(d, Vec4{1, 1, 0, 0}, Vec4{1, 0, 0, 0}), Error);
}

TEST_CASE("phase field of a pure charge term in timelike sectors") {
  // D = 0, c = Q/(t.l)^2: sgn(x.l) = sgn(x.t) for timelike x, S = -e Q sgn(x.t)
  const double Q = 2.0, e = 0.5;
  const auto d = StarData::from_harmonics({}, {}, {{Q, time_axis()}}, e);
  for (const Vec4& x : {Vec4{1, 0.2, 0.1, 0}, Vec4{3, 0, 0, 2.5}, Vec4{-1, 0.3, 0, 0.1}, Vec4{-2, 1, 1, 1}}) {
    const double expected = -e * Q * (x[0] > 0 ? 1 : -1);
    CHECK(std::abs(s_field(d, time_axis(), x).value - expected) < 1e-10);
  }
}

TEST_CASE("field strength: homogeneity, Maxwell equations and the potential") {
  const auto d = sample_data();
  std::mt19937 g(9);
  for (int k = 0; k < 3; ++k) {
    const Vec4 x = random_spacelike(g);
    const Tensor2 F = star_field_strength(d, x);
    CHECK(max_abs(star_field_strength(d, 2.0 * x) - 0.25 * F) < 1e-5 * max_abs(F));

    const double r1 = maxwell_residual(d, x, 1e-2), r2 = maxwell_residual(d, x, 5e-3);
    CHECK(r2 < 1e-4);
    CHECK(r2 < r1);

    // A_a = -x_a S / (e x^2)
    const double h = 1e-4;
    auto A = [&](const Vec4& y) { return (-s_field(d, time_axis(), y).value / (d.e * square(y))) * lower(y); };
    Tensor2 fd;
    for (int a = 0; a < 4; ++a) {
      Vec4 e;
      e[a] = h;
      const Vec4 dA = (A(x + e) - A(x - e)) / (2 * h);
      for (int b = 0; b < 4; ++b) {
        fd(a, b) += dA[b];
        fd(b, a) -= dA[b];
      }
    }
    CHECK(max_abs(F - fd) < 1e-6);
  }
  CHECK_THROWS_AS(star_field_strength(d, Vec4{1, 0.5, 0, 0}), Error);
}

TEST_CASE("field strength of the charge term is the boosted Coulomb tail") {
  std::mt19937 g(12);
  for (int k = 0; k < 3; ++k) {
    const Vec4 v = four_velocity(random_unit(g), 0.3 + 0.3 * k);
    const double Q = 1.0 + k;
    const auto d = StarData::from_harmonics({}, {}, {{Q, v}});
    const Vec4 y = random_spacelike(g);
    const auto tail = spacelike_tail_exact(coulomb_field(Q, v), y);
    CHECK(max_abs(star_field_strength(d, y) - tail.F) < 1e-8);
  }
}

TEST_CASE("field strength parity") {
  std::mt19937 g(14);
  const auto dD = StarData::from_harmonics({{1, 1, 0.4}, {2, -1, 0.6}}, {});
  const auto dc = StarData::from_harmonics({}, {{1, 0, 0.5}, {2, 2, 0.2}}, {{1.0, four_velocity({1, 0, 0}, 0.4)}});
  const Vec4 x = random_spacelike(g);
  const Tensor2 fD = star_field_strength(dD, x), fc = star_field_strength(dc, x);
  CHECK(max_abs(star_field_strength(dD, -1.0 * x) - fD) < 1e-8 * max_abs(fD));
  CHECK(max_abs(star_field_strength(dc, -1.0 * x) + fc) < 1e-8 * max_abs(fc));
}

TEST_CASE("charge decomposition") {
  std::mt19937 g(6);
  const Vec4 u = four_velocity(random_unit(g), 0.3);

  // pure Coulomb term seen from its own frame
  const auto pure = charge_decompose(StarData::from_harmonics({}, {}, {{1.5, u}}).c, u);
  CHECK(std::abs(pure.Q - 1.5) < 1e-12);
  double worst = 0;
  for (const auto& h : pure.F_coeffs) worst = std::max(worst, std::abs(h.value));
  CHECK(worst < 1e-12);

  // c = d^2 F has no charge
  const std::vector<HarmonicCoeff> F{{1, 0, 0.3}, {2, 1, -0.2}, {4, -3, 0.1}};
  std::vector<HarmonicCoeff> box = F;
  for (auto& h : box) h.value *= h.l * (h.l + 1);
  const auto exact = charge_decompose(harmonic_fn(-2, box), time_axis());
  CHECK(std::abs(exact.Q) < 1e-12);
  const Vec3 n = random_unit(g);
  CHECK(std::abs(exact.F_v(null_vector(n)) - harmonic_sum(F, n)) < 1e-12);

  // round trip and v-invariance of Q on a mixed c
  const auto d = StarData::from_harmonics({}, {{1, 1, 0.4}, {2, 0, 0.3}, {3, 2, 0.1}}, {{1.0, u}});
  double qmin = 1e300, qmax = -1e300;
  for (int k = 0; k < 4; ++k) {
    const Vec4 v = four_velocity(random_unit(g), 0.1 * k);
    const auto dec = charge_decompose(d.c, v);
    CHECK(dec.residual < 1e-6);
    qmin = std::min(qmin, dec.Q);
    qmax = std::max(qmax, dec.Q);
    // finite-difference d^2 F_v against the remainder
    const Vec4 l = null_vector(random_unit(g));
    CHECK(std::abs(cone_laplacian(dec.F_v, l) + dec.Q / (dot(v, l) * dot(v, l)) - d.c(l)) < 1e-6);
  }
  CHECK(qmax - qmin < 1e-8);
  CHECK(std::abs(qmax - 1.0) < 1e-8);

  // a sharply boosted Coulomb term is not resolved in the t frame
  const Vec4 fast = four_velocity({0, 0, 1}, 4.0);
  CHECK_THROWS_AS(charge_decompose(StarData::from_harmonics({}, {}, {{1.0, fast}}).c, fast), Error);
  CHECK_THROWS_AS(charge_decompose(d.D, time_axis()), Error);
}

TEST_CASE("pairing and charge quantization") {
  const double e = 0.5;
  const auto c1 = StarData::from_harmonics({}, {{1, 0, 0.4}}, {{e, time_axis()}}, e).c;
  const auto c2 = StarData::from_harmonics({}, {{2, 1, 0.3}}, {{-2 * e, four_velocity({1, 0, 0}, 0.5)}}, e).c;
  const auto D1 = harmonic_fn(0, {{0, 0, 0.2}, {1, 1, 0.7}});
  const auto D2 = harmonic_fn(0, {{2, -2, 0.5}});

  ScalarFn csum;
  csum.degree = -2;
  csum.eval = [c1, c2](const Vec4& l) { return c1(l) + 3 * c2(l); };
  ScalarFn Dsum;
  Dsum.degree = 0;
  Dsum.eval = [D1, D2](const Vec4& l) { return 2 * D1(l) - D2(l); };
  const double lhs = star_pairing(Dsum, csum, e);
  const double rhs = 2 * star_pairing(D1, c1, e) + 6 * star_pairing(D1, c2, e) - star_pairing(D2, c1, e) -
                     3 * star_pairing(D2, c2, e);
  CHECK(std::abs(lhs - rhs) < 1e-12);

  const auto q = [](const ScalarFn& c) { return invariant_integral(c, sphere_quadrature(32)) / (4 * kPi); };
  CHECK(std::abs(q(csum) - (q(c1) + 3 * q(c2))) < 1e-10);
  CHECK(std::abs(q(csum) / e - std::round(q(csum) / e)) < 1e-8);

  const auto bad = StarData::from_harmonics({}, {}, {{0.3, time_axis()}}, e).c;
  CHECK_THROWS_AS(star_pairing(D1, bad, e), Error);
}

TEST_CASE("Weyl composition") {
  const double e = 1.0;
  auto element = [&](std::vector<HarmonicCoeff> D, std::vector<HarmonicCoeff> c, double q, const Vec4& v) {
    StarWeylElement w;
    w.data = StarData::from_harmonics(D, c, {{q, v}}, e);
    return w;
  };
  const auto W1 = element({{1, 0, 0.6}, {2, 1, 0.2}}, {{1, -1, 0.3}}, 1.0, time_axis());
  const auto W2 = element({{0, 0, 0.4}, {1, 1, -0.5}}, {{2, 0, 0.2}}, -1.0, four_velocity({0, 1, 0}, 0.5));
  const auto W3 = element({{3, 2, 0.3}}, {{1, 0, -0.4}}, 2.0, four_velocity({1, 0, 1}, 0.3));

  auto close_phase = [](double a, double b) {
    const double d = std::remainder(a - b, 2 * kPi);
    return std::abs(d);
  };
  const auto left = weyl_compose(weyl_compose(W1, W2), W3);
  const auto right = weyl_compose(W1, weyl_compose(W2, W3));
  CHECK(close_phase(left.phase, right.phase) < 1e-10);

  const auto inv = weyl_compose(W1, weyl_adjoint(W1));
  CHECK(close_phase(inv.phase, 0) < 1e-14);
  const Vec4 l = null_vector(normalized(Vec3{0.2, 0.4, -0.9}));
  CHECK(std::abs(inv.data.D(l)) < 1e-14);
  CHECK(std::abs(inv.data.c(l)) < 1e-14);

  const auto id = weyl_compose(StarWeylElement::identity(e), W2);
  CHECK(close_phase(id.phase, W2.phase) < 1e-14);
  CHECK(std::abs(id.data.c(l) - W2.data.c(l)) < 1e-14);

  // phase of W1 W2 against W2 W1 differs by sigma
  const auto a = weyl_compose(W1, W2), b = weyl_compose(W2, W1);
  const double sigma = star_pairing(W1.data.D, W2.data.c, e) - star_pairing(W2.data.D, W1.data.c, e);
  CHECK(close_phase(a.phase - b.phase, sigma) < 1e-12);

  StarWeylElement other = W1;
  other.data.e = 2.0;
  CHECK_THROWS_AS(weyl_compose(W1, other), Error);
}

TEST_CASE("Casimir values of the charged sector") {
  const auto q = casimir(0.25);
  REQUIRE(q.value.has_value());
  CHECK(*q.value == 7.0 / 16);
  CHECK(*q.nu == 0.5);
  CHECK(q.regime == CasimirRegime::DiscreteSupplementary);

  const auto b = casimir(1.0);
  CHECK(b.regime == CasimirRegime::Boundary);
  CHECK(*b.value == 1.0);
  CHECK(*b.nu == 0.0);

  const auto c = casimir(2.0);
  CHECK(c.regime == CasimirRegime::ContinuousOnly);
  CHECK_FALSE(c.value.has_value());
  CHECK_FALSE(c.nu.has_value());

  CHECK_THROWS_AS(casimir(0.0), Error);
  CHECK_THROWS_AS(casimir(-1.0), Error);
}
