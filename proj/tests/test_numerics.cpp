#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "ired/error.hpp"
#include "ired/harmonics.hpp"
#include "ired/numerics.hpp"

using namespace ired;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("sphere rule weights sum to the solid angle") {
  for (int order : {2, 5, 16, 32, 64}) {
    const auto q = sphere_quadrature(order);
    CHECK(std::abs(q.total_weight() - 4 * kPi) < 1e-12);
    for (double w : q.weights) CHECK(w > 0);
  }
  CHECK_THROWS_AS(sphere_quadrature(1), Error);
}

TEST_CASE("Y20 squared integrates to one") {
  const auto q = sphere_quadrature(16);
  // closed form of the normalized zonal harmonic
  auto y20 = [](const Vec3& n) { return std::sqrt(5 / (16 * kPi)) * (3 * n.z * n.z - 1); };
  CHECK(std::abs(q.integrate([&](const Vec3& n) { return y20(n) * y20(n); }) - 1) < 1e-10);
  CHECK(std::abs(q.integrate([](const Vec3&) { return 1.0; }) - 4 * kPi) < 1e-12);
}

TEST_CASE("real harmonics are orthonormal") {
  const auto q = sphere_quadrature(12);
  for (int l1 = 0; l1 <= 4; ++l1)
    for (int m1 = -l1; m1 <= l1; ++m1)
      for (int l2 = 0; l2 <= 4; ++l2)
        for (int m2 = -l2; m2 <= l2; ++m2) {
          const double g = q.integrate([&](const Vec3& n) { return real_ylm(l1, m1, n) * real_ylm(l2, m2, n); });
          CHECK(std::abs(g - ((l1 == l2 && m1 == m2) ? 1.0 : 0.0)) < 1e-12);
        }
  const Vec3 n = normalized(Vec3{0.3, -0.4, 0.5});
  CHECK(std::abs(real_ylm(1, 1, n) - std::sqrt(3 / (4 * kPi)) * n.x) < 1e-14);
  CHECK(std::abs(real_ylm(1, -1, n) - std::sqrt(3 / (4 * kPi)) * n.y) < 1e-14);
}

TEST_CASE("graded and banded rules keep the measure") {
  const Vec3 axis = normalized(Vec3{1, 2, -0.5});
  const auto cap = graded_cap_quadrature(axis, 16, 1e-6);
  CHECK(std::abs(cap.total_weight() - 4 * kPi) < 1e-12);
  const auto band = banded_quadrature(axis, 0.3, 16, 1e-5);
  CHECK(std::abs(band.total_weight() - 4 * kPi) < 1e-12);
  // smooth integrand: same answer as the plain rule
  auto f = [](const Vec3& n) { return std::exp(n.x - 0.5 * n.z) / (2.5 + n.y); };
  const double ref = sphere_quadrature(40).integrate(f);
  CHECK(std::abs(cap.integrate(f) - ref) < 1e-10);
  CHECK(std::abs(band.integrate(f) - ref) < 1e-10);
}

TEST_CASE("limit extrapolation") {
  std::vector<std::pair<double, double>> lin{{0.4, 1.4}, {0.2, 1.2}, {0.1, 1.1}};
  CHECK(std::abs(limit_extrapolate(lin).value - 1) < 1e-10);

  std::vector<std::pair<double, double>> quad;
  for (double h : {0.1, 0.05, 0.025}) quad.emplace_back(h, 2 + 3 * h + h * h);
  CHECK(std::abs(limit_extrapolate(quad).value - 2) < 1e-8);

  std::vector<std::pair<double, double>> flat{{1, 7}, {0.5, 7}, {0.25, 7}, {0.125, 7}};
  const auto est = limit_extrapolate(flat);
  CHECK(est.value == doctest::Approx(7).epsilon(1e-15));
  CHECK(est.error == 0.0);

  std::vector<std::pair<double, double>> bad{{0.1, 1}, {0.2, 1}, {0.05, 1}};
  CHECK_THROWS_AS(limit_extrapolate(bad), Error);
  std::vector<std::pair<double, double>> few{{0.1, 1}, {0.05, 1}};
  CHECK_THROWS_AS(limit_extrapolate(few), Error);
}

TEST_CASE("extrapolation error shrinks with refinement") {
  auto y = [](double h) { return 3 + 0.7 * h * h + std::sin(h) * h * h * h; };
  double prev = 1;
  for (double h0 : {0.4, 0.2, 0.1}) {
    std::vector<std::pair<double, double>> s;
    for (int k = 0; k < 3; ++k) s.emplace_back(h0 / (1 << k), y(h0 / (1 << k)));
    const double err = std::abs(limit_extrapolate(s).value - 3);
    CHECK(err < prev / 4);
    prev = err;
  }
}

TEST_CASE("mollifiers") {
  CHECK(mollified(MollifierKind::Delta, 0.1, 0.0) == doctest::Approx(1 / (0.1 * std::sqrt(2 * kPi))).epsilon(1e-14));
  CHECK(mollified(MollifierKind::DeltaPrime, 0.3, 0.0) == 0.0);
  CHECK_THROWS_AS(mollified(MollifierKind::Delta, 0.0, 1.0), Error);
  for (double h : {0.5, 0.1, 0.01}) {
    const Rule1D r = composite_gauss(-10 * h, 10 * h, 40, 10);
    const double norm0 = r.apply([&](double x) { return mollified(MollifierKind::Delta, h, x); });
    const double moment = r.apply([&](double x) { return x * mollified(MollifierKind::DeltaPrime, h, x); });
    CHECK(std::abs(norm0 - 1) < 1e-10);
    CHECK(std::abs(moment + 1) < 1e-10);
  }
}

TEST_CASE("s-grid tail integration") {
  // f(s) = 1/(1+s^2): tail ~ s^-2, eps = 1
  const auto g = SGrid::uniform(-200, 200, 40001, 1.0);
  std::vector<double> v;
  for (double s : g.samples) v.push_back(1 / (1 + s * s));
  CHECK(std::abs(integrate_with_tail(g, v) - kPi) < 1e-6);

  SGrid bad = g;
  bad.samples[3] = bad.samples[2];
  CHECK_THROWS_AS(bad.validate(), Error);
}
