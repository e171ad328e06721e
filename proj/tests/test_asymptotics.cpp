#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ired/asymptotics.hpp"
#include "ired/error.hpp"
#include "support.hpp"

using namespace ired;
using namespace ired::testing;

namespace {

constexpr double kPi = std::numbers::pi;

Vec4 unit(int a) {
  Vec4 e;
  e[a] = 1;
  return e;
}

}  // namespace

TEST_CASE("Kirchhoff potential satisfies Lorenz and wave equations") {
  const auto data = sample_field().profile();
  const auto quad = sphere_quadrature(32);
  auto A = [&](const Vec4& x) { return kirchhoff_eval(data, x, quad).A; };
  const Vec4 x{0.3, 0.5, -0.2, 0.1};
  const FieldValue f0 = kirchhoff_eval(data, x, quad);
  CHECK(max_abs(f0.A) > 1e-2);

  double prev_lorenz = 1, prev_wave = 1;
  for (double h : {0.05, 0.025}) {
    double div = 0;
    Vec4 box;
    for (int a = 0; a < 4; ++a) {
      const Vec4 e = h * unit(a);
      const Vec4 ap = A(x + e), am = A(x - e), ap2 = A(x + 2.0 * e), am2 = A(x - 2.0 * e);
      div += ((8.0 * (ap - am) - (ap2 - am2)) / (12 * h))[a];
      box += metric(a) * ((16.0 * (ap + am) - (ap2 + am2) - 30.0 * f0.A) / (12 * h * h));
    }
    CHECK(std::abs(div) < prev_lorenz);
    CHECK(max_abs(box) < prev_wave);
    prev_lorenz = std::abs(div);
    prev_wave = max_abs(box);
  }
  CHECK(prev_lorenz < 1e-5);
  CHECK(prev_wave < 1e-5);

  // F is the curl of A
  const double h = 0.02;
  Tensor2 curl;
  Vec4 dA[4];
  for (int a = 0; a < 4; ++a) {
    const Vec4 e = h * unit(a);
    dA[a] = lower((8.0 * (A(x + e) - A(x - e)) - (A(x + 2.0 * e) - A(x - 2.0 * e))) / (12 * h));
  }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) curl(a, b) = dA[a][b] - dA[b][a];
  CHECK(max_abs(curl - f0.F) < 1e-6);
}

TEST_CASE("null asymptote round trip") {
  const auto fd = sample_field();
  const auto data = fd.profile();
  const auto sampler = kirchhoff_sampler(data, 32);
  const Vec4 x{0.3, 0.5, -0.2, 0.1};
  const NullDirection l(normalized(Vec3{0.4, -0.3, 0.8}));
  const double s = dot(x, l.l());

  const auto fut = extract_null_asymptote(sampler, x, l, +1);
  CHECK(fut.converged);
  CHECK(max_abs(fut.V - data(s, l.l())) < 1e-3);
  CHECK(max_abs(fut.lVdot - wedge(l.l(), data.d1(s, l.l()))) < 1e-3);

  const auto past = extract_null_asymptote(sampler, x, l, -1);
  CHECK(past.converged);
  CHECK(max_abs(past.V - (data.minus_inf(l.l()) - data(s, l.l()))) < 1e-3);
  CHECK(max_abs(past.lVdot + wedge(l.l(), data.d1(s, l.l()))) < 1e-3);
  MESSAGE("future error " << max_abs(fut.V - data(s, l.l())) << " past error "
                          << max_abs(past.V - (data.minus_inf(l.l()) - data(s, l.l()))));
}

TEST_CASE("static Coulomb field has no news") {
  const double q = 0.8;
  // retarded field of a charge at rest at the origin
  const FieldSampler coulomb = [q](const Vec4& x, const Focus&) {
    const double r = norm(x.space());
    FieldValue f;
    f.A = (q / r) * time_axis();
    for (int i = 1; i < 4; ++i) {
      f.F(0, i) = q * x[i] / (r * r * r);
      f.F(i, 0) = -f.F(0, i);
    }
    return f;
  };
  const NullDirection l(normalized(Vec3{0.2, 0.9, -0.4}));
  const auto ex = extract_null_asymptote(coulomb, Vec4{0.5, 0.1, 0.2, -0.3}, l, +1);
  CHECK(ex.converged);
  CHECK(tensor_norm(ex.lVdot) < 1e-8);
  CHECK(max_abs(ex.V - q * time_axis()) < 1e-8);
}

TEST_CASE("free data plus its past reflection equals the limit at minus infinity") {
  const auto data = sample_field().profile();
  const auto sampler = kirchhoff_sampler(data, 32);
  const Vec4 x{-0.6, 0.2, 0.4, 0.3};
  const NullDirection l(normalized(Vec3{-0.5, 0.1, 0.7}));
  const auto fut = extract_null_asymptote(sampler, x, l, +1);
  const auto past = extract_null_asymptote(sampler, x, l, -1);
  CHECK(max_abs(fut.V + past.V - data.minus_inf(l.l())) < 1e-6);
}

TEST_CASE("matching property for random events") {
  std::mt19937 g(21);
  const auto dirs = sphere_quadrature(8);
  const std::vector<double> s{-9, -3, -1, -0.2, 0, 0.4, 1.5, 4, 12};
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    const auto e = random_event(g, 1 + k % 3, 1 + (k / 3) % 3);
    FreeFieldData in = sample_field();
    in.terms[0].polarization = Vec4{0, 0.3 * (k % 5), 1, -0.2};
    const auto t = total_asymptotes(e, in);
    const auto rows = matching_verify(t.V, t.V_past, t.Vj, dirs, s, &t.out, &t.in_past);
    REQUIRE(rows.size() == 7);
    for (const auto& r : rows) worst = std::max(worst, r.residual);
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("trivial scattering matches exactly") {
  const auto e = ScatteringEvent::free_particle(1.3, four_velocity(Vec3{0, 1, 0}, 0.6));
  const auto t = total_asymptotes(e, FreeFieldData{});
  const NullDirection l(normalized(Vec3{0.3, 0.3, 0.9}));
  for (double s : {-5.0, 0.0, 5.0}) {
    CHECK(max_abs(t.V(s, l.l()) - t.Vj(s, l.l())) == 0.0);
    CHECK(max_abs(t.V_past(s, l.l()) - t.Vj(s, l.l())) == 0.0);
  }
  const auto rows = matching_verify(t.V, t.V_past, t.Vj, sphere_quadrature(6), {-1.0, 0.0, 1.0});
  for (const auto& r : rows) CHECK(r.residual < 1e-14);
}

TEST_CASE("matching rejects profiles with different charges") {
  const auto a = ScatteringEvent::free_particle(1.0, time_axis());
  const auto b = ScatteringEvent::free_particle(2.0, time_axis());
  const auto ta = total_asymptotes(a, FreeFieldData{});
  const auto tb = total_asymptotes(b, FreeFieldData{});
  CHECK_THROWS_AS(matching_verify(ta.V, tb.V_past, ta.Vj, sphere_quadrature(4), {0.0}), Error);
}

TEST_CASE("spacelike tail") {
  const auto data = sample_field().profile();
  const VectorFn vm = data.limit(-1);
  const Vec4 y{0.4, 1.0, 0.5, -0.7};
  const auto tail = spacelike_tail(vm, y);
  const auto exact = spacelike_tail_exact(vm, y);
  CHECK(tensor_norm(tail.F) > 1e-2);
  CHECK(max_abs(tail.F - exact.F) < 1e-8);
  CHECK(max_abs(tail.A - exact.A) < 1e-8);

  for (double lam : {2.0, 4.0}) {
    const auto s = spacelike_tail(vm, lam * y);
    CHECK(max_abs(s.F * (lam * lam) - tail.F) < 1e-4 * max_abs(tail.F));
  }

  VectorFn zero;
  zero.degree = -1;
  zero.eval = [](const Vec4&) { return Vec4{}; };
  CHECK(tensor_norm(spacelike_tail(zero, y).F) == 0.0);

  CHECK_THROWS_AS(spacelike_tail(vm, Vec4{1, 0.2, 0, 0}), Error);
  CHECK_THROWS_AS(spacelike_tail(vm, Vec4{1, 1, 0, 0}), Error);
}

TEST_CASE("spacelike potential of a Coulomb field") {
  // int delta(y.l) / (v.l) d^2l = 2 pi / sqrt((v.y)^2 - y^2)
  const Vec4 v = four_velocity(Vec3{0.8, -0.5, 0.3}, 0.4);
  const Vec4 y{0.4, 1.0, 0.5, -0.7};
  const auto tail = spacelike_tail(coulomb_field(1.0, v), y);
  const double vy = dot(v, y);
  CHECK(max_abs(tail.A - v / std::sqrt(vy * vy - square(y))) < 1e-9);
}

TEST_CASE("spacelike asymptote of the reconstructed field") {
  const auto data = sample_field().profile();
  const Vec4 x{0.3, 0.5, -0.2, 0.1}, y{0.4, 1.0, 0.5, -0.7};
  const auto ex = extract_spacelike_asymptote(kirchhoff_sampler(data, 32), x, y, RSchedule{1.0, 10, 4});
  const auto tail = spacelike_tail(data.limit(-1), y);
  CHECK(max_abs(ex.F - tail.F) < 1e-3);
  CHECK(max_abs(ex.A - tail.A) < 1e-3);
}

TEST_CASE("Fourier profile and infrared classification") {
  const auto fd = sample_field();
  const auto data = fd.profile();
  const std::vector<double> omega{-2, -1, -0.5, 0, 0.5, 1, 2};
  const std::vector<Vec3> dirs{normalized(Vec3{0.4, -0.3, 0.8}), Vec3{0, 0, 1}};
  const auto fp = fourier_profile(data, omega, dirs);
  double reality = 0, exact = 0;
  for (std::size_t d = 0; d < dirs.size(); ++d)
    for (std::size_t i = 0; i < omega.size(); ++i) {
      reality = std::max(reality, max_abs(conj(fp.values[d][i]) - fp.values[d][omega.size() - 1 - i]));
      exact = std::max(exact, max_abs(fp.values[d][i] - fd.fourier_exact(omega[i], dirs[d])));
    }
  CHECK(reality < 1e-8);
  CHECK(exact < 1e-4);
  CHECK(ir_classify(fp).kind == IrClass::Singular);
  for (const Vec3& n : dirs) CHECK(max_abs(zero_mode_limit(data, n) - data.minus_inf(null_vector(n))) < 1e-8);

  FreeFieldData regular;
  regular.terms.push_back({Shape{ShapeKind::Bump, 0.3, 1.5, 0}, {{2, -1, 0.9}}, Vec4{0, 1, 0, 0.5}, 0.2});
  regular.terms.push_back({Shape{ShapeKind::Gauss, -1.0, 0.7, 0}, {{0, 0, 1.0}}, Vec4{0, 0, 1, 0}, 0.0});
  CHECK(ir_classify(fourier_profile(regular.profile(), omega, dirs)).kind == IrClass::Regular);

  CHECK_THROWS_AS(fourier_profile(data, {0.5, 1.0}, dirs), Error);
}

TEST_CASE("soft limit of the out field of an event") {
  std::mt19937 g(5);
  const auto e = random_event(g, 2, 3);
  const auto t = total_asymptotes(e, FreeFieldData{});
  for (int k = 0; k < 4; ++k) {
    const Vec3 n = random_unit(g);
    const Vec4 l = null_vector(n);
    // 2 pi lim w a(w l) = -2 pi Vdot~(0, l)
    const Vec4 lhs = zero_mode_limit(t.out, n);
    CHECK(max_abs(lhs - (t.out.minus_inf(l) - t.out.plus_inf(l))) < 1e-6);
  }
}

TEST_CASE("gauge function with direction dependent limits") {
  const auto constant = LgtGauge::from_harmonics({{0, 0, 2.0}});
  const Vec4 timelike{2.0, 0.3, -0.1, 0.4};
  CHECK(std::abs(constant.lambda(timelike) - 2.0 / std::sqrt(4 * kPi)) < 1e-12);

  const auto g = LgtGauge::from_harmonics({{1, 0, 0.5}, {2, 1, 0.3}});
  // timelike points: (x^2 / 4pi) int alpha / (x.l)^2
  const auto quad = sphere_quadrature(64);
  double ref = 0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Vec4 l = null_vector(quad.nodes[i]);
    ref += quad.weights[i] * g.alpha(l) / std::pow(dot(timelike, l), 2);
  }
  ref *= square(timelike) / (4 * kPi);
  CHECK(std::abs(g.lambda(timelike) - ref) < 1e-10);

  // gradient against finite differences, timelike and spacelike
  for (const Vec4& p : {timelike, Vec4{0.3, 1.0, 0.5, -0.7}}) {
    const Vec4 grad = g.grad(p);
    for (int a = 0; a < 4; ++a) {
      const Vec4 h = 1e-4 * unit(a);
      CHECK(std::abs(grad[a] - (g.lambda(p + h) - g.lambda(p - h)) / 2e-4) < 1e-7);
    }
    CHECK_FALSE(g.evaluate(p).near_cone);
  }
  CHECK(g.evaluate(Vec4{1, 0.6, 0.8, 0}).near_cone);

  const NullDirection l(normalized(Vec3{0.4, -0.3, 0.8}));
  for (int dir : {+1, -1}) {
    const auto d = asymptote_diagnostics(g, Vec4{0.3, 0.5, -0.2, 0.1}, l, dir);
    CHECK(std::abs(d.limit - d.alpha_value) < 1e-3);
    for (int a = 0; a < 4; ++a) CHECK(std::abs(d.log_slope[a] - d.predicted_slope[a]) < 0.05 * max_abs(d.predicted_slope));
  }
}

TEST_CASE("general Coulomb tail") {
  const auto data = sample_field().profile();
  const VectorFn vm = data.limit(-1);
  const Vec4 y{0.4, 1.0, 0.5, -0.7};
  const ComplexTangentFn real = [&](const Vec4& l) { return Complex(-1 / (2 * kPi)) * vm(l); };
  const ComplexTangentFn mixed = [&](const Vec4& l) {
    return Complex(-1 / (2 * kPi), 0.7) * vm(l);
  };

  const auto tail = spacelike_tail(vm, y);
  const auto r = general_coulomb_tail(real, y);
  CHECK(max_abs(r.F() - tail.F) < 1e-8);
  CHECK(max_abs(r.A() - tail.A) < 1e-8);
  CHECK(max_abs(r.F_imag) == 0.0);

  const auto m = general_coulomb_tail(mixed, y);
  const auto mm = general_coulomb_tail(mixed, -1.0 * y);
  CHECK(tensor_norm(m.F_imag) > 1e-2);
  CHECK(max_abs(m.F_real + mm.F_real) < 1e-5);
  CHECK(max_abs(m.F_imag - mm.F_imag) < 1e-5);

  const auto m2 = general_coulomb_tail(mixed, 2.0 * y);
  CHECK(max_abs(m2.F() * 4.0 - m.F()) < 1e-4 * max_abs(m.F()));
  CHECK_THROWS_AS(general_coulomb_tail(real, Vec4{2, 0, 1, 0}), Error);
}

TEST_CASE("Pauli-Jordan function against its causal form") {
  const auto g = [](double u) { return std::exp(-u * u); };
  const auto [sphere, causal] = pauli_jordan_check(Vec4{0.1, 0.2, 0.3, -0.1}, Vec4{1, 0.2, 0, 0.1}, g, -6, 6);
  CHECK(std::abs(causal) > 1e-2);
  CHECK(std::abs(sphere - causal) < 1e-3 * std::abs(causal));
}
