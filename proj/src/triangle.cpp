#include "ired/triangle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ired/error.hpp"

namespace ired {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4 * kPi;

// Points where the kernel constant of a potential is sampled.
const std::vector<Vec3>& probe_directions() {
  static const std::vector<Vec3> dirs{{0, 0, 1},  {0, 0, -1}, {1, 0, 0},
                                      {0, 1, 0},  normalized(Vec3{1, 1, 1}), normalized(Vec3{-1, 2, -0.5})};
  return dirs;
}

std::pair<Vec3, Vec3> transverse(const Vec3& a) {
  const Vec3 helper = std::abs(a.x) < 0.6 ? Vec3{1, 0, 0} : (std::abs(a.y) < 0.6 ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
  const Vec3 e1 = normalized(helper - dot(helper, a) * a);
  return {e1, cross(a, e1)};
}

Tensor2 extrapolate_tensor(const std::vector<double>& h, const std::vector<Tensor2>& vals, std::size_t points,
                           double& error) {
  Tensor2 out;
  error = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      std::vector<std::pair<double, double>> s;
      for (std::size_t i = 0; i < h.size(); ++i) s.emplace_back(h[i], vals[i](a, b));
      const auto e = limit_extrapolate(s, points);
      out(a, b) = e.value;
      out(b, a) = -e.value;
      error = std::max(error, e.error);
    }
  return out;
}

}  // namespace

VectorFn field_of_potential(const ScalarFn& eps) {
  if (eps.degree != 0) throw Error(ErrorKind::DegreeMismatch, "smearing potential must have degree 0");
  VectorFn v;
  v.degree = -1;
  v.eval = [eps](const Vec4& l) {
    const Tensor2 L = l_tensor(eps, l);
    const Vec4 t = time_axis();
    Vec4 lower_v;
    for (int b = 0; b < 4; ++b)
      for (int a = 0; a < 4; ++a) lower_v[b] += t[a] * L(a, b);
    return lower(lower_v) / dot(t, l);
  };
  return v;
}

ChargeSmearing ChargeSmearing::from_field(const VectorFn& v_plus, const SphereQuadrature& quad) {
  const PotentialDecomposition d = potential_decompose(v_plus, quad);
  ChargeSmearing s;
  s.v_plus = v_plus;
  s.eps_plus = d.phi_special();
  s.residual = d.residual;
  return s;
}

ChargeSmearing ChargeSmearing::from_potential(const ScalarFn& eps) {
  ChargeSmearing s;
  s.v_plus = field_of_potential(eps);
  // The kernel potential differs from eps by a constant.
  DecomposeOptions opts;
  opts.compute_residual = false;
  // phi_special does not depend on the averaging rule, so a coarse one suffices
  const PotentialDecomposition d = potential_decompose(s.v_plus, sphere_quadrature(2), opts);
  const ScalarFn kernel = d.phi_special();
  std::vector<double> shifts;
  for (const Vec3& n : probe_directions()) shifts.push_back(kernel(null_vector(n)) - eps(null_vector(n)));
  double mean = 0;
  for (double c : shifts) mean += c;
  mean /= static_cast<double>(shifts.size());
  for (double c : shifts) s.residual = std::max(s.residual, std::abs(c - mean));
  s.eps_plus.degree = 0;
  s.eps_plus.eval = [eps, mean](const Vec4& l) { return eps(l) + mean; };
  return s;
}

double charge_from_potential(const ScalarFn& eps, const VectorFn& v_minus, const SphereQuadrature& quad) {
  double acc = 0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Vec4 l = null_vector(quad.nodes[i]);
    acc += quad.weights[i] * eps(l) * cone_divergence(v_minus, l);
  }
  return acc / kFourPi;
}

ChargeValues charge_functional(const ChargeSmearing& s, const VectorFn& v_minus, const SphereQuadrature& quad) {
  if (!s.v_plus.eval) throw Error(ErrorKind::InconsistentInput, "smearing has no test field");
  if (!s.eps_plus.eval)
    throw Error(ErrorKind::InconsistentInput, "smearing has no potential; build it with ChargeSmearing::from_field");
  ChargeValues c;
  double acc = 0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Vec4 l = null_vector(quad.nodes[i]);
    acc += quad.weights[i] * dot(s.v_plus(l), v_minus(l));
  }
  c.q_form1 = -acc / kFourPi;
  c.q_form2 = charge_from_potential(s.eps_plus, v_minus, quad);
  c.discrepancy = std::abs(c.q_form1 - c.q_form2);
  return c;
}

Vec4 b_asymptote(const AsymptoteProfile& V, double s, const Vec4& l) {
  VectorFn at_s;
  at_s.degree = -1;
  at_s.eval = [&V, s](const Vec4& k) { return V(s, k); };
  return l_contract(at_s, l) - lower(V(s, l)) + s * lower(V.d1(s, l));
}

Vec4 b_asymptote_limit(const AsymptoteProfile& V, int sign, const Vec4& l) {
  const VectorFn lim = V.limit(sign);
  return l_contract(lim, l) - lower(lim(l));
}

BExtraction extract_b_asymptote(const FieldSampler& sampler, const Vec4& x, const NullDirection& l, int direction,
                                const RSchedule& schedule) {
  const double sign = direction >= 0 ? 1.0 : -1.0;
  const auto radii = schedule.radii();
  std::vector<Vec4> samples;
  std::vector<double> h;
  for (double R : radii) {
    const Vec4 X = x + (sign * R) * l.l();
    const FieldValue f = sampler(X, focus_for_point(X, 0.05));
    samples.push_back(R * contract_first(X, f.F));
    h.push_back(1 / R);
  }
  BExtraction out;
  for (int a = 0; a < 4; ++a) {
    std::vector<std::pair<double, double>> s;
    for (std::size_t i = 0; i < h.size(); ++i) s.emplace_back(h[i], samples[i][a]);
    const auto e = limit_extrapolate(s, static_cast<std::size_t>(schedule.fit_points));
    out.W[a] = e.value;
    out.error = std::max(out.error, e.error);
  }
  return out;
}

std::vector<ResidualRow> strominger_check(const AsymptoteProfile& V, const AsymptoteProfile& V_past,
                                          const SphereQuadrature& directions) {
  const VectorFn vm = V.limit(-1), vp = V_past.limit(+1);
  double w = 0, strm = 0, inv = 0, wdiv = 0;
  for (const Vec3& n : directions.nodes) {
    const Vec4 l = null_vector(n);
    const Vec4 W = b_asymptote_limit(V, -1, l), Wp = b_asymptote_limit(V_past, +1, l);
    const double div = cone_divergence(vm, l), div_p = cone_divergence(vp, l);
    w = std::max(w, max_abs(W - Wp));
    strm = std::max(strm, std::abs(W[0] - Wp[0]));
    inv = std::max(inv, std::abs(div - div_p));
    wdiv = std::max(wdiv, max_abs(W - div * lower(l)));
  }
  return {{"w_matching", w}, {"strominger", strm}, {"invariant_matching", inv}, {"w_divergence", wdiv}};
}

void TestParticle::validate() const {
  if (!(m > 0)) throw Error(ErrorKind::OutOfDomain, "test particle mass must be positive");
  if (!(p[0] > 0) || std::abs(square(p) - m * m) > 1e-9 * m * m)
    throw Error(ErrorKind::OutOfDomain, "test particle momentum must satisfy p.p = m^2, p^0 > 0");
}

double memory_phase(double e, const Vec4& p, const VectorFn& v_minus, const SphereQuadrature& quad) {
  if (!(p[0] > 0) || !(square(p) > 1e-12 * p[0] * p[0]))
    throw Error(ErrorKind::OutOfDomain, "memory phase needs a timelike future-pointing momentum");
  double acc = 0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Vec4 l = null_vector(quad.nodes[i]);
    acc += quad.weights[i] * dot(p, v_minus(l)) / dot(p, l);
  }
  return -e * acc / (2 * kPi);
}

double memory_phase(const TestParticle& particle, const VectorFn& v_minus, const SphereQuadrature& quad) {
  particle.validate();
  return memory_phase(particle.e, particle.p, v_minus, quad);
}

double sigma_phase(double e, const Vec4& v, const ScalarFn& phi, const SphereQuadrature& quad) {
  if (!(v[0] > 0) || !(square(v) > 0)) throw Error(ErrorKind::OutOfDomain, "sigma phase needs a timelike velocity");
  double acc = 0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Vec4 l = null_vector(quad.nodes[i]);
    acc += quad.weights[i] * phi(l) / std::pow(dot(v, l), 2);
  }
  return e * acc / kFourPi;
}

MemoryKick memory_kick(const TestParticle& particle, const Vec4& x0, const AsymptoteProfile& field,
                       const SphereQuadrature& quad, double rel_step) {
  particle.validate();
  if (std::abs(field.charge) > 1e-12) throw Error(ErrorKind::ChargedField, "memory kick needs a free field");
  const Vec4 v = particle.velocity();
  const double e = particle.e, m = particle.m;
  const VectorFn vm = field.limit(-1);

  // tau integral along x0 + v tau, node by node: s = x0.l + tau v.l
  const Rule1D sr = composite_gauss(field.breakpoints, 24);
  MemoryKick k;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Vec4 l = null_vector(quad.nodes[i]);
    const double s0 = dot(x0, l), vl = dot(v, l);
    Vec4 I;
    for (std::size_t j = 0; j < sr.size(); ++j) I += (sr.weights[j] * (sr.nodes[j] - s0)) * field.d2(sr.nodes[j], l);
    I = I / (vl * vl);
    const Vec4 ll = lower(l), Il = lower(I);
    k.time_integral += quad.weights[i] * (dot(v, I) * ll - vl * Il);

    const Vec4 V = vm(l), Vl = lower(V);
    k.celestial += (quad.weights[i] / (vl * vl)) * (dot(V, v) * ll - vl * Vl);
  }
  k.time_integral = (e / (2 * kPi * m)) * k.time_integral;
  k.celestial = (e / (2 * kPi * m)) * k.celestial;

  const Vec4 p = particle.p;
  for (int a = 0; a < 4; ++a) {
    const double h = rel_step * euclid_norm(p);
    Vec4 dp;
    dp[a] = h;
    k.grad_phase[a] = (memory_phase(e, p + dp, vm, quad) - memory_phase(e, p - dp, vm, quad)) / (2 * h);
  }
  return k;
}

Tensor2 full_line_integral(const AsymptoteProfile& data, double R, const Vec3& k, int order) {
  const SphereQuadrature quad = sphere_quadrature(order);
  const Vec4 kk = null_vector(k);
  // s = u + R k.l with k.l in [0, 2]
  const double lo = data.s_lo() - 2 * R, hi = data.s_hi();
  const int panels = std::max(8, static_cast<int>(std::ceil((hi - lo) * 4)));
  const Rule1D ur = composite_gauss(lo, hi, panels, 8);
  Tensor2 acc;
  for (std::size_t j = 0; j < ur.size(); ++j) {
    const Vec4 x = ur.nodes[j] * time_axis() + R * kk;
    acc += ur.weights[j] * kirchhoff_eval(data, x, quad).F;
  }
  return acc;
}

Tensor2 half_line_integral(const AsymptoteProfile& data, double R, const Vec4& z, double tau0, int order) {
  const double zr = norm(z.space());
  SphereQuadrature quad;
  if (zr > 0) {
    const double mu_c = z.time() / zr;
    const double width = std::clamp(0.05 / (R * zr), 1e-14, 0.25);
    if (mu_c >= 1)
      quad = graded_cap_quadrature(z.space() / zr, order, width);
    else if (mu_c <= -1)
      quad = graded_cap_quadrature(-z.space() / zr, order, width);
    else
      quad = banded_quadrature(z.space() / zr, mu_c, order, width);
  } else {
    quad = sphere_quadrature(order);
  }
  Tensor2 acc;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Vec4 l = null_vector(quad.nodes[i]);
    acc += quad.weights[i] * wedge(l, data.d1(tau0 + R * dot(z, l), l));
  }
  return acc * (R / (2 * kPi));
}

HalfLineLimit half_line_limit(const AsymptoteProfile& data, const Vec4& z, double tau0, const RSchedule& schedule) {
  const double zz = square(z);
  const double zr = norm(z.space());
  if (zz > 0 || zr == 0) throw Error(ErrorKind::OutOfDomain, "half-line limit needs a null or spacelike z");
  HalfLineLimit out;
  std::vector<double> h;
  std::vector<Tensor2> vals;
  for (double R : schedule.radii()) {
    const Tensor2 v = half_line_integral(data, R, z, tau0);
    out.trace.emplace_back(R, v);
    h.push_back(1 / R);
    vals.push_back(v);
  }
  out.value = extrapolate_tensor(h, vals, static_cast<std::size_t>(schedule.fit_points), out.error);

  const bool null = std::abs(zz) <= 1e-12 * z.time() * z.time();
  if (null) {
    const Vec4 k = z / z.time();
    out.expected = -1.0 * wedge(k, data(tau0, k));
  } else {
    // (1/2pi) int (l_b V_a - l_a V_b)(-inf) delta(z.l) d^2l on the circle mu = z0/|z|
    const Vec3 axis = z.space() / zr;
    const double mu = z.time() / zr;
    const auto [e1, e2] = transverse(axis);
    const VectorFn vm = data.limit(-1);
    const int n_phi = 256;
    Tensor2 acc;
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2 * kPi * (j + 0.5) / n_phi;
      const Vec4 l = null_vector(mu * axis + std::sqrt(1 - mu * mu) * (std::cos(phi) * e1 + std::sin(phi) * e2));
      acc += wedge(l, vm(l));
    }
    out.expected = acc * (-1.0 / (n_phi * zr));
  }
  return out;
}

std::pair<Tensor2, Tensor2> kick_integral(const AsymptoteProfile& V, const Vec3& k) {
  const Vec4 kk = null_vector(k);
  const double lo = V.s_lo(), hi = V.s_hi();
  const Rule1D r = composite_gauss(V.breakpoints, 24);
  Vec4 acc;
  for (std::size_t j = 0; j < r.size(); ++j) acc += r.weights[j] * V.d1(r.nodes[j], kk);
  // the Vdot tails beyond the window
  acc += (V.plus_inf(kk) - V(hi, kk)) + (V(lo, kk) - V.minus_inf(kk));
  const Vec4 out_minus = V.minus_inf(kk) - V.plus_inf(kk);
  return {wedge(kk, acc), -1.0 * wedge(kk, out_minus)};
}

SoftRelation soft_relation(const ScatteringEvent& event, const FreeFieldData& in_field,
                           const std::vector<Vec3>& directions, const std::vector<double>& omega) {
  event.validate();
  const TotalAsymptotes t = total_asymptotes(event, in_field);
  const AsymptoteProfile vin = in_field.profile();
  const VectorFn out_sum = coulomb_sum(event.outgoing), in_sum = coulomb_sum(event.incoming);
  SoftRelation r;
  for (const Vec3& n : directions) {
    const Vec4 l = null_vector(n);
    r.lhs.push_back(zero_mode_limit(t.out, n) + out_sum(l));
    r.rhs.push_back(zero_mode_limit(vin, n) + in_sum(l));
    r.residual = std::max(r.residual, max_abs(r.lhs.back() - r.rhs.back()));
  }
  r.in_class = ir_classify(fourier_profile(vin, omega, directions));
  r.out_class = ir_classify(fourier_profile(t.out, omega, directions));
  return r;
}

SpacelikeAverage spacelike_average_charge(const VectorFn& v_minus, const Vec4& center, double radius,
                                          const SphereQuadrature& quad) {
  const double c0 = std::abs(center.time()), cr = norm(center.space());
  if (!(cr - c0 > std::sqrt(2.0) * radius))
    throw Error(ErrorKind::OutOfDomain, "bump support must lie in y.y < 0");

  // plane integral of the bump at Euclidean distance d from its centre
  const Rule1D rho = gauss_legendre(48);
  auto plane = [&](double d) {
    if (d >= radius) return 0.0;
    const double rmax = std::sqrt(radius * radius - d * d);
    double acc = 0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
      const double r = 0.5 * rmax * (rho.nodes[i] + 1);
      const double u = (d * d + r * r) / (radius * radius);
      acc += 0.5 * rmax * rho.weights[i] * 4 * kPi * r * r * std::pow(1 - u, 4);
    }
    return acc;
  };
  ScalarFn eps;
  eps.degree = 0;
  eps.eval = [center, plane](const Vec4& l) {
    // t.l int phi delta(y.l) dy, |l|_E the Euclidean norm of l_a
    const double le = euclid_norm(l);
    return l.time() * plane(std::abs(dot(center, l)) / le) / le;
  };

  VectorFn u;
  u.degree = -1;
  u.eval = [&v_minus](const Vec4& l) { return cone_divergence(v_minus, l) * l; };

  // int over the 4-ball y = c + r (cos chi, sin chi m), measure r^3 sin^2 chi
  const Rule1D rr = gauss_legendre(6), cr_rule = gauss_legendre(8);
  const SphereQuadrature s2 = sphere_quadrature(4);
  double avg = 0;
  for (std::size_t i = 0; i < rr.size(); ++i) {
    const double r = 0.5 * radius * (rr.nodes[i] + 1);
    const double wr = 0.5 * radius * rr.weights[i] * r * r * r * std::pow(1 - r * r / (radius * radius), 4);
    for (std::size_t j = 0; j < cr_rule.size(); ++j) {
      const double chi = 0.5 * kPi * (cr_rule.nodes[j] + 1);
      const double wc = 0.5 * kPi * cr_rule.weights[j] * std::sin(chi) * std::sin(chi);
      for (std::size_t k = 0; k < s2.size(); ++k) {
        const Vec4 y = center + r * Vec4{std::cos(chi), std::sin(chi) * s2.nodes[k]};
        avg += wr * wc * s2.weights[k] * spacelike_tail_exact(u, y, 64).A[0];
      }
    }
  }
  SpacelikeAverage out;
  out.average = avg;
  out.q_form2 = charge_from_potential(eps, v_minus, quad);
  return out;
}

}  // namespace ired
