#include "ired/staruszkiewicz.hpp"

#include <cmath>
#include <numbers>

#include "ired/asymptotics.hpp"
#include "ired/error.hpp"

namespace ired {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4 * kPi;

// Innermost half-widths of the panels around the circle x.l = 0: fine for the
// log and the jump of sgn, coarser for the principal value.
constexpr double kLogWidth = 1e-10;
constexpr double kPvWidth = 1e-3;

ScalarFn add(const ScalarFn& a, const ScalarFn& b) {
  if (a.degree != b.degree) throw Error(ErrorKind::DegreeMismatch, "sum of functions of different degree");
  ScalarFn r;
  r.degree = a.degree;
  r.eval = [a, b](const Vec4& l) { return a(l) + b(l); };
  return r;
}

ScalarFn negate(const ScalarFn& a) {
  ScalarFn r;
  r.degree = a.degree;
  r.eval = [a](const Vec4& l) { return -a(l); };
  return r;
}

ScalarFn zero_fn(int degree) {
  ScalarFn r;
  r.degree = degree;
  r.eval = [](const Vec4&) { return 0.0; };
  return r;
}

SphereQuadrature circle_rule(const Vec4& x, const StarOptions& o, double width) {
  const double r = norm(x.space());
  if (r == 0) return sphere_quadrature(o.order);
  Focus f;
  f.axis = x.space() / r;
  f.mu_center = x.time() / r;
  f.min_width = width;
  return focused_quadrature(f, o.order);
}

void check_velocity(const Vec4& v) {
  if (!(v[0] > 0) || std::abs(square(v) - 1) > 1e-9)
    throw Error(ErrorKind::OutOfDomain, "v must be a future unit timelike vector");
}

}  // namespace

StarData StarData::from_harmonics(const std::vector<HarmonicCoeff>& D, const std::vector<HarmonicCoeff>& c,
                                  const std::vector<std::pair<double, Vec4>>& coulomb, double e) {
  std::vector<HarmonicCoeff> box = D;
  for (auto& h : box) h.value *= h.l * (h.l + 1);
  for (const auto& [q, v] : coulomb) check_velocity(v);
  StarData s;
  s.e = e;
  s.D = scalar_from_sphere(0, [D](const Vec3& n) { return harmonic_sum(D, n); });
  s.box_D = scalar_from_sphere(-2, [box](const Vec3& n) { return harmonic_sum(box, n); });
  const ScalarFn smooth = scalar_from_sphere(-2, [c](const Vec3& n) { return harmonic_sum(c, n); });
  s.c.degree = -2;
  s.c.eval = [smooth, coulomb](const Vec4& l) {
    double r = smooth(l);
    for (const auto& [q, v] : coulomb) r += q / (dot(v, l) * dot(v, l));
    return r;
  };
  return s;
}

StarData StarData::from_functions(const ScalarFn& D, const ScalarFn& c, double e) {
  if (D.degree != 0 || c.degree != -2) throw Error(ErrorKind::DegreeMismatch, "D needs degree 0 and c degree -2");
  StarData s;
  s.e = e;
  s.D = D;
  s.c = c;
  s.box_D.degree = -2;
  s.box_D.eval = [D](const Vec4& l) { return cone_laplacian(D, l); };
  return s;
}

double StarData::charge(int order) const { return invariant_integral(c, sphere_quadrature(order)) / kFourPi; }

SValue s_field(const StarData& data, const Vec4& v, const Vec4& x, const StarOptions& opts) {
  check_velocity(v);
  SValue out;
  const double scale = x[0] * x[0] + dot(x.space(), x.space());
  if (!(scale > 0)) throw Error(ErrorKind::OutOfDomain, "S is not defined at the origin");
  out.near_cone = std::abs(square(x)) <= opts.cone_tolerance * scale;

  const SphereQuadrature quad = circle_rule(x, opts, kLogWidth);
  double acc = 0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Vec4 l = null_vector(quad.nodes[i]);
    const double xl = dot(x, l);
    if (xl == 0) continue;
    acc += quad.weights[i] * (data.c(l) * (xl > 0 ? 1.0 : -1.0) + data.box_D(l) * std::log(std::abs(xl) / dot(v, l)));
  }
  const SphereQuadrature plain = sphere_quadrature(opts.order);
  double sv = 0;
  for (std::size_t i = 0; i < plain.size(); ++i) {
    const Vec4 l = null_vector(plain.nodes[i]);
    sv += plain.weights[i] * data.D(l) / (dot(v, l) * dot(v, l));
  }
  out.value = data.e / kFourPi * (sv - acc);
  return out;
}

Tensor2 star_field_strength(const StarData& data, const Vec4& x, const StarOptions& opts) {
  const double x2 = square(x);
  if (!(x2 < 0)) throw Error(ErrorKind::OutOfDomain, "field strength needs a spacelike point");

  Tensor2 pv;
  const SphereQuadrature quad = circle_rule(x, opts, kPvWidth);
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Vec4 l = null_vector(quad.nodes[i]);
    pv += (quad.weights[i] * data.box_D(l) / dot(x, l)) * wedge(l, x);
  }

  // delta(x.l) on t.l = 1: x.l = x0 - r mu, circle mu = x0 / r with weight 1/r
  const double r = norm(x.space());
  const Vec3 axis = x.space() / r;
  const Vec3 e1 = normalized(std::abs(axis.x) < 0.9 ? cross(axis, Vec3{1, 0, 0}) : cross(axis, Vec3{0, 1, 0}));
  const Vec3 e2 = cross(axis, e1);
  const double mu = x[0] / r, rho = std::sqrt(1 - mu * mu);
  Tensor2 delta;
  for (int k = 0; k < opts.n_phi; ++k) {
    const double phi = 2 * kPi * k / opts.n_phi;
    const Vec4 l = null_vector(mu * axis + rho * (std::cos(phi) * e1 + std::sin(phi) * e2));
    delta += data.c(l) * wedge(l, x);
  }
  delta *= 2 * kPi / (opts.n_phi * r);
  return (1 / (kFourPi * x2)) * (pv + 2.0 * delta);
}

ChargeDecomposition charge_decompose(const ScalarFn& c, const Vec4& v, int l_max, double tolerance) {
  if (c.degree != -2) throw Error(ErrorKind::DegreeMismatch, "c must have degree -2");
  if (l_max < 1) throw Error(ErrorKind::InvalidOrder, "l_max must be positive");
  check_velocity(v);
  const Boost B = boost_to(v);
  const int order = 2 * l_max;
  const SphereQuadrature quad = sphere_quadrature(order);

  ChargeDecomposition out;
  out.v = v;
  std::vector<double> vals(quad.size());
  double q = 0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    vals[i] = c(B.apply(null_vector(quad.nodes[i])));
    q += quad.weights[i] * vals[i];
  }
  out.Q = q / kFourPi;
  const double q_t = invariant_integral(c, quad) / kFourPi;
  if (std::abs(out.Q - q_t) > tolerance * std::max(1.0, std::abs(out.Q)))
    throw Error(ErrorKind::InconsistentCharge, "l = 0 remainder of c - Q/(v.l)^2 does not vanish");

  for (int l = 1; l <= l_max; ++l)
    for (int m = -l; m <= l; ++m) {
      double a = 0;
      for (std::size_t i = 0; i < quad.size(); ++i) a += quad.weights[i] * (vals[i] - out.Q) * real_ylm(l, m, quad.nodes[i]);
      out.F_coeffs.push_back({l, m, a / (l * (l + 1))});
    }
  const auto coeffs = out.F_coeffs;
  out.F_v.degree = 0;
  out.F_v.eval = [B, coeffs](const Vec4& l) {
    const Vec4 r = B.inverse_apply(l);
    return harmonic_sum(coeffs, normalized(r.space()));
  };

  std::vector<HarmonicCoeff> box = coeffs;
  for (auto& h : box) h.value *= h.l * (h.l + 1);
  const SphereQuadrature check = sphere_quadrature(17);
  for (const Vec3& n : check.nodes) {
    const double rebuilt = out.Q + harmonic_sum(box, n);
    out.residual = std::max(out.residual, std::abs(c(B.apply(null_vector(n))) - rebuilt));
  }
  return out;
}

double star_pairing(const ScalarFn& D, const ScalarFn& c, double e, int order) {
  if (D.degree != 0 || c.degree != -2) throw Error(ErrorKind::DegreeMismatch, "pairing needs D of degree 0 and c of degree -2");
  const SphereQuadrature quad = sphere_quadrature(order);
  const double n = invariant_integral(c, quad) / kFourPi / e;
  if (std::abs(n - std::round(n)) > 1e-8)
    throw Error(ErrorKind::QuantizationViolation, "Q(c) is not an integer multiple of e");
  return quad.integrate([&](const Vec3& m) {
           const Vec4 l = null_vector(m);
           return D(l) * c(l);
         }) /
         kFourPi;
}

StarWeylElement StarWeylElement::identity(double e) {
  StarWeylElement w;
  w.data.e = e;
  w.data.D = zero_fn(0);
  w.data.box_D = zero_fn(-2);
  w.data.c = zero_fn(-2);
  return w;
}

StarWeylElement weyl_compose(const StarWeylElement& a, const StarWeylElement& b, int order) {
  if (a.data.e != b.data.e) throw Error(ErrorKind::InconsistentInput, "elements with different elementary charge");
  const double sigma = star_pairing(a.data.D, b.data.c, a.data.e, order) - star_pairing(b.data.D, a.data.c, a.data.e, order);
  StarWeylElement w;
  w.data.e = a.data.e;
  w.data.D = add(a.data.D, b.data.D);
  w.data.box_D = add(a.data.box_D, b.data.box_D);
  w.data.c = add(a.data.c, b.data.c);
  w.phase = std::fmod(a.phase + b.phase + 0.5 * sigma, 2 * kPi);
  if (w.phase < 0) w.phase += 2 * kPi;
  return w;
}

StarWeylElement weyl_adjoint(const StarWeylElement& a) {
  StarWeylElement w;
  w.data.e = a.data.e;
  w.data.D = negate(a.data.D);
  w.data.box_D = negate(a.data.box_D);
  w.data.c = negate(a.data.c);
  w.phase = a.phase == 0 ? 0.0 : 2 * kPi - a.phase;
  return w;
}

CasimirValue casimir(double z) {
  if (!(z > 0) || !std::isfinite(z)) throw Error(ErrorKind::InvalidCoupling, "z = alpha/pi must be positive");
  CasimirValue c;
  if (z < 1) {
    c.regime = CasimirRegime::DiscreteSupplementary;
  } else if (z == 1) {
    c.regime = CasimirRegime::Boundary;
  } else {
    return c;
  }
  c.value = z * (2 - z);
  c.nu = 1 - std::sqrt(z);
  return c;
}

}  // namespace ired
