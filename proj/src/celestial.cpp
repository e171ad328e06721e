#include "ired/celestial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ired/error.hpp"

namespace ired {

namespace {

constexpr double kFourPi = 4 * std::numbers::pi;

// Orientation of the dual potential relative to the kernel below; fixed by
// the reconstruction identity on a pure magnetic field.
constexpr double kPsiSign = 1.0;

Vec4 basis(int a, double h) {
  Vec4 e;
  e[a] = h;
  return e;
}

}  // namespace

NullDirection::NullDirection(const Vec3& n) : n_(n) {
  const double r = norm(n);
  if (!(r > 0) || !std::isfinite(r)) throw Error(ErrorKind::OutOfDomain, "null direction needs a nonzero 3-vector");
  if (std::abs(r - 1) > 1e-14) n_ = n / r;
}

ScalarFn scalar_from_sphere(int degree, std::function<double(const Vec3&)> g) {
  ScalarFn f;
  f.degree = degree;
  f.eval = [degree, g = std::move(g)](const Vec4& l) {
    const Vec3 s = l.space();
    const double tau = norm(s);
    return std::pow(tau, degree) * g(s / tau);
  };
  return f;
}

VectorFn vector_from_sphere(int degree, std::function<Vec4(const Vec3&)> g) {
  VectorFn f;
  f.degree = degree;
  f.eval = [degree, g = std::move(g)](const Vec4& l) {
    const Vec3 s = l.space();
    const double tau = norm(s);
    return std::pow(tau, degree) * g(s / tau);
  };
  return f;
}

VectorFn coulomb_field(double q, const Vec4& v) {
  VectorFn f;
  f.degree = -1;
  f.eval = [q, v](const Vec4& l) { return (q / dot(v, l)) * v; };
  return f;
}

double invariant_integral(const ScalarFn& f, const SphereQuadrature& quad) {
  if (f.degree != -2) throw Error(ErrorKind::DegreeMismatch, "invariant integral needs degree -2");
  return quad.integrate([&](const Vec3& n) { return f.at(n); });
}

Vec4 ambient_gradient(const ScalarFn& f, const Vec4& l, double step) {
  const double h = step * euclid_norm(l);
  Vec4 g;
  for (int a = 0; a < 4; ++a)
    g[a] = (8 * (f(l + basis(a, h)) - f(l - basis(a, h))) - (f(l + basis(a, 2 * h)) - f(l - basis(a, 2 * h)))) /
           (12 * h);
  return g;
}

Tensor2 ambient_jacobian(const VectorFn& v, const Vec4& l, double step) {
  const double h = step * euclid_norm(l);
  Tensor2 j;
  for (int a = 0; a < 4; ++a) {
    const Vec4 d =
        (8 * (v(l + basis(a, h)) - v(l - basis(a, h))) - (v(l + basis(a, 2 * h)) - v(l - basis(a, 2 * h)))) /
        (12 * h);
    for (int c = 0; c < 4; ++c) j(a, c) = d[c];
  }
  return j;
}

Tensor2 l_tensor(const ScalarFn& f, const Vec4& l, double step) {
  const Vec4 g = ambient_gradient(f, l, step);
  const Vec4 ll = lower(l);
  Tensor2 t;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t(a, b) = ll[a] * g[b] - ll[b] * g[a];
  return t;
}

ScalarFn l_derivative(const ScalarFn& f, int a, int b) {
  if (a < 0 || a > 3 || b < 0 || b > 3) throw Error(ErrorKind::OutOfDomain, "tensor index out of range");
  ScalarFn r;
  r.degree = f.degree;
  r.eval = [f, a, b](const Vec4& l) { return l_tensor(f, l)(a, b); };
  return r;
}

Vec4 l_contract(const VectorFn& v, const Vec4& l) {
  const Tensor2 j = ambient_jacobian(v, l);
  const Vec4 ll = lower(l);
  double trace = 0;
  for (int a = 0; a < 4; ++a) trace += j(a, a);
  Vec4 r;
  for (int b = 0; b < 4; ++b) {
    double s = 0;
    for (int a = 0; a < 4; ++a) s += ll[a] * j(b, a);
    r[b] = ll[b] * trace - s;
  }
  return r;
}

double magnetic_residual(const VectorFn& v, const Vec4& l) {
  const Tensor2 j = ambient_jacobian(v, l);
  const Vec4 ll = lower(l);
  auto lv = [&](int a, int b, int c) {
    // L_ab V_c with V_c = metric(c) V^c
    return metric(c) * (ll[a] * j(b, c) - ll[b] * j(a, c));
  };
  double m = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      for (int c = b + 1; c < 4; ++c) m = std::max(m, std::abs(lv(a, b, c) + lv(b, c, a) + lv(c, a, b)));
  return m;
}

double cone_divergence(const VectorFn& v, const Vec4& l, const Vec4& t) {
  VectorFn u;
  u.degree = v.degree - 1;
  u.eval = [&v, t](const Vec4& k) { return v(k) / dot(t, k); };
  const Tensor2 j = ambient_jacobian(u, l);
  const Vec4 ll = lower(l);
  const double tl = dot(t, l);
  double trace = 0, s = 0;
  for (int b = 0; b < 4; ++b) {
    trace += j(b, b);
    for (int a = 0; a < 4; ++a) s += t[a] * ll[b] * j(a, b);
  }
  const double q = dot(l, v(l));
  return tl * trace - s - q / (tl * tl);
}

double cone_laplacian(const ScalarFn& f, const Vec4& l, double step) {
  const double h = step * euclid_norm(l);
  const double f0 = f(l);
  double s = 0;
  for (int a = 0; a < 4; ++a) {
    const double d2 = -f(l + basis(a, 2 * h)) + 16 * f(l + basis(a, h)) - 30 * f0 + 16 * f(l - basis(a, h)) -
                      f(l - basis(a, 2 * h));
    s += metric(a) * d2 / (12 * h * h);
  }
  return s;
}

double charge_deviation(const VectorFn& v, double q, const SphereQuadrature& quad) {
  double m = 0;
  for (const Vec3& n : quad.nodes) {
    const Vec4 l = null_vector(n);
    m = std::max(m, std::abs(dot(l, v(l)) - q));
  }
  return m;
}

double tensor_norm(const Tensor2& t) { return max_abs(t); }

ScalarFn PotentialDecomposition::phi_special() const {
  ScalarFn r;
  r.degree = 0;
  r.eval = [f = phi, c = phi_offset](const Vec4& l) { return f(l) + c; };
  return r;
}

namespace {

struct KernelData {
  VectorFn v;
  Rule1D mu_rule;
  int n_phi = 0;

  // (1/4pi) int l.V(l') / l.l' and its dual, both for l = t + n.
  std::pair<double, double> eval(const Vec3& n) const {
    const SphereQuadrature q = axis_quadrature(n, mu_rule, n_phi);
    const Vec4 l = null_vector(n);
    double phi = 0, psi = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const Vec3& m = q.nodes[i];
      const double denom = 1 - dot(n, m);
      const Vec4 vv = v(null_vector(m));
      phi += q.weights[i] * dot(l, vv) / denom;
      psi += q.weights[i] * dot(n, cross(m, vv.space())) / denom;
    }
    return {phi / kFourPi, kPsiSign * psi / kFourPi};
  }
};

}  // namespace

PotentialDecomposition potential_decompose(const VectorFn& v_plus, const SphereQuadrature& quad,
                                           const DecomposeOptions& opts) {
  if (v_plus.degree != -1) throw Error(ErrorKind::DegreeMismatch, "tangent field must have degree -1");
  const double dev = charge_deviation(v_plus, 0.0, quad);
  if (dev > opts.charge_tolerance)
    throw Error(ErrorKind::ChargedField, "decomposition needs l.V = 0 (deviation " + std::to_string(dev) + ")");

  auto kernel = std::make_shared<KernelData>();
  kernel->v = v_plus;
  kernel->mu_rule = gauss_legendre(opts.inner_order);
  kernel->n_phi = 2 * opts.inner_order;

  double mean_phi = 0, mean_psi = 0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const auto [p, s] = kernel->eval(quad.nodes[i]);
    mean_phi += quad.weights[i] * p;
    mean_psi += quad.weights[i] * s;
  }
  mean_phi /= kFourPi;
  mean_psi /= kFourPi;

  PotentialDecomposition out;
  out.phi_offset = mean_phi;
  out.phi = scalar_from_sphere(0, [kernel, mean_phi](const Vec3& n) { return kernel->eval(n).first - mean_phi; });
  out.psi = scalar_from_sphere(0, [kernel, mean_psi](const Vec3& n) { return kernel->eval(n).second - mean_psi; });

  if (opts.compute_residual) {
    double r = 0;
    for (const Vec3& n : quad.nodes) {
      const Vec4 l = null_vector(n);
      const Tensor2 lhs = wedge(l, v_plus(l));
      const Tensor2 rhs = l_tensor(out.phi, l) - hodge_dual(l_tensor(out.psi, l));
      r = std::max(r, max_abs(lhs - rhs));
    }
    out.residual = r;
  }
  return out;
}

}  // namespace ired
