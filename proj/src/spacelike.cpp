#include <algorithm>
#include <cmath>
#include <numbers>

#include "ired/asymptotics.hpp"
#include "ired/error.hpp"

namespace ired {

namespace {

constexpr double kPi = std::numbers::pi;

struct Band {
  Vec3 axis;
  double r = 0;   // |y_vec|
  double mu = 0;  // y^0 / |y_vec|
};

Band band_of(const Vec4& y) {
  if (!(square(y) < 0)) throw Error(ErrorKind::OutOfDomain, "spacelike asymptote needs y.y < 0");
  Band b;
  b.r = norm(y.space());
  b.axis = y.space() / b.r;
  b.mu = y.time() / b.r;
  return b;
}

// Widths in mu shrink with the distance of the band to the poles so that
// the Gaussian tails never reach mu = +-1.
double pole_factor(double mu, double h0) { return std::min(1.0, (1 - std::abs(mu)) / (8 * h0)); }

std::pair<Vec3, Vec3> frame(const Vec3& a) {
  const Vec3 helper = std::abs(a.x) < 0.6 ? Vec3{1, 0, 0} : (std::abs(a.y) < 0.6 ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
  const Vec3 e1 = normalized(helper - dot(helper, a) * a);
  return {e1, cross(a, e1)};
}

// Extrapolation of a family of (h, A, F) samples to h = 0 in the variable p(h).
template <class P>
SpacelikeTail extrapolate(const std::vector<double>& hs, const std::vector<Vec4>& as,
                          const std::vector<Tensor2>& fs, P p) {
  SpacelikeTail out;
  auto lim = [&](auto get) {
    std::vector<std::pair<double, double>> s;
    for (std::size_t i = 0; i < hs.size(); ++i) s.emplace_back(p(hs[i]), get(i));
    const auto e = limit_extrapolate(s);
    out.error = std::max(out.error, e.error);
    return e.value;
  };
  for (int a = 0; a < 4; ++a) out.A[a] = lim([&](std::size_t i) { return as[i][a]; });
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      out.F(a, b) = lim([&](std::size_t i) { return fs[i](a, b); });
      out.F(b, a) = -out.F(a, b);
    }
  return out;
}

}  // namespace

SpacelikeTail spacelike_tail(const VectorFn& v_minus, const Vec4& y, const MollifierSchedule& sched) {
  const Band b = band_of(y);
  if (sched.widths.size() < 3) throw Error(ErrorKind::InvalidSequence, "need at least three mollifier widths");
  const double c = pole_factor(b.mu, sched.widths.front());
  const SphereQuadrature quad = banded_quadrature(b.axis, b.mu, sched.order, c * sched.widths.back() / 40);
  std::vector<Vec3> nodes = quad.nodes;
  std::vector<Vec4> vals;
  std::vector<Tensor2> wedges;
  for (const Vec3& n : nodes) {
    const Vec4 l = null_vector(n);
    vals.push_back(v_minus(l));
    wedges.push_back(wedge(l, vals.back()));
  }
  std::vector<double> hs;
  std::vector<Vec4> as;
  std::vector<Tensor2> fs;
  for (double h : sched.widths) {
    const double w = c * h * b.r;  // width in the argument y.l
    Vec4 a;
    Tensor2 f;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double x = dot(y, null_vector(nodes[i]));
      a += (quad.weights[i] * mollified(MollifierKind::Delta, w, x)) * vals[i];
      f += (quad.weights[i] * mollified(MollifierKind::DeltaPrime, w, x)) * wedges[i];
    }
    hs.push_back(h);
    as.push_back(a / (2 * kPi));
    fs.push_back(f * (1 / (2 * kPi)));
  }
  return extrapolate(hs, as, fs, [](double h) { return h * h; });
}

SpacelikeTail spacelike_tail_exact(const VectorFn& v_minus, const Vec4& y, int n_phi) {
  const Band b = band_of(y);
  const auto [e1, e2] = frame(b.axis);
  auto point = [&](double mu, double phi) {
    const double st = std::sqrt(1 - mu * mu);
    return null_vector(mu * b.axis + st * (std::cos(phi) * e1 + std::sin(phi) * e2));
  };
  const double dmu = 1e-3 * std::min(1.0, 1 - std::abs(b.mu));
  SpacelikeTail out;
  const double dphi = 2 * kPi / n_phi;
  for (int j = 0; j < n_phi; ++j) {
    const double phi = (j + 0.5) * dphi;
    const Vec4 l0 = point(b.mu, phi);
    out.A += dphi * v_minus(l0);
    auto g = [&](double mu) {
      const Vec4 l = point(mu, phi);
      return wedge(l, v_minus(l));
    };
    const Tensor2 d = (8.0 * (g(b.mu + dmu) - g(b.mu - dmu)) - (g(b.mu + 2 * dmu) - g(b.mu - 2 * dmu))) *
                      (1 / (12 * dmu));
    out.F += dphi * d;
  }
  out.A = out.A / (2 * kPi * b.r);
  out.F *= 1 / (2 * kPi * b.r * b.r);
  return out;
}

GeneralCoulombTail general_coulomb_tail(const ComplexTangentFn& vdot0, const Vec4& y, const EtaSchedule& sched) {
  const Band b = band_of(y);
  if (sched.etas.size() < 3) throw Error(ErrorKind::InvalidSequence, "need at least three eta values");
  const double c = pole_factor(b.mu, sched.etas.front());
  const SphereQuadrature quad = banded_quadrature(b.axis, b.mu, sched.order, c * sched.etas.back() / 200);
  const Complex i(0, 1);

  struct Node {
    double x;
    Vec4 re, im;
    Tensor2 wre, wim;
  };
  std::vector<Node> nodes;
  nodes.reserve(quad.size());
  for (const Vec3& n : quad.nodes) {
    const Vec4 l = null_vector(n);
    const CVec4 v = vdot0(l);
    Vec4 re, im;
    for (int a = 0; a < 4; ++a) {
      re[a] = v[a].real();
      im[a] = v[a].imag();
    }
    nodes.push_back({dot(y, l), re, im, wedge(l, re), wedge(l, im)});
  }

  std::vector<double> hs;
  std::vector<Vec4> ar, ai;
  std::vector<Tensor2> fr, fi;
  for (double eta : sched.etas) {
    const double e = c * eta * b.r;
    // 2 Re[(i/2pi) K1 v] and 2 Re[(-i/2pi) K2 (l ^ v)] for v = R and v = i I
    Vec4 a_re, a_im;
    Tensor2 f_re, f_im;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const Complex k1 = 1.0 / (nodes[k].x - i * e);
      const Complex k2 = k1 * k1;
      const double w = quad.weights[k] / kPi;
      a_re += (w * (i * k1).real()) * nodes[k].re;
      a_im += (w * (i * i * k1).real()) * nodes[k].im;
      f_re += (w * (-i * k2).real()) * nodes[k].wre;
      f_im += (w * (-i * i * k2).real()) * nodes[k].wim;
    }
    hs.push_back(eta);
    ar.push_back(a_re);
    ai.push_back(a_im);
    fr.push_back(f_re);
    fi.push_back(f_im);
  }
  const auto id = [](double h) { return h; };
  const SpacelikeTail real = extrapolate(hs, ar, fr, id);
  const SpacelikeTail imag = extrapolate(hs, ai, fi, id);
  GeneralCoulombTail out;
  out.A_real = real.A;
  out.F_real = real.F;
  out.A_imag = imag.A;
  out.F_imag = imag.F;
  out.error = std::max(real.error, imag.error);
  return out;
}

std::pair<double, double> pauli_jordan_check(const Vec4& x0, const Vec4& e, const std::function<double(double)>& g,
                                             double u_lo, double u_hi) {
  // Causal form: roots of (x0 + u e)^2 = 0 inside the support.
  const double qa = square(e), qb = 2 * dot(x0, e), qc = square(x0);
  std::vector<double> roots;
  if (std::abs(qa) < 1e-14) {
    if (std::abs(qb) > 0) roots.push_back(-qc / qb);
  } else {
    const double disc = qb * qb - 4 * qa * qc;
    if (disc > 0) {
      roots.push_back((-qb + std::sqrt(disc)) / (2 * qa));
      roots.push_back((-qb - std::sqrt(disc)) / (2 * qa));
    }
  }
  double causal = 0;
  for (double u : roots) {
    if (u <= u_lo || u >= u_hi) continue;
    const Vec4 x = x0 + u * e;
    const double fp = 2 * qa * u + qb;
    causal += g(u) * (x[0] > 0 ? 1.0 : -1.0) / (2 * kPi * std::abs(fp));
  }

  // Sphere form with mollified delta', extrapolated in h^2.
  const SphereQuadrature quad = sphere_quadrature(48);
  const Rule1D ur = composite_gauss(u_lo, u_hi, 400, 8);
  std::vector<std::pair<double, double>> samples;
  for (double h : {0.08, 0.04, 0.02, 0.01}) {
    double total = 0;
    for (std::size_t k = 0; k < quad.size(); ++k) {
      const Vec4 l = null_vector(quad.nodes[k]);
      const double a = dot(x0, l), b = dot(e, l);
      double inner = 0;
      for (std::size_t j = 0; j < ur.size(); ++j)
        inner += ur.weights[j] * g(ur.nodes[j]) * mollified(MollifierKind::DeltaPrime, h, a + b * ur.nodes[j]);
      total += quad.weights[k] * inner;
    }
    samples.emplace_back(h * h, -total / (8 * kPi * kPi));
  }
  return {limit_extrapolate(samples).value, causal};
}

}  // namespace ired
