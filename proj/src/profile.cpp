#include "ired/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ired/error.hpp"
#include "ired/numerics.hpp"

namespace ired {

namespace {

constexpr double kPi = std::numbers::pi;

double hermite(int k, double u) {
  double h0 = 1, h1 = 2 * u;
  if (k == 0) return h0;
  for (int j = 1; j < k; ++j) {
    const double h2 = 2 * u * h1 - 2 * j * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

// tau = |l_vec| and n = l_vec / tau for the homogeneous extension
std::pair<double, Vec3> split(const Vec4& l) {
  const Vec3 s = l.space();
  const double tau = norm(s);
  return {tau, s / tau};
}

}  // namespace

VectorFn AsymptoteProfile::limit(int sign) const {
  VectorFn f;
  f.degree = -1;
  f.eval = sign < 0 ? minus_inf : plus_inf;
  return f;
}

AsymptoteProfile constant_profile(const VectorFn& v, double charge) {
  AsymptoteProfile p;
  p.value = [v](double, const Vec4& l) { return v(l); };
  p.d1 = [](double, const Vec4&) { return Vec4{}; };
  p.d2 = p.d1;
  p.minus_inf = v.eval;
  p.plus_inf = v.eval;
  p.charge = charge;
  p.breakpoints = {-1.0, 1.0};
  return p;
}

AsymptoteProfile zero_profile() {
  VectorFn z;
  z.degree = -1;
  z.eval = [](const Vec4&) { return Vec4{}; };
  return constant_profile(z, 0.0);
}

AsymptoteProfile sum(const AsymptoteProfile& a, const AsymptoteProfile& b) {
  AsymptoteProfile p;
  p.value = [a, b](double s, const Vec4& l) { return a.value(s, l) + b.value(s, l); };
  p.d1 = [a, b](double s, const Vec4& l) { return a.d1(s, l) + b.d1(s, l); };
  p.d2 = [a, b](double s, const Vec4& l) { return a.d2(s, l) + b.d2(s, l); };
  p.minus_inf = [a, b](const Vec4& l) { return a.minus_inf(l) + b.minus_inf(l); };
  p.plus_inf = [a, b](const Vec4& l) { return a.plus_inf(l) + b.plus_inf(l); };
  p.charge = a.charge + b.charge;
  p.eps = std::min(a.eps, b.eps);
  p.breakpoints = a.breakpoints;
  p.breakpoints.insert(p.breakpoints.end(), b.breakpoints.begin(), b.breakpoints.end());
  std::sort(p.breakpoints.begin(), p.breakpoints.end());
  p.breakpoints.erase(std::unique(p.breakpoints.begin(), p.breakpoints.end()), p.breakpoints.end());
  return p;
}

AsymptoteProfile scaled(double c, const AsymptoteProfile& a) {
  AsymptoteProfile p = a;
  p.value = [c, a](double s, const Vec4& l) { return c * a.value(s, l); };
  p.d1 = [c, a](double s, const Vec4& l) { return c * a.d1(s, l); };
  p.d2 = [c, a](double s, const Vec4& l) { return c * a.d2(s, l); };
  p.minus_inf = [c, a](const Vec4& l) { return c * a.minus_inf(l); };
  p.plus_inf = [c, a](const Vec4& l) { return c * a.plus_inf(l); };
  p.charge = c * a.charge;
  return p;
}

double Shape::f(double s) const {
  const double u = (s - center) / width;
  switch (kind) {
    case ShapeKind::Step: return 0.5 * std::erfc(u);
    case ShapeKind::Gauss: return std::exp(-u * u);
    case ShapeKind::Bump: return std::abs(u) < 1 ? std::pow(1 - u * u, 4) : 0.0;
    case ShapeKind::Hermite: return hermite(index, u) * std::exp(-u * u);
  }
  return 0;
}

double Shape::df(double s) const {
  const double u = (s - center) / width;
  switch (kind) {
    case ShapeKind::Step: return -std::exp(-u * u) / (width * std::sqrt(kPi));
    case ShapeKind::Gauss: return -2 * u * std::exp(-u * u) / width;
    case ShapeKind::Bump: return std::abs(u) < 1 ? -8 * u * std::pow(1 - u * u, 3) / width : 0.0;
    case ShapeKind::Hermite:
      // d/du [H_k e^{-u^2}] = -H_{k+1} e^{-u^2}
      return -hermite(index + 1, u) * std::exp(-u * u) / width;
  }
  return 0;
}

double Shape::d2f(double s) const {
  const double u = (s - center) / width;
  const double w2 = width * width;
  switch (kind) {
    case ShapeKind::Step: return 2 * u * std::exp(-u * u) / (w2 * std::sqrt(kPi));
    case ShapeKind::Gauss: return (4 * u * u - 2) * std::exp(-u * u) / w2;
    case ShapeKind::Bump: {
      if (std::abs(u) >= 1) return 0.0;
      const double a = 1 - u * u;
      return (-8 * a * a * a + 48 * u * u * a * a) / w2;
    }
    case ShapeKind::Hermite: return hermite(index + 2, u) * std::exp(-u * u) / w2;
  }
  return 0;
}

double Shape::support() const {
  if (kind == ShapeKind::Bump) return width;
  // Gaussian factor below 1e-17 beyond |u| = 6.3 for moderate Hermite orders
  return width * (6.5 + 0.5 * std::sqrt(static_cast<double>(index)));
}

Complex Shape::fourier_of_derivative(double omega) const {
  const Complex i(0, 1);
  const Complex shift = std::exp(i * omega * center);
  const double g = std::exp(-0.25 * omega * omega * width * width);
  switch (kind) {
    case ShapeKind::Step: return -g * shift / (2 * kPi);
    case ShapeKind::Gauss: return -i * omega * width * std::sqrt(kPi) * g * shift / (2 * kPi);
    case ShapeKind::Hermite:
      return -i * omega * width * std::sqrt(kPi) * std::pow(i * omega * width, index) * g * shift / (2 * kPi);
    case ShapeKind::Bump: {
      static const Rule1D r = composite_gauss(-1.0, 1.0, 8, 16);
      Complex acc = 0;
      for (std::size_t k = 0; k < r.size(); ++k) {
        const double u = r.nodes[k];
        acc += r.weights[k] * (-8 * u * std::pow(1 - u * u, 3)) * std::exp(i * omega * width * u);
      }
      return acc * shift / (2 * kPi);
    }
  }
  return 0;
}

Vec4 FreeTerm::angular(const Vec3& n) const {
  const Vec4 l = null_vector(n);
  const double a = harmonic_sum(amplitude, n);
  return a * (polarization - dot(polarization, l) * time_axis() + gauge * l);
}

Vec4 FreeFieldData::value(double s, const Vec4& l) const {
  const auto [tau, n] = split(l);
  Vec4 v;
  for (const auto& t : terms) v += t.shape.f(s / tau) * t.angular(n);
  return v / tau;
}

Vec4 FreeFieldData::d1(double s, const Vec4& l) const {
  const auto [tau, n] = split(l);
  Vec4 v;
  for (const auto& t : terms) v += t.shape.df(s / tau) * t.angular(n);
  return v / (tau * tau);
}

Vec4 FreeFieldData::d2(double s, const Vec4& l) const {
  const auto [tau, n] = split(l);
  Vec4 v;
  for (const auto& t : terms) v += t.shape.d2f(s / tau) * t.angular(n);
  return v / (tau * tau * tau);
}

Vec4 FreeFieldData::minus_inf(const Vec4& l) const {
  const auto [tau, n] = split(l);
  Vec4 v;
  for (const auto& t : terms) v += t.shape.at_minus_inf() * t.angular(n);
  return v / tau;
}

CVec4 FreeFieldData::fourier_exact(double omega, const Vec3& n) const {
  CVec4 r;
  for (const auto& t : terms) r += t.shape.fourier_of_derivative(omega) * t.angular(n);
  return r;
}

std::vector<double> FreeFieldData::breakpoints() const {
  std::vector<double> bp;
  for (const auto& t : terms) {
    bp.push_back(t.shape.center - t.shape.support());
    bp.push_back(t.shape.center);
    bp.push_back(t.shape.center + t.shape.support());
  }
  if (bp.empty()) bp = {-1.0, 1.0};
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

bool FreeFieldData::ir_regular() const {
  return std::none_of(terms.begin(), terms.end(), [](const FreeTerm& t) { return t.shape.kind == ShapeKind::Step; });
}

AsymptoteProfile FreeFieldData::profile() const {
  AsymptoteProfile p;
  const FreeFieldData self = *this;
  p.value = [self](double s, const Vec4& l) { return self.value(s, l); };
  p.d1 = [self](double s, const Vec4& l) { return self.d1(s, l); };
  p.d2 = [self](double s, const Vec4& l) { return self.d2(s, l); };
  p.minus_inf = [self](const Vec4& l) { return self.minus_inf(l); };
  p.plus_inf = [](const Vec4&) { return Vec4{}; };
  p.charge = 0;
  p.eps = 1;
  p.breakpoints = breakpoints();
  return p;
}

}  // namespace ired
