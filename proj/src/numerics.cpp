#include "ired/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ired/error.hpp"

namespace ired {

Rule1D gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidOrder, "Gauss-Legendre rule needs n >= 1");
  Rule1D r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1);
    const double w = 2 / ((1 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    r.nodes[lo] = -x;
    r.nodes[hi] = x;
    r.weights[lo] = w;
    r.weights[hi] = w;
  }
  if (n % 2 == 1) r.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return r;
}

Rule1D composite_gauss(std::span<const double> breakpoints, int m) {
  const Rule1D base = gauss_legendre(m);
  Rule1D r;
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    const double a = breakpoints[k], b = breakpoints[k + 1];
    if (!(b > a)) continue;
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < base.size(); ++i) {
      r.nodes.push_back(mid + half * base.nodes[i]);
      r.weights.push_back(half * base.weights[i]);
    }
  }
  return r;
}

Rule1D composite_gauss(double a, double b, int panels, int m) {
  std::vector<double> bp(static_cast<std::size_t>(panels) + 1);
  for (int k = 0; k <= panels; ++k) bp[static_cast<std::size_t>(k)] = a + (b - a) * k / panels;
  return composite_gauss(bp, m);
}

Rule1D clustered_rule(double center, double min_width, int m) {
  center = std::clamp(center, -1.0, 1.0);
  std::vector<double> bp{-1.0, 1.0, center};
  const double span_left = center + 1.0, span_right = 1.0 - center;
  // mirror images of the interval ends keep the inner panels symmetric
  if (span_right > 0 && center - span_right > -1.0) bp.push_back(center - span_right);
  if (span_left > 0 && center + span_left < 1.0) bp.push_back(center + span_left);
  for (double d = min_width; d < std::max(span_left, span_right); d *= 2.0) {
    if (center - d > -1.0) bp.push_back(center - d);
    if (center + d < 1.0) bp.push_back(center + d);
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end(), [](double a, double b) { return std::abs(a - b) < 1e-15; }),
           bp.end());
  return composite_gauss(bp, m);
}

double SphereQuadrature::total_weight() const {
  double s = 0;
  for (double w : weights) s += w;
  return s;
}

namespace {

std::pair<Vec3, Vec3> transverse_frame(const Vec3& axis) {
  const Vec3 a = normalized(axis);
  Vec3 helper = std::abs(a.x) < 0.6 ? Vec3{1, 0, 0} : (std::abs(a.y) < 0.6 ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
  const Vec3 e1 = normalized(helper - dot(helper, a) * a);
  const Vec3 e2 = cross(a, e1);
  return {e1, e2};
}

}  // namespace

SphereQuadrature axis_quadrature(const Vec3& axis, const Rule1D& mu_rule, int n_phi) {
  const Vec3 a = normalized(axis);
  const auto [e1, e2] = transverse_frame(a);
  SphereQuadrature q;
  q.order = static_cast<int>(mu_rule.size());
  q.nodes.reserve(mu_rule.size() * static_cast<std::size_t>(n_phi));
  q.weights.reserve(q.nodes.capacity());
  const double dphi = 2 * std::numbers::pi / n_phi;
  for (std::size_t i = 0; i < mu_rule.size(); ++i) {
    const double mu = mu_rule.nodes[i];
    const double st = std::sqrt(std::max(0.0, 1 - mu * mu));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = (j + 0.5) * dphi;
      q.nodes.push_back(mu * a + st * (std::cos(phi) * e1 + std::sin(phi) * e2));
      q.weights.push_back(mu_rule.weights[i] * dphi);
    }
  }
  return q;
}

SphereQuadrature sphere_quadrature(int order) {
  if (order < 2) throw Error(ErrorKind::InvalidOrder, "sphere quadrature order must be >= 2");
  auto q = axis_quadrature({0, 0, 1}, gauss_legendre(order), 2 * order);
  q.order = order;
  return q;
}

SphereQuadrature graded_cap_quadrature(const Vec3& axis, int order, double min_cap, int n_phi) {
  if (order < 2) throw Error(ErrorKind::InvalidOrder, "graded quadrature order must be >= 2");
  const int m = std::max(4, order / 2);
  auto q = axis_quadrature(axis, clustered_rule(1.0, min_cap, m), n_phi > 0 ? n_phi : 2 * order);
  q.order = order;
  return q;
}

SphereQuadrature banded_quadrature(const Vec3& axis, double mu_center, int order, double min_width,
                                   int n_phi) {
  if (order < 2) throw Error(ErrorKind::InvalidOrder, "banded quadrature order must be >= 2");
  const int m = std::max(4, order / 2);
  auto q = axis_quadrature(axis, clustered_rule(mu_center, min_width, m), n_phi > 0 ? n_phi : 2 * order);
  q.order = order;
  return q;
}

LimitEstimate limit_extrapolate(std::span<const std::pair<double, double>> samples, std::size_t max_points) {
  if (samples.size() < 3) throw Error(ErrorKind::InvalidSequence, "need at least three samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].first > 0)) throw Error(ErrorKind::InvalidSequence, "h must be positive");
    if (i > 0 && !(samples[i].first < samples[i - 1].first))
      throw Error(ErrorKind::InvalidSequence, "h must decrease strictly towards 0");
  }
  std::size_t first = 0;
  if (max_points >= 2 && samples.size() > max_points) first = samples.size() - max_points;
  const std::size_t n = samples.size() - first;

  // Neville table evaluated at h = 0; diag[k] uses samples first..first+k.
  std::vector<double> p(n);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = samples[first + i].second;
    for (std::size_t k = i; k-- > 0;) {
      const double hk = samples[first + k].first, hi = samples[first + i].first;
      p[k] = (hk * p[k + 1] - hi * p[k]) / (hk - hi);
    }
    diag[i] = p[0];
  }
  LimitEstimate est;
  est.value = diag[n - 1];
  est.error = std::abs(diag[n - 1] - diag[n - 2]);
  return est;
}

double mollified(MollifierKind kind, double width, double x) {
  if (!(width > 0)) throw Error(ErrorKind::InvalidWidth, "mollifier width must be positive");
  const double u = x / width;
  const double g = std::exp(-0.5 * u * u) / (width * std::sqrt(2 * std::numbers::pi));
  return kind == MollifierKind::Delta ? g : -u / width * g;
}

SGrid SGrid::uniform(double a, double b, std::size_t n, double eps) {
  SGrid g;
  g.eps = eps;
  const double h = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    g.samples.push_back(a + h * static_cast<double>(i));
    g.weights.push_back((i == 0 || i + 1 == n) ? 0.5 * h : h);
  }
  return g;
}

SGrid SGrid::gauss(std::span<const double> breakpoints, int m, double eps) {
  const Rule1D r = composite_gauss(breakpoints, m);
  SGrid g;
  g.samples = r.nodes;
  g.weights = r.weights;
  g.eps = eps;
  return g;
}

void SGrid::validate() const {
  if (samples.size() != weights.size() || samples.size() < 2)
    throw Error(ErrorKind::InvalidGrid, "s-grid needs matching samples and weights");
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i] > samples[i - 1])) throw Error(ErrorKind::InvalidGrid, "s-grid samples must increase");
  if (!(eps > 0)) throw Error(ErrorKind::InvalidGrid, "tail exponent must be positive");
}

double fit_tail_coefficient(std::span<const double> s, std::span<const double> values, double eps) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double b = std::pow(std::abs(s[i]), -(1 + eps));
    num += values[i] * b;
    den += b * b;
  }
  return den > 0 ? num / den : 0.0;
}

double integrate_with_tail(const SGrid& grid, std::span<const double> values) {
  grid.validate();
  if (values.size() != grid.samples.size()) throw Error(ErrorKind::InvalidGrid, "value count mismatch");
  double sum = 0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += grid.weights[i] * values[i];

  const std::size_t n = values.size();
  const std::size_t k = std::max<std::size_t>(2, n / 10);
  const double lo = grid.samples.front(), hi = grid.samples.back();
  // tails are only meaningful away from the origin
  if (hi > 0) {
    const double c = fit_tail_coefficient(std::span(grid.samples).subspan(n - k), values.subspan(n - k), grid.eps);
    sum += c * std::pow(hi, -grid.eps) / grid.eps;
  }
  if (lo < 0) {
    const double c = fit_tail_coefficient(std::span(grid.samples).first(k), values.first(k), grid.eps);
    sum += c * std::pow(-lo, -grid.eps) / grid.eps;
  }
  return sum;
}

std::pair<double, double> fit_line(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

}  // namespace ired
