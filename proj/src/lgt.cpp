#include <algorithm>
#include <cmath>
#include <numbers>

#include "ired/asymptotics.hpp"
#include "ired/error.hpp"

namespace ired {

namespace {

constexpr double kFourPi = 4 * std::numbers::pi;

// Panel grading towards the circle x.l = 0.  The log singularity wants fine
// panels; the principal value loses digits to cancellation on them.
constexpr double kLogScale = 1e-10;
constexpr double kPvScale = 1e-3;

}  // namespace

LgtGauge LgtGauge::from_harmonics(const std::vector<HarmonicCoeff>& alpha) {
  std::vector<HarmonicCoeff> box = alpha;
  for (auto& c : box) c.value *= c.l * (c.l + 1);
  LgtGauge g;
  g.alpha = scalar_from_sphere(0, [alpha](const Vec3& n) { return harmonic_sum(alpha, n); });
  g.box_alpha = scalar_from_sphere(0, [box](const Vec3& n) { return harmonic_sum(box, n); });
  return g;
}

LgtGauge LgtGauge::from_function(const ScalarFn& alpha) {
  if (alpha.degree != 0) throw Error(ErrorKind::DegreeMismatch, "gauge function must have degree 0");
  LgtGauge g;
  g.alpha = alpha;
  g.box_alpha = scalar_from_sphere(0, [alpha](const Vec3& n) { return cone_laplacian(alpha, null_vector(n)); });
  return g;
}

double LgtGauge::lambda(const Vec4& x) const {
  const SphereQuadrature quad = focused_quadrature(focus_for_point(x, kLogScale), order);
  double acc = 0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Vec4 l = null_vector(quad.nodes[i]);
    const double xl = std::abs(dot(x, l));
    if (xl == 0) continue;
    acc += quad.weights[i] * (std::log(xl) * box_alpha(l) - alpha(l));
  }
  return -acc / kFourPi;
}

Vec4 LgtGauge::grad(const Vec4& x) const {
  const SphereQuadrature quad = focused_quadrature(focus_for_point(x, kPvScale), order);
  Vec4 acc;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Vec4 l = null_vector(quad.nodes[i]);
    acc += (quad.weights[i] * box_alpha(l) / dot(x, l)) * lower(l);
  }
  return -1.0 / kFourPi * acc;
}

LgtValue LgtGauge::evaluate(const Vec4& x, double cone_tol) const {
  LgtValue v;
  v.lambda = lambda(x);
  v.grad = grad(x);
  const double scale = x.time() * x.time() + dot(x.space(), x.space());
  v.near_cone = std::abs(square(x)) <= cone_tol * scale;
  return v;
}

LgtDiagnostics asymptote_diagnostics(const LgtGauge& g, const Vec4& x, const NullDirection& l, int direction,
                                     const RSchedule& schedule) {
  const double sign = direction >= 0 ? 1.0 : -1.0;
  const auto radii = schedule.radii();
  LgtDiagnostics d;
  const Vec4 ll = l.l();
  d.alpha_value = g.alpha(ll);
  d.predicted_slope = (-sign * 0.5 * g.box_alpha(ll)) * lower(ll);

  std::vector<std::pair<double, double>> lam;
  std::vector<double> logs;
  std::vector<Vec4> scaled;
  for (double R : radii) {
    const Vec4 X = x + (sign * R) * ll;
    const double v = g.lambda(X);
    d.lambda_trace.emplace_back(R, v);
    lam.emplace_back(1 / R, v);
    logs.push_back(std::log(R));
    scaled.push_back(R * g.grad(X));
  }
  const auto est = limit_extrapolate(lam, static_cast<std::size_t>(schedule.fit_points));
  d.limit = est.value;
  d.limit_error = est.error;

  // slope of R d(lambda) against log R over the trailing radii
  const std::size_t k = std::min<std::size_t>(radii.size(), static_cast<std::size_t>(schedule.fit_points) + 1);
  const std::vector<double> xs(logs.end() - static_cast<long>(k), logs.end());
  for (int a = 0; a < 4; ++a) {
    std::vector<double> ys;
    for (std::size_t i = radii.size() - k; i < radii.size(); ++i) ys.push_back(scaled[i][a]);
    d.log_slope[a] = fit_line(xs, ys).first;
  }
  return d;
}

}  // namespace ired
