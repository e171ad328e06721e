#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "ired/asymptotics.hpp"
#include "ired/error.hpp"

namespace ired {

SphereQuadrature focused_quadrature(const Focus& focus, int order) {
  if (!(focus.min_width > 0)) return sphere_quadrature(order);
  if (focus.mu_center >= 1.0) return graded_cap_quadrature(focus.axis, order, focus.min_width);
  if (focus.mu_center <= -1.0) return graded_cap_quadrature(-focus.axis, order, focus.min_width);
  return banded_quadrature(focus.axis, focus.mu_center, order, focus.min_width);
}

Focus focus_for_point(const Vec4& X, double scale) {
  Focus f;
  const double r = norm(X.space());
  if (r < 1.0) return f;  // plain rule resolves the integrand
  f.axis = X.space() / r;
  f.mu_center = X.time() / r;
  f.min_width = std::clamp(scale / r, 1e-14, 0.25);
  return f;
}

FieldValue kirchhoff_eval(const AsymptoteProfile& data, const Vec4& x, const SphereQuadrature& quad) {
  if (!data.d1 || !data.d2 || !(data.eps > 0))
    throw Error(ErrorKind::CannotIntegrate, "free-field data needs Vdot, Vddot and a positive decay exponent");
  FieldValue out;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Vec4 l = null_vector(quad.nodes[i]);
    const double s = dot(x, l);
    out.A += quad.weights[i] * data.d1(s, l);
    out.F += quad.weights[i] * wedge(l, data.d2(s, l));
  }
  const double c = -1 / (2 * std::numbers::pi);
  out.A *= c;
  out.F *= c;
  return out;
}

FieldSampler kirchhoff_sampler(const AsymptoteProfile& data, int order) {
  return [data, order](const Vec4& x, const Focus& focus) {
    return kirchhoff_eval(data, x, focused_quadrature(focus, order));
  };
}

std::vector<double> RSchedule::radii() const {
  if (count < 3 || count > 13 || !(r0 > 0)) throw Error(ErrorKind::InvalidSequence, "R schedule needs 3..13 radii");
  std::vector<double> r;
  for (int k = 0; k < count; ++k) r.push_back(r0 * std::ldexp(1.0, k));
  return r;
}

namespace {

// Componentwise extrapolation to h = 0 of vector and tensor sequences.
struct Extrapolator {
  std::vector<double> h;
  std::size_t points = 0;

  LimitEstimate scalar(const std::vector<double>& y) const {
    std::vector<std::pair<double, double>> s;
    for (std::size_t i = 0; i < h.size(); ++i) s.emplace_back(h[i], y[i]);
    return limit_extrapolate(s, points);
  }
  std::pair<Vec4, double> vec(const std::vector<Vec4>& ys) const {
    Vec4 v;
    double err = 0;
    for (int a = 0; a < 4; ++a) {
      std::vector<double> y;
      for (const auto& x : ys) y.push_back(x[a]);
      const auto e = scalar(y);
      v[a] = e.value;
      err = std::max(err, e.error);
    }
    return {v, err};
  }
  std::pair<Tensor2, double> tensor(const std::vector<Tensor2>& ts) const {
    Tensor2 t;
    double err = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        std::vector<double> y;
        for (const auto& x : ts) y.push_back(x(a, b));
        const auto e = scalar(y);
        t(a, b) = e.value;
        t(b, a) = -e.value;
        err = std::max(err, e.error);
      }
    return {t, err};
  }
};

}  // namespace

NullExtraction extract_null_asymptote(const FieldSampler& sampler, const Vec4& x, const NullDirection& l,
                                      int direction, const RSchedule& schedule, double threshold) {
  const double sign = direction >= 0 ? 1.0 : -1.0;
  const auto radii = schedule.radii();
  Extrapolator ex;
  ex.points = static_cast<std::size_t>(schedule.fit_points);
  std::vector<Vec4> as;
  std::vector<Tensor2> fs;
  NullExtraction out;
  for (double R : radii) {
    const Vec4 X = x + (sign * R) * l.l();
    const FieldValue fv = sampler(X, focus_for_point(X, 0.05));
    as.push_back(R * fv.A);
    fs.push_back(R * fv.F);
    ex.h.push_back(1 / R);
    out.trace.emplace_back(R, R * fv.A);
  }
  std::tie(out.V, out.V_error) = ex.vec(as);
  std::tie(out.lVdot, out.lVdot_error) = ex.tensor(fs);
  out.converged = out.V_error < threshold && out.lVdot_error < threshold;
  return out;
}

SpacelikeExtraction extract_spacelike_asymptote(const FieldSampler& sampler, const Vec4& x, const Vec4& y,
                                                const RSchedule& schedule) {
  if (!(square(y) < 0)) throw Error(ErrorKind::OutOfDomain, "spacelike asymptote needs y.y < 0");
  const auto radii = schedule.radii();
  Extrapolator ex;
  ex.points = static_cast<std::size_t>(schedule.fit_points);
  std::vector<Vec4> as;
  std::vector<Tensor2> fs;
  for (double R : radii) {
    const Vec4 X = x + R * y;
    const FieldValue fv = sampler(X, focus_for_point(X, 0.05));
    as.push_back(R * fv.A);
    fs.push_back((R * R) * fv.F);
    ex.h.push_back(1 / R);
  }
  SpacelikeExtraction out;
  std::tie(out.A, out.A_error) = ex.vec(as);
  std::tie(out.F, out.error) = ex.tensor(fs);
  return out;
}

}  // namespace ired
