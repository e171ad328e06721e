#include <algorithm>
#include <cmath>
#include <numbers>

#include "ired/asymptotics.hpp"
#include "ired/error.hpp"

namespace ired {

namespace {

constexpr double kPi = std::numbers::pi;

// int_0^1 e^{i theta t} dt and int_0^1 t e^{i theta t} dt
std::pair<Complex, Complex> filon_moments(double theta) {
  const Complex i(0, 1);
  if (std::abs(theta) < 1e-2) {
    const double t2 = theta * theta;
    const Complex p0 = 1.0 - t2 / 6 + t2 * t2 / 120 + i * (theta / 2 - theta * t2 / 24);
    const Complex p1 = 0.5 - t2 / 8 + t2 * t2 / 144 + i * (theta / 3 - theta * t2 / 30);
    return {p0, p1};
  }
  const Complex e = std::exp(i * theta);
  return {(e - 1.0) / (i * theta), e / (i * theta) + (e - 1.0) / (theta * theta)};
}

std::vector<double> sample_points(const AsymptoteProfile& data, int per_unit) {
  const double lo = data.s_lo(), hi = data.s_hi();
  const auto n = static_cast<std::size_t>(std::max(16.0, std::ceil((hi - lo) * per_unit))) + 1;
  std::vector<double> s(n);
  for (std::size_t k = 0; k < n; ++k) s[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  return s;
}

}  // namespace

CVec4 fourier_transform(const AsymptoteProfile& data, double omega, const Vec3& n, int samples_per_unit) {
  if (samples_per_unit < 2) throw Error(ErrorKind::InvalidGrid, "need at least two samples per unit s");
  const Vec4 l = null_vector(n);
  const std::vector<double> s = sample_points(data, samples_per_unit);
  std::vector<Vec4> f(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) f[k] = data.d1(s[k], l);

  const Complex i(0, 1);
  const double ds = s[1] - s[0];
  const auto [p0, p1] = filon_moments(omega * ds);
  CVec4 acc;
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    const Complex phase = std::exp(i * omega * s[k]) * ds;
    for (int a = 0; a < 4; ++a) acc[a] += phase * (f[k][a] * p0 + (f[k + 1][a] - f[k][a]) * p1);
  }

  // power-law tails C |s|^-(1+eps) beyond the window
  const std::size_t m = std::max<std::size_t>(2, s.size() / 10);
  const double eps = data.eps;
  for (int side = 0; side < 2; ++side) {
    std::vector<double> ss, vv;
    const double S = side == 0 ? s.back() : s.front();
    if ((side == 0 && S <= 0) || (side == 1 && S >= 0)) continue;
    for (int a = 0; a < 4; ++a) {
      ss.clear();
      vv.clear();
      for (std::size_t k = 0; k < m; ++k) {
        const std::size_t idx = side == 0 ? s.size() - 1 - k : k;
        ss.push_back(s[idx]);
        vv.push_back(f[idx][a]);
      }
      const double c = fit_tail_coefficient(ss, vv, eps);
      if (c == 0) continue;
      const double as = std::abs(S);
      Complex tail;
      if (std::abs(omega) < 1e-14) {
        tail = c * std::pow(as, -eps) / eps;
      } else {
        const double fS = c * std::pow(as, -1 - eps);
        tail = side == 0 ? i * fS * std::exp(i * omega * S) / omega : -i * fS * std::exp(i * omega * S) / omega;
      }
      acc[a] += tail;
    }
  }
  return Complex(1 / (2 * kPi)) * acc;
}

FourierProfile fourier_profile(const AsymptoteProfile& data, const std::vector<double>& omega,
                               const std::vector<Vec3>& directions, int samples_per_unit) {
  const bool has_zero = std::any_of(omega.begin(), omega.end(), [](double w) { return std::abs(w) < 1e-15; });
  if (!has_zero) throw Error(ErrorKind::InvalidGrid, "omega grid must contain 0");
  FourierProfile fp;
  fp.omega = omega;
  fp.directions = directions;
  for (const Vec3& n : directions) {
    std::vector<CVec4> row;
    for (double w : omega) row.push_back(fourier_transform(data, w, n, samples_per_unit));
    fp.values.push_back(row);
    // Vdot is integrable, so both one-sided limits equal the value at 0
    const CVec4 z = fourier_transform(data, 0.0, n, samples_per_unit);
    fp.zero_plus.push_back(z);
    fp.zero_minus.push_back(z);
  }
  return fp;
}

IrReport ir_classify(const FourierProfile& fp, double tol) {
  IrReport r;
  if (fp.directions.empty()) return r;
  for (std::size_t d = 0; d < fp.directions.size(); ++d) {
    r.zero_norm += max_abs(fp.zero_plus[d]);
    double m = 0;
    for (const auto& v : fp.values[d]) m = std::max(m, max_abs(v));
    r.scale += m;
  }
  const auto count = static_cast<double>(fp.directions.size());
  r.zero_norm /= count;
  r.scale /= count;
  r.kind = r.zero_norm > tol * std::max(r.scale, 1e-300) ? IrClass::Singular : IrClass::Regular;
  return r;
}

Vec4 zero_mode_limit(const AsymptoteProfile& data, const Vec3& n) {
  const CVec4 z = fourier_transform(data, 0.0, n);
  Vec4 v;
  for (int a = 0; a < 4; ++a) v[a] = -2 * kPi * z[a].real();
  return v;
}

}  // namespace ired
