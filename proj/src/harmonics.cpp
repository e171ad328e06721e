#include "ired/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ired/error.hpp"

namespace ired {

double real_ylm(int l, int m, const Vec3& n) {
  if (l < 0 || std::abs(m) > l) throw Error(ErrorKind::OutOfDomain, "harmonic index out of range");
  const double theta = std::acos(std::clamp(n.z, -1.0, 1.0));
  const double phi = std::atan2(n.y, n.x);
  const auto ul = static_cast<unsigned>(l);
  const auto um = static_cast<unsigned>(std::abs(m));
  // std::sph_legendre includes the Condon-Shortley phase and the complex normalization
  const double y = std::sph_legendre(ul, um, theta);
  if (m == 0) return y;
  const double s = std::numbers::sqrt2 * ((m & 1) ? -1.0 : 1.0);
  return m > 0 ? s * y * std::cos(m * phi) : s * y * std::sin(-m * phi);
}

double harmonic_sum(const std::vector<HarmonicCoeff>& coeffs, const Vec3& n) {
  double s = 0;
  for (const auto& c : coeffs) s += c.value * real_ylm(c.l, c.m, n);
  return s;
}

}  // namespace ired
