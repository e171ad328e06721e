#pragma once

// Real orthonormal spherical harmonics on the unit sphere.

#include <vector>

#include "ired/lorentz.hpp"

namespace ired {

/// Real Y_lm(n), orthonormal over the sphere; m < 0 are the sine parts.
double real_ylm(int l, int m, const Vec3& n);

struct HarmonicCoeff {
  int l = 0;
  int m = 0;
  double value = 0;
};

/// Sum of value * Y_lm(n) over the list.
double harmonic_sum(const std::vector<HarmonicCoeff>& coeffs, const Vec3& n);

}  // namespace ired
