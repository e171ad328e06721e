#pragma once

// Phase field S(x) at spacelike infinity, its Maxwell field, the charge
// decomposition of c(l), the pairing <D,c>, the Weyl composition law and
// the Casimir values of the charged sector.

#include <optional>
#include <utility>
#include <vector>

#include "ired/celestial.hpp"
#include "ired/harmonics.hpp"
#include "ired/numerics.hpp"

namespace ired {

/// D (degree 0) with its d^2 D (degree -2), c (degree -2) and the
/// elementary charge e.
struct StarData {
  ScalarFn D;
  ScalarFn box_D;
  ScalarFn c;
  double e = 1;

  /// D and the smooth part of c from harmonics on the t.l = 1 sphere, plus
  /// Coulomb terms Q / (v.l)^2 in c.
  static StarData from_harmonics(const std::vector<HarmonicCoeff>& D, const std::vector<HarmonicCoeff>& c,
                                 const std::vector<std::pair<double, Vec4>>& coulomb = {}, double e = 1);
  /// d^2 D by finite differences on the cone.
  static StarData from_functions(const ScalarFn& D, const ScalarFn& c, double e = 1);

  /// Q(c) = (1/4pi) int c d^2l.
  double charge(int order = 32) const;
};

struct StarOptions {
  int order = 48;
  int n_phi = 128;             ///< azimuths on the circle x.l = 0
  double cone_tolerance = 1e-8;
};

struct SValue {
  double value = 0;
  bool near_cone = false;  ///< |x.x| below cone_tolerance (relative); value unreliable
};

/// S(x) = -(e/4pi) int {c sgn(x.l) + d^2D log(|x.l| / v.l)} d^2l + S_v,
/// S_v = (e/4pi) int D / (v.l)^2 d^2l.
SValue s_field(const StarData& data, const Vec4& v, const Vec4& x, const StarOptions& opts = {});

/// F_ab(x) = (1 / 4pi x^2) [PV int (l_a x_b - l_b x_a) d^2D / x.l + 2 int (l_a x_b - l_b x_a) c delta(x.l)]
/// for x.x < 0 (out-of-domain otherwise).
Tensor2 star_field_strength(const StarData& data, const Vec4& x, const StarOptions& opts = {});

struct ChargeDecomposition {
  double Q = 0;
  Vec4 v;
  std::vector<HarmonicCoeff> F_coeffs;  ///< F_v in harmonics of the v rest-frame direction
  ScalarFn F_v;                         ///< degree 0
  double residual = 0;                  ///< sup |c - Q/(v.l)^2 - d^2 F_v| off the quadrature nodes
};

/// c = Q/(v.l)^2 + d^2 F_v with a spectral solve up to l_max in the rest
/// frame of v.  Throws inconsistent-charge when the l = 0 remainder exceeds
/// `tolerance` (relative to max(1, |Q|)).
ChargeDecomposition charge_decompose(const ScalarFn& c, const Vec4& v, int l_max = 24, double tolerance = 1e-8);

/// <D,c> = (1/4pi) int D c d^2l.  Throws quantization-violation unless
/// Q(c)/e is an integer within 1e-8.
double star_pairing(const ScalarFn& D, const ScalarFn& c, double e = 1, int order = 32);

struct StarWeylElement {
  StarData data;
  double phase = 0;  ///< in [0, 2 pi)

  static StarWeylElement identity(double e = 1);
};

/// W1 W2 = exp(i sigma/2) W(D1 + D2, c1 + c2), sigma = <D1,c2> - <D2,c1>.
StarWeylElement weyl_compose(const StarWeylElement& a, const StarWeylElement& b, int order = 32);

/// W(D,c)* = W(-D,-c) with the phase negated.
StarWeylElement weyl_adjoint(const StarWeylElement& a);

enum class CasimirRegime { DiscreteSupplementary, Boundary, ContinuousOnly };

struct CasimirValue {
  std::optional<double> value;  ///< z (2 - z)
  std::optional<double> nu;     ///< 1 - sqrt(z)
  CasimirRegime regime = CasimirRegime::ContinuousOnly;
};

/// Supplementary-series content of the charged sector for z = alpha/pi.
/// Throws invalid-coupling for z <= 0.
CasimirValue casimir(double z);

}  // namespace ired
