#pragma once

// Scattering events and the null profiles of their currents, with the
// retarded/advanced/radiation bookkeeping.

#include <vector>

#include "ired/numerics.hpp"
#include "ired/profile.hpp"

namespace ired {

struct PointParticle {
  double q = 0;
  Vec4 v = time_axis();

  /// Throws out-of-domain unless v.v = 1 and v^0 > 0.
  void validate() const;
};

/// Charges q'_i, v'_i before and q_i, v_i after a transition of the
/// current profile centred at `center` with width `width`.
struct ScatteringEvent {
  std::vector<PointParticle> incoming;
  std::vector<PointParticle> outgoing;
  double center = 0;
  double width = 1;

  /// Throws inconsistent-event on charge non-conservation or a bad width.
  void validate() const;
  double total_charge() const;
  /// An event with a single inertial particle.
  static ScatteringEvent free_particle(double q, const Vec4& v);
};

/// Smooth step chi(s) = (1 + erf((s - c)/w)) / 2 and its derivatives.
double transition(double s, double center, double width, int derivative = 0);

/// Sum of q v / (v.l) over the particles.
VectorFn coulomb_sum(const std::vector<PointParticle>& particles);

/// V^j(s,l) = (1 - chi) sum' q' v'/(v'.l) + chi sum q v/(v.l).
AsymptoteProfile current_profile(const ScatteringEvent& event);

struct AsymptoteSet {
  AsymptoteProfile ret, ret_past, adv, adv_past, rad, rad_past;
};

AsymptoteSet ret_adv_rad_asymptotes(const ScatteringEvent& event);

/// sup over nodes of |L_[ab V_c]| for V = V^j(-inf) or V^j(+inf).
double magnetic_charge_residual(const AsymptoteProfile& profile, int sign, const SphereQuadrature& quad);

}  // namespace ired
