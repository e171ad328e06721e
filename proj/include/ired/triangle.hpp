#pragma once

// Asymptotic charges, the B-field asymptote, memory phase and kick,
// finite-R integrals of the field and the classical soft relation.

#include <vector>

#include "ired/asymptotics.hpp"
#include "ired/celestial.hpp"
#include "ired/currents.hpp"

namespace ired {

/// Test field V+ (degree -1, l.V+ = 0) with its scalar potential eps+,
/// l^V+ = L eps+.  `residual` is the reconstruction error when eps+ comes
/// from potential_decompose.
struct ChargeSmearing {
  VectorFn v_plus;
  ScalarFn eps_plus;
  double residual = 0;

  /// eps+ from the kernel formula for the given field.
  static ChargeSmearing from_field(const VectorFn& v_plus, const SphereQuadrature& quad);
  /// V+_b = t^a L_ab eps / (t.l), eps+ from the kernel formula for that field.
  static ChargeSmearing from_potential(const ScalarFn& eps);
};

/// V_b = t^a L_ab eps / (t.l) for a degree-0 function.
VectorFn field_of_potential(const ScalarFn& eps);

struct ChargeValues {
  double q_form1 = 0;  ///< -(1/4pi) int V+ . V(-inf)
  double q_form2 = 0;  ///< (1/4pi) int eps+ d.V(-inf)
  double discrepancy = 0;
};

/// Both forms of the charge smeared with `s`; throws inconsistent-input if
/// the smearing has no potential.
ChargeValues charge_functional(const ChargeSmearing& s, const VectorFn& v_minus, const SphereQuadrature& quad);

/// (1/4pi) int eps d.V(-inf) for a given eps.
double charge_from_potential(const ScalarFn& eps, const VectorFn& v_minus, const SphereQuadrature& quad);

/// W_b(s,l) = L_ba V^a(s,l) - V_b(s,l) + s Vdot_b(s,l), covariant.
Vec4 b_asymptote(const AsymptoteProfile& V, double s, const Vec4& l);

/// W_b(+-inf, l) = L_ba V^a(+-inf, l) - V_b(+-inf, l).
Vec4 b_asymptote_limit(const AsymptoteProfile& V, int sign, const Vec4& l);

struct BExtraction {
  Vec4 W;
  double error = 0;
};

/// Limit of R B_b(x +- R l) with B_b = x^a F_ab, extrapolated in 1/R.
BExtraction extract_b_asymptote(const FieldSampler& sampler, const Vec4& x, const NullDirection& l, int direction,
                                const RSchedule& schedule = {});

/// Rows: w_matching (W(-inf) = W'(+inf)), strominger (its t contraction),
/// invariant_matching (d.V(-inf) = d.V'(+inf)), w_divergence
/// (W(-inf) = l d.V(-inf)).
std::vector<ResidualRow> strominger_check(const AsymptoteProfile& V, const AsymptoteProfile& V_past,
                                          const SphereQuadrature& directions);

struct TestParticle {
  double e = 1;
  double m = 1;
  Vec4 p = time_axis();

  /// Throws out-of-domain unless p.p = m^2 (relative 1e-9), p^0 > 0 and m > 0.
  void validate() const;
  Vec4 velocity() const { return p / m; }
};

/// delta(p) = -(e/2pi) int p.V(-inf,l) / (p.l) d^2l for any timelike p.
double memory_phase(double e, const Vec4& p, const VectorFn& v_minus, const SphereQuadrature& quad);
double memory_phase(const TestParticle& particle, const VectorFn& v_minus, const SphereQuadrature& quad);

/// Sigma_Phi(v) = (e/4pi) int Phi(l) / (v.l)^2 d^2l.
double sigma_phase(double e, const Vec4& v, const ScalarFn& phi, const SphereQuadrature& quad);

struct MemoryKick {
  Vec4 time_integral;  ///< -(e/m) int F_ab(x0 + v tau) v^b tau dtau
  Vec4 celestial;      ///< (e/2pi m) int (l_a V_b - l_b V_a)(-inf) v^b / (v.l)^2
  Vec4 grad_phase;     ///< d delta / d p^a by central differences
};

/// Kick of a test particle through x0 in a free field (charge 0).
MemoryKick memory_kick(const TestParticle& particle, const Vec4& x0, const AsymptoteProfile& field,
                       const SphereQuadrature& quad, double rel_step = 1e-4);

/// int F(u t + R k) du over the whole line, u-quadrature of the Kirchhoff field.
Tensor2 full_line_integral(const AsymptoteProfile& data, double R, const Vec3& k, int order = 16);

/// R int_{tau0}^inf F(tau t + R z) dtau by the celestial reduction.
Tensor2 half_line_integral(const AsymptoteProfile& data, double R, const Vec4& z, double tau0, int order = 32);

struct HalfLineLimit {
  Tensor2 value;     ///< extrapolated R -> inf
  double error = 0;
  Tensor2 expected;  ///< k_b V_a(tau0,k) - k_a V_b(tau0,k), or the delta(z.l) integral
  std::vector<std::pair<double, Tensor2>> trace;
};

/// R -> inf limit of half_line_integral for null z = k (t.k = 1) or spacelike z.
HalfLineLimit half_line_limit(const AsymptoteProfile& data, const Vec4& z, double tau0,
                              const RSchedule& schedule = {1.0, 13, 4});

/// (int [k_a Vdot_b - k_b Vdot_a](u,k) du, k_b V^out_a(-inf,k) - k_a V^out_b(-inf,k))
std::pair<Tensor2, Tensor2> kick_integral(const AsymptoteProfile& V, const Vec3& k);

struct SoftRelation {
  double residual = 0;  ///< sup over directions of |lhs - rhs|
  std::vector<Vec4> lhs, rhs;
  IrReport in_class, out_class;
};

/// 2pi lim w a^out + sum q v/(v.l) against 2pi lim w a^in + sum q' v'/(v'.l)
/// with the out field fixed by the event and the in field.
SoftRelation soft_relation(const ScatteringEvent& event, const FreeFieldData& in_field,
                           const std::vector<Vec3>& directions, const std::vector<double>& omega = {-1, -0.5, 0, 0.5, 1});

struct SpacelikeAverage {
  double average = 0;  ///< int phi(y) t.lim R B(x + R y) dy
  double q_form2 = 0;  ///< (1/4pi) int eps+ d.V(-inf) with eps+ = t.l int phi delta(y.l) dy
};

/// Average of the spacelike B asymptote against the bump
/// phi(y) = (1 - |y - c|^2/r^2)^4 (Euclidean distance), supported in y.y < 0.
SpacelikeAverage spacelike_average_charge(const VectorFn& v_minus, const Vec4& center, double radius,
                                          const SphereQuadrature& quad);

}  // namespace ired
