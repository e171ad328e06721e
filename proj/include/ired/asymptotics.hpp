#pragma once

// Free fields from null data, numerical null and spacelike asymptotes,
// matching, Fourier profiles and the gauge function with direction
// dependent limits.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ired/celestial.hpp"
#include "ired/currents.hpp"
#include "ired/numerics.hpp"
#include "ired/profile.hpp"

namespace ired {

/// Potential A^a (contravariant) and field F_ab (covariant) at a point.
struct FieldValue {
  Vec4 A;
  Tensor2 F;
};

/// Where a sphere integrand concentrates: the circle mu = mu_center about
/// `axis` (mu_center >= 1 means the cap at the axis), resolved down to
/// `min_width`.  min_width = 0 selects the plain product rule.
struct Focus {
  Vec3 axis{0, 0, 1};
  double mu_center = 1.0;
  double min_width = 0.0;
};

/// Rule adapted to a focus.
SphereQuadrature focused_quadrature(const Focus& focus, int order);

/// Focus of an integrand depending on l only through X.l (X off the cone).
Focus focus_for_point(const Vec4& X, double scale = 1.0);

/// A_a(x) = -(1/2pi) int Vdot_a(x.l, l) d^2l and
/// F_ab(x) = -(1/2pi) int [l_a Vddot_b - l_b Vddot_a](x.l, l) d^2l.
FieldValue kirchhoff_eval(const AsymptoteProfile& data, const Vec4& x, const SphereQuadrature& quad);

using FieldSampler = std::function<FieldValue(const Vec4&, const Focus&)>;

/// Sampler running kirchhoff_eval with focused rules of the given order.
FieldSampler kirchhoff_sampler(const AsymptoteProfile& data, int order = 32);

/// Geometric schedule R_k = r0 * 2^k, k = 0..count-1 (count <= 13).
struct RSchedule {
  double r0 = 1.0;
  int count = 13;
  int fit_points = 4;  ///< trailing samples used by the extrapolation

  std::vector<double> radii() const;
};

struct NullExtraction {
  Vec4 V;
  double V_error = 0;
  Tensor2 lVdot;
  double lVdot_error = 0;
  bool converged = false;
  std::vector<std::pair<double, Vec4>> trace;  ///< (R, R A(x +- R l))
};

/// Limits of R A(x +- R l) and R F(x +- R l) by extrapolation in 1/R.
/// `converged` is false when an error estimate exceeds `threshold`.
NullExtraction extract_null_asymptote(const FieldSampler& sampler, const Vec4& x, const NullDirection& l,
                                      int direction, const RSchedule& schedule = {}, double threshold = 1e-3);

/// Total asymptotes V, V' of A = A^ret + A^in for an event and an incoming
/// free field, with V^out = V^in + V^rad and V^in' = V^in(-inf) - V^in.
struct TotalAsymptotes {
  AsymptoteProfile V, V_past, Vj, out, in_past;
};
TotalAsymptotes total_asymptotes(const ScatteringEvent& event, const FreeFieldData& in_field);

struct ResidualRow {
  std::string name;
  double residual = 0;
};

/// Sup-norm residuals of the matching relations over directions and s samples.
/// `out`/`in_past`, when given, are checked against the definitions
/// V^out = V - V(+inf) and V^in' = V' - V'(-inf).
std::vector<ResidualRow> matching_verify(const AsymptoteProfile& V, const AsymptoteProfile& V_past,
                                         const AsymptoteProfile& Vj, const SphereQuadrature& directions,
                                         const std::vector<double>& s_samples,
                                         const AsymptoteProfile* out = nullptr,
                                         const AsymptoteProfile* in_past = nullptr);

/// Mollifier schedule for distributional sphere integrals; widths are
/// relative to |y_vec| and extrapolated to zero in powers of h^2.
struct MollifierSchedule {
  std::vector<double> widths{0.2, 0.1, 0.05, 0.025};
  int order = 48;
};

struct SpacelikeTail {
  Vec4 A;
  Tensor2 F;
  double error = 0;
};

/// A^as(y) = (1/2pi) int V(l) delta(y.l) d^2l and
/// F^as(y) = (1/2pi) int [l_a V_b - l_b V_a] delta'(y.l) d^2l for y.y < 0.
SpacelikeTail spacelike_tail(const VectorFn& v_minus, const Vec4& y, const MollifierSchedule& sched = {});

/// Same integrals by the exact reduction of delta(y.l) to the circle
/// mu = y^0/|y_vec|, with a spectral mu-derivative for delta-prime.
SpacelikeTail spacelike_tail_exact(const VectorFn& v_minus, const Vec4& y, int n_phi = 128);

/// Limit of R^2 F(x + R y) from a sampler, extrapolated in 1/R.
struct SpacelikeExtraction {
  Tensor2 F;
  double error = 0;
  Vec4 A;  ///< limit of R A(x + R y)
  double A_error = 0;
};
SpacelikeExtraction extract_spacelike_asymptote(const FieldSampler& sampler, const Vec4& x, const Vec4& y,
                                                const RSchedule& schedule);

/// Fourier data (1/2pi) int Vdot e^{i w s} ds sampled on an omega grid.
struct FourierProfile {
  std::vector<double> omega;
  std::vector<Vec3> directions;
  std::vector<std::vector<CVec4>> values;  ///< [direction][omega]
  std::vector<CVec4> zero_plus;            ///< Vdot~(0+, l) per direction
  std::vector<CVec4> zero_minus;           ///< Vdot~(0-, l) per direction
};

/// Filon-type quadrature of the transform on a piecewise-linear sampling of
/// Vdot over the profile window plus power-law tails.  The grid must
/// contain omega = 0 (invalid-grid otherwise).
FourierProfile fourier_profile(const AsymptoteProfile& data, const std::vector<double>& omega,
                               const std::vector<Vec3>& directions, int samples_per_unit = 64);

/// (1/2pi) int Vdot(s,l) e^{i w s} ds at a single (omega, l) by Filon quadrature.
CVec4 fourier_transform(const AsymptoteProfile& data, double omega, const Vec3& n, int samples_per_unit = 64);

enum class IrClass { Regular, Singular };

struct IrReport {
  IrClass kind = IrClass::Regular;
  double zero_norm = 0;  ///< sphere average of |Vdot~(0, l)|
  double scale = 0;      ///< sphere average of max |Vdot~(w, l)|
};

/// Singular iff the sphere-averaged |Vdot~(0,l)| exceeds tol times the profile scale.
IrReport ir_classify(const FourierProfile& fp, double tol = 1e-6);

/// -2pi Vdot~(0, l): equals V(-inf, l) - V(+inf, l).
Vec4 zero_mode_limit(const AsymptoteProfile& data, const Vec3& n);

/// Gauge function with l-dependent limits:
/// lambda(x) = -(1/4pi) int { log|x.l / t.l| d^2 alpha - alpha / (t.l)^2 } d^2l.
struct LgtValue {
  double lambda = 0;
  Vec4 grad;
  bool near_cone = false;  ///< |x.x| below tolerance: regularized value
};

struct LgtGauge {
  ScalarFn alpha;
  ScalarFn box_alpha;  ///< d^2 alpha on degree-0 functions
  int order = 48;

  static LgtGauge from_harmonics(const std::vector<HarmonicCoeff>& alpha);
  static LgtGauge from_function(const ScalarFn& alpha);

  double lambda(const Vec4& x) const;
  /// d_a lambda = -(1/4pi) PV int l_a d^2 alpha / (x.l) d^2l, covariant.
  Vec4 grad(const Vec4& x) const;
  /// Both at once, flagging points within cone_tol (relative) of the light cone.
  LgtValue evaluate(const Vec4& x, double cone_tol = 1e-8) const;
};

struct LgtDiagnostics {
  double limit = 0;         ///< extrapolated lambda(x +- R l)
  double limit_error = 0;
  double alpha_value = 0;   ///< alpha(l)
  Vec4 log_slope;           ///< fitted coefficient of log R / R in d lambda
  Vec4 predicted_slope;     ///< -+ (1/2) l d^2 alpha(l), covariant
  std::vector<std::pair<double, double>> lambda_trace;  ///< (R, lambda)
};

LgtDiagnostics asymptote_diagnostics(const LgtGauge& g, const Vec4& x, const NullDirection& l, int direction,
                                     const RSchedule& schedule = {1.0, 13, 4});

/// Asymptotic fields of a free field of general Coulomb decay from
/// Vdot~(0+, l) = R + i I, using (y.l - i eta)^-1 with eta -> 0.
struct GeneralCoulombTail {
  Vec4 A_real, A_imag;     ///< contributions of R and I
  Tensor2 F_real, F_imag;
  double error = 0;

  Vec4 A() const { return A_real + A_imag; }
  Tensor2 F() const { return F_real + F_imag; }
};

using ComplexTangentFn = std::function<CVec4(const Vec4&)>;

struct EtaSchedule {
  std::vector<double> etas{0.04, 0.02, 0.01, 0.005, 0.0025};
  int order = 48;
};

GeneralCoulombTail general_coulomb_tail(const ComplexTangentFn& vdot0, const Vec4& y, const EtaSchedule& sched = {});

/// Pauli-Jordan function smeared along a line: int D(x0 + u e) g(u) du with
/// D = -(1/8pi^2) int delta'(x.l) d^2l (mollified, width -> 0), and the
/// same from (1/2pi) delta(x^2) sgn(x.t).
std::pair<double, double> pauli_jordan_check(const Vec4& x0, const Vec4& e, const std::function<double(double)>& g,
                                             double u_lo, double u_hi);

}  // namespace ired
