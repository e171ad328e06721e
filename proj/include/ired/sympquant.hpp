#pragma once

// Symplectic forms on free fields (null, Cauchy and current versions), the
// shift law, the Fock scalar product and truncated-mode coherent shifts.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ired/asymptotics.hpp"
#include "ired/profile.hpp"

namespace ired {

struct SympOptions {
  int sphere_order = 16;
  int m = 10;              ///< Gauss points per s-panel
  double max_panel = 0.5;  ///< longest s-panel
};

/// {V1,V2} = (1/4pi) int (Vdot1.V2 - Vdot2.V1) ds d^2l.  Throws divergence
/// when a profile has no integrable decay (eps <= 0).
double symp_null(const AsymptoteProfile& V1, const AsymptoteProfile& V2, const SympOptions& opts = {});

struct CauchyOptions {
  std::vector<double> radii{8, 16, 32};
  int field_order = 12;    ///< focused rule for the Kirchhoff fields
  int angular_order = 4;   ///< sphere rule on the slice
  int radial_m = 6;
  double inner_step = 1.0; ///< radial panel length inside the first radius
  double tail_tolerance = 1e-3;
};

struct CauchyResult {
  double value = 0;  ///< extrapolated in 1/R
  double tail = 0;   ///< |value - partial integral at the largest radius|
  bool conclusive = true;
  std::vector<std::pair<double, double>> trace;  ///< (R, integral over the ball of radius R)
};

/// (1/4pi) int (F1^{0b} A2_b - F2^{0b} A1_b) d^3x on t = 0 with the fields
/// from kirchhoff_eval.  Inconclusive when the tail exceeds tail_tolerance.
CauchyResult symp_cauchy(const AsymptoteProfile& V1, const AsymptoteProfile& V2, const CauchyOptions& opts = {});

/// Conserved current J_a = Omega_ba d^b g with g(x) = exp(-|x - c|^2 / 2 w^2)
/// (Euclidean distance) and Omega antisymmetric, covariant.
struct GaussianCurrent {
  Vec4 center;
  double width = 1;
  Tensor2 omega;

  /// Throws out-of-domain for a non-positive width or a non-antisymmetric omega.
  void validate() const;
  /// J^a(x), contravariant.
  Vec4 operator()(const Vec4& x) const;
  /// V^J(s,l) = int delta(s - x.l) J(x) dx = Omega_ba l^b dG/ds.
  AsymptoteProfile profile() const;
  /// int J1(x).J2(x - z) dx for two such currents.
  static double correlation(const GaussianCurrent& a, const GaussianCurrent& b, const Vec4& z);
};

/// A test current with its null profile, for currents outside the Gaussian family.
struct CurrentSource {
  std::function<Vec4(const Vec4&)> J;
  AsymptoteProfile profile;
  Vec4 center;
  double width = 1;      ///< scale of the support around center
  bool compact = true;   ///< false for currents with slow tails
};

struct CurrentOptions {
  int hermite_points = 10;  ///< per axis, around each current
  int field_order = 12;
  int radial_panels = 24;   ///< local form
  int sphere_order = 12;
};

struct CurrentForms {
  double symp_j = 0;                   ///< (1/2) int [J1.A2 - J2.A1] dx
  std::optional<double> symp_local;    ///< 4 pi int J1(x) D(x - y) J2(y) dx dy
  std::string note;
};

CurrentForms symp_current(const GaussianCurrent& J1, const GaussianCurrent& J2, const CurrentOptions& opts = {});
CurrentForms symp_current(const CurrentSource& J1, const CurrentSource& J2, const CurrentOptions& opts = {});

struct ShiftLaw {
  double original = 0;
  double shifted = 0;     ///< symp_null of V_i + V_i+
  double correction = 0;  ///< -(1/4pi) int [V1(-inf).V2+ - V2(-inf).V1+]
  double predicted = 0;   ///< original + correction
};

/// Shift V_i -> V_i + V_i+ by s-independent charge-free fields.
ShiftLaw symp_shift_law(const AsymptoteProfile& V1, const AsymptoteProfile& V2, const VectorFn& V1_plus,
                        const VectorFn& V2_plus, const SympOptions& opts = {});

/// Vdot~(omega, l) on the sphere t.l = 1 and the frequency beyond which it
/// is negligible.
struct Spectrum {
  std::function<CVec4(double, const Vec3&)> value;
  double omega_max = 40;
};

Spectrum spectrum_of(const FreeFieldData& data);
/// Numerical transform; omega_max must be given.
Spectrum spectrum_of(const AsymptoteProfile& data, double omega_max);

struct FockOptions {
  int sphere_order = 12;
  int m = 12;
  int panels = 24;
  std::optional<double> omega_min;  ///< infrared cutoff
  double ir_tolerance = 1e-10;      ///< relative size of the zero-mode pairing
};

/// -int int_0^inf conj(Vdot1~).Vdot2~ dw/w d^2l.  Without a cutoff, throws
/// divergence when the zero modes pair to a nonzero value.
Complex fock_product(const Spectrum& a, const Spectrum& b, const FockOptions& opts = {});

struct IrScan {
  std::vector<std::pair<double, double>> points;  ///< (omega_min, (V,V) truncated)
  double slope = 0;                               ///< fitted a in a ln(1/omega_min) + b
  double intercept = 0;
  double predicted = 0;                           ///< -int conj(Vdot~(0)).Vdot~(0) d^2l

  std::string csv() const;
};

IrScan ir_divergence_scan(const Spectrum& a, const std::vector<double>& omega_min, const FockOptions& opts = {});

/// Orthonormal modes e_k = sum_j coeff(k, j) f_j over primitive free fields.
struct ModeBasis {
  std::vector<FreeFieldData> primitives;
  std::vector<std::vector<Complex>> coeff;
  std::vector<std::vector<Complex>> gram;  ///< (f_i, f_j)
  int cutoff = 6;  ///< occupation per mode
  FockOptions fock;

  /// Gram-Schmidt in the Fock product.  Throws basis-too-small for
  /// dependent or IR-singular primitives and out-of-domain when
  /// (cutoff + 1)^N exceeds 1e5.
  static ModeBasis build(const std::vector<FreeFieldData>& primitives, int cutoff, const FockOptions& fock = {});
  /// Shapes Hermite 0..n_shapes-1 of the given width times the listed
  /// harmonics, one polarization each.
  static std::vector<FreeFieldData> hermite_primitives(int n_shapes, double width,
                                                       const std::vector<HarmonicCoeff>& harmonics,
                                                       const Vec4& polarization);

  std::size_t size() const { return coeff.size(); }
  std::size_t dimension() const;
  /// (e_k, f) for every k.
  std::vector<Complex> components(const FreeFieldData& f) const;
  /// max |(e_i, e_j) - delta_ij|.
  double gram_error() const;
};

struct CoherentShift {
  double residual = 0;      ///< on states with total occupation <= low_occupation
  Complex vacuum_mean;      ///< <0| U Phi(V) U* |0>
  double symp = 0;          ///< {V, V1} from the mode components
  double symp_direct = 0;   ///< symp_null of the profiles
  double projection_error = 0;
  std::size_t dimension = 0;
};

/// Checks e^{i Phi(V1)} Phi(V) e^{-i Phi(V1)} = Phi(V) + {V,V1} on the
/// truncated Fock space, Phi(V) = a(Vdot~) + a*(Vdot~).
CoherentShift coherent_shift_check(const FreeFieldData& V, const FreeFieldData& V1, const ModeBasis& basis,
                                   int low_occupation = 2, double projection_tolerance = 1e-8);

}  // namespace ired
