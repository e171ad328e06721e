#pragma once

// Null-infinity profiles V(s, l) and the analytic families used to build
// free-field data.

#include <complex>
#include <functional>
#include <vector>

#include "ired/celestial.hpp"
#include "ired/harmonics.hpp"
#include "ired/lorentz.hpp"

namespace ired {

using Complex = std::complex<double>;

struct CVec4 {
  std::array<Complex, 4> c{};

  Complex operator[](int a) const { return c[static_cast<std::size_t>(a)]; }
  Complex& operator[](int a) { return c[static_cast<std::size_t>(a)]; }
  CVec4& operator+=(const CVec4& o) {
    for (int a = 0; a < 4; ++a) (*this)[a] += o[a];
    return *this;
  }
};

inline CVec4 operator*(Complex s, const Vec4& v) {
  CVec4 r;
  for (int a = 0; a < 4; ++a) r[a] = s * v[a];
  return r;
}
inline CVec4 operator*(Complex s, CVec4 v) {
  for (int a = 0; a < 4; ++a) v[a] *= s;
  return v;
}
inline CVec4 operator+(CVec4 a, const CVec4& b) { return a += b; }
inline CVec4 operator-(CVec4 a, const CVec4& b) { return a += Complex(-1) * b; }
inline CVec4 conj(const CVec4& v) {
  CVec4 r;
  for (int a = 0; a < 4; ++a) r[a] = std::conj(v[a]);
  return r;
}
/// Bilinear Minkowski product (no conjugation).
inline Complex dot(const CVec4& a, const CVec4& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}
inline double max_abs(const CVec4& v) {
  double m = 0;
  for (int a = 0; a < 4; ++a) m = std::max(m, std::abs(v[a]));
  return m;
}

/// V(s, l) with its s-derivatives and limits.  Homogeneous of degree -1
/// jointly in (s, l); l may be any ambient vector near the cone.
struct AsymptoteProfile {
  std::function<Vec4(double, const Vec4&)> value;
  std::function<Vec4(double, const Vec4&)> d1;
  std::function<Vec4(double, const Vec4&)> d2;
  std::function<Vec4(const Vec4&)> minus_inf;
  std::function<Vec4(const Vec4&)> plus_inf;
  double charge = 0;
  double eps = 1;                  ///< decay exponent of |Vdot|
  std::vector<double> breakpoints; ///< s-window (scaled l) with interior breaks

  Vec4 operator()(double s, const Vec4& l) const { return value(s, l); }

  /// Limit at s -> -inf (sign < 0) or +inf (sign > 0) as a degree -1 function.
  VectorFn limit(int sign) const;
  double s_lo() const { return breakpoints.front(); }
  double s_hi() const { return breakpoints.back(); }
};

/// Profile constant in s, e.g. a Coulomb sum or a limit value.
AsymptoteProfile constant_profile(const VectorFn& v, double charge);
AsymptoteProfile sum(const AsymptoteProfile& a, const AsymptoteProfile& b);
AsymptoteProfile scaled(double c, const AsymptoteProfile& a);
AsymptoteProfile zero_profile();

/// One-dimensional shapes f(u), u = (s - center) / width.
enum class ShapeKind { Step, Gauss, Bump, Hermite };

struct Shape {
  ShapeKind kind = ShapeKind::Gauss;
  double center = 0;
  double width = 1;
  int index = 0;  ///< Hermite order

  double f(double s) const;
  double df(double s) const;
  double d2f(double s) const;
  double at_minus_inf() const { return kind == ShapeKind::Step ? 1.0 : 0.0; }
  /// Half-width of the region outside which f' is negligible (or zero).
  double support() const;
  /// (1/2pi) int f'(s) e^{i w s} ds.
  Complex fourier_of_derivative(double omega) const;
};

/// V(s,l) = shape(s) A(n) [e - (e.l) t] on the scaled sphere; l.V = 0.
struct FreeTerm {
  Shape shape;
  std::vector<HarmonicCoeff> amplitude{{0, 0, 1.0}};
  Vec4 polarization{0, 1, 0, 0};
  double gauge = 0;  ///< pure-gauge admixture: adds gauge shape(s) A(n) l

  Vec4 angular(const Vec3& n) const;
};

/// Sum of free terms; the free-field data of a Kirchhoff-type solution.
struct FreeFieldData {
  std::vector<FreeTerm> terms;

  AsymptoteProfile profile() const;
  Vec4 value(double s, const Vec4& l) const;
  Vec4 d1(double s, const Vec4& l) const;
  Vec4 d2(double s, const Vec4& l) const;
  Vec4 minus_inf(const Vec4& l) const;
  /// Exact (1/2pi) int Vdot e^{i w s} ds for a scaled direction.
  CVec4 fourier_exact(double omega, const Vec3& n) const;
  /// s-window and breakpoints covering the support of Vdot.
  std::vector<double> breakpoints() const;
  bool empty() const { return terms.empty(); }
  bool ir_regular() const;
};

}  // namespace ired
