#pragma once

// Minkowski vectors and rank-2 tensors, signature (+,-,-,-).
//
// Vec4 holds contravariant components x^a.  Tensor2 holds covariant
// components T_ab; this is the natural placement for F_ab = d_a A_b - d_b A_a
// and for L_ab = l_a d_b - l_b d_a.

#include <array>
#include <cmath>
#include <complex>

namespace ired {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(double s, Vec3 a) { return a *= s; }
inline Vec3 operator*(Vec3 a, double s) { return a *= s; }
inline Vec3 operator/(Vec3 a, double s) { return a *= 1.0 / s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

struct Vec4 {
  std::array<double, 4> c{0, 0, 0, 0};

  constexpr Vec4() = default;
  constexpr Vec4(double t, double x, double y, double z) : c{t, x, y, z} {}
  Vec4(double t, const Vec3& s) : c{t, s.x, s.y, s.z} {}

  double operator[](int a) const { return c[static_cast<std::size_t>(a)]; }
  double& operator[](int a) { return c[static_cast<std::size_t>(a)]; }

  double time() const { return c[0]; }
  Vec3 space() const { return {c[1], c[2], c[3]}; }

  Vec4& operator+=(const Vec4& o) {
    for (int a = 0; a < 4; ++a) (*this)[a] += o[a];
    return *this;
  }
  Vec4& operator-=(const Vec4& o) {
    for (int a = 0; a < 4; ++a) (*this)[a] -= o[a];
    return *this;
  }
  Vec4& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }
};

inline Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
inline Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
inline Vec4 operator-(Vec4 a) { return a *= -1.0; }
inline Vec4 operator*(double s, Vec4 a) { return a *= s; }
inline Vec4 operator*(Vec4 a, double s) { return a *= s; }
inline Vec4 operator/(Vec4 a, double s) { return a *= 1.0 / s; }

constexpr double metric(int a) { return a == 0 ? 1.0 : -1.0; }

/// Minkowski product a.b with signature (+,-,-,-).
inline double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}
inline double square(const Vec4& a) { return dot(a, a); }

/// Covariant components x_a.
inline Vec4 lower(const Vec4& a) { return {a[0], -a[1], -a[2], -a[3]}; }

/// Euclidean norm of the components; used for step sizes and residuals.
inline double euclid_norm(const Vec4& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]);
}

inline constexpr Vec4 time_axis() { return {1, 0, 0, 0}; }

/// Future null vector t + n for a unit 3-vector n (scaled so that t.l = 1).
inline Vec4 null_vector(const Vec3& n) { return {1.0, n}; }

struct Tensor2 {
  std::array<std::array<double, 4>, 4> m{};

  double operator()(int a, int b) const { return m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  double& operator()(int a, int b) { return m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }

  Tensor2& operator+=(const Tensor2& o) {
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) (*this)(a, b) += o(a, b);
    return *this;
  }
  Tensor2& operator-=(const Tensor2& o) {
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) (*this)(a, b) -= o(a, b);
    return *this;
  }
  Tensor2& operator*=(double s) {
    for (auto& row : m)
      for (auto& v : row) v *= s;
    return *this;
  }
};

inline Tensor2 operator+(Tensor2 a, const Tensor2& b) { return a += b; }
inline Tensor2 operator-(Tensor2 a, const Tensor2& b) { return a -= b; }
inline Tensor2 operator*(double s, Tensor2 a) { return a *= s; }
inline Tensor2 operator*(Tensor2 a, double s) { return a *= s; }

/// (a wedge b)_ab = a_a b_b - a_b b_a for contravariant inputs.
inline Tensor2 wedge(const Vec4& a, const Vec4& b) {
  const Vec4 al = lower(a), bl = lower(b);
  Tensor2 t;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t(i, j) = al[i] * bl[j] - al[j] * bl[i];
  return t;
}

/// Contraction x^a T_ab, returned as covariant components.
inline Vec4 contract_first(const Vec4& x, const Tensor2& t) {
  Vec4 r;
  for (int b = 0; b < 4; ++b) {
    double s = 0;
    for (int a = 0; a < 4; ++a) s += x[a] * t(a, b);
    r[b] = s;
  }
  return r;
}

/// Hodge dual (*T)_ab = 1/2 eps_abcd T^cd with eps_0123 = +1.
Tensor2 hodge_dual(const Tensor2& t);

double max_abs(const Tensor2& t);
double max_abs(const Vec4& v);

/// Pure boost with rapidity `rapidity` along unit direction `dir`.
struct Boost {
  Vec3 dir;
  double rapidity = 0;

  Vec4 apply(const Vec4& x) const;
  Vec4 inverse_apply(const Vec4& x) const;
};

/// Four-velocity with rapidity along a direction.
Vec4 four_velocity(const Vec3& dir, double rapidity);

/// Boost taking the time axis to the unit timelike vector v.
Boost boost_to(const Vec4& v);

}  // namespace ired
