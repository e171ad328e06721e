#include "ired/lorentz.hpp"

#include <algorithm>

#include "ired/error.hpp"

namespace ired {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidOrder: return "invalid-order";
    case ErrorKind::InvalidSequence: return "invalid-sequence";
    case ErrorKind::InvalidWidth: return "invalid-width";
    case ErrorKind::InvalidGrid: return "invalid-grid";
    case ErrorKind::DegreeMismatch: return "degree-mismatch";
    case ErrorKind::ChargedField: return "charged-field";
    case ErrorKind::InconsistentEvent: return "inconsistent-event";
    case ErrorKind::InconsistentInput: return "inconsistent-input";
    case ErrorKind::OutOfDomain: return "out-of-domain";
    case ErrorKind::CannotIntegrate: return "cannot-integrate";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::QuantizationViolation: return "quantization-violation";
    case ErrorKind::InvalidCoupling: return "invalid-coupling";
    case ErrorKind::InconsistentCharge: return "inconsistent-charge";
    case ErrorKind::BasisTooSmall: return "basis-too-small";
    case ErrorKind::Io: return "io";
    case ErrorKind::Validation: return "validation";
  }
  return "unknown";
}

namespace {

int levi_civita(int a, int b, int c, int d) {
  std::array<int, 4> p{a, b, c, d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[static_cast<std::size_t>(i)] == p[static_cast<std::size_t>(j)]) return 0;
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) sign = -sign;
  return sign;
}

}  // namespace

Tensor2 hodge_dual(const Tensor2& t) {
  Tensor2 up;  // T^cd
  for (int c = 0; c < 4; ++c)
    for (int d = 0; d < 4; ++d) up(c, d) = metric(c) * metric(d) * t(c, d);
  Tensor2 r;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double s = 0;
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) s += levi_civita(a, b, c, d) * up(c, d);
      r(a, b) = 0.5 * s;
    }
  return r;
}

double max_abs(const Tensor2& t) {
  double m = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) m = std::max(m, std::abs(t(a, b)));
  return m;
}

double max_abs(const Vec4& v) {
  double m = 0;
  for (int a = 0; a < 4; ++a) m = std::max(m, std::abs(v[a]));
  return m;
}

Vec4 Boost::apply(const Vec4& x) const {
  const double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
  const Vec3 s = x.space();
  const double par = dot(s, dir);
  const Vec3 perp = s - par * dir;
  const double t2 = ch * x.time() + sh * par;
  const double p2 = sh * x.time() + ch * par;
  return {t2, perp + p2 * dir};
}

Vec4 Boost::inverse_apply(const Vec4& x) const { return Boost{dir, -rapidity}.apply(x); }

Vec4 four_velocity(const Vec3& dir, double rapidity) {
  const Vec3 d = normalized(dir);
  return {std::cosh(rapidity), std::sinh(rapidity) * d};
}

Boost boost_to(const Vec4& v) {
  const Vec3 s = v.space();
  const double ns = norm(s);
  if (ns < 1e-300) return Boost{{0, 0, 1}, 0.0};
  return Boost{s / ns, std::asinh(ns)};
}

}  // namespace ired
