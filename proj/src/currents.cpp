#include "ired/currents.hpp"

#include <cmath>
#include <numbers>

#include "ired/error.hpp"

namespace ired {

void PointParticle::validate() const {
  if (!(v[0] > 0) || std::abs(square(v) - 1) > 1e-10)
    throw Error(ErrorKind::OutOfDomain, "four-velocity must satisfy v.v = 1 and v^0 > 0");
}

double ScatteringEvent::total_charge() const {
  double s = 0;
  for (const auto& p : outgoing) s += p.q;
  return s;
}

void ScatteringEvent::validate() const {
  if (!(width > 0)) throw Error(ErrorKind::InconsistentEvent, "transition width must be positive");
  if (incoming.empty() || outgoing.empty())
    throw Error(ErrorKind::InconsistentEvent, "event needs incoming and outgoing particles");
  double qin = 0, qout = 0, scale = 0;
  for (const auto& p : incoming) {
    p.validate();
    qin += p.q;
    scale += std::abs(p.q);
  }
  for (const auto& p : outgoing) {
    p.validate();
    qout += p.q;
    scale += std::abs(p.q);
  }
  if (std::abs(qin - qout) > 1e-12 * std::max(1.0, scale))
    throw Error(ErrorKind::InconsistentEvent, "charge is not conserved");
}

ScatteringEvent ScatteringEvent::free_particle(double q, const Vec4& v) {
  ScatteringEvent e;
  e.incoming = {{q, v}};
  e.outgoing = {{q, v}};
  return e;
}

double transition(double s, double center, double width, int derivative) {
  const double u = (s - center) / width;
  switch (derivative) {
    case 0: return 0.5 * std::erfc(-u);
    case 1: return std::exp(-u * u) / (width * std::sqrt(std::numbers::pi));
    case 2: return -2 * u * std::exp(-u * u) / (width * width * std::sqrt(std::numbers::pi));
    default: throw Error(ErrorKind::OutOfDomain, "transition derivative order must be 0, 1 or 2");
  }
}

VectorFn coulomb_sum(const std::vector<PointParticle>& particles) {
  VectorFn f;
  f.degree = -1;
  f.eval = [particles](const Vec4& l) {
    Vec4 r;
    for (const auto& p : particles) r += (p.q / dot(p.v, l)) * p.v;
    return r;
  };
  return f;
}

AsymptoteProfile current_profile(const ScatteringEvent& event) {
  event.validate();
  const VectorFn in = coulomb_sum(event.incoming), out = coulomb_sum(event.outgoing);
  const double c = event.center, w = event.width;
  auto tau = [](const Vec4& l) { return norm(l.space()); };
  AsymptoteProfile p;
  p.value = [=](double s, const Vec4& l) {
    const double chi = transition(s / tau(l), c, w);
    return (1 - chi) * in(l) + chi * out(l);
  };
  p.d1 = [=](double s, const Vec4& l) {
    const double t = tau(l);
    return (transition(s / t, c, w, 1) / t) * (out(l) - in(l));
  };
  p.d2 = [=](double s, const Vec4& l) {
    const double t = tau(l);
    return (transition(s / t, c, w, 2) / (t * t)) * (out(l) - in(l));
  };
  p.minus_inf = in.eval;
  p.plus_inf = out.eval;
  p.charge = event.total_charge();
  p.eps = 1;
  p.breakpoints = {c - 7 * w, c, c + 7 * w};
  return p;
}

AsymptoteSet ret_adv_rad_asymptotes(const ScatteringEvent& event) {
  const AsymptoteProfile vj = current_profile(event);
  const double q = vj.charge;
  const AsymptoteProfile past = constant_profile(vj.limit(-1), q);
  const AsymptoteProfile future = constant_profile(vj.limit(+1), q);
  AsymptoteSet s;
  s.ret = vj;
  s.ret_past = past;
  s.adv = future;
  s.adv_past = vj;
  s.rad = sum(vj, scaled(-1, future));
  s.rad_past = sum(scaled(-1, vj), past);
  s.rad.charge = 0;
  s.rad_past.charge = 0;
  return s;
}

double magnetic_charge_residual(const AsymptoteProfile& profile, int sign, const SphereQuadrature& quad) {
  const VectorFn lim = profile.limit(sign);
  double m = 0;
  for (const Vec3& n : quad.nodes) m = std::max(m, magnetic_residual(lim, null_vector(n)));
  return m;
}

}  // namespace ired
