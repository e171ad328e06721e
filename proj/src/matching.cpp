#include <algorithm>
#include <cmath>

#include "ired/asymptotics.hpp"
#include "ired/error.hpp"

namespace ired {

TotalAsymptotes total_asymptotes(const ScatteringEvent& event, const FreeFieldData& in_field) {
  TotalAsymptotes t;
  t.Vj = current_profile(event);
  const AsymptoteProfile vin = in_field.profile();
  const AsymptoteProfile future = constant_profile(t.Vj.limit(+1), t.Vj.charge);
  const AsymptoteProfile past = constant_profile(t.Vj.limit(-1), t.Vj.charge);

  // in' = V^in(-inf) - V^in(s)
  AsymptoteProfile in_past = sum(constant_profile(vin.limit(-1), 0.0), scaled(-1, vin));
  in_past.minus_inf = [](const Vec4&) { return Vec4{}; };
  in_past.plus_inf = vin.minus_inf;
  t.in_past = in_past;

  t.out = sum(vin, sum(t.Vj, scaled(-1, future)));
  t.out.charge = 0;
  t.V = sum(future, t.out);
  t.V.charge = t.Vj.charge;
  t.V_past = sum(past, in_past);
  t.V_past.charge = t.Vj.charge;
  return t;
}

std::vector<ResidualRow> matching_verify(const AsymptoteProfile& V, const AsymptoteProfile& V_past,
                                         const AsymptoteProfile& Vj, const SphereQuadrature& directions,
                                         const std::vector<double>& s_samples, const AsymptoteProfile* out,
                                         const AsymptoteProfile* in_past) {
  const double q = Vj.charge;
  const double scale = std::max({1.0, std::abs(V.charge), std::abs(V_past.charge), std::abs(q)});
  if (std::abs(V.charge - q) > 1e-12 * scale || std::abs(V_past.charge - q) > 1e-12 * scale)
    throw Error(ErrorKind::InconsistentInput, "profiles carry different charges");

  double match = 0, matching = 0, vvj_plus = 0, vvj_minus = 0, lv = 0, out_def = 0, in_def = 0;
  for (const Vec3& n : directions.nodes) {
    const Vec4 l = null_vector(n);
    const Vec4 vm = V.minus_inf(l);
    matching = std::max(matching, max_abs(vm - V_past.plus_inf(l)));
    vvj_plus = std::max(vvj_plus, max_abs(V.plus_inf(l) - Vj.plus_inf(l)));
    vvj_minus = std::max(vvj_minus, max_abs(V_past.minus_inf(l) - Vj.minus_inf(l)));
    for (double s : s_samples) {
      const Vec4 v = V(s, l), vp = V_past(s, l);
      match = std::max(match, max_abs(v + vp - Vj(s, l) - vm));
      lv = std::max({lv, std::abs(dot(l, v) - q), std::abs(dot(l, vp) - q)});
      if (out) out_def = std::max(out_def, max_abs((*out)(s, l) - (v - V.plus_inf(l))));
      if (in_past) in_def = std::max(in_def, max_abs((*in_past)(s, l) - (vp - V_past.minus_inf(l))));
    }
  }
  std::vector<ResidualRow> rows{{"match", match},
                                {"matching_property", matching},
                                {"future_limit_equals_current", vvj_plus},
                                {"past_limit_equals_current", vvj_minus},
                                {"gauss_constraint", lv}};
  if (out) rows.push_back({"out_definition", out_def});
  if (in_past) rows.push_back({"in_past_definition", in_def});
  return rows;
}

}  // namespace ired
