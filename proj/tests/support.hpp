#pragma once

#include <random>

#include "ired/currents.hpp"
#include "ired/profile.hpp"
#include "ired/sympquant.hpp"

namespace ired::testing {

inline Vec3 random_unit(std::mt19937& g) {
  std::normal_distribution<double> N;
  return normalized(Vec3{N(g), N(g), N(g)});
}

inline ScatteringEvent random_event(std::mt19937& g, int nin, int nout) {
  std::uniform_real_distribution<double> U(-1, 1);
  ScatteringEvent e;
  double total = 0;
  for (int i = 0; i < nin; ++i) {
    e.incoming.push_back({U(g), four_velocity(random_unit(g), 1.5 * std::abs(U(g)))});
    total += e.incoming.back().q;
  }
  double rest = total;
  for (int i = 0; i + 1 < nout; ++i) {
    e.outgoing.push_back({U(g), four_velocity(random_unit(g), 1.5 * std::abs(U(g)))});
    rest -= e.outgoing.back().q;
  }
  e.outgoing.push_back({rest, four_velocity(random_unit(g), 0.7)});
  e.center = 0.3 * U(g);
  e.width = 0.5 + std::abs(U(g));
  return e;
}

// Step term (infrared singular) plus a Gaussian pulse.
inline FreeFieldData sample_field() {
  FreeFieldData d;
  d.terms.push_back({Shape{ShapeKind::Step, 0.2, 0.8, 0}, {{0, 0, 0.7}, {1, 0, 0.4}}, Vec4{0, 1, 0.3, 0}, 0.0});
  d.terms.push_back({Shape{ShapeKind::Gauss, -0.4, 1.2, 0}, {{1, 1, 0.6}}, Vec4{0, 0, 0.2, 1}, 0.0});
  return d;
}

// Gaussian and Hermite pulses with low harmonics; infrared regular.
inline FreeFieldData random_regular_field(std::mt19937& g) {
  std::uniform_real_distribution<double> U(-1, 1);
  FreeFieldData d;
  for (int k = 0; k < 2; ++k) {
    const int l = k + (g() % 2);
    const int m = static_cast<int>(g() % (2 * l + 1)) - l;
    const Shape shape{k == 0 ? ShapeKind::Gauss : ShapeKind::Hermite, 0.5 * U(g), 0.8 + 0.4 * std::abs(U(g)),
                      static_cast<int>(g() % 3)};
    d.terms.push_back({shape, {{l, m, U(g)}}, Vec4{0, U(g), U(g), U(g)}, 0.0});
  }
  return d;
}

inline GaussianCurrent random_current(std::mt19937& g) {
  std::uniform_real_distribution<double> U(-1, 1);
  GaussianCurrent c;
  c.center = 0.4 * Vec4{U(g), U(g), U(g), U(g)};
  c.width = 0.8 + 0.3 * std::abs(U(g));
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      c.omega(a, b) = U(g);
      c.omega(b, a) = -c.omega(a, b);
    }
  return c;
}

}  // namespace ired::testing
