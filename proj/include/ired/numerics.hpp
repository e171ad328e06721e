#pragma once

// Shared numerical substrate: Gauss-Legendre rules, celestial-sphere product
// quadratures, limit extrapolation, Gaussian mollifiers and 1-D s-grids with
// power-law tails.

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "ired/lorentz.hpp"

namespace ired {

/// Nodes and weights of a one-dimensional rule.
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  auto apply(F&& f) const {
    decltype(f(0.0)) acc{};
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// n-point Gauss-Legendre rule on [-1, 1].
Rule1D gauss_legendre(int n);

/// Gauss-Legendre rule with `m` nodes on each panel [b_k, b_{k+1}].
Rule1D composite_gauss(std::span<const double> breakpoints, int m);

/// Uniform panels of `m`-point Gauss-Legendre over [a, b].
Rule1D composite_gauss(double a, double b, int panels, int m);

/// Rule on [-1, 1] whose panels grade geometrically towards `center`.
///
/// Panels are mirror symmetric about `center` as far as the interval allows,
/// so odd singular parts such as 1/(mu - center) cancel pairwise and a jump
/// at `center` sits on a breakpoint.  `min_width` is the innermost half-width.
Rule1D clustered_rule(double center, double min_width, int m);

/// Product rule on the unit sphere.  Weights are the solid-angle measure.
struct SphereQuadrature {
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  int order = 0;

  std::size_t size() const { return nodes.size(); }
  double total_weight() const;

  /// Sum of w_i f(n_i).
  template <class F>
  auto integrate(F&& f) const {
    decltype(f(nodes.front())) acc{};
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// Gauss-Legendre in cos(theta) with `order` nodes times 2*order uniform
/// azimuths; exact for spherical harmonics of degree <= 2*order - 1.
SphereQuadrature sphere_quadrature(int order);

/// Product rule built from a rule in mu = cos(angle to `axis`) and `n_phi`
/// uniform azimuths about `axis`.
SphereQuadrature axis_quadrature(const Vec3& axis, const Rule1D& mu_rule, int n_phi);

/// Rule concentrating on the cap around `axis` (mu -> 1) down to angular
/// scale `min_cap` in 1 - mu.
SphereQuadrature graded_cap_quadrature(const Vec3& axis, int order, double min_cap, int n_phi = 0);

/// Rule concentrating on the circle mu = mu_center around `axis`.
SphereQuadrature banded_quadrature(const Vec3& axis, double mu_center, int order, double min_width,
                                   int n_phi = 0);

struct LimitEstimate {
  double value = 0;
  double error = 0;
};

/// Polynomial (Richardson/Neville) extrapolation of y(h) to h = 0.
///
/// Requires at least three samples with strictly decreasing positive h.
/// The error estimate is the size of the last correction.  `max_points`
/// limits the extrapolation to the trailing samples (0 = use all).
LimitEstimate limit_extrapolate(std::span<const std::pair<double, double>> samples,
                                std::size_t max_points = 0);

enum class MollifierKind { Delta, DeltaPrime };

/// Gaussian mollified delta (or its derivative) of width h at x.
double mollified(MollifierKind kind, double width, double x);

/// Samples of a function of s with quadrature weights and a power-law tail
/// model |f(s)| ~ C |s|^-(1+eps) beyond either end.
struct SGrid {
  std::vector<double> samples;
  std::vector<double> weights;
  double eps = 1.0;

  static SGrid uniform(double a, double b, std::size_t n, double eps);
  static SGrid gauss(std::span<const double> breakpoints, int m, double eps);

  void validate() const;
};

/// Integral of sampled values over the grid, plus closed-form tails fitted
/// from the outer 10% of samples on each side.
double integrate_with_tail(const SGrid& grid, std::span<const double> values);

/// Fitted tail coefficient C for values ~ C |s|^-(1+eps) on the trailing samples.
double fit_tail_coefficient(std::span<const double> s, std::span<const double> values, double eps);

/// Least-squares fit y = a * x + b.
std::pair<double, double> fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace ired
