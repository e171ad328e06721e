#pragma once

// Calculus on the future light cone C+: homogeneous functions, the intrinsic
// derivative L_ab, invariant integrals and the scalar-potential decomposition
// of vector fields orthogonal to l.

#include <functional>
#include <memory>
#include <utility>

#include "ired/lorentz.hpp"
#include "ired/numerics.hpp"

namespace ired {

/// A point of C+ scaled to t.l = 1, i.e. l = t + n.
class NullDirection {
 public:
  explicit NullDirection(const Vec3& n);

  const Vec3& n() const { return n_; }
  Vec4 l() const { return null_vector(n_); }

 private:
  Vec3 n_;
};

/// Function on a neighbourhood of C+ with declared homogeneity degree.
///
/// `eval` accepts any ambient vector; values off the cone belong to the
/// extension used for differentiation.  Functions built with `from_sphere`
/// use the extension l -> |l_vec|^degree g(l_vec / |l_vec|).
template <class T>
struct Homogeneous {
  int degree = 0;
  std::function<T(const Vec4&)> eval;

  T operator()(const Vec4& l) const { return eval(l); }
  T at(const Vec3& n) const { return eval(null_vector(n)); }
};

using ScalarFn = Homogeneous<double>;
using VectorFn = Homogeneous<Vec4>;

ScalarFn scalar_from_sphere(int degree, std::function<double(const Vec3&)> g);
VectorFn vector_from_sphere(int degree, std::function<Vec4(const Vec3&)> g);

/// Coulomb-type field q v / (v.l), degree -1, with l.V = q exactly.
VectorFn coulomb_field(double q, const Vec4& v);

/// Integral of a degree -2 function over the celestial sphere (t.l = 1).
double invariant_integral(const ScalarFn& f, const SphereQuadrature& quad);

/// Step of the fourth-order ambient central differences, relative to |l|.
inline constexpr double kLStep = 1e-4;

/// Covariant gradient d_a f (derivative with respect to l^a).
Vec4 ambient_gradient(const ScalarFn& f, const Vec4& l, double step = kLStep);

/// Jacobian J(a, c) = d V^c / d l^a.
Tensor2 ambient_jacobian(const VectorFn& v, const Vec4& l, double step = kLStep);

/// L_ab f at l.
Tensor2 l_tensor(const ScalarFn& f, const Vec4& l, double step = kLStep);

/// The function L_ab f, of the same degree as f.
ScalarFn l_derivative(const ScalarFn& f, int a, int b);

/// L_ba V^a at l (covariant index b).
Vec4 l_contract(const VectorFn& v, const Vec4& l);

/// max over (a,b,c) of |L_[ab V_c]|; vanishes for fields of electric type.
double magnetic_residual(const VectorFn& v, const Vec4& l);

/// d.V on the cone for the extension that is homogeneous of degree -1 with
/// l.V = q, evaluated intrinsically as t^a L_ab [V^b / t.l] - q / (t.l)^2.
double cone_divergence(const VectorFn& v, const Vec4& l, const Vec4& t = time_axis());

/// d^2 f for a degree-0 f by fourth-order differences of its ambient extension.
double cone_laplacian(const ScalarFn& f, const Vec4& l, double step = 2e-3);

/// Potentials of a charge-free tangent field:
///   l_a V_b - l_b V_a = L_ab phi - *L_ab psi.
struct PotentialDecomposition {
  ScalarFn phi;             ///< zero mean over the sphere
  ScalarFn psi;             ///< zero mean over the sphere
  double phi_offset = 0;    ///< phi + phi_offset is the kernel solution
  double residual = 0;      ///< sup over nodes of the reconstruction error

  ScalarFn phi_special() const;
};

struct DecomposeOptions {
  int inner_order = 32;       ///< GL nodes in mu for the kernel integral
  double charge_tolerance = 1e-9;
  bool compute_residual = true;
};

/// Kernel quadrature for phi, phi(l) = (1/4pi) int l.V(l') / l.l' d^2l', and
/// the dual kernel for psi.  `quad` fixes the mean and the residual nodes.
PotentialDecomposition potential_decompose(const VectorFn& v_plus, const SphereQuadrature& quad,
                                           const DecomposeOptions& opts = {});

/// sup |l.V(l) - q| over the nodes of `quad`.
double charge_deviation(const VectorFn& v, double q, const SphereQuadrature& quad);

/// Euclidean distance-like measure of a tensor, used in residual reports.
double tensor_norm(const Tensor2& t);

}  // namespace ired
