#include "ired/sympquant.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ired/error.hpp"

namespace ired {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4 * kPi;

std::vector<double> refine(std::vector<double> bp, double max_panel) {
  std::sort(bp.begin(), bp.end());
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double len = bp[i + 1] - bp[i];
    if (len < 1e-12) continue;
    const int k = std::max(1, static_cast<int>(std::ceil(len / max_panel)));
    for (int j = 0; j < k; ++j) out.push_back(bp[i] + len * j / k);
  }
  out.push_back(bp.back());
  return out;
}

void check_integrable(const AsymptoteProfile& V) {
  if (!V.d1) throw Error(ErrorKind::CannotIntegrate, "profile has no s-derivative");
  if (!(V.eps > 0)) throw Error(ErrorKind::Divergence, "Vdot decays too slowly for the symplectic pairing");
}

// Gauss-Hermite nodes and weights for exp(-x^2) by Golub-Welsch.
Rule1D gauss_hermite(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidOrder, "Gauss-Hermite needs at least one node");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Rule1D r;
  for (int k = 0; k < n; ++k) {
    r.nodes.push_back(es.eigenvalues()(k));
    const double v = es.eigenvectors()(0, k);
    r.weights.push_back(std::sqrt(kPi) * v * v);
  }
  return r;
}

// Euclidean components of the covector (l0, -l_vec) defining x.l.
double plane_norm(const Vec4& l) { return euclid_norm(l); }

double omega_max_of(const FreeFieldData& d) {
  double w = 1e300;
  double factor = 14;
  for (const auto& t : d.terms) {
    w = std::min(w, t.shape.width);
    if (t.shape.kind == ShapeKind::Bump) factor = 80;
    if (t.shape.kind == ShapeKind::Hermite) factor = std::max(factor, 14 + 2.0 * t.shape.index);
  }
  return d.terms.empty() ? 1.0 : factor / w;
}

// Frequency nodes for the dw/w integral.
Rule1D omega_rule(double omega_max, const FockOptions& o) {
  std::vector<double> bp;
  const double first = omega_max / o.panels;
  if (o.omega_min) {
    if (!(*o.omega_min > 0) || *o.omega_min >= first)
      throw Error(ErrorKind::InvalidGrid, "infrared cutoff must lie in (0, omega_max / panels)");
    for (double w = *o.omega_min; w < first; w *= 2) bp.push_back(w);
  } else {
    bp.push_back(0.0);
  }
  for (int k = 1; k <= o.panels; ++k) bp.push_back(first * k);
  return composite_gauss(bp, o.m);
}

// Samples of several spectra on a shared sphere x frequency grid.
struct SpectralGrid {
  SphereQuadrature sphere;
  Rule1D omega;
  std::vector<std::vector<CVec4>> values;  // [spectrum][node * n_omega + k]
  std::vector<std::vector<CVec4>> zero;    // [spectrum][node]

  SpectralGrid(const std::vector<const Spectrum*>& spectra, const FockOptions& o) {
    double wmax = 0;
    for (const auto* s : spectra) wmax = std::max(wmax, s->omega_max);
    sphere = sphere_quadrature(o.sphere_order);
    omega = omega_rule(wmax, o);
    for (const auto* s : spectra) {
      std::vector<CVec4> v, z;
      for (const Vec3& n : sphere.nodes) {
        z.push_back(s->value(0.0, n));
        for (double w : omega.nodes) v.push_back(s->value(w, n));
      }
      values.push_back(std::move(v));
      zero.push_back(std::move(z));
    }
  }

  Complex product(std::size_t a, std::size_t b) const {
    Complex acc = 0;
    const std::size_t nw = omega.size();
    for (std::size_t i = 0; i < sphere.size(); ++i) {
      Complex inner = 0;
      for (std::size_t k = 0; k < nw; ++k)
        inner += omega.weights[k] / omega.nodes[k] * dot(conj(values[a][i * nw + k]), values[b][i * nw + k]);
      acc += sphere.weights[i] * inner;
    }
    return -acc;
  }

  // int conj(a~(0)).b~(0) d^2l and a scale for it
  std::pair<Complex, double> zero_pairing(std::size_t a, std::size_t b) const {
    Complex c = 0;
    double scale = 0;
    const std::size_t nw = omega.size();
    for (std::size_t i = 0; i < sphere.size(); ++i) {
      c += sphere.weights[i] * dot(conj(zero[a][i]), zero[b][i]);
      double ma = 0, mb = 0;
      for (std::size_t k = 0; k < nw; ++k) {
        ma = std::max(ma, max_abs(values[a][i * nw + k]));
        mb = std::max(mb, max_abs(values[b][i * nw + k]));
      }
      scale += sphere.weights[i] * ma * mb;
    }
    return {c, scale};
  }
};

void check_pairing(const SpectralGrid& g, std::size_t a, std::size_t b, const FockOptions& o) {
  if (o.omega_min) return;
  const auto [c, scale] = g.zero_pairing(a, b);
  if (std::abs(c) > o.ir_tolerance * std::max(scale, 1e-300))
    throw Error(ErrorKind::Divergence, "infrared singular profiles: the product diverges without a cutoff");
}

}  // namespace

double symp_null(const AsymptoteProfile& V1, const AsymptoteProfile& V2, const SympOptions& opts) {
  check_integrable(V1);
  check_integrable(V2);
  std::vector<double> bp = V1.breakpoints;
  bp.insert(bp.end(), V2.breakpoints.begin(), V2.breakpoints.end());
  const SGrid grid = SGrid::gauss(refine(bp, opts.max_panel), opts.m, std::min(V1.eps, V2.eps));
  const SphereQuadrature quad = sphere_quadrature(opts.sphere_order);

  std::vector<double> vals(grid.samples.size());
  double acc = 0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Vec4 l = null_vector(quad.nodes[i]);
    for (std::size_t k = 0; k < vals.size(); ++k) {
      const double s = grid.samples[k];
      vals[k] = dot(V1.d1(s, l), V2(s, l)) - dot(V2.d1(s, l), V1(s, l));
    }
    acc += quad.weights[i] * integrate_with_tail(grid, vals);
  }
  return acc / kFourPi;
}

CauchyResult symp_cauchy(const AsymptoteProfile& V1, const AsymptoteProfile& V2, const CauchyOptions& opts) {
  auto radii = opts.radii;
  if (radii.size() < 3 || !std::is_sorted(radii.begin(), radii.end()) || !(radii.front() > 0))
    throw Error(ErrorKind::InvalidSequence, "Cauchy slice needs at least three increasing radii");
  if (!(opts.inner_step > 0)) throw Error(ErrorKind::InvalidGrid, "radial step must be positive");

  // fine panels inside the first radius, geometric ones beyond
  std::vector<double> bp;
  for (double r = 0; r < radii.front() - 1e-12; r += opts.inner_step) bp.push_back(r);
  for (std::size_t k = 0; k + 1 < radii.size(); ++k) {
    const int n = std::max(1, static_cast<int>(std::ceil(2 * std::log2(radii[k + 1] / radii[k]))));
    for (int j = 0; j < n; ++j) bp.push_back(radii[k] * std::pow(radii[k + 1] / radii[k], double(j) / n));
  }
  bp.push_back(radii.back());
  const SphereQuadrature ang = sphere_quadrature(opts.angular_order);

  CauchyResult out;
  double acc = 0;
  std::size_t next = 0;
  for (std::size_t p = 0; p + 1 < bp.size(); ++p) {
    const Rule1D rr = composite_gauss(bp[p], bp[p + 1], 1, opts.radial_m);
    for (std::size_t i = 0; i < rr.size(); ++i) {
      const double r = rr.nodes[i];
      double shell = 0;
      for (std::size_t j = 0; j < ang.size(); ++j) {
        const Vec4 x{0, r * ang.nodes[j]};
        const SphereQuadrature q = focused_quadrature(focus_for_point(x), opts.field_order);
        const FieldValue f1 = kirchhoff_eval(V1, x, q), f2 = kirchhoff_eval(V2, x, q);
        // F^{0b} A_b = F_{0i} A^i
        double v = 0;
        for (int k = 1; k < 4; ++k) v += f1.F(0, k) * f2.A[k] - f2.F(0, k) * f1.A[k];
        shell += ang.weights[j] * v;
      }
      acc += rr.weights[i] * r * r * shell;
    }
    while (next < radii.size() && bp[p + 1] >= radii[next] - 1e-12) {
      out.trace.emplace_back(radii[next], acc / kFourPi);
      ++next;
    }
  }

  std::vector<std::pair<double, double>> samples;
  for (const auto& [R, v] : out.trace) samples.emplace_back(1 / R, v);
  const LimitEstimate est = limit_extrapolate(samples);
  out.value = est.value;
  out.tail = std::abs(est.value - out.trace.back().second);
  out.conclusive = out.tail <= opts.tail_tolerance * std::max(1.0, std::abs(out.value));
  return out;
}

void GaussianCurrent::validate() const {
  if (!(width > 0)) throw Error(ErrorKind::OutOfDomain, "current width must be positive");
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (std::abs(omega(a, b) + omega(b, a)) > 1e-12 * (1 + max_abs(omega)))
        throw Error(ErrorKind::OutOfDomain, "current generator must be antisymmetric");
}

Vec4 GaussianCurrent::operator()(const Vec4& x) const {
  const Vec4 d = x - center;
  const double g = std::exp(-(d[0] * d[0] + dot(d.space(), d.space())) / (2 * width * width));
  Vec4 j;
  for (int a = 0; a < 4; ++a) {
    double s = 0;
    // d^b g = metric(b) d_b g, d_b g = -(x - c)_b g / w^2 in coordinates
    for (int b = 0; b < 4; ++b) s += omega(b, a) * metric(b) * (-d[b] / (width * width));
    j[a] = metric(a) * s * g;
  }
  return j;
}

AsymptoteProfile GaussianCurrent::profile() const {
  validate();
  const GaussianCurrent c = *this;
  // G(s,l) = (2 pi w^2)^{3/2} / |l|_E exp(-(s - c.l)^2 / (2 w^2 |l|_E^2)); k-th s-derivative
  auto G = [c](double s, const Vec4& l, int k) {
    const double e = plane_norm(l);
    const double S = c.width * c.width * e * e;
    const double u = s - dot(c.center, l);
    const double g = std::pow(2 * kPi * c.width * c.width, 1.5) / e * std::exp(-u * u / (2 * S));
    switch (k) {
      case 1: return -u / S * g;
      case 2: return (u * u / (S * S) - 1 / S) * g;
      default: return (-u * u * u / (S * S * S) + 3 * u / (S * S)) * g;
    }
  };
  auto make = [c, G](int k) {
    return [c, G, k](double s, const Vec4& l) {
      const double gd = G(s, l, k);
      Vec4 v;
      for (int a = 0; a < 4; ++a) {
        double acc = 0;
        for (int b = 0; b < 4; ++b) acc += c.omega(b, a) * l[b];
        v[a] = metric(a) * acc * gd;
      }
      return v;
    };
  };
  AsymptoteProfile p;
  p.value = make(1);
  p.d1 = make(2);
  p.d2 = make(3);
  p.minus_inf = [](const Vec4&) { return Vec4{}; };
  p.plus_inf = p.minus_inf;
  p.charge = 0;
  p.eps = 1;
  const double r = norm(center.space());
  const double spread = 8 * width * std::sqrt(2.0);
  p.breakpoints = {center[0] - r - spread, center[0] - r, center[0] + r, center[0] + r + spread};
  p.breakpoints.erase(std::unique(p.breakpoints.begin(), p.breakpoints.end()), p.breakpoints.end());
  return p;
}

double GaussianCurrent::correlation(const GaussianCurrent& a, const GaussianCurrent& b, const Vec4& z) {
  // G(z) = int g_a(x) g_b(x - z) dx; K = -sum metric(a,b,d) Om_a(b,i) Om_b(d,i) d_b d_d G
  const double S = a.width * a.width + b.width * b.width;
  const double amp = std::pow(2 * kPi * a.width * a.width * b.width * b.width / S, 2);
  const Vec4 w = z - (a.center - b.center);
  const double G = amp * std::exp(-(w[0] * w[0] + dot(w.space(), w.space())) / (2 * S));
  double k = 0;
  for (int i = 0; i < 4; ++i)
    for (int p = 0; p < 4; ++p)
      for (int d = 0; d < 4; ++d) {
        const double H = G * (w[p] * w[d] / (S * S) - (p == d ? 1 / S : 0.0));
        k -= metric(i) * metric(p) * metric(d) * a.omega(p, i) * b.omega(d, i) * H;
      }
  return k;
}

namespace {

// int J(x).A(x) dx with x = c + sqrt(2) w xi and the Gaussian weight removed.
double current_pairing(const std::function<Vec4(const Vec4&)>& J, const Vec4& center, double width,
                       const AsymptoteProfile& field, const CurrentOptions& o) {
  const Rule1D gh = gauss_hermite(o.hermite_points);
  const double h = std::sqrt(2.0) * width;
  const std::size_t n = gh.size();
  double acc = 0;
  for (std::size_t i0 = 0; i0 < n; ++i0)
    for (std::size_t i1 = 0; i1 < n; ++i1)
      for (std::size_t i2 = 0; i2 < n; ++i2)
        for (std::size_t i3 = 0; i3 < n; ++i3) {
          const double xi[4] = {gh.nodes[i0], gh.nodes[i1], gh.nodes[i2], gh.nodes[i3]};
          const Vec4 x = center + h * Vec4{xi[0], xi[1], xi[2], xi[3]};
          const double w = gh.weights[i0] * gh.weights[i1] * gh.weights[i2] * gh.weights[i3] *
                           std::exp(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2] + xi[3] * xi[3]);
          const FieldValue f = kirchhoff_eval(field, x, focused_quadrature(focus_for_point(x), o.field_order));
          acc += w * dot(J(x), f.A);
        }
  return acc * std::pow(h, 4);
}

}  // namespace

CurrentForms symp_current(const CurrentSource& J1, const CurrentSource& J2, const CurrentOptions& opts) {
  CurrentForms out;
  const double a = current_pairing(J1.J, J1.center, J1.width, J2.profile, opts);
  const double b = current_pairing(J2.J, J2.center, J2.width, J1.profile, opts);
  out.symp_j = 0.5 * (a - b);
  if (!J1.compact || !J2.compact)
    out.note = "local double integral is not absolutely integrable for these currents";
  else
    out.note = "local form needs a closed-form correlation";
  return out;
}

CurrentForms symp_current(const GaussianCurrent& J1, const GaussianCurrent& J2, const CurrentOptions& opts) {
  J1.validate();
  J2.validate();
  const CurrentSource s1{[J1](const Vec4& x) { return J1(x); }, J1.profile(), J1.center, J1.width, true};
  const CurrentSource s2{[J2](const Vec4& x) { return J2(x); }, J2.profile(), J2.center, J2.width, true};
  CurrentForms out = symp_current(s1, s2, opts);
  out.note.clear();

  // 4pi int dz D(z) K(z) = int d^3z / r [K(r, z) - K(-r, z)]
  const Vec4 dc = J1.center - J2.center;
  const double S = J1.width * J1.width + J2.width * J2.width;
  const double rmax = euclid_norm(dc) + 10 * std::sqrt(S);
  const Rule1D rr = composite_gauss(0.0, rmax, opts.radial_panels, 8);
  const SphereQuadrature q = sphere_quadrature(opts.sphere_order);
  double acc = 0;
  for (std::size_t i = 0; i < rr.size(); ++i) {
    const double r = rr.nodes[i];
    double shell = 0;
    for (std::size_t j = 0; j < q.size(); ++j) {
      const Vec3 z = r * q.nodes[j];
      shell += q.weights[j] * (GaussianCurrent::correlation(J1, J2, Vec4{r, z}) -
                               GaussianCurrent::correlation(J1, J2, Vec4{-r, z}));
    }
    acc += rr.weights[i] * r * shell;
  }
  out.symp_local = acc;
  return out;
}

ShiftLaw symp_shift_law(const AsymptoteProfile& V1, const AsymptoteProfile& V2, const VectorFn& V1_plus,
                        const VectorFn& V2_plus, const SympOptions& opts) {
  const SphereQuadrature quad = sphere_quadrature(opts.sphere_order);
  for (const VectorFn* v : {&V1_plus, &V2_plus}) {
    if (v->degree != -1) throw Error(ErrorKind::DegreeMismatch, "shift field must have degree -1");
    if (charge_deviation(*v, 0.0, quad) > 1e-10) throw Error(ErrorKind::ChargedField, "shift field must satisfy l.V+ = 0");
  }
  ShiftLaw out;
  out.original = symp_null(V1, V2, opts);
  out.shifted = symp_null(sum(V1, constant_profile(V1_plus, 0)), sum(V2, constant_profile(V2_plus, 0)), opts);
  // (1/4pi) int [(V1(+inf) - V1(-inf)).V2+ - (V2(+inf) - V2(-inf)).V1+]
  double c = 0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Vec4 l = null_vector(quad.nodes[i]);
    const Vec4 d1 = V1.plus_inf(l) - V1.minus_inf(l), d2 = V2.plus_inf(l) - V2.minus_inf(l);
    c += quad.weights[i] * (dot(d1, V2_plus(l)) - dot(d2, V1_plus(l)));
  }
  out.correction = c / kFourPi;
  out.predicted = out.original + out.correction;
  return out;
}

Spectrum spectrum_of(const FreeFieldData& data) {
  Spectrum s;
  s.value = [data](double w, const Vec3& n) { return data.fourier_exact(w, n); };
  s.omega_max = omega_max_of(data);
  return s;
}

Spectrum spectrum_of(const AsymptoteProfile& data, double omega_max) {
  if (!(omega_max > 0)) throw Error(ErrorKind::InvalidGrid, "omega_max must be positive");
  Spectrum s;
  s.value = [data](double w, const Vec3& n) { return fourier_transform(data, w, n); };
  s.omega_max = omega_max;
  return s;
}

Complex fock_product(const Spectrum& a, const Spectrum& b, const FockOptions& opts) {
  const SpectralGrid g({&a, &b}, opts);
  check_pairing(g, 0, 1, opts);
  return g.product(0, 1);
}

std::string IrScan::csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "# slope " << slope << " intercept " << intercept << " predicted " << predicted << "\n";
  os << "omega_min,value\n";
  for (const auto& [w, v] : points) os << w << "," << v << "\n";
  return os.str();
}

IrScan ir_divergence_scan(const Spectrum& a, const std::vector<double>& omega_min, const FockOptions& opts) {
  if (omega_min.size() < 2) throw Error(ErrorKind::InvalidSequence, "scan needs at least two cutoffs");
  IrScan out;
  std::vector<double> x, y;
  for (double w : omega_min) {
    FockOptions o = opts;
    o.omega_min = w;
    const double v = fock_product(a, a, o).real();
    out.points.emplace_back(w, v);
    x.push_back(std::log(1 / w));
    y.push_back(v);
  }
  std::tie(out.slope, out.intercept) = fit_line(x, y);
  const SphereQuadrature q = sphere_quadrature(opts.sphere_order);
  double p = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const CVec4 z = a.value(0.0, q.nodes[i]);
    p += q.weights[i] * dot(conj(z), z).real();
  }
  out.predicted = -p;
  return out;
}

std::vector<FreeFieldData> ModeBasis::hermite_primitives(int n_shapes, double width,
                                                        const std::vector<HarmonicCoeff>& harmonics,
                                                        const Vec4& polarization) {
  std::vector<FreeFieldData> out;
  for (int k = 0; k < n_shapes; ++k)
    for (const auto& h : harmonics) {
      FreeFieldData d;
      d.terms.push_back({Shape{ShapeKind::Hermite, 0.0, width, k}, {h}, polarization, 0.0});
      out.push_back(std::move(d));
    }
  return out;
}

ModeBasis ModeBasis::build(const std::vector<FreeFieldData>& primitives, int cutoff, const FockOptions& fock) {
  const std::size_t P = primitives.size();
  if (P == 0 || P > 8) throw Error(ErrorKind::OutOfDomain, "mode basis needs 1..8 primitives");
  if (cutoff < 1) throw Error(ErrorKind::OutOfDomain, "occupation cutoff must be at least 1");
  if (std::pow(cutoff + 1.0, static_cast<double>(P)) > 1e5)
    throw Error(ErrorKind::OutOfDomain, "truncated Fock space exceeds 1e5 states");
  for (const auto& f : primitives)
    if (!f.ir_regular()) throw Error(ErrorKind::BasisTooSmall, "mode primitives must be infrared regular");

  std::vector<Spectrum> spectra;
  for (const auto& f : primitives) spectra.push_back(spectrum_of(f));
  std::vector<const Spectrum*> ptr;
  for (const auto& s : spectra) ptr.push_back(&s);
  FockOptions o = fock;
  o.omega_min.reset();
  const SpectralGrid g(ptr, o);

  ModeBasis b;
  b.primitives = primitives;
  b.cutoff = cutoff;
  b.fock = o;
  Eigen::MatrixXcd G(P, P);
  for (std::size_t i = 0; i < P; ++i)
    for (std::size_t j = i; j < P; ++j) {
      G(i, j) = g.product(i, j);
      G(j, i) = std::conj(G(i, j));
    }
  b.gram.assign(P, std::vector<Complex>(P));
  for (std::size_t i = 0; i < P; ++i)
    for (std::size_t j = 0; j < P; ++j) b.gram[i][j] = G(i, j);

  // Cholesky is Gram-Schmidt in matrix form: e_k has coefficients column k of L^{-*}
  Eigen::LLT<Eigen::MatrixXcd> llt(G);
  const double top = G.diagonal().real().maxCoeff();
  if (llt.info() != Eigen::Success || llt.matrixL().toDenseMatrix().diagonal().real().minCoeff() < 1e-6 * std::sqrt(top))
    throw Error(ErrorKind::BasisTooSmall, "mode primitives are linearly dependent in the Fock product");
  const Eigen::MatrixXcd Linv = llt.matrixL().solve(Eigen::MatrixXcd::Identity(P, P));
  b.coeff.assign(P, std::vector<Complex>(P));
  for (std::size_t k = 0; k < P; ++k)
    for (std::size_t j = 0; j < P; ++j) b.coeff[k][j] = std::conj(Linv(k, j));
  return b;
}

std::size_t ModeBasis::dimension() const {
  std::size_t d = 1;
  for (std::size_t k = 0; k < size(); ++k) d *= static_cast<std::size_t>(cutoff + 1);
  return d;
}

std::vector<Complex> ModeBasis::components(const FreeFieldData& f) const {
  std::vector<Spectrum> spectra;
  for (const auto& p : primitives) spectra.push_back(spectrum_of(p));
  spectra.push_back(spectrum_of(f));
  std::vector<const Spectrum*> ptr;
  for (const auto& s : spectra) ptr.push_back(&s);
  const SpectralGrid g(ptr, fock);
  const std::size_t P = primitives.size();
  check_pairing(g, P, P, fock);
  std::vector<Complex> pf(P);
  for (std::size_t j = 0; j < P; ++j) pf[j] = g.product(j, P);
  std::vector<Complex> c(size());
  for (std::size_t k = 0; k < size(); ++k)
    for (std::size_t j = 0; j < P; ++j) c[k] += std::conj(coeff[k][j]) * pf[j];
  return c;
}

double ModeBasis::gram_error() const {
  double e = 0;
  const std::size_t P = primitives.size();
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b) {
      Complex s = 0;
      for (std::size_t i = 0; i < P; ++i)
        for (std::size_t j = 0; j < P; ++j) s += std::conj(coeff[a][i]) * coeff[b][j] * gram[i][j];
      e = std::max(e, std::abs(s - (a == b ? 1.0 : 0.0)));
    }
  return e;
}

CoherentShift coherent_shift_check(const FreeFieldData& V, const FreeFieldData& V1, const ModeBasis& basis,
                                   int low_occupation, double projection_tolerance) {
  CoherentShift out;
  const std::size_t N = basis.size();
  const int M = basis.cutoff;
  const std::size_t D = basis.dimension();
  if (D > 4096) throw Error(ErrorKind::OutOfDomain, "dense truncated Fock space limited to 4096 states");
  out.dimension = D;

  const auto c = basis.components(V);
  const auto c1 = basis.components(V1);
  auto projection = [&](const FreeFieldData& f, const std::vector<Complex>& comp) {
    if (f.empty()) return 0.0;
    const Spectrum s = spectrum_of(f);
    const double norm2 = fock_product(s, s, basis.fock).real();
    double p = 0;
    for (const auto& z : comp) p += std::norm(z);
    return norm2 > 0 ? std::abs(norm2 - p) / norm2 : 0.0;
  };
  out.projection_error = std::max(projection(V, c), projection(V1, c1));
  if (out.projection_error > projection_tolerance)
    throw Error(ErrorKind::BasisTooSmall, "profile not expressible in the mode basis");

  // occupation digits of each basis state, mode k has stride (M+1)^k
  std::vector<std::size_t> stride(N);
  for (std::size_t k = 0; k < N; ++k) stride[k] = k == 0 ? 1 : stride[k - 1] * static_cast<std::size_t>(M + 1);
  auto occupation = [&](std::size_t state, std::size_t k) { return static_cast<int>(state / stride[k] % (M + 1)); };

  auto field = [&](const std::vector<Complex>& comp) {
    Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(D, D);
    for (std::size_t st = 0; st < D; ++st)
      for (std::size_t k = 0; k < N; ++k) {
        const int n = occupation(st, k);
        if (n == M) continue;
        const std::size_t up = st + stride[k];
        const double amp = std::sqrt(n + 1.0);
        F(up, st) += comp[k] * amp;              // a*_k
        F(st, up) += std::conj(comp[k]) * amp;   // a_k
      }
    return F;
  };
  const Eigen::MatrixXcd Phi = field(c);
  const Eigen::MatrixXcd Phi1 = field(c1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Phi1);
  const Eigen::VectorXcd phase = (Complex(0, 1) * es.eigenvalues().cast<Complex>()).array().exp();
  const Eigen::MatrixXcd U = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
  const Eigen::MatrixXcd lhs = U * Phi * U.adjoint();

  Complex inner = 0;
  for (std::size_t k = 0; k < N; ++k) inner += std::conj(c[k]) * c1[k];
  out.symp = 2 * inner.imag();
  out.symp_direct = V.empty() || V1.empty() ? 0.0 : symp_null(V.profile(), V1.profile());
  out.vacuum_mean = lhs(0, 0);

  std::vector<std::size_t> low;
  for (std::size_t st = 0; st < D; ++st) {
    int total = 0;
    for (std::size_t k = 0; k < N; ++k) total += occupation(st, k);
    if (total <= low_occupation) low.push_back(st);
  }
  for (std::size_t i : low)
    for (std::size_t j : low) {
      const Complex r = lhs(i, j) - Phi(i, j) - (i == j ? out.symp : 0.0);
      out.residual = std::max(out.residual, std::abs(r));
    }
  return out;
}

}  // namespace ired
