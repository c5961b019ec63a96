#include "magdtn/domain2d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "magdtn/asympt.hpp"
#include "magdtn/error.hpp"
#include "magdtn/model1d.hpp"
#include "magdtn/schur_eigs.hpp"
#include "magdtn/specfun.hpp"

namespace magdtn::domain2d {
namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Four-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 4> kGaussX{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                        0.8611363115940526};
constexpr std::array<double, 4> kGaussW{0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                        0.3478548451374538};

template <class F>
double gauss(F&& f, double a, double b) {
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  double s = 0.0;
  for (int k = 0; k < 4; ++k) s += kGaussW[k] * f(c + r * kGaussX[k]);
  return r * s;
}

double curvature_of(const RadiusJet& j) {
  const double g = j.r * j.r + j.r1 * j.r1;
  return (j.r * j.r + 2.0 * j.r1 * j.r1 - j.r * j.r2) / (g * std::sqrt(g));
}

void derive_geometry(DomainSpec& d, int samples) {
  if (samples < 64) throw Error(ErrorKind::InvalidBoundary, "geometry needs at least 64 samples");
  const double dphi = kTwoPi / samples;
  d.phi_samples.resize(samples);
  d.kappa_samples.resize(samples);
  double perimeter = 0.0, area = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double phi = i * dphi;
    const RadiusJet j = d.jet(phi);
    if (!(j.r > 0.0) || !std::isfinite(j.r)) {
      std::ostringstream os;
      os << "boundary radius " << j.r << " at phi=" << phi << " is not positive";
      throw Error(ErrorKind::InvalidBoundary, os.str());
    }
    perimeter += std::sqrt(j.r * j.r + j.r1 * j.r1);
    area += 0.5 * j.r * j.r;
    d.phi_samples[i] = phi;
    d.kappa_samples[i] = curvature_of(j);
    if (!std::isfinite(d.kappa_samples[i])) {
      throw Error(ErrorKind::InvalidBoundary, "boundary curvature is not finite");
    }
  }
  // Trapezoid sums of periodic analytic integrands converge spectrally.
  d.perimeter = perimeter * dphi;
  d.area = area * dphi;

  // Scan for local maxima, then refine each on its bracket.
  std::vector<int> candidates;
  for (int i = 0; i < samples; ++i) {
    const double k = d.kappa_samples[i];
    if (k >= d.kappa_samples[(i + samples - 1) % samples] && k >= d.kappa_samples[(i + 1) % samples]) {
      candidates.push_back(i);
    }
  }
  struct Peak {
    double phi, value;
  };
  std::vector<Peak> peaks;
  if (candidates.size() > 64) {
    // Flat curvature (circle-like): no refinement is meaningful.
    const auto it = std::max_element(d.kappa_samples.begin(), d.kappa_samples.end());
    peaks.push_back({d.phi_samples[it - d.kappa_samples.begin()], *it});
    peaks.push_back(peaks.front());
  } else {
    for (int i : candidates) {
      const double lo = (i - 1) * dphi, hi = (i + 1) * dphi;
      const auto m = specfun::minimize_scalar([&](double p) { return -d.curvature(p); }, lo, hi, 1e-12);
      double phi = std::fmod(m.x, kTwoPi);
      if (phi < 0.0) phi += kTwoPi;
      bool duplicate = false;
      for (const auto& p : peaks) {
        const double gap = std::abs(std::remainder(p.phi - phi, kTwoPi));
        if (gap < 1e-6) duplicate = true;
      }
      if (!duplicate) peaks.push_back({phi, -m.value});
    }
  }
  const auto best = std::max_element(peaks.begin(), peaks.end(),
                                     [](const Peak& a, const Peak& b) { return a.value < b.value; });
  d.kappa_max = best->value;
  d.kappa_argmax = best->phi;
  int ties = 0;
  for (const auto& p : peaks) {
    if (p.value >= d.kappa_max - 1e-12 * std::max(1.0, std::abs(d.kappa_max))) ++ties;
  }
  // k2 = -kappa_ss = -kappa_phiphi / |dx/dphi|^2 at a critical point.
  const double e = 1e-3, p0 = d.kappa_argmax;
  const double kpp = (-d.curvature(p0 + 2 * e) + 16 * d.curvature(p0 + e) - 30 * d.curvature(p0) +
                      16 * d.curvature(p0 - e) - d.curvature(p0 - 2 * e)) /
                     (12 * e * e);
  const RadiusJet j = d.jet(p0);
  d.k2 = -kpp / (j.r * j.r + j.r1 * j.r1);
  d.unique_max = ties == 1 && d.k2 > 1e-8;
}

}  // namespace

RadiusJet DomainSpec::jet(double phi) const {
  RadiusJet j;
  if (kind == RadiusKind::Ellipse) {
    // r = a b / sqrt(q), q = b^2 + (a^2 - b^2) sin^2 phi.
    const double a = semi_x, b = semi_y, d = a * a - b * b;
    const double s = std::sin(phi), c = std::cos(phi);
    const double q = b * b + d * s * s;
    const double q1 = 2.0 * d * s * c;
    const double q2 = 2.0 * d * (c * c - s * s);
    const double ab = a * b;
    j.r = ab / std::sqrt(q);
    j.r1 = -0.5 * ab * q1 / (q * std::sqrt(q));
    j.r2 = ab * (0.75 * q1 * q1 / (q * q * std::sqrt(q)) - 0.5 * q2 / (q * std::sqrt(q)));
    return j;
  }
  for (size_t k = 0; k < cos_coeffs.size(); ++k) {
    const double c = std::cos(k * phi), s = std::sin(k * phi), kk = static_cast<double>(k);
    j.r += cos_coeffs[k] * c;
    j.r1 -= kk * cos_coeffs[k] * s;
    j.r2 -= kk * kk * cos_coeffs[k] * c;
  }
  for (size_t k = 1; k < sin_coeffs.size(); ++k) {
    const double c = std::cos(k * phi), s = std::sin(k * phi), kk = static_cast<double>(k);
    j.r += sin_coeffs[k] * s;
    j.r1 += kk * sin_coeffs[k] * c;
    j.r2 -= kk * kk * sin_coeffs[k] * s;
  }
  return j;
}

double DomainSpec::curvature(double phi) const { return curvature_of(jet(phi)); }

Eigen::Vector2d DomainSpec::point(double rho, double phi) const {
  const double r = rho * radius(phi);
  return {r * std::cos(phi), r * std::sin(phi)};
}

double DomainSpec::max_radius() const {
  double m = 0.0;
  for (double p : phi_samples) m = std::max(m, radius(p));
  return m;
}

double DomainSpec::min_radius() const {
  double m = INFINITY;
  for (double p : phi_samples) m = std::min(m, radius(p));
  return m;
}

DomainSpec build_domain(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs, int samples) {
  if (cos_coeffs.empty()) throw Error(ErrorKind::InvalidBoundary, "empty cosine coefficient list");
  if (!sin_coeffs.empty() && sin_coeffs[0] != 0.0) {
    throw Error(ErrorKind::InvalidBoundary, "sin_coeffs[0] multiplies sin(0) and must be zero");
  }
  for (double c : cos_coeffs) {
    if (!std::isfinite(c)) throw Error(ErrorKind::InvalidBoundary, "non-finite radius coefficient");
  }
  for (double c : sin_coeffs) {
    if (!std::isfinite(c)) throw Error(ErrorKind::InvalidBoundary, "non-finite radius coefficient");
  }
  DomainSpec d;
  d.kind = RadiusKind::Fourier;
  d.cos_coeffs = std::move(cos_coeffs);
  d.sin_coeffs = std::move(sin_coeffs);
  derive_geometry(d, samples);
  return d;
}

DomainSpec build_ellipse(double a, double b, int samples) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::InvalidBoundary, "ellipse semi-axes must be positive");
  }
  DomainSpec d;
  d.kind = RadiusKind::Ellipse;
  d.cos_coeffs.clear();
  d.semi_x = a;
  d.semi_y = b;
  derive_geometry(d, samples);
  return d;
}

DomainSpec scaled(const DomainSpec& d, double factor) {
  if (!(factor > 0.0)) throw Error(ErrorKind::InvalidBoundary, "scale factor must be positive");
  const int samples = static_cast<int>(d.phi_samples.size());
  if (d.kind == RadiusKind::Ellipse) return build_ellipse(factor * d.semi_x, factor * d.semi_y, samples);
  auto c = d.cos_coeffs, s = d.sin_coeffs;
  for (double& v : c) v *= factor;
  for (double& v : s) v *= factor;
  return build_domain(c, s, samples);
}

FieldSpec FieldSpec::constant() { return {}; }

FieldSpec FieldSpec::radial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw Error(ErrorKind::InvalidConfig, "radial field needs coefficients");
  FieldSpec f;
  f.kind = FieldKind::Radial;
  f.radial_coeffs = std::move(coeffs);
  return f;
}

FieldSpec FieldSpec::custom(PotentialFn potential, ScalarFn field) {
  FieldSpec f;
  f.kind = FieldKind::Custom;
  f.potential_fn = std::move(potential);
  f.field_fn = std::move(field);
  return f;
}

FieldSpec FieldSpec::gauge_shifted(PotentialFn grad_phi) const {
  FieldSpec base = *this;
  return custom([base, grad_phi](const Eigen::Vector2d& x) -> Eigen::Vector2d { return base.potential(x) + grad_phi(x); },
                [base](const Eigen::Vector2d& x) { return base.field(x); });
}

Eigen::Vector2d FieldSpec::potential(const Eigen::Vector2d& x) const {
  switch (kind) {
    case FieldKind::Constant:
      return {-0.5 * x.y(), 0.5 * x.x()};
    case FieldKind::Radial: {
      // A = (a(r)/r) (-x2, x1), a(r)/r = sum c_k r^k / (k + 2).
      const double r = x.norm();
      double g = 0.0;
      for (size_t k = radial_coeffs.size(); k-- > 0;) g = g * r + radial_coeffs[k] / (k + 2.0);
      return {-g * x.y(), g * x.x()};
    }
    case FieldKind::Custom:
      return potential_fn(x);
  }
  return {0.0, 0.0};
}

double FieldSpec::field(const Eigen::Vector2d& x) const {
  switch (kind) {
    case FieldKind::Constant:
      return 1.0;
    case FieldKind::Radial: {
      const double r = x.norm();
      double v = 0.0;
      for (size_t k = radial_coeffs.size(); k-- > 0;) v = v * r + radial_coeffs[k];
      return v;
    }
    case FieldKind::Custom:
      return field_fn(x);
  }
  return 0.0;
}

double min_boundary_field(const DomainSpec& d, const FieldSpec& f) {
  double m = INFINITY;
  for (double p : d.phi_samples) m = std::min(m, std::abs(f.field(d.point(1.0, p))));
  return m;
}

GridOperator assemble(const DomainSpec& d, const FieldSpec& f, double b, double h) {
  if (!(h > 0.0) || !std::isfinite(b)) throw Error(ErrorKind::MeshFailure, "assemble needs h > 0 and finite b");
  const double rmax = d.max_radius(), rmin = d.min_radius();
  if (h > 0.25 * rmin) {
    std::ostringstream os;
    os << "h=" << h << " leaves fewer than 8 cells across the domain";
    throw Error(ErrorKind::MeshFailure, os.str());
  }
  const double bb = std::abs(b);
  const double s = bb > 4.0 ? 2.0 * h / std::sqrt(bb) : h;
  const double collar = bb > 0.0 ? 10.0 / std::sqrt(bb) : INFINITY;

  // Rings from the boundary inward: step s through the collar, then grow
  // geometrically to h.
  std::vector<double> rho{1.0};
  {
    const double ds = s / rmax, dh = h / rmax, cw = collar / rmin;
    double step = ds;
    while (true) {
      const double cur = rho.back();
      if (1.0 - cur >= cw) step = std::min(step * 1.15, dh);
      const double next = cur - step;
      if (next < 0.6 * step) break;
      rho.push_back(next);
      if (rho.size() > 100000) throw Error(ErrorKind::MeshFailure, "radial grid did not terminate");
    }
    rho.push_back(0.0);
    std::reverse(rho.begin(), rho.end());
  }
  const int M = static_cast<int>(rho.size()) - 1;  // rings 1..M, ring M is the boundary
  double speed = 0.0;
  for (double p : d.phi_samples) {
    const RadiusJet j = d.jet(p);
    speed = std::max(speed, std::sqrt(j.r * j.r + j.r1 * j.r1));
  }
  int N = std::max(16, static_cast<int>(std::ceil(kTwoPi * speed / s)));
  N = (N + 3) / 4 * 4;
  const double dphi = kTwoPi / N;
  const long n_nodes = 1 + static_cast<long>(M) * N;
  if (n_nodes > 4000000) throw Error(ErrorKind::MeshFailure, "grid exceeds four million unknowns");
  auto node = [N](int i, int j) -> Eigen::Index {
    return i == 0 ? 0 : 1 + static_cast<Eigen::Index>(i - 1) * N + ((j % N) + N) % N;
  };

  std::vector<RadiusJet> jets(N);
  for (int j = 0; j < N; ++j) jets[j] = d.jet(j * dphi);

  // Link phases b int A.dl along radial edges (ring i -> i+1 at phi_j) and
  // angular edges (phi_j -> phi_{j+1} on ring i).
  std::vector<double> theta_r(static_cast<size_t>(M) * N), theta_a(static_cast<size_t>(M + 1) * N, 0.0);
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < N; ++j) {
      const double phi = j * dphi, r = jets[j].r;
      const Eigen::Vector2d e(std::cos(phi), std::sin(phi));
      theta_r[static_cast<size_t>(i) * N + j] =
          b * gauss([&](double t) { return f.potential(t * r * e).dot(r * e); }, rho[i], rho[i + 1]);
    }
  }
  for (int i = 1; i <= M; ++i) {
    const double rr = rho[i];
    for (int j = 0; j < N; ++j) {
      theta_a[static_cast<size_t>(i) * N + j] = b * gauss(
          [&](double phi) {
            const RadiusJet q = d.jet(phi);
            const Eigen::Vector2d e(std::cos(phi), std::sin(phi)), t(-std::sin(phi), std::cos(phi));
            const Eigen::Vector2d x = rr * q.r * e;
            return f.potential(x).dot(rr * (q.r1 * e + q.r * t));
          },
          j * dphi, (j + 1) * dphi);
    }
  }
  auto phase = [](double theta) { return std::polar(1.0, -theta); };

  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(static_cast<size_t>(n_nodes) * 40);
  Eigen::VectorXd area_w = Eigen::VectorXd::Zero(n_nodes);

  // Adds w * C^* K C for a difference stencil C (2 x 3) on nodes idx.
  auto add = [&](const std::array<Eigen::Index, 3>& idx, const std::array<std::array<cplx, 3>, 2>& C,
                 const Eigen::Matrix2d& K, double w) {
    for (int p = 0; p < 3; ++p) {
      for (int q = 0; q < 3; ++q) {
        cplx v = 0.0;
        for (int a = 0; a < 2; ++a) {
          for (int c = 0; c < 2; ++c) v += std::conj(C[a][p]) * K(a, c) * C[c][q];
        }
        if (v != 0.0) trip.emplace_back(idx[p], idx[q], w * v);
      }
    }
  };

  // Centre fan: P1 gradients of values transported to the origin.
  for (int j = 0; j < N; ++j) {
    const Eigen::Vector2d x1 = d.point(rho[1], j * dphi), x2 = d.point(rho[1], (j + 1) * dphi);
    Eigen::Matrix2d E;
    E << x1, x2;
    const double tri_area = 0.5 * std::abs(E.determinant());
    const Eigen::Matrix2d K = tri_area * (E.transpose() * E).inverse();
    const cplx t1 = phase(theta_r[j]), t2 = phase(theta_r[(j + 1) % N]);
    add({0, node(1, j), node(1, j + 1)}, {{{-1.0, t1, 0.0}, {-1.0, 0.0, t2}}}, K, 1.0);
    area_w(0) += tri_area / 3.0;
    area_w(node(1, j)) += tri_area / 3.0;
    area_w(node(1, j + 1)) += tri_area / 3.0;
  }

  // Quadrilateral cells: each corner carries the gradient formed from the two
  // edges meeting there, contracted with the metric K taken at the corner's
  // radius and weighted by int rho d rho / rho_k over its half ring. The
  // weights are exact for u_phi ~ rho, which keeps linear data exact near the
  // centre, and each corner term is positive semidefinite.
  for (int i = 1; i < M; ++i) {
    const double dr = rho[i + 1] - rho[i], rc = 0.5 * (rho[i] + rho[i + 1]);
    const double lower = 0.5 * (rc * rc - rho[i] * rho[i]);
    const double upper = 0.5 * (rho[i + 1] * rho[i + 1] - rc * rc);
    for (int j = 0; j < N; ++j) {
      const RadiusJet q = d.jet((j + 0.5) * dphi);
      const double ratio = q.r1 / q.r;
      auto corner_metric = [&](double mass, double rk) {
        Eigen::Matrix2d K;
        K << rk * (1.0 + ratio * ratio), -ratio, -ratio, 1.0 / rk;
        return Eigen::Matrix2d(0.5 * dphi * mass / rk * K);
      };
      const Eigen::Matrix2d Klo = corner_metric(lower, rho[i]);
      const Eigen::Matrix2d Khi = corner_metric(upper, rho[i + 1]);
      const Eigen::Index p00 = node(i, j), p10 = node(i + 1, j), p01 = node(i, j + 1), p11 = node(i + 1, j + 1);
      const double tr0 = theta_r[static_cast<size_t>(i) * N + j];
      const double tr1 = theta_r[static_cast<size_t>(i) * N + (j + 1) % N];
      const double ta0 = theta_a[static_cast<size_t>(i) * N + j];
      const double ta1 = theta_a[static_cast<size_t>(i + 1) * N + j];
      const double ir = 1.0 / dr, ip = 1.0 / dphi;
      // Corner (i, j): forward differences.
      add({p00, p10, p01}, {{{-ir, ir * phase(tr0), 0.0}, {-ip, 0.0, ip * phase(ta0)}}}, Klo, 1.0);
      // Corner (i+1, j): backward in rho, forward in phi.
      add({p10, p00, p11}, {{{ir, -ir * phase(-tr0), 0.0}, {-ip, 0.0, ip * phase(ta1)}}}, Khi, 1.0);
      // Corner (i, j+1): forward in rho, backward in phi.
      add({p01, p11, p00}, {{{-ir, ir * phase(tr1), 0.0}, {ip, 0.0, -ip * phase(-ta0)}}}, Klo, 1.0);
      // Corner (i+1, j+1): backward in both.
      add({p11, p01, p10}, {{{ir, -ir * phase(-tr1), 0.0}, {ip, 0.0, -ip * phase(-ta1)}}}, Khi, 1.0);
      const double cell_area = rc * q.r * q.r * dr * dphi;
      for (Eigen::Index p : {p00, p10, p01, p11}) area_w(p) += 0.25 * cell_area;
    }
  }

  GridOperator op;
  op.form.resize(n_nodes, n_nodes);
  op.form.setFromTriplets(trip.begin(), trip.end());
  op.form.makeCompressed();
  op.n_boundary = N;
  op.n_interior = n_nodes - N;
  op.boundary_mass.resize(N);
  for (int j = 0; j < N; ++j) {
    op.boundary_mass(j) = gauss(
        [&](double phi) {
          const RadiusJet q = d.jet(phi);
          return std::sqrt(q.r * q.r + q.r1 * q.r1);
        },
        (j - 0.5) * dphi, (j + 0.5) * dphi);
  }
  op.area_weights = std::move(area_w);
  op.rho = std::move(rho);
  op.n_angles = N;
  op.h = h;
  op.b = b;
  op.perimeter = d.perimeter;
  return op;
}

DtNSpectrum dtn_schur_eigs(const GridOperator& op, int count, std::uint64_t seed) {
  const ShiftInvertSchur<cplx> solver(op.form, op.n_interior, op.boundary_mass);
  const auto r = solver.lowest(count, seed, 1e-10);
  DtNSpectrum s;
  s.eigenvalues.assign(r.eigenvalues.begin(), r.eigenvalues.end());
  for (int i = 0; i < count; ++i) s.labels.push_back(i + 1);
  s.meta.b = op.b;
  s.meta.method = "schur";
  s.meta.tolerance = 1e-10;
  s.meta.h = op.h;
  return s;
}

double weak_field_coefficient(const DomainSpec& d, double h) {
  const GridOperator op = assemble(d, FieldSpec::constant(), 0.0, h);
  const Eigen::Index ni = op.n_interior;
  const Eigen::SparseMatrix<double> full = op.form.real();
  const Eigen::SparseMatrix<double> K = full.topLeftCorner(ni, ni);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(K);
  if (ldlt.info() != Eigen::Success) throw Error(ErrorKind::MeshFailure, "Poisson factorization failed");
  const Eigen::VectorXd load = op.area_weights.head(ni);
  const Eigen::VectorXd psi = ldlt.solve(-load);
  // int |grad psi|^2 = -int psi for Lap psi = 1, psi = 0 on the boundary.
  return -load.dot(psi) / d.perimeter;
}

double splitting_gap_prediction(const DomainSpec& d, double b) {
  if (!(b > 0.0)) throw Error(ErrorKind::OutOfRange, "splitting prediction needs b > 0");
  if (!d.unique_max) {
    std::ostringstream os;
    os << "curvature maximum is not unique and non-degenerate (k2=" << d.k2 << ")";
    throw Error(ErrorKind::AssumptionViolation, os.str());
  }
  return asympt::splitting_gap(b, d.k2).value;
}

}  // namespace magdtn::domain2d
