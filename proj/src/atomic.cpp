#include "hexwell/atomic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hexwell/errors.hpp"

namespace hexwell {

namespace {

constexpr double kEA1Norm = 0.5773502691896258;  // 1/sqrt(3)

// C-infinity step: 0 at t <= 0, 1 at t >= 1.
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

}  // namespace

AtomicWell::AtomicWell(WellKind kind, double r0, double smoothing, bool allow_large_r0)
    : kind_(kind), r0_(r0), smoothing_(smoothing) {
  const double cap = (allow_large_r0 ? 0.5 : 0.33) * kEA1Norm;
  if (!(r0 > 0.0) || r0 > cap * (1.0 + 1e-12))
    throw ConfigError("well support radius r0 out of range");
  if (kind == WellKind::SmoothedCylinder &&
      (!(smoothing > 0.0) || smoothing >= r0))
    throw ConfigError("cylinder smoothing width must lie in (0, r0)");
}

AtomicWell AtomicWell::bump(double r0, bool allow_large_r0) {
  return AtomicWell(WellKind::SmoothBump, r0, 0.0, allow_large_r0);
}

AtomicWell AtomicWell::smoothed_cylinder(double r0, double smoothing, bool allow_large_r0) {
  return AtomicWell(WellKind::SmoothedCylinder, r0, smoothing, allow_large_r0);
}

double AtomicWell::value(double r) const {
  r = std::abs(r);
  if (r >= r0_) return 0.0;
  if (kind_ == WellKind::SmoothBump) {
    const double t = r / r0_;
    return -std::exp(1.0 - 1.0 / (1.0 - t * t));
  }
  // smoothed cylinder: flat bottom, ramp on [r0 - smoothing, r0]
  if (r <= r0_ - smoothing_) return -1.0;
  return -smooth_step((r0_ - r) / smoothing_);
}

std::string AtomicWell::label() const {
  char buf[96];
  if (kind_ == WellKind::SmoothBump)
    std::snprintf(buf, sizeof buf, "bump(r0=%.6g)", r0_);
  else
    std::snprintf(buf, sizeof buf, "cylinder(r0=%.6g,ds=%.6g)", r0_, smoothing_);
  return buf;
}

namespace {

// Symmetrized finite-volume discretization of the radial operator in L^2(r dr).
// Returns diag/subdiag of the tridiagonal matrix plus the cell measures.
struct RadialDiscretization {
  VectorXd diag, subdiag, measure;
  int j0 = 0;  // first retained node (0 for m = 0, 1 for m >= 1)
  double h = 0.0;
};

RadialDiscretization discretize(const AtomicWell& well, double lambda, int m, int n_r,
                                double Rmax) {
  RadialDiscretization d;
  d.h = Rmax / n_r;
  d.j0 = (m == 0) ? 0 : 1;
  const int n = n_r - d.j0;  // interior unknowns, Dirichlet at j = n_r
  d.diag.resize(n);
  d.subdiag.resize(n - 1);
  d.measure.resize(n);
  const double h = d.h;
  const double lam2 = lambda * lambda;
  for (int idx = 0; idx < n; ++idx) {
    const int j = idx + d.j0;
    const double r = j * h;
    const double mu = (j == 0) ? h * h / 8.0 : r * h;
    const double rp = (j + 0.5) * h;
    const double rm = (j - 0.5) * h;
    double t = rp / h;
    if (j > 0) t += rm / h;
    double pot = lam2 * well.value(r);
    if (m > 0) pot += m * m / (r * r);
    d.measure[idx] = mu;
    d.diag[idx] = (t + mu * pot) / mu;
    if (idx + 1 < n) {
      const int jn = j + 1;
      const double mun = jn * h * h;
      d.subdiag[idx] = -(rp / h) / std::sqrt(mu * mun);
    }
  }
  return d;
}

VectorXd tridiag_eigenvalues(const RadialDiscretization& d) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es;
  es.computeFromTridiagonal(d.diag, d.subdiag, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// Ground eigenvector by inverse iteration with a shift just below E0, where
// the shifted tridiagonal matrix is positive definite (LDL^T without pivoting).
VectorXd tridiag_ground_vector(const RadialDiscretization& d, double E0) {
  const Index n = d.diag.size();
  const double shift = E0 - std::max(1e-9 * std::abs(E0), 1e-12);
  VectorXd l(n - 1), dd(n);
  dd[0] = d.diag[0] - shift;
  for (Index i = 1; i < n; ++i) {
    l[i - 1] = d.subdiag[i - 1] / dd[i - 1];
    dd[i] = d.diag[i] - shift - l[i - 1] * d.subdiag[i - 1];
  }
  VectorXd v = VectorXd::Ones(n);
  for (int it = 0; it < 4; ++it) {
    for (Index i = 1; i < n; ++i) v[i] -= l[i - 1] * v[i - 1];
    for (Index i = 0; i < n; ++i) v[i] /= dd[i];
    for (Index i = n - 2; i >= 0; --i) v[i] -= l[i] * v[i + 1];
    v.normalize();
  }
  if (v.sum() < 0.0) v = -v;
  return v;
}

}  // namespace

VectorXd radial_eigenvalues(const AtomicWell& well, double lambda, int m, int n_r,
                            double Rmax) {
  return tridiag_eigenvalues(discretize(well, lambda, m, n_r, Rmax));
}

double GroundState::eval(double r) const {
  r = std::abs(r);
  const double h = radial_grid[1] - radial_grid[0];
  const auto n = static_cast<Index>(radial_grid.size());
  double j = r / h;
  Index i = static_cast<Index>(j);
  if (i >= n - 1) i = n - 2;  // log-linear extrapolation past the grid
  const double w = j - static_cast<double>(i);
  const double lu0 = std::log(u[i]);
  const double lu1 = std::log(u[i + 1]);
  return std::exp(lu0 + w * (lu1 - lu0));
}

GroundState ground_state(const AtomicWell& well, double lambda, const RadialGridSpec& grid) {
  if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
  if (grid.n_r < 200) throw ConfigError("n_r must be at least 200");
  double Rmax = grid.Rmax;
  if (Rmax <= 0.0) Rmax = well.r0() + std::max(5.0 / lambda, 2.0 * kEA1Norm);
  if (Rmax < well.r0() + 5.0 / lambda)
    throw ConfigError("Rmax too small for the requested lambda");

  const int n_r = grid.n_r;
  const auto d0 = discretize(well, lambda, 0, n_r, Rmax);
  const VectorXd ev0 = tridiag_eigenvalues(d0);
  const double E0 = ev0[0];
  if (E0 >= 0.0) throw NoBoundState("lowest radial eigenvalue is nonnegative");

  const VectorXd ev0_fine = radial_eigenvalues(well, lambda, 0, 2 * n_r, Rmax);
  if (std::abs(ev0_fine[0] - E0) > 1e-6 * lambda * lambda)
    throw GridTooCoarse("ground energy not resolved: refine n_r");

  const VectorXd ev1 = radial_eigenvalues(well, lambda, 1, n_r, Rmax);

  VectorXd w = tridiag_ground_vector(d0, E0);  // sqrt(measure)-weighted samples

  GroundState gs;
  gs.lambda = lambda;
  gs.E0 = E0;
  gs.E1_m0 = ev0[1];
  gs.E0_m1 = ev1[0];
  gs.well_kind = well.kind();
  gs.well_r0 = well.r0();
  gs.well_smoothing = well.smoothing();
  gs.n_r = n_r;
  gs.radial_grid.resize(n_r);  // drop the Dirichlet node at Rmax
  gs.u.resize(n_r);
  double nrm2 = 0.0;
  for (int j = 0; j < n_r; ++j) {
    const double uj = w[j] / std::sqrt(d0.measure[j]);
    gs.radial_grid[j] = j * d0.h;
    gs.u[j] = uj;
    nrm2 += uj * uj * d0.measure[j];
  }
  const double scale = 1.0 / std::sqrt(2.0 * kPi * nrm2);
  for (auto& v : gs.u) v *= scale;
  gs.norm = 1.0;

  // u must stay strictly positive for log interpolation; the inverse-iteration
  // vector of the lowest mode has no nodes, but guard against rounding to 0.
  const double floor_u = std::numeric_limits<double>::min() * 1e4;
  for (auto& v : gs.u) v = std::max(v, floor_u);

  if (Rmax >= kEA1Norm + well.r0() + 1e-12) {
    gs.rho = rho_lambda(gs, well);
  } else {
    gs.rho = std::numeric_limits<double>::quiet_NaN();
  }
  return gs;
}

double bessel_j_zero(int m, int n) {
  // scan on a coarse grid, then bisect
  double prev = 1e-8;
  double fprev = std::cyl_bessel_j(m, prev);
  int found = 0;
  for (double x = 0.05; x < 1000.0; x += 0.05) {
    const double fx = std::cyl_bessel_j(m, x);
    if (fprev * fx < 0.0) {
      ++found;
      if (found == n) {
        double a = prev, b = x;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (a + b);
          const double fm = std::cyl_bessel_j(m, mid);
          if (fprev * fm <= 0.0)
            b = mid;
          else
            a = mid, fprev = fm;
        }
        return 0.5 * (a + b);
      }
    }
    prev = x;
    fprev = fx;
  }
  throw NoRoot("bessel_j_zero: zero not found");
}

double cylinder_well_eigenvalue(double lambda, double R, int m, int branch) {
  if (branch < 1 || m < 0) throw ConfigError("need m >= 0, branch >= 1");
  // E in (-lambda^2, 0); parametrize a = sqrt(lambda^2 + E) in (0, lambda).
  // Matching of J_m(a r) inside with the decaying K_m(b r) outside, b = sqrt(-E):
  //   a J_m'(aR) K_m(bR) - b K_m'(bR) J_m(aR) = 0.
  auto jp = [&](double x) {
    if (m == 0) return -std::cyl_bessel_j(1, x);
    return 0.5 * (std::cyl_bessel_j(m - 1, x) - std::cyl_bessel_j(m + 1, x));
  };
  auto kp = [&](double x) {
    if (m == 0) return -std::cyl_bessel_k(1, x);
    return -0.5 * (std::cyl_bessel_k(m - 1, x) + std::cyl_bessel_k(m + 1, x));
  };
  auto g = [&](double a) {
    const double b = std::sqrt(std::max(lambda * lambda - a * a, 0.0));
    if (b <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return a * jp(a * R) * std::cyl_bessel_k(m, b * R) - b * kp(b * R) * std::cyl_bessel_j(m, a * R);
  };

  const int nscan = 4000;
  const double amax = lambda * (1.0 - 1e-12);
  double aprev = amax * 1e-6;
  double gprev = g(aprev);
  int count = 0;
  for (int i = 1; i <= nscan; ++i) {
    const double a = amax * i / nscan;
    const double ga = g(a);
    if (std::isfinite(gprev) && std::isfinite(ga) && gprev * ga < 0.0) {
      ++count;
      if (count == branch) {
        double lo = aprev, hi = a, glo = gprev;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double gm = g(mid);
          if (glo * gm <= 0.0)
            hi = mid;
          else
            lo = mid, glo = gm;
        }
        const double a_root = 0.5 * (lo + hi);
        return a_root * a_root - lambda * lambda;
      }
    }
    aprev = a;
    gprev = ga;
  }
  throw NoRoot("cylinder_well_eigenvalue: no sign change for requested branch");
}

double rho_lambda(const GroundState& gs, const AtomicWell& well) {
  return rho_lambda(gs, well, Vector2d(kEA1Norm, 0.0));
}

double rho_lambda(const GroundState& gs, const AtomicWell& well, const Vector2d& e) {
  const double enorm = e.norm();
  const double r0 = well.r0();
  const double Rgrid = gs.radial_grid.back();
  if (Rgrid < enorm + r0 - 1e-12)
    throw ConfigError("ground-state grid too short to reach the shifted well");

  // polar quadrature: Simpson in r over [0, r0], periodic trapezoid in theta
  const int n_r = 801;
  const int n_th = 240;  // divisible by 6, so all six bond directions sum identically
  const double hr = r0 / (n_r - 1);
  const double hth = 2.0 * kPi / n_th;
  double acc = 0.0;
  for (int i = 0; i < n_r; ++i) {
    const double r = i * hr;
    double wr = (i == 0 || i == n_r - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    wr *= hr / 3.0;
    const double va = std::abs(well.value(r));
    if (va == 0.0) continue;
    const double ur = gs.eval(r);
    double ring = 0.0;
    for (int j = 0; j < n_th; ++j) {
      const double th = j * hth;
      const double shifted = std::sqrt(r * r + 2.0 * r * enorm * std::cos(th) + enorm * enorm);
      ring += gs.eval(shifted);
    }
    acc += wr * va * ur * ring * hth * r;
  }
  const double rho = gs.lambda * gs.lambda * acc;
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw Underflow("rho_lambda underflowed; lambda too large for binary64");
  return rho;
}

double hankel_transform(std::span<const double> r, std::span<const double> f, double xi) {
  const std::size_t n = r.size();
  const double h = r[1] - r[0];
  auto integrand = [&](std::size_t i) {
    return f[i] * std::cyl_bessel_j(0, xi * r[i]) * r[i];
  };
  double acc = 0.0;
  std::size_t last = n - 1;
  if (n % 2 == 0) last = n - 2;  // Simpson needs an even interval count
  acc += integrand(0) + integrand(last);
  for (std::size_t i = 1; i < last; ++i) acc += integrand(i) * (i % 2 == 1 ? 4.0 : 2.0);
  acc *= h / 3.0;
  if (last != n - 1) acc += 0.5 * h * (integrand(n - 2) + integrand(n - 1));
  return 2.0 * kPi * acc;
}

double hankel_transform(const AtomicWell& well, double xi, int n) {
  std::vector<double> r(n + 1), f(n + 1);
  const double h = well.r0() / n;
  for (int i = 0; i <= n; ++i) {
    r[i] = i * h;
    f[i] = well.value(r[i]);
  }
  return hankel_transform(r, f, xi);
}

}  // namespace hexwell
