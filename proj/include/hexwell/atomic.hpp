#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hexwell/lattice.hpp"
#include "hexwell/types.hpp"

namespace hexwell {

enum class WellKind { SmoothBump, SmoothedCylinder };

// Radial atomic well: -1 <= V0(r) <= 0, compactly supported in r < r0.
// SmoothBump:        V0(r) = -exp(1 - 1/(1 - (r/r0)^2)) for r < r0.
// SmoothedCylinder:  depth -1 inside r0 - smoothing, C-infinity ramp to 0 at r0.
class AtomicWell {
 public:
  static AtomicWell bump(double r0, bool allow_large_r0 = false);
  static AtomicWell smoothed_cylinder(double r0, double smoothing,
                                      bool allow_large_r0 = false);

  double value(double r) const;
  double operator()(double r) const { return value(r); }

  WellKind kind() const { return kind_; }
  double r0() const { return r0_; }
  double smoothing() const { return smoothing_; }
  std::string label() const;

 private:
  AtomicWell(WellKind kind, double r0, double smoothing, bool allow_large_r0);

  WellKind kind_;
  double r0_;
  double smoothing_;  // cylinder ramp width; unused for the bump
};

struct RadialGridSpec {
  int n_r = 2000;
  double Rmax = 0.0;  // <= 0: use r0 + max(5/lambda, 2|eA1|)
};

// Ground state of -Laplace + lambda^2 V0 on R^2, radial reduction on [0, Rmax]
// with regularity at 0 and a Dirichlet wall at Rmax.  u is normalized positive
// with 2 pi Int u^2 r dr = 1.
struct GroundState {
  double lambda = 0.0;
  double E0 = 0.0;       // ground eigenvalue (m = 0)
  double E1_m0 = 0.0;    // second radial eigenvalue, angular momentum 0
  double E0_m1 = 0.0;    // lowest eigenvalue, angular momentum 1
  std::vector<double> radial_grid;
  std::vector<double> u;
  double norm = 1.0;     // L2(R^2) norm after normalization
  double rho = 0.0;      // rho_lambda for this well, NaN if Rmax too small
  WellKind well_kind = WellKind::SmoothBump;
  double well_r0 = 0.0;
  double well_smoothing = 0.0;
  int n_r = 0;

  // log-linear interpolation of u; log-linear extrapolation beyond the grid.
  double eval(double r) const;
};

GroundState ground_state(const AtomicWell& well, double lambda, const RadialGridSpec& grid);

// Bound-state energy of the sharp cylindrical well (depth -1, radius R) from
// the Bessel matching condition, angular momentum m, radial branch >= 1.
double cylinder_well_eigenvalue(double lambda, double R, int m, int branch);

// n-th positive zero of J_m.
double bessel_j_zero(int m, int n);

// Overlap integral lambda^2 Int |V0(y)| p0(y) p0(y + e) dy over the well support,
// by polar quadrature with p0 interpolated log-linearly.  e defaults to eA1.
double rho_lambda(const GroundState& gs, const AtomicWell& well);
double rho_lambda(const GroundState& gs, const AtomicWell& well, const Vector2d& e);

// 2 pi Int f(r) J0(xi r) r dr over the sampled grid (composite Simpson).
double hankel_transform(std::span<const double> r, std::span<const double> f, double xi);

// Same for a callable profile on [0, rmax] with n+1 uniform samples.
double hankel_transform(const AtomicWell& well, double xi, int n = 4000);

// All eigenvalues of the radial operator -u'' - u'/r + (m^2/r^2 + lambda^2 V0) u
// on [0, Rmax], Dirichlet at Rmax; helper exposed for refinement studies.
VectorXd radial_eigenvalues(const AtomicWell& well, double lambda, int m, int n_r,
                            double Rmax);

}  // namespace hexwell
