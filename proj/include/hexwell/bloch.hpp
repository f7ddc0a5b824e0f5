#pragma once

#include <optional>
#include <vector>

#include "hexwell/atomic.hpp"
#include "hexwell/lattice.hpp"
#include "hexwell/potential.hpp"
#include "hexwell/types.hpp"

namespace hexwell {

// Truncated plane-wave problem for H(k) = -(grad + ik)^2 + lambda^2 V (+ eta W)
// on the basis exp(i m.kvec.x), |m|_inf <= N.
struct BlochProblem {
  HoneycombGeometry geom;
  FourierPotential V;
  double lambda = 1.0;
  int N = 8;
  double eta = 0.0;
  std::optional<FourierPotential> W;

  int basis_size() const { return (2 * N + 1) * (2 * N + 1); }
  Index2 basis_index(int a) const {
    const int w = 2 * N + 1;
    return {a / w - N, a % w - N};
  }
  int flat_index(const Index2& m) const {
    const int w = 2 * N + 1;
    return (m.m1 + N) * w + (m.m2 + N);
  }
  bool in_basis(const Index2& m) const {
    return std::abs(m.m1) <= N && std::abs(m.m2) <= N;
  }
};

BlochProblem make_problem(HoneycombGeometry geom, FourierPotential V, double lambda, int N);

// Dense Hermitian matrix of H(k) on the truncated basis; k is used as given.
MatrixXcd assemble_hk(const BlochProblem& prob, const Vector2d& k);

// Lowest n eigenvalues (ascending).  Dense solve up to basis size 3721,
// Lanczos with full reorthogonalization above.
VectorXd lowest_eigenvalues(const MatrixXcd& H, int n);
// Same, also returning the eigenvectors as columns.
std::pair<VectorXd, MatrixXcd> lowest_eigenpairs(const MatrixXcd& H, int n);

struct BandStructure {
  std::vector<Vector2d> kpoints;      // as requested
  std::vector<Vector2d> kreduced;     // Brillouin-zone representatives used
  MatrixXd energies;                  // kpoints x n_bands, ascending rows
  int n_bands = 0;
  double lambda = 0.0;
  int N = 0;
};

// Lowest n_bands eigenvalues per k; each k is reduced to the Brillouin zone
// before assembly.  The k-loop runs in parallel.
BandStructure band_path(const BlochProblem& prob, const std::vector<Vector2d>& kpoints,
                        int n_bands);

struct DiracReport {
  Vector2d Kstar;
  double E_D = 0.0;        // mean of the two lowest eigenvalues at Kstar
  double split = 0.0;      // |E2 - E1| at Kstar
  double vF = 0.0;         // conical slope from symmetric finite differences
  double vF_ratio = 0.0;   // vF / ((sqrt(3)/2) rho_lambda); NaN without rho
  double vF_anisotropy = 0.0;  // relative spread of the two directional slopes
  int tau_index = 0;       // which of (Phi1, Phi2) carries rotation eigenvalue tau
  complexd rot_eig_tau;    // measured rotation eigenvalues of the degenerate pair
  complexd rot_eig_taubar;
  double rotation_leak = 0.0;  // mass dropped by the rotation permutation
  VectorXcd phi1, phi2;    // coefficient vectors: phi1 in the tau eigenspace
};

// Degeneracy inspector at a vertex; tol defaults to 1e-5 lambda^2.
// rho, when known, fixes the Fermi-velocity normalization.
DiracReport dirac_point(const BlochProblem& prob, const Vector2d& Kstar,
                        std::optional<double> rho = std::nullopt,
                        double degeneracy_tol = -1.0, double fd_step = 1e-3,
                        double leak_tol = 1e-3);

// Action of the 120-degree rotation about xc on a coefficient vector of the
// Kstar-pseudo-periodic problem.  Indices rotated out of the basis are
// dropped; their squared mass is accumulated in *leak.
VectorXcd apply_rotation(const BlochProblem& prob, const Vector2d& Kstar,
                         const VectorXcd& coeffs, double* leak);

struct RescaledDispersionRow {
  Vector2d k;
  double mu_minus = 0.0;
  double mu_plus = 0.0;
  double wtb = 0.0;
  double dev = 0.0;
};

struct RescaledDispersion {
  std::vector<RescaledDispersionRow> rows;
  double E_D = 0.0;
  double rho = 0.0;
  double sup_dev = 0.0;
};

// mu_pm(k) = (E_pm(k) - E_D)/rho against the two-band dispersion +-wallace(k).
RescaledDispersion rescaled_dispersion(const BlochProblem& prob, const GroundState& gs,
                                       const std::vector<Vector2d>& kset);

struct FermiVelocity {
  double vF = 0.0;
  double ratio = 0.0;
  double anisotropy = 0.0;
};

FermiVelocity fermi_velocity(const BlochProblem& prob, const GroundState& gs,
                             const Vector2d& Kstar);

struct GapRow {
  double eta = 0.0;
  double gap = 0.0;
  double theta_sharp = 0.0;
  double predicted_gap = 0.0;
};

// Gap at Kstar versus perturbation strength; theta_sharp = <Phi1, W Phi1> from
// the unperturbed tau eigenvector, predicted_gap = 2 |theta_sharp| eta.
std::vector<GapRow> gap_vs_eta(const BlochProblem& prob, const Vector2d& Kstar,
                               const std::vector<double>& etas);

struct ResolventResult {
  double distance = 0.0;    // operator norm of the resolvent difference
  double mode_overlap = 0.0;  // |<P_A, P_B>| of the normalized mode vectors
};

// Operator-norm distance between ((H(k) - E_D)/rho - z)^{-1} and the
// compression J (H_TB(k) - z)^{-1} J* onto the approximate Wannier pair.
ResolventResult resolvent_distance(const BlochProblem& prob, const GroundState& gs,
                                   const Vector2d& k, complexd z);

// Multiplication operator of a Fourier table applied to a coefficient vector.
VectorXcd apply_potential(const BlochProblem& prob, const FourierPotential& V,
                          const VectorXcd& coeffs);

}  // namespace hexwell
