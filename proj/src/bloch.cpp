#include "hexwell/bloch.hpp"

#include <algorithm>
#include <cmath>

#include "hexwell/errors.hpp"
#include "hexwell/parallel.hpp"
#include "hexwell/tightbinding.hpp"

namespace hexwell {

namespace {

const complexd kI(0.0, 1.0);
constexpr int kDenseLimit = 3721;  // (2*30+1)^2

// Lanczos with full reorthogonalization and a fixed starting vector; returns
// the lowest n Ritz pairs.  Deterministic given the matrix.
// TODO: switch to a block variant so exactly degenerate pairs (Dirac points)
// are resolved with their multiplicity above the dense threshold.
std::pair<VectorXd, MatrixXcd> lanczos_lowest(const MatrixXcd& H, int n, bool vectors) {
  const Index d = H.rows();
  const int iters = std::min<Index>(d, std::max(768, 24 * n));
  MatrixXcd basis(d, iters);
  VectorXd alpha(iters), beta(iters);
  // deterministic xorshift start avoids symmetry-deficient directions
  VectorXcd v(d);
  std::uint64_t s = 88172645463325252ull;
  for (Index i = 0; i < d; ++i) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    v[i] = complexd(static_cast<double>(s % 65536) / 32768.0 - 1.0, 0.0);
  }
  v.normalize();
  basis.col(0) = v;
  VectorXcd w;
  int m = 0;
  VectorXd prev_ritz;
  for (int j = 0; j < iters; ++j) {
    w = H * basis.col(j);
    alpha[j] = w.dot(basis.col(j)).real();
    w -= alpha[j] * basis.col(j);
    if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
    // full reorthogonalization, twice
    for (int pass = 0; pass < 2; ++pass)
      w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).adjoint() * w);
    const double nb = w.norm();
    m = j + 1;
    if (nb < 1e-13 || j + 1 == iters) {
      beta[j] = 0.0;
      break;
    }
    beta[j] = nb;
    basis.col(j + 1) = w / nb;
    // every 32 steps, stop once the lowest n Ritz values have settled
    if (m > std::max(2 * n + 2, 32) && m % 32 == 0) {
      Eigen::SelfAdjointEigenSolver<MatrixXd> chk;
      chk.computeFromTridiagonal(alpha.head(m), beta.head(m - 1), Eigen::EigenvaluesOnly);
      VectorXd ritz = chk.eigenvalues().head(std::min(n, m));
      if (prev_ritz.size() == ritz.size() &&
          (ritz - prev_ritz).cwiseAbs().maxCoeff() <
              1e-12 * std::max(1.0, ritz.cwiseAbs().maxCoeff()))
        break;
      prev_ritz = ritz;
    }
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es;
  es.computeFromTridiagonal(alpha.head(m), beta.head(m - 1),
                            vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  n = std::min<int>(n, m);
  VectorXd vals = es.eigenvalues().head(n);
  if (!vectors) return {vals, MatrixXcd()};
  MatrixXcd ritz = basis.leftCols(m) * es.eigenvectors().leftCols(n);
  return {vals, ritz};
}

std::pair<VectorXd, MatrixXcd> solve_lowest(const MatrixXcd& H, int n, bool vectors) {
  if (H.rows() <= kDenseLimit) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(
        H, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    VectorXd vals = es.eigenvalues().head(n);
    if (!vectors) return {vals, MatrixXcd()};
    return {vals, es.eigenvectors().leftCols(n)};
  }
  return lanczos_lowest(H, n, vectors);
}

}  // namespace

BlochProblem make_problem(HoneycombGeometry geom, FourierPotential V, double lambda, int N) {
  if (N < 4) throw ConfigError("Bloch truncation N must be at least 4");
  if (V.truncated() && V.cutoff() < 2 * N)
    throw MissingCoefficient("potential cutoff below 2N; raise the periodization cutoff");
  BlochProblem p{std::move(geom), std::move(V), lambda, N, 0.0, std::nullopt};
  return p;
}

MatrixXcd assemble_hk(const BlochProblem& prob, const Vector2d& k) {
  const int d = prob.basis_size();
  MatrixXcd H(d, d);
  const double lam2 = prob.lambda * prob.lambda;
  for (int a = 0; a < d; ++a) {
    const Index2 ma = prob.basis_index(a);
    for (int b = 0; b < d; ++b) {
      const Index2 mb = prob.basis_index(b);
      complexd val = lam2 * prob.V.coeff(ma.m1 - mb.m1, ma.m2 - mb.m2);
      if (prob.W && prob.eta != 0.0)
        val += prob.eta * prob.W->coeff(ma.m1 - mb.m1, ma.m2 - mb.m2);
      H(a, b) = val;
    }
    H(a, a) += (k + prob.geom.dual(ma)).squaredNorm();
  }
  return H;
}

VectorXd lowest_eigenvalues(const MatrixXcd& H, int n) {
  return solve_lowest(H, n, false).first;
}

std::pair<VectorXd, MatrixXcd> lowest_eigenpairs(const MatrixXcd& H, int n) {
  return solve_lowest(H, n, true);
}

BandStructure band_path(const BlochProblem& prob, const std::vector<Vector2d>& kpoints,
                        int n_bands) {
  if (n_bands > prob.basis_size()) throw ConfigError("n_bands exceeds basis size");
  BandStructure bs;
  bs.kpoints = kpoints;
  bs.kreduced.resize(kpoints.size());
  bs.n_bands = n_bands;
  bs.lambda = prob.lambda;
  bs.N = prob.N;
  bs.energies.resize(static_cast<Index>(kpoints.size()), n_bands);
  parallel_for(kpoints.size(), [&](std::size_t i) {
    const auto [kred, m] = reduce_to_bz(prob.geom, kpoints[i]);
    bs.kreduced[i] = kred;
    const MatrixXcd H = assemble_hk(prob, kred);
    bs.energies.row(static_cast<Index>(i)) = lowest_eigenvalues(H, n_bands).transpose();
  });
  return bs;
}

VectorXcd apply_rotation(const BlochProblem& prob, const Vector2d& Kstar,
                         const VectorXcd& coeffs, double* leak) {
  const HoneycombGeometry& g = prob.geom;
  const Vector2d center = prob.V.center();  // rotation center of the potential
  // R Kstar = Kstar + s . kvec for a vertex; integer index map of R on the dual.
  const Vector2d diff = g.R120 * Kstar - Kstar;
  const Vector2d sf(diff.dot(g.v1) / (2.0 * kPi), diff.dot(g.v2) / (2.0 * kPi));
  const int s1 = static_cast<int>(std::lround(sf.x()));
  const int s2 = static_cast<int>(std::lround(sf.y()));
  if ((sf - Vector2d(s1, s2)).norm() > 1e-9)
    throw ConfigError("Kstar is not a Brillouin-zone vertex");
  // columns of the dual index map: R k1, R k2 in the (k1, k2) basis
  auto dual_map = [&](const Vector2d& kv) {
    const Vector2d im = g.R120 * kv;
    const Vector2d f(im.dot(g.v1) / (2.0 * kPi), im.dot(g.v2) / (2.0 * kPi));
    return Index2{static_cast<int>(std::lround(f.x())), static_cast<int>(std::lround(f.y()))};
  };
  const Index2 col1 = dual_map(g.k1), col2 = dual_map(g.k2);

  VectorXcd out = VectorXcd::Zero(coeffs.size());
  double lost = 0.0;
  for (int a = 0; a < prob.basis_size(); ++a) {
    if (coeffs[a] == complexd(0.0, 0.0)) continue;
    const Index2 m = prob.basis_index(a);
    const Index2 mp{col1.m1 * m.m1 + col2.m1 * m.m2 + s1,
                    col1.m2 * m.m1 + col2.m2 * m.m2 + s2};
    if (!prob.in_basis(mp)) {
      lost += std::norm(coeffs[a]);
      continue;
    }
    const Vector2d dk = g.dual(m) - g.dual(mp);
    out[prob.flat_index(mp)] += std::exp(kI * dk.dot(center)) * coeffs[a];
  }
  if (leak) *leak = std::sqrt(lost);
  return out;
}

DiracReport dirac_point(const BlochProblem& prob, const Vector2d& Kstar,
                        std::optional<double> rho, double degeneracy_tol, double fd_step,
                        double leak_tol) {
  if (degeneracy_tol <= 0.0) degeneracy_tol = 1e-5 * prob.lambda * prob.lambda;
  DiracReport rep;
  rep.Kstar = Kstar;

  const MatrixXcd H = assemble_hk(prob, Kstar);
  auto [vals, vecs] = lowest_eigenpairs(H, 2);
  rep.E_D = 0.5 * (vals[0] + vals[1]);
  rep.split = std::abs(vals[1] - vals[0]);
  if (rep.split > degeneracy_tol)
    throw NotDegenerate("two lowest eigenvalues at Kstar exceed the degeneracy tolerance");

  // rotation matrix on the degenerate 2-space
  double leak0 = 0.0, leak1 = 0.0;
  const VectorXcd r0 = apply_rotation(prob, Kstar, vecs.col(0), &leak0);
  const VectorXcd r1 = apply_rotation(prob, Kstar, vecs.col(1), &leak1);
  rep.rotation_leak = std::max(leak0, leak1);
  if (rep.rotation_leak > leak_tol)
    throw RotationLeak("rotation permutation drops too much boundary mass; raise N");
  Matrix2cd M;
  M << vecs.col(0).dot(r0), vecs.col(0).dot(r1), vecs.col(1).dot(r0), vecs.col(1).dot(r1);
  Eigen::ComplexEigenSolver<Matrix2cd> ces(M);
  const complexd tau = std::exp(kI * 2.0 * kPi / 3.0);
  const complexd e0 = ces.eigenvalues()[0];
  const int itau = (std::abs(e0 - tau) <= std::abs(ces.eigenvalues()[1] - tau)) ? 0 : 1;
  rep.rot_eig_tau = ces.eigenvalues()[itau];
  rep.rot_eig_taubar = ces.eigenvalues()[1 - itau];
  rep.tau_index = itau;
  rep.phi1 = (vecs * ces.eigenvectors().col(itau)).normalized();
  rep.phi2 = (vecs * ces.eigenvectors().col(1 - itau)).normalized();

  // conical slope of (E2 - E1)/2 along two orthogonal directions
  const double h = fd_step;
  auto half_gap = [&](const Vector2d& k) {
    const VectorXd e = lowest_eigenvalues(assemble_hk(prob, k), 2);
    return 0.5 * (e[1] - e[0]);
  };
  double slopes[2];
  const Vector2d dirs[2] = {Vector2d(1.0, 0.0), Vector2d(0.0, 1.0)};
  for (int i = 0; i < 2; ++i)
    slopes[i] = (half_gap(Kstar + h * dirs[i]) + half_gap(Kstar - h * dirs[i])) / (2.0 * h);
  rep.vF = 0.5 * (slopes[0] + slopes[1]);
  rep.vF_anisotropy = std::abs(slopes[0] - slopes[1]) / std::max(rep.vF, 1e-300);
  rep.vF_ratio = rho ? rep.vF / ((std::sqrt(3.0) / 2.0) * *rho)
                     : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

RescaledDispersion rescaled_dispersion(const BlochProblem& prob, const GroundState& gs,
                                       const std::vector<Vector2d>& kset) {
  const DiracReport dp = dirac_point(prob, prob.geom.K(), gs.rho);
  RescaledDispersion out;
  out.E_D = dp.E_D;
  out.rho = gs.rho;
  out.rows.resize(kset.size());
  const BandStructure bs = band_path(prob, kset, 2);
  for (std::size_t i = 0; i < kset.size(); ++i) {
    RescaledDispersionRow row;
    row.k = kset[i];
    row.mu_minus = (bs.energies(static_cast<Index>(i), 0) - dp.E_D) / gs.rho;
    row.mu_plus = (bs.energies(static_cast<Index>(i), 1) - dp.E_D) / gs.rho;
    row.wtb = wallace(prob.geom, kset[i]);
    row.dev = std::max(std::abs(row.mu_minus + row.wtb), std::abs(row.mu_plus - row.wtb));
    out.rows[i] = row;
    out.sup_dev = std::max(out.sup_dev, row.dev);
  }
  return out;
}

FermiVelocity fermi_velocity(const BlochProblem& prob, const GroundState& gs,
                             const Vector2d& Kstar) {
  const DiracReport dp = dirac_point(prob, Kstar, gs.rho);
  return {dp.vF, dp.vF_ratio, dp.vF_anisotropy};
}

VectorXcd apply_potential(const BlochProblem& prob, const FourierPotential& V,
                          const VectorXcd& coeffs) {
  const int d = prob.basis_size();
  VectorXcd out = VectorXcd::Zero(d);
  for (int a = 0; a < d; ++a) {
    const Index2 ma = prob.basis_index(a);
    complexd acc(0.0, 0.0);
    for (int b = 0; b < d; ++b) {
      const Index2 mb = prob.basis_index(b);
      const int d1 = ma.m1 - mb.m1, d2 = ma.m2 - mb.m2;
      if (std::abs(d1) > V.cutoff() || std::abs(d2) > V.cutoff()) {
        if (V.truncated()) throw MissingCoefficient("potential cutoff too small");
        continue;
      }
      acc += V.coeff(d1, d2) * coeffs[b];
    }
    out[a] = acc;
  }
  return out;
}

std::vector<GapRow> gap_vs_eta(const BlochProblem& prob, const Vector2d& Kstar,
                               const std::vector<double>& etas) {
  if (!prob.W) throw ConfigError("gap_vs_eta needs a perturbation potential W");
  BlochProblem base = prob;
  base.eta = 0.0;
  const DiracReport dp = dirac_point(base, Kstar);
  const VectorXcd wphi = apply_potential(base, *prob.W, dp.phi1);
  const double theta = dp.phi1.dot(wphi).real();

  std::vector<GapRow> rows(etas.size());
  parallel_for(etas.size(), [&](std::size_t i) {
    BlochProblem p = prob;
    p.eta = etas[i];
    const VectorXd e = lowest_eigenvalues(assemble_hk(p, Kstar), 2);
    rows[i] =
        GapRow{etas[i], e[1] - e[0], theta, 2.0 * std::abs(theta) * std::abs(etas[i])};
  });
  return rows;
}

ResolventResult resolvent_distance(const BlochProblem& prob, const GroundState& gs,
                                   const Vector2d& k, complexd z) {
  if (z.imag() == 0.0) throw ConfigError("z must be off the real axis");
  const HoneycombGeometry& g = prob.geom;
  const int d = prob.basis_size();

  // coefficient vectors of the sublattice mode sums (Poisson summation):
  // c_m(I) = (1/|D|) p0hat(k + m.kvec) exp(-i m.kvec . v_I)
  const double inv_area = 1.0 / g.cell_area();
  VectorXcd cA(d), cB(d);
  std::span<const double> rgrid(gs.radial_grid);
  std::span<const double> usamp(gs.u);
  for (int a = 0; a < d; ++a) {
    const Vector2d mk = g.dual(prob.basis_index(a));
    const double p0hat = hankel_transform(rgrid, usamp, (k + mk).norm());
    cA[a] = inv_area * p0hat * std::exp(-kI * mk.dot(g.vA));
    cB[a] = inv_area * p0hat * std::exp(-kI * mk.dot(g.vB));
  }
  ResolventResult res;
  res.mode_overlap = std::abs(cA.normalized().dot(cB.normalized()));
  if (res.mode_overlap >= 0.5)
    throw IllConditioned("sublattice modes overlap too strongly; lambda too small");

  // symmetric (Loewdin) orthonormalization of [cA cB]
  MatrixXcd U(d, 2);
  U.col(0) = cA;
  U.col(1) = cB;
  const Matrix2cd S = U.adjoint() * U;
  Eigen::SelfAdjointEigenSolver<Matrix2cd> se(S);
  const Matrix2cd Sinvhalf = se.eigenvectors() *
                             se.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                             se.eigenvectors().adjoint();
  const MatrixXcd J = U * Sinvhalf;

  const DiracReport dp = dirac_point(prob, g.K(), gs.rho);
  MatrixXcd Hs = assemble_hk(prob, k);
  Hs.diagonal().array() -= dp.E_D;
  Hs /= gs.rho;
  Hs.diagonal().array() -= z;
  const MatrixXcd R1 = Hs.partialPivLu().solve(MatrixXcd::Identity(d, d));

  Matrix2cd htb = h_tb(g, k).matrix;
  htb(0, 0) -= z;
  htb(1, 1) -= z;
  const MatrixXcd R2 = J * htb.inverse() * J.adjoint();

  const MatrixXcd D = R1 - R2;
  // largest singular value by power iteration on D^* D (deterministic start)
  VectorXcd v = VectorXcd::Constant(d, complexd(1.0, 0.0)).normalized();
  double sigma2 = 0.0;
  for (int it = 0; it < 400; ++it) {
    VectorXcd w = D.adjoint() * (D * v);
    const double nw = w.norm();
    if (nw == 0.0) break;
    w /= nw;
    const double change = (w - v).norm();
    v = w;
    sigma2 = nw;
    if (change < 1e-12 && it > 8) break;
  }
  res.distance = std::sqrt(sigma2);
  return res;
}

}  // namespace hexwell
