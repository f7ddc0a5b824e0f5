#pragma once

#include "hexwell/lattice.hpp"
#include "hexwell/types.hpp"

namespace hexwell {

// gamma(k) = sum_nu exp(i k . eB_nu), defined for real or complex quasi-momenta.
template <typename Derived>
complexd gamma(const HoneycombGeometry& geom, const Eigen::MatrixBase<Derived>& k) {
  const complexd I(0.0, 1.0);
  const complexd kx(k[0]), ky(k[1]);
  complexd sum(0.0, 0.0);
  for (const Vector2d& e : geom.eB) sum += std::exp(I * (kx * e.x() + ky * e.y()));
  return sum;
}

// Two-band dispersion magnitude |1 + e^{i k.v1} + e^{i k.v2}| = |gamma(k)|.
double wallace(const HoneycombGeometry& geom, const Vector2d& k);

// Nearest-neighbour Bloch Hamiltonian with unit hopping:
//   [[0, -conj(gamma)], [-gamma, 0]], rows/cols ordered (A, B).
struct TBHamiltonian {
  Vector2d k;
  Matrix2cd matrix;
};

TBHamiltonian h_tb(const HoneycombGeometry& geom, const Vector2d& k);

// Coefficient matrix Q of the quadratic form wallace^2(Kstar + kappa) ~ kappa.Q.kappa,
// estimated by central finite differences with step h.  Q -> (3/4) I at a vertex.
Matrix2d wallace_sq_quadratic_form(const HoneycombGeometry& geom, const Vector2d& Kstar,
                                   double h = 1e-4);

}  // namespace hexwell
