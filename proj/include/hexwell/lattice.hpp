#pragma once

#include <array>
#include <utility>

#include "hexwell/types.hpp"

namespace hexwell {

// Honeycomb lattice in the unit-length convention |v1| = |v2| = 1.
// The structure is the union of two triangular sublattices with base points
// vA and vB; eA[nu] point from an A-site to its three nearest B-neighbours.
struct HoneycombGeometry {
  Vector2d v1, v2;    // direct basis
  Vector2d k1, k2;    // dual basis, ki . vj = 2 pi delta_ij
  Vector2d vA, vB;    // sublattice base points
  Vector2d xc;        // hexagon center (rotation / inversion center)
  Matrix2d R120;      // clockwise rotation by 2 pi / 3
  Matrix2d R60;       // clockwise rotation by pi / 3
  std::array<Vector2d, 3> eA;  // A -> B nearest-neighbour vectors
  std::array<Vector2d, 3> eB;  // B -> A nearest-neighbour vectors, eB = -eA
  std::array<Vector2d, 6> Kvert;  // Brillouin-zone vertices: K, R K, R^2 K, -K, ...

  Vector2d K() const { return Kvert[0]; }
  Vector2d Kprime() const { return Kvert[3]; }

  // m1 k1 + m2 k2
  Vector2d dual(int m1, int m2) const { return m1 * k1 + m2 * k2; }
  Vector2d dual(const Index2& m) const { return dual(m.m1, m.m2); }
  // m1 v1 + m2 v2
  Vector2d site(int m1, int m2) const { return m1 * v1 + m2 * v2; }
  Vector2d site(const Index2& m) const { return site(m.m1, m.m2); }

  // Fractional dual coordinates f with k = f1 k1 + f2 k2.
  Vector2d frac(const Vector2d& k) const {
    return Vector2d(k.dot(v1) / (2.0 * kPi), k.dot(v2) / (2.0 * kPi));
  }

  double cell_area() const { return std::abs(v1.x() * v2.y() - v1.y() * v2.x()); }

  // Closed-hexagon membership via the six first-shell half planes,
  // k . g <= |g|^2 / 2 + tol for g in {+-k1, +-k2, +-(k1+k2)}.
  bool in_brillouin_zone(const Vector2d& k, double tol = 1e-12) const;
};

HoneycombGeometry build_geometry();

// Canonical representative of k modulo the dual lattice: k = k_red + m1 k1 + m2 k2
// with k_red in the closed Brillouin hexagon.  Boundary ties are broken by the
// key (|m1|, |m2|, m1, m2), smallest first.
std::pair<Vector2d, Index2> reduce_to_bz(const HoneycombGeometry& geom, const Vector2d& k);

// Rational edge R*(a1 v1 + b1 v2) with the conjugate basis used for dual slices.
struct EdgeSpec {
  int a1 = 1, b1 = 0;
  int a2 = 0, b2 = 1;  // a1 b2 - a2 b1 = 1
  Vector2d V1, V2;     // edge direction and transverse lattice vector
  Vector2d KK1, KK2;   // conjugate dual pair, KKl . Vl' = 2 pi delta
};

// Builds the edge for coprime (a1, b1).  The Bezout pair (a2, b2) is chosen
// with |a2| minimal (ties: a2 >= 0, then |b2| minimal).  Throws NotCoprime.
EdgeSpec edge_from_indices(const HoneycombGeometry& geom, int a1, int b1);

}  // namespace hexwell
