#include "hexwell/lattice.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "hexwell/errors.hpp"

namespace hexwell {

HoneycombGeometry build_geometry() {
  HoneycombGeometry g;
  const double s3 = std::sqrt(3.0);
  g.v1 << s3 / 2.0, 0.5;
  g.v2 << s3 / 2.0, -0.5;
  g.k1 = 2.0 * kPi * Vector2d(1.0 / s3, 1.0);
  g.k2 = 2.0 * kPi * Vector2d(1.0 / s3, -1.0);
  g.vA << 0.0, 0.0;
  g.vB << 1.0 / s3, 0.0;
  g.xc << 0.5 / s3, -0.5;
  g.R120 << -0.5, s3 / 2.0, -s3 / 2.0, -0.5;
  g.R60 << 0.5, s3 / 2.0, -s3 / 2.0, 0.5;
  g.eA[0] << 1.0 / s3, 0.0;
  for (int nu = 1; nu < 3; ++nu) g.eA[nu] = g.R120 * g.eA[nu - 1];
  for (int nu = 0; nu < 3; ++nu) g.eB[nu] = -g.eA[nu];
  const Vector2d K(0.0, 4.0 * kPi / 3.0);
  g.Kvert[0] = K;
  g.Kvert[1] = g.R120 * K;
  g.Kvert[2] = g.R120 * g.Kvert[1];
  for (int i = 0; i < 3; ++i) g.Kvert[3 + i] = -g.Kvert[i];
  return g;
}

bool HoneycombGeometry::in_brillouin_zone(const Vector2d& k, double tol) const {
  const Vector2d shell[3] = {k1, k2, k1 + k2};
  for (const Vector2d& gv : shell) {
    const double half = 0.5 * gv.squaredNorm();
    if (std::abs(k.dot(gv)) > half + tol * std::max(1.0, half)) return false;
  }
  return true;
}

std::pair<Vector2d, Index2> reduce_to_bz(const HoneycombGeometry& geom, const Vector2d& k) {
  const Vector2d f = geom.frac(k);
  const int c1 = static_cast<int>(std::lround(f.x()));
  const int c2 = static_cast<int>(std::lround(f.y()));

  bool found = false;
  Index2 best;
  Vector2d best_red = Vector2d::Zero();
  auto key_less = [](const Index2& a, const Index2& b) {
    const int aa1 = std::abs(a.m1), ab1 = std::abs(b.m1);
    if (aa1 != ab1) return aa1 < ab1;
    const int aa2 = std::abs(a.m2), ab2 = std::abs(b.m2);
    if (aa2 != ab2) return aa2 < ab2;
    if (a.m1 != b.m1) return a.m1 < b.m1;
    return a.m2 < b.m2;
  };
  for (int d1 = -2; d1 <= 2; ++d1) {
    for (int d2 = -2; d2 <= 2; ++d2) {
      const Index2 m{c1 + d1, c2 + d2};
      const Vector2d red = k - geom.dual(m);
      if (!geom.in_brillouin_zone(red)) continue;
      if (!found || key_less(m, best)) {
        found = true;
        best = m;
        best_red = red;
      }
    }
  }
  // The +-2 window around the rounded fractional coordinates always contains
  // a representative of the closed hexagon.
  return {best_red, best};
}

EdgeSpec edge_from_indices(const HoneycombGeometry& geom, int a1, int b1) {
  if (a1 == 0 && b1 == 0) throw NotCoprime("edge indices (0,0)");
  if (std::gcd(std::abs(a1), std::abs(b1)) != 1)
    throw NotCoprime("edge indices must be coprime");

  // Particular Bezout solution of a1*b2 - a2*b1 = 1 via extended Euclid on
  // a1*s + b1*t = 1 with (a2, b2) = (-t, s).
  long long s = 0, t = 0;
  {
    long long old_r = a1, r = b1;
    long long old_s = 1, ss = 0;
    long long old_t = 0, tt = 1;
    while (r != 0) {
      long long q = old_r / r;
      std::swap(old_r -= q * r, r);
      std::swap(old_s -= q * ss, ss);
      std::swap(old_t -= q * tt, tt);
    }
    if (old_r == 1) {
      s = old_s;
      t = old_t;
    } else {  // old_r == -1
      s = -old_s;
      t = -old_t;
    }
  }
  long long a2 = -t, b2 = s;

  // Canonical representative in the family (a2 + u a1, b2 + u b1).
  auto better = [&](long long na2, long long nb2, long long oa2, long long ob2) {
    if (std::llabs(na2) != std::llabs(oa2)) return std::llabs(na2) < std::llabs(oa2);
    if ((na2 >= 0) != (oa2 >= 0)) return na2 >= 0;
    return std::llabs(nb2) < std::llabs(ob2);
  };
  for (int pass = 0; pass < 4; ++pass) {
    for (long long u : {-1LL, 1LL}) {
      if (better(a2 + u * a1, b2 + u * b1, a2, b2)) {
        a2 += u * a1;
        b2 += u * b1;
      }
    }
  }

  EdgeSpec e;
  e.a1 = a1;
  e.b1 = b1;
  e.a2 = static_cast<int>(a2);
  e.b2 = static_cast<int>(b2);
  e.V1 = geom.site(e.a1, e.b1);
  e.V2 = geom.site(e.a2, e.b2);
  e.KK1 = e.b2 * geom.k1 - e.a2 * geom.k2;
  e.KK2 = -e.b1 * geom.k1 + e.a1 * geom.k2;
  return e;
}

}  // namespace hexwell
