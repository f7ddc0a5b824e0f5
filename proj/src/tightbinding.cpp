#include "hexwell/tightbinding.hpp"

#include <cmath>

namespace hexwell {

namespace {
const complexd kI(0.0, 1.0);
}

double wallace(const HoneycombGeometry& geom, const Vector2d& k) {
  const complexd w = 1.0 + std::exp(kI * k.dot(geom.v1)) + std::exp(kI * k.dot(geom.v2));
  return std::abs(w);
}

TBHamiltonian h_tb(const HoneycombGeometry& geom, const Vector2d& k) {
  TBHamiltonian h;
  h.k = k;
  const complexd g = gamma(geom, k);
  h.matrix << complexd(0.0, 0.0), -std::conj(g), -g, complexd(0.0, 0.0);
  return h;
}

Matrix2d wallace_sq_quadratic_form(const HoneycombGeometry& geom, const Vector2d& Kstar,
                                   double h) {
  auto f = [&](double x, double y) {
    const double w = wallace(geom, Kstar + Vector2d(x, y));
    return w * w;
  };
  const double f0 = f(0.0, 0.0);
  Matrix2d Q;
  Q(0, 0) = (f(h, 0.0) + f(-h, 0.0) - 2.0 * f0) / (2.0 * h * h);
  Q(1, 1) = (f(0.0, h) + f(0.0, -h) - 2.0 * f0) / (2.0 * h * h);
  const double fxy = (f(h, h) + f(-h, -h) - f(h, -h) - f(-h, h)) / (4.0 * h * h);
  Q(0, 1) = Q(1, 0) = 0.5 * fxy;
  return Q;
}

}  // namespace hexwell
