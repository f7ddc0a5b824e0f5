#include "hexwell/potential.hpp"

#include <cmath>
#include <map>

#include "hexwell/errors.hpp"

namespace hexwell {

namespace {
const complexd kI(0.0, 1.0);
}

FourierPotential::FourierPotential(int cutoff, bool truncated, std::string label,
                                   Vector2d center)
    : cutoff_(cutoff), truncated_(truncated), label_(std::move(label)), center_(center) {
  if (cutoff < 0) throw ConfigError("cutoff must be nonnegative");
  const int w = 2 * cutoff + 1;
  table_.assign(static_cast<std::size_t>(w) * w, complexd(0.0, 0.0));
}

complexd FourierPotential::coeff(int m1, int m2) const {
  if (std::abs(m1) > cutoff_ || std::abs(m2) > cutoff_) {
    if (truncated_)
      throw MissingCoefficient("Fourier coefficient outside stored cutoff");
    return complexd(0.0, 0.0);
  }
  const int w = 2 * cutoff_ + 1;
  return table_[static_cast<std::size_t>(m1 + cutoff_) * w + (m2 + cutoff_)];
}

void FourierPotential::set_coeff(int m1, int m2, complexd v) {
  if (std::abs(m1) > cutoff_ || std::abs(m2) > cutoff_)
    throw MissingCoefficient("index outside stored cutoff");
  const int w = 2 * cutoff_ + 1;
  table_[static_cast<std::size_t>(m1 + cutoff_) * w + (m2 + cutoff_)] = v;
}

double FourierPotential::evaluate(const HoneycombGeometry& geom, const Vector2d& x) const {
  complexd acc(0.0, 0.0);
  for (int m1 = -cutoff_; m1 <= cutoff_; ++m1) {
    for (int m2 = -cutoff_; m2 <= cutoff_; ++m2) {
      const complexd c = coeff(m1, m2);
      if (c == complexd(0.0, 0.0)) continue;
      acc += c * std::exp(kI * geom.dual(m1, m2).dot(x));
    }
  }
  return acc.real();
}

MatrixXd FourierPotential::sample_cell(const HoneycombGeometry& geom, int n) const {
  (void)geom;  // phases depend only on the fractional coordinates
  const int w = 2 * cutoff_ + 1;
  MatrixXcd T(w, w);
  for (int m1 = -cutoff_; m1 <= cutoff_; ++m1)
    for (int m2 = -cutoff_; m2 <= cutoff_; ++m2)
      T(m1 + cutoff_, m2 + cutoff_) = coeff(m1, m2);
  MatrixXcd E(n, w);
  for (int i = 0; i < n; ++i)
    for (int m = -cutoff_; m <= cutoff_; ++m)
      E(i, m + cutoff_) = std::exp(kI * (2.0 * kPi * m * i / static_cast<double>(n)));
  const MatrixXcd S = E * T * E.transpose();
  return S.real();
}

double FourierPotential::hermiticity_defect() const {
  double worst = 0.0;
  for (int m1 = -cutoff_; m1 <= cutoff_; ++m1)
    for (int m2 = -cutoff_; m2 <= cutoff_; ++m2)
      worst = std::max(worst, std::abs(coeff(m1, m2) - std::conj(coeff(-m1, -m2))));
  return worst;
}

double FourierPotential::coeff_power() const {
  double acc = 0.0;
  for (const auto& c : table_) acc += std::norm(c);
  return acc;
}

FourierPotential periodize(const HoneycombGeometry& geom, const AtomicWell& well, int cutoff) {
  FourierPotential V(cutoff, /*truncated=*/true, "periodized " + well.label(), geom.xc);
  const double inv_area = 1.0 / geom.cell_area();

  // V0hat depends on |m.kvec| only; |m.kvec|^2 = (16 pi^2/3)(m1^2 - m1 m2 + m2^2).
  std::map<long, double> radial;
  for (int m1 = -cutoff; m1 <= cutoff; ++m1) {
    for (int m2 = -cutoff; m2 <= cutoff; ++m2) {
      const long q = static_cast<long>(m1) * m1 - static_cast<long>(m1) * m2 +
                     static_cast<long>(m2) * m2;
      auto it = radial.find(q);
      double v0hat;
      if (it == radial.end()) {
        const double xi = geom.dual(m1, m2).norm();
        v0hat = hankel_transform(well, xi);
        radial.emplace(q, v0hat);
      } else {
        v0hat = it->second;
      }
      const Vector2d mk = geom.dual(m1, m2);
      const complexd ph = std::exp(-kI * mk.dot(geom.vA)) + std::exp(-kI * mk.dot(geom.vB));
      V.set_coeff(m1, m2, inv_area * ph * v0hat);
    }
  }
  // Trim to the rotation-closed hexagonal index set m1^2 - m1 m2 + m2^2 <=
  // 3 cutoff^2 / 4, the largest such ball inside the square table; the stored
  // series is then exactly invariant under the 120-degree rotation about xc.
  const long qmax = (3L * cutoff * cutoff) / 4L;
  for (int m1 = -cutoff; m1 <= cutoff; ++m1)
    for (int m2 = -cutoff; m2 <= cutoff; ++m2) {
      const long q = static_cast<long>(m1) * m1 - static_cast<long>(m1) * m2 +
                     static_cast<long>(m2) * m2;
      if (q > qmax) V.set_coeff(m1, m2, complexd(0.0, 0.0));
    }
  return V;
}

FourierPotential trig_potential(const HoneycombGeometry& geom) {
  (void)geom;
  FourierPotential V(1, /*truncated=*/false, "trig");
  const Index2 ms[3] = {{1, 0}, {0, 1}, {1, 1}};
  for (const auto& m : ms) {
    V.set_coeff(m.m1, m.m2, complexd(0.5, 0.0));
    V.set_coeff(-m.m1, -m.m2, complexd(0.5, 0.0));
  }
  return V;
}

FourierPotential pt_breaking_potential(const HoneycombGeometry& geom,
                                       const Vector2d& center) {
  FourierPotential W(1, /*truncated=*/false, "pt-breaking", center);
  // sin(k1.y) + sin(k2.y) - sin((k1+k2).y) with y = x - center; the minus sign
  // on the third harmonic makes the combination 120-degree rotation invariant
  struct Term { Index2 m; double sign; };
  const Term ms[3] = {{{1, 0}, 1.0}, {{0, 1}, 1.0}, {{1, 1}, -1.0}};
  for (const auto& t : ms) {
    const complexd c = t.sign * std::exp(-kI * geom.dual(t.m).dot(center)) / (2.0 * kI);
    W.set_coeff(t.m.m1, t.m.m2, c);
    W.set_coeff(-t.m.m1, -t.m.m2, std::conj(c));
  }
  return W;
}

SymmetryReport check_symmetries(const HoneycombGeometry& geom, const FourierPotential& V,
                                int n, double tol) {
  SymmetryReport rep;
  double scale = 0.0;
  double rot = 0.0, even = 0.0, odd = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vector2d x = (static_cast<double>(i) / n) * geom.v1 +
                         (static_cast<double>(j) / n) * geom.v2;
      const double vx = V.evaluate(geom, x);
      const Vector2d c = V.center();
      const Vector2d xr = c + geom.R120 * (x - c);
      const Vector2d xi = 2.0 * c - x;
      const double vr = V.evaluate(geom, xr);
      const double vi = V.evaluate(geom, xi);
      scale = std::max(scale, std::abs(vx));
      rot = std::max(rot, std::abs(vr - vx));
      even = std::max(even, std::abs(vi - vx));
      odd = std::max(odd, std::abs(vi + vx));
    }
  }
  const double thresh = tol * std::max(1.0, scale);
  rep.rotation_violation = rot;
  rep.even_violation = even;
  rep.odd_violation = odd;
  rep.rotation_ok = rot < thresh;
  if (even < thresh)
    rep.inversion_parity = InversionParity::Even;
  else if (odd < thresh)
    rep.inversion_parity = InversionParity::Odd;
  else
    rep.inversion_parity = InversionParity::None;
  rep.max_violation = std::max(rot, std::min(even, odd));
  return rep;
}

}  // namespace hexwell
