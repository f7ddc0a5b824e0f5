#pragma once

#include <string>
#include <vector>

#include "hexwell/atomic.hpp"
#include "hexwell/lattice.hpp"
#include "hexwell/types.hpp"

namespace hexwell {

// Lattice Fourier series V(x) = sum_m vhat(m) exp(i (m1 k1 + m2 k2) . x).
// Coefficients are stored for |m|_inf <= cutoff.  For a truncated series the
// remaining coefficients are unknown and lookups outside the table throw
// MissingCoefficient; for an exact trigonometric polynomial they are zero.
class FourierPotential {
 public:
  FourierPotential(int cutoff, bool truncated, std::string label,
                   Vector2d center = Vector2d::Zero());

  complexd coeff(int m1, int m2) const;
  complexd coeff(const Index2& m) const { return coeff(m.m1, m.m2); }
  void set_coeff(int m1, int m2, complexd v);

  int cutoff() const { return cutoff_; }
  bool truncated() const { return truncated_; }
  const std::string& label() const { return label_; }
  // rotation / inversion center of the potential (hexagon center for the
  // periodized wells, the origin for the trigonometric family)
  const Vector2d& center() const { return center_; }

  // Direct evaluation of the series at x (real part; imaginary part is
  // rounding noise for Hermitian tables).
  double evaluate(const HoneycombGeometry& geom, const Vector2d& x) const;

  // n x n samples on the fundamental cell x = (i/n) v1 + (j/n) v2 via the
  // separable phase factorization.
  MatrixXd sample_cell(const HoneycombGeometry& geom, int n) const;

  // Hermiticity defect max |vhat(-m) - conj(vhat(m))|.
  double hermiticity_defect() const;

  // Sum of |vhat(m)|^2 (the cell mean of V^2, by Parseval).
  double coeff_power() const;

  const std::vector<complexd>& table() const { return table_; }

 private:
  int cutoff_;
  bool truncated_;
  std::string label_;
  Vector2d center_;
  std::vector<complexd> table_;  // dense (2c+1)^2, row-major in (m1, m2)
};

// Honeycomb periodization of an atomic well:
//   vhat(m) = (1/|D|) (e^{-i m.kvec.vA} + e^{-i m.kvec.vB}) V0hat(|m.kvec|),
// with V0hat the radial (Hankel) transform and |D| = sqrt(3)/2.
FourierPotential periodize(const HoneycombGeometry& geom, const AtomicWell& well, int cutoff);

// V(x) = cos(k1.x) + cos(k2.x) + cos((k1+k2).x); coefficients 1/2 on the six
// first-shell indices.  Even about xc and 120-degree rotation invariant.
FourierPotential trig_potential(const HoneycombGeometry& geom);

// W(x) = sin(k1.(x-c)) + sin(k2.(x-c)) + sin((k1+k2).(x-c)); odd about the
// center c, which must coincide with the inversion center of the potential it
// perturbs (the origin for the trigonometric family).
FourierPotential pt_breaking_potential(const HoneycombGeometry& geom,
                                       const Vector2d& center = Vector2d::Zero());

enum class InversionParity { Even, Odd, None };

struct SymmetryReport {
  bool rotation_ok = false;
  InversionParity inversion_parity = InversionParity::None;
  double max_violation = 0.0;  // worst of the rotation / winning-parity defects
  double rotation_violation = 0.0;
  double even_violation = 0.0;
  double odd_violation = 0.0;
};

// Samples V on an n x n fundamental-cell grid and reports sup-norm violations
// of the 120-degree rotation and of even/odd inversion about V's center.
SymmetryReport check_symmetries(const HoneycombGeometry& geom, const FourierPotential& V,
                                int n = 128, double tol = 1e-8);

}  // namespace hexwell
