#pragma once

#include <vector>

#include "hexwell/bloch.hpp"
#include "hexwell/lattice.hpp"

namespace hexwell {

// Two lowest bands along the dual slice xi in [-1/2, 1/2] -> Kstar + xi KK2.
struct BandSlice {
  EdgeSpec edge;
  Vector2d Kstar;
  std::vector<double> xis;
  std::vector<double> E1, E2;
  double E_D = 0.0;
  double lambda = 0.0;
  // samples where the slice quasi-momentum is equivalent to a zone vertex
  std::vector<std::pair<double, int>> vertex_hits;  // (xi, vertex index)
};

// M must be odd and >= 41 so that xi = 0 is a sample.
BandSlice dual_slice(const BlochProblem& prob, const EdgeSpec& edge, const Vector2d& Kstar,
                     int M);

struct NoFoldResult {
  bool holds = false;
  std::vector<double> crossings;  // interpolated xi of level crossings of E = E_D
};

// The level E = E_D must meet the two slice curves only inside the exclusion
// window |xi| <= exclusion_steps grid steps around the Dirac sample.  Sign
// changes with both endpoints within tol count as tangential touchings.
NoFoldResult nofold_check(const BandSlice& slice, double tol, int exclusion_steps = 2);

}  // namespace hexwell
