#include "hexwell/edges.hpp"

#include <cmath>

#include "hexwell/errors.hpp"

namespace hexwell {

BandSlice dual_slice(const BlochProblem& prob, const EdgeSpec& edge, const Vector2d& Kstar,
                     int M) {
  if (M < 41 || M % 2 == 0) throw ConfigError("slice sample count must be odd and >= 41");
  BandSlice s;
  s.edge = edge;
  s.Kstar = Kstar;
  s.lambda = prob.lambda;
  s.xis.resize(M);
  std::vector<Vector2d> ks(M);
  for (int i = 0; i < M; ++i) {
    s.xis[i] = -0.5 + static_cast<double>(i) / (M - 1);
    ks[i] = Kstar + s.xis[i] * edge.KK2;
  }
  const BandStructure bs = band_path(prob, ks, 2);
  s.E1.resize(M);
  s.E2.resize(M);
  for (int i = 0; i < M; ++i) {
    s.E1[i] = bs.energies(i, 0);
    s.E2[i] = bs.energies(i, 1);
    for (int vtx = 0; vtx < 6; ++vtx) {
      const auto [red, m] = reduce_to_bz(prob.geom, ks[i] - prob.geom.Kvert[vtx]);
      if (red.norm() < 1e-9) s.vertex_hits.emplace_back(s.xis[i], vtx);
    }
  }
  const int mid = (M - 1) / 2;
  s.E_D = 0.5 * (s.E1[mid] + s.E2[mid]);
  return s;
}

NoFoldResult nofold_check(const BandSlice& slice, double tol, int exclusion_steps) {
  NoFoldResult res;
  const int M = static_cast<int>(slice.xis.size());
  const double step = slice.xis[1] - slice.xis[0];
  const double excl = exclusion_steps * step * (1.0 + 1e-12);
  for (const auto* band : {&slice.E1, &slice.E2}) {
    for (int i = 0; i + 1 < M; ++i) {
      if (std::abs(slice.xis[i]) <= excl || std::abs(slice.xis[i + 1]) <= excl) continue;
      const double g0 = (*band)[i] - slice.E_D;
      const double g1 = (*band)[i + 1] - slice.E_D;
      if (g0 * g1 >= 0.0) continue;
      if (std::abs(g0) <= tol && std::abs(g1) <= tol) continue;  // tangential touch
      res.crossings.push_back(slice.xis[i] - g0 * step / (g1 - g0));
    }
  }
  std::sort(res.crossings.begin(), res.crossings.end());
  res.holds = res.crossings.empty();
  return res;
}

}  // namespace hexwell
