#include "hexwell/geomlemma.hpp"

#include <cmath>
#include <limits>

#include "hexwell/errors.hpp"
#include "hexwell/parallel.hpp"

namespace hexwell {

namespace {

template <typename Real>
struct Pt {
  Real x, y;
};

template <typename Real>
Real dist(const Pt<Real>& a, const Pt<Real>& b) {
  const Real dx = a.x - b.x, dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

template <typename Real>
struct Workspace {
  std::vector<Pt<Real>> grid;
  std::vector<std::array<Pt<Real>, 6>> rot;  // clockwise 60-degree orbit per point
  Real e_norm, slack, delta;
  Pt<Real> e;                                // (|eA1|, 0)
  Pt<Real> v1, v2;

  Pt<Real> site(int m1, int m2) const {
    return {m1 * v1.x + m2 * v2.x, m1 * v1.y + m2 * v2.y};
  }
};

// clockwise rotation by l * 60 degrees
template <typename Real>
Pt<Real> rotate_cw(const Pt<Real>& p, int l) {
  const Real half = Real(1) / Real(2);
  const Real s3h = std::sqrt(Real(3)) / Real(2);
  static const Real cs[6] = {1, half, -half, -1, -half, half};
  static const Real sn[6] = {0, -s3h, -s3h, 0, s3h, s3h};
  return {cs[l] * p.x - sn[l] * p.y, sn[l] * p.x + cs[l] * p.y};
}

template <typename Real>
Workspace<Real> make_workspace(const LemmaConfig& cfg) {
  Workspace<Real> w;
  const Real delta = static_cast<Real>(cfg.delta);
  const Real r0 = static_cast<Real>(cfg.r0);
  const Real bound = r0 + delta / std::sqrt(Real(2));
  w.delta = delta;
  w.slack = Real(4) * delta / std::sqrt(Real(2));
  w.e_norm = Real(1) / std::sqrt(Real(3));
  w.e = {w.e_norm, Real(0)};
  w.v1 = {std::sqrt(Real(3)) / Real(2), Real(1) / Real(2)};
  w.v2 = {std::sqrt(Real(3)) / Real(2), Real(-1) / Real(2)};
  const int pmax = static_cast<int>(bound / delta) + 1;
  for (int p2 = -pmax; p2 <= pmax; ++p2) {
    for (int p1 = -pmax; p1 <= pmax; ++p1) {
      const Pt<Real> x{p1 * delta, p2 * delta};
      if (std::sqrt(x.x * x.x + x.y * x.y) < bound) w.grid.push_back(x);
    }
  }
  w.rot.resize(w.grid.size());
  for (std::size_t i = 0; i < w.grid.size(); ++i)
    for (int l = 0; l < 6; ++l) w.rot[i][l] = rotate_cw(w.grid[i], l);
  return w;
}

template <typename Real>
struct Partial {
  Real margin = std::numeric_limits<Real>::infinity();
  std::size_t zi = 0, yi = 0;
  int l0 = 0;
  Index2 idx;
};

// Sequential merge over per-z partials keeps the witness independent of the
// thread count; min over identical floating values is exact.
template <typename Real>
Partial<Real> merge(const std::vector<Partial<Real>>& parts) {
  Partial<Real> best;
  for (const auto& p : parts)
    if (p.margin < best.margin) best = p;
  return best;
}

template <typename Real>
AssertionReport finish(const char* name, const Workspace<Real>& w, const Partial<Real>& p,
                       long long pairs, double floor_guard) {
  AssertionReport rep;
  rep.name = name;
  rep.checked_pairs = pairs;
  rep.min_margin = static_cast<double>(p.margin);
  rep.verdict = rep.min_margin > floor_guard;
  rep.z = Vector2d(static_cast<double>(w.grid[p.zi].x), static_cast<double>(w.grid[p.zi].y));
  rep.y = Vector2d(static_cast<double>(w.grid[p.yi].x), static_cast<double>(w.grid[p.yi].y));
  rep.l0 = p.l0;
  rep.index = p.idx;
  return rep;
}

template <typename Real>
AssertionReport assertion1_impl(const LemmaConfig& cfg) {
  const Workspace<Real> w = make_workspace<Real>(cfg);
  const std::size_t n = w.grid.size();
  std::vector<Partial<Real>> parts(n);
  parallel_for(n, [&](std::size_t zi) {
    const Pt<Real> z = w.grid[zi];
    const Pt<Real> ze{z.x + w.e.x, z.y + w.e.y};
    Partial<Real> loc;
    for (std::size_t yi = 0; yi < n; ++yi) {
      Real best2 = std::numeric_limits<Real>::infinity();
      int bl = 0;
      for (int l = 0; l < 6; ++l) {
        const Pt<Real>& ry = w.rot[yi][l];
        const Real dx = z.x - ry.x, dy = z.y - ry.y;
        const Real d2 = dx * dx + dy * dy;
        if (d2 < best2) {
          best2 = d2;
          bl = l;
        }
      }
      const Real margin = dist(ze, w.grid[yi]) - std::sqrt(best2) - w.slack;
      if (margin < loc.margin) loc = {margin, zi, yi, bl, Index2{0, 0}};
    }
    parts[zi] = loc;
  }, cfg.threads);
  const auto best = merge(parts);
  return finish("assertion1", w, best, static_cast<long long>(n) * n, cfg.margin_floor);
}

template <typename Real>
AssertionReport assertion4_impl(const LemmaConfig& cfg, const std::vector<Index2>& cands) {
  const Workspace<Real> w = make_workspace<Real>(cfg);
  const Real eps = static_cast<Real>(cfg.epsilon);
  const std::size_t n = w.grid.size();
  std::vector<Pt<Real>> nv(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) nv[i] = w.site(cands[i].m1, cands[i].m2);

  std::vector<Partial<Real>> parts(n);
  parallel_for(n, [&](std::size_t zi) {
    const Pt<Real> z = w.grid[zi];
    const Pt<Real> ze{z.x + w.e.x, z.y + w.e.y};
    Partial<Real> loc;
    for (std::size_t yi = 0; yi < n; ++yi) {
      Real best2 = std::numeric_limits<Real>::infinity();
      int bl = 0;
      for (int l = 0; l < 6; ++l) {
        const Pt<Real>& ry = w.rot[yi][l];
        const Real dx = ze.x - ry.x, dy = ze.y - ry.y;
        const Real d2 = dx * dx + dy * dy;
        if (d2 < best2) {
          best2 = d2;
          bl = l;
        }
      }
      const Real d2min = std::sqrt(best2);
      const Pt<Real>& y = w.grid[yi];
      for (std::size_t c = 0; c < cands.size(); ++c) {
        const Pt<Real> zny{z.x + nv[c].x - y.x, z.y + nv[c].y - y.y};
        const Real d1 = std::sqrt(zny.x * zny.x + zny.y * zny.y);
        const Real margin = d1 - d2min - w.slack - eps;
        if (margin < loc.margin) loc = {margin, zi, yi, bl, cands[c]};
      }
    }
    parts[zi] = loc;
  }, cfg.threads);
  const auto best = merge(parts);
  return finish("assertion4", w, best,
                static_cast<long long>(n) * n * static_cast<long long>(cands.size()),
                cfg.margin_floor);
}

template <typename Real>
int sector_of(const Pt<Real>& p) {
  const Real ang = std::atan2(p.y, p.x);  // (-pi, pi]
  int s = static_cast<int>(std::floor(static_cast<double>(ang) / (kPi / 3.0)));
  return ((s % 6) + 6) % 6;
}

template <typename Real>
std::pair<AssertionReport, AssertionReport> assertions23_impl(const LemmaConfig& cfg) {
  const Workspace<Real> w = make_workspace<Real>(cfg);
  const std::size_t n = w.grid.size();
  const Real cpp = w.e_norm / Real(2) * Real(1e-6);  // c'' for |m| <= 10^6

  // all nonzero indices in the bounded box, with |m| and the lattice vector
  struct MV {
    Index2 m;
    Pt<Real> v;
    Real norm_m, norm_v;
  };
  std::vector<MV> all;
  for (int m1 = -cfg.index_bound; m1 <= cfg.index_bound; ++m1)
    for (int m2 = -cfg.index_bound; m2 <= cfg.index_bound; ++m2) {
      if (m1 == 0 && m2 == 0) continue;
      MV mv{Index2{m1, m2}, w.site(m1, m2), std::sqrt(Real(m1) * m1 + Real(m2) * m2), Real(0)};
      mv.norm_v = std::sqrt(mv.v.x * mv.v.x + mv.v.y * mv.v.y);
      all.push_back(mv);
    }

  // Assertion (2): the minimum over pairs of |z - m.v - y| - |z - R^l0 y| - c''|m|
  // is certified for every m; the exact pair scan runs for indices whose
  // a-priori lower bound could compete with the running minimum.
  const Real rbar = static_cast<Real>(cfg.r0) + w.delta / std::sqrt(Real(2));
  auto pair_scan = [&](const MV& mv) {
    std::vector<Partial<Real>> parts(n);
    parallel_for(n, [&](std::size_t zi) {
      const Pt<Real> z = w.grid[zi];
      const int sz = sector_of(z);
      Partial<Real> loc;
      for (std::size_t yi = 0; yi < n; ++yi) {
        // cw rotation by 60 deg lowers the sector index by one, so this l0
        // puts R^l0 y into z's sector and the rotated gap stays below rbar
        const int l0 = ((sector_of(w.grid[yi]) - sz) % 6 + 6) % 6;
        const Pt<Real>& ry = w.rot[yi][l0];
        const Real d2 = dist(z, ry);
        const Pt<Real> zmy{z.x - mv.v.x - w.grid[yi].x, z.y - mv.v.y - w.grid[yi].y};
        const Real d1 = std::sqrt(zmy.x * zmy.x + zmy.y * zmy.y);
        const Real margin = d1 - d2 - cpp * mv.norm_m;
        if (margin < loc.margin) loc = {margin, zi, yi, l0, mv.m};
      }
      parts[zi] = loc;
    }, cfg.threads);
    return merge(parts);
  };

  // The unit lattice shell fixes the running minimum; any other index with
  // |m.v| - 3 rbar - c''|m| above it cannot attain the minimum, since
  // d1 >= |m.v| - 2 rbar and the same-sector gap obeys d2 <= rbar.
  Partial<Real> best2;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& mv : all) {
      const bool unit_shell = mv.norm_v <= Real(1) + Real(1e-9);
      if ((pass == 0) != unit_shell) continue;
      if (pass == 1 && mv.norm_v - 3 * rbar - cpp * mv.norm_m > best2.margin) continue;
      const auto loc = pair_scan(mv);
      if (loc.margin < best2.margin) best2 = loc;
    }
  }
  AssertionReport rep2 = finish("assertion2", w, best2,
                                static_cast<long long>(n) * n * static_cast<long long>(all.size()),
                                cfg.margin_floor);

  // Assertion (3): |eA1 + m.v| > |eA1| + 3 r0 + eps for m outside N_bad.
  const auto nbad = n_bad_set();
  const Real thresh = w.e_norm + Real(3) * static_cast<Real>(cfg.r0) + static_cast<Real>(cfg.epsilon);
  AssertionReport rep3;
  rep3.name = "assertion3";
  Real worst3 = std::numeric_limits<Real>::infinity();
  long long checked = 0;
  for (const auto& mv : all) {
    bool bad = false;
    for (const auto& b : nbad)
      if (b == mv.m) bad = true;
    if (bad) continue;
    const Pt<Real> emv{w.e.x + mv.v.x, w.e.y + mv.v.y};
    const Real margin = std::sqrt(emv.x * emv.x + emv.y * emv.y) - thresh;
    ++checked;
    if (margin < worst3) {
      worst3 = margin;
      rep3.index = mv.m;
    }
  }
  rep3.checked_pairs = checked;
  rep3.min_margin = static_cast<double>(worst3);
  rep3.verdict = rep3.min_margin > cfg.margin_floor;
  return {rep2, rep3};
}

}  // namespace

std::vector<Vector2d> build_grid(const LemmaConfig& cfg) {
  const auto w = make_workspace<double>(cfg);
  std::vector<Vector2d> out(w.grid.size());
  for (std::size_t i = 0; i < w.grid.size(); ++i) out[i] = Vector2d(w.grid[i].x, w.grid[i].y);
  return out;
}

std::vector<Index2> assertion4_candidates(const LemmaConfig& cfg) {
  const auto w = make_workspace<double>(cfg);
  const double bound = w.e_norm + 3.0 * cfg.r0 + cfg.epsilon;
  std::vector<Index2> out;
  for (int m1 = -3; m1 <= 3; ++m1)
    for (int m2 = -3; m2 <= 3; ++m2) {
      if (m1 == 0 && m2 == 0) continue;
      const auto v = w.site(m1, m2);
      if (std::hypot(v.x, v.y) <= bound) out.push_back({m1, m2});
    }
  return out;
}

std::vector<Index2> n_bad_set() {
  const auto w = make_workspace<double>(LemmaConfig{});
  std::vector<Index2> out;
  for (int m1 = -2; m1 <= 2; ++m1)
    for (int m2 = -2; m2 <= 2; ++m2) {
      const auto v = w.site(m1, m2);
      const double nrm = std::hypot(w.e.x + v.x, w.e.y + v.y);
      if (std::abs(nrm - w.e_norm) < 1e-9) out.push_back({m1, m2});
    }
  return out;
}

AssertionReport verify_assertion1(const LemmaConfig& cfg) {
  return cfg.precision == LemmaPrecision::Double ? assertion1_impl<double>(cfg)
                                                 : assertion1_impl<long double>(cfg);
}

AssertionReport verify_assertion4(const LemmaConfig& cfg) {
  const auto cands = assertion4_candidates(cfg);
  return cfg.precision == LemmaPrecision::Double ? assertion4_impl<double>(cfg, cands)
                                                 : assertion4_impl<long double>(cfg, cands);
}

std::pair<AssertionReport, AssertionReport> verify_assertions23_bounded(const LemmaConfig& cfg) {
  return cfg.precision == LemmaPrecision::Double ? assertions23_impl<double>(cfg)
                                                 : assertions23_impl<long double>(cfg);
}

LemmaReport run_geom_lemma(const LemmaConfig& cfg) {
  LemmaReport rep;
  rep.config = cfg;
  rep.grid_size = static_cast<long long>(build_grid(cfg).size());
  rep.candidate_n = assertion4_candidates(cfg);
  rep.a1 = verify_assertion1(cfg);
  auto [a2, a3] = verify_assertions23_bounded(cfg);
  rep.a2 = a2;
  rep.a3 = a3;
  rep.a4 = verify_assertion4(cfg);
  return rep;
}

}  // namespace hexwell
