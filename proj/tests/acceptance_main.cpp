// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Every tolerance is pinned in code below.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hexwell/bloch.hpp"
#include "hexwell/edges.hpp"
#include "hexwell/errors.hpp"
#include "hexwell/geomlemma.hpp"
#include "hexwell/tightbinding.hpp"

using namespace hexwell;

namespace {

const HoneycombGeometry g = build_geometry();
const double kEA1 = 1.0 / std::sqrt(3.0);

struct Outcome {
  bool pass = false;
  std::string info;
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// ---------------------------------------------------------------- criterion 1
// Tight-binding exactness on a 201 x 201 zone grid.
Outcome criterion1() {
  const int n = 201;
  bool eig_ok = true;
  double min_outside = 1e300;
  for (int i = 0; i < n && eig_ok; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vector2d f(static_cast<double>(i) / n, static_cast<double>(j) / n);
      const Vector2d k = f.x() * g.k1 + f.y() * g.k2;
      const double w = wallace(g, k);
      Eigen::SelfAdjointEigenSolver<Matrix2cd> es(h_tb(g, k).matrix);
      if (std::abs(es.eigenvalues()[0] + w) > 1e-10 ||
          std::abs(es.eigenvalues()[1] - w) > 1e-10) {
        eig_ok = false;
        break;
      }
      // fractional distance (mod 1) to the vertex classes (1/3,2/3), (2/3,1/3)
      double dmin = 1e300;
      for (const Vector2d& vf : {Vector2d(1.0 / 3, 2.0 / 3), Vector2d(2.0 / 3, 1.0 / 3)})
        for (int s1 = -1; s1 <= 1; ++s1)
          for (int s2 = -1; s2 <= 1; ++s2)
            dmin = std::min(dmin, (f - vf + Vector2d(s1, s2)).norm());
      if (dmin > 1e-2) min_outside = std::min(min_outside, w);
    }
  }
  bool vertex_ok = true;
  for (const auto& v : g.Kvert) vertex_ok = vertex_ok && wallace(g, v) < 1e-10;
  const bool pass = eig_ok && vertex_ok && min_outside >= 0.05;
  return {pass, fmt("eig agree=%d, vanish at 6 vertices=%d, min W outside 1e-2 nbhds=%.4f",
                    eig_ok, vertex_ok, min_outside)};
}

// ---------------------------------------------------------------- criterion 2
// Quadratic coefficient matrix of wallace^2 at K equals (3/4) I within 1e-3.
Outcome criterion2() {
  const Matrix2d Q = wallace_sq_quadratic_form(g, g.K());
  const double dev = (Q - 0.75 * Matrix2d::Identity()).cwiseAbs().maxCoeff();
  return {dev < 1e-3, fmt("max entrywise deviation from (3/4)I = %.2e", dev)};
}

// ---------------------------------------------------------------- criterion 3
// Cylindrical-well oracle at lambda = 40, R = 0.15.
Outcome criterion3() {
  const double lam = 40.0, R = 0.15;
  const double E = cylinder_well_eigenvalue(lam, R, 0, 1);
  const double ideal = std::pow(bessel_j_zero(0, 1) / R, 2);
  const double rel = std::abs((E + lam * lam) - ideal) / ideal;
  const bool clause_a = rel <= 0.10;

  const double ds0 = 0.01;
  double fd_rel = 1e300;
  for (double ds : {ds0, ds0 / 2, ds0 / 4}) {
    const auto gs = ground_state(AtomicWell::smoothed_cylinder(R, ds), lam, {3000, 0.45});
    fd_rel = std::abs(gs.E0 - E) / (E + lam * lam);
  }
  const bool clause_b = fd_rel <= 0.02;
  return {clause_a && clause_b,
          fmt("matching root E+lam^2=%.3f vs (j01/R)^2=%.3f rel=%.4f (<=0.10: %s); "
              "FD at ds/4 rel=%.4f (<=0.02: %s)",
              E + lam * lam, ideal, rel, clause_a ? "yes" : "NO", fd_rel,
              clause_b ? "yes" : "NO")};
}

// ---------------------------------------------------------------- criterion 4
// Exponential law of rho_lambda for the default bump well.
Outcome criterion4() {
  const auto well = AtomicWell::bump(0.33 * kEA1);
  const double lams[4] = {8, 12, 16, 20};
  double x[4], y[4];
  std::string vals;
  for (int i = 0; i < 4; ++i) {
    const auto gs = ground_state(well, lams[i], {4000, 0.0});
    x[i] = lams[i];
    y[i] = std::log(gs.rho);
    vals += fmt(" rho(%g)=%.4g", lams[i], gs.rho);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < 4; ++i) sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
  const double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / 4;
  double ssr = 0, sst = 0;
  for (int i = 0; i < 4; ++i) {
    ssr += std::pow(y[i] - icpt - slope * x[i], 2);
    sst += std::pow(y[i] - sy / 4, 2);
  }
  const double r2 = 1.0 - ssr / sst;
  return {r2 >= 0.99 && slope < 0.0,
          fmt("ln rho fit: slope=%.4f (<0: %s), R^2=%.4f (>=0.99: %s);%s", slope,
              slope < 0 ? "yes" : "NO", r2, r2 >= 0.99 ? "yes" : "NO", vals.c_str())};
}

// ---------------------------------------------------------------- criterion 5
// Dirac degeneracy and rotation eigenvalues for the periodized bump.
Outcome criterion5() {
  const double lam = 16.0;
  const auto well = AtomicWell::bump(0.33 * kEA1);
  const auto gs = ground_state(well, lam, {4000, 0.0});
  const auto prob = make_problem(g, periodize(g, well, 40), lam, 20);
  const DiracReport rep = dirac_point(prob, g.K(), gs.rho);
  const complexd tau = std::exp(complexd(0.0, 2.0 * kPi / 3.0));
  const double dtau = std::abs(rep.rot_eig_tau - tau);
  const double dtaubar = std::abs(rep.rot_eig_taubar - std::conj(tau));
  const bool pass = rep.split < 1e-4 * lam * lam && dtau < 1e-4 && dtaubar < 1e-4;
  return {pass, fmt("split=%.2e (tol %.2e), |rot-tau|=%.2e, |rot-taubar|=%.2e, "
                    "E_D=%.5f, h0=(E_D-E0)/rho=%.4f",
                    rep.split, 1e-4 * lam * lam, dtau, dtaubar, rep.E_D,
                    (rep.E_D - gs.E0) / gs.rho)};
}

std::vector<Vector2d> kset12() {
  const Vector2d G = Vector2d::Zero();
  const Vector2d K = g.K();
  const Vector2d M = 0.5 * (g.k1 + g.k2);
  std::vector<Vector2d> ks;
  for (double s : {0.1, 0.25, 0.5, 0.75, 0.9}) ks.push_back(G + s * (K - G));
  for (double s : {1.0 / 3, 2.0 / 3}) ks.push_back(K + s * (M - K));
  ks.push_back(M);
  for (double s : {0.25, 0.5, 0.75, 0.9}) ks.push_back(M + s * (G - M));
  return ks;
}

// ---------------------------------------------------------------- criterion 6
// Rescaled convergence: sup deviation strictly decreasing across the sweep.
Outcome criterion6() {
  const auto well = AtomicWell::bump(0.33 * kEA1);
  const double lams[4] = {8, 12, 16, 20};
  const int Ns[4] = {14, 16, 18, 20};
  const auto kset = kset12();
  double devs[4];
  bool flags_ok = true;
  std::string info;
  for (int i = 0; i < 4; ++i) {
    const auto gs = ground_state(well, lams[i], {4000, 0.0});
    auto run = [&](int N) {
      const auto prob = make_problem(g, periodize(g, well, 2 * N), lams[i], N);
      const DiracReport dp = dirac_point(prob, g.K(), gs.rho);
      const auto table = rescaled_dispersion(prob, gs, kset);
      return std::tuple<double, double, double>(table.sup_dev, dp.E_D, dp.vF);
    };
    const auto [dev, ed, vf] = run(Ns[i]);
    const auto [dev4, ed4, vf4] = run(Ns[i] + 4);
    devs[i] = dev;
    const bool flag = std::abs(dev4 - dev) < 0.01 * dev &&
                      std::abs(ed4 - ed) < 0.01 * std::abs(ed) &&
                      std::abs(vf4 - vf) < 0.01 * vf;
    flags_ok = flags_ok && flag;
    info += fmt(" dev(%g;N=%d)=%.5f%s", lams[i], Ns[i], dev, flag ? "" : "[NOT CONVERGED]");
  }
  const bool monotone = devs[0] > devs[1] && devs[1] > devs[2] && devs[2] > devs[3];
  return {monotone && flags_ok, fmt("strictly decreasing=%s, truncation flags=%s;%s",
                                    monotone ? "yes" : "NO", flags_ok ? "pass" : "FAIL",
                                    info.c_str())};
}

// ---------------------------------------------------------------- criterion 7
// Fermi velocity against (sqrt(3)/2) rho_lambda.
Outcome criterion7() {
  const auto well = AtomicWell::bump(0.33 * kEA1);
  double ratios[2];
  const double lams[2] = {10, 20};
  const int Ns[2] = {15, 20};
  for (int i = 0; i < 2; ++i) {
    const auto gs = ground_state(well, lams[i], {4000, 0.0});
    const auto prob = make_problem(g, periodize(g, well, 2 * Ns[i]), lams[i], Ns[i]);
    ratios[i] = fermi_velocity(prob, gs, g.K()).ratio;
  }
  const bool in_window = ratios[1] >= 0.8 && ratios[1] <= 1.2;
  const bool closer = std::abs(ratios[1] - 1.0) < std::abs(ratios[0] - 1.0);
  return {in_window && closer,
          fmt("ratio(20)=%.4f in [0.8,1.2]=%s, ratio(10)=%.4f, closer to 1=%s", ratios[1],
              in_window ? "yes" : "NO", ratios[0], closer ? "yes" : "NO")};
}

// ---------------------------------------------------------------- criterion 8
// No-fold figure verdicts, stable under slice refinement.
Outcome criterion8() {
  const auto V = trig_potential(g);
  const bool expected[2][3] = {{true, false, false}, {true, true, true}};
  const double lams[2] = {1.0, 5.0};
  const std::pair<int, int> edges[3] = {{1, 0}, {1, 1}, {2, 1}};
  bool ok = true;
  std::string info;
  for (int li = 0; li < 2; ++li) {
    const auto prob = make_problem(g, V, lams[li], 14);
    for (int ei = 0; ei < 3; ++ei) {
      const EdgeSpec e = edge_from_indices(g, edges[ei].first, edges[ei].second);
      bool verdicts[2];
      for (int mi : {0, 1}) {
        const auto slice = dual_slice(prob, e, g.K(), mi == 0 ? 41 : 81);
        verdicts[mi] = nofold_check(slice, 1e-6 * lams[li] * lams[li]).holds;
      }
      const bool match = verdicts[0] == expected[li][ei] && verdicts[1] == expected[li][ei];
      ok = ok && match;
      info += fmt(" l=%g(%d,%d):%s%s", lams[li], edges[ei].first, edges[ei].second,
                  verdicts[0] ? "holds" : "fails", match ? "" : "[MISMATCH]");
    }
  }
  return {ok, info};
}

// ---------------------------------------------------------------- criterion 9
// Gap opening under the inversion-breaking perturbation.
Outcome criterion9() {
  const double lam = 5.0;
  auto prob = make_problem(g, trig_potential(g), lam, 14);
  prob.W = pt_breaking_potential(g);
  const auto rows = gap_vs_eta(prob, g.K(), {0.005, 0.01, 0.02, 0.05, 0.1});
  const double r1 = rows[0].gap / rows[0].predicted_gap;
  const double r2 = rows[1].gap / rows[1].predicted_gap;
  const bool ratios_ok = r1 >= 0.8 && r1 <= 1.2 && r2 >= 0.8 && r2 <= 1.2;
  BlochProblem base = prob;
  base.eta = 0.0;
  const double split0 = dirac_point(base, g.K()).split;
  const bool limit_ok = split0 < 1e-6 * lam * lam;
  return {ratios_ok && limit_ok,
          fmt("gap/pred at two smallest eta: %.4f, %.4f (in [0.8,1.2]: %s); "
              "split(eta=0)=%.2e (< %.2e: %s); theta=%.4f",
              r1, r2, ratios_ok ? "yes" : "NO", split0, 1e-6 * lam * lam,
              limit_ok ? "yes" : "NO", rows[0].theta_sharp)};
}

// --------------------------------------------------------------- criterion 10
// Scaled-resolvent distance at z = i.
Outcome criterion10() {
  const auto well = AtomicWell::bump(0.33 * kEA1);
  const complexd z(0.0, 1.0);
  const Vector2d pts[2] = {Vector2d::Zero(), 0.5 * g.K()};
  const int N = 14;

  const auto gs16 = ground_state(well, 16.0, {4000, 0.0});
  const auto prob16 = make_problem(g, periodize(g, well, 2 * N), 16.0, N);
  const double overlap16 = resolvent_distance(prob16, gs16, pts[0], z).mode_overlap;
  const bool clause_b = overlap16 < 0.1;

  const auto gs20 = ground_state(well, 20.0, {4000, 0.0});
  const auto prob20 = make_problem(g, periodize(g, well, 2 * N), 20.0, N);
  double d20[2], d16[2];
  for (int i = 0; i < 2; ++i) {
    d20[i] = resolvent_distance(prob20, gs20, pts[i], z).distance;
    d16[i] = resolvent_distance(prob16, gs16, pts[i], z).distance;
  }

  bool clause_a = false;
  std::string msg10;
  try {
    const auto gs10 = ground_state(well, 10.0, {4000, 0.0});
    const auto prob10 = make_problem(g, periodize(g, well, 2 * N), 10.0, N);
    double d10[2];
    for (int i = 0; i < 2; ++i)
      d10[i] = resolvent_distance(prob10, gs10, pts[i], z).distance;
    clause_a = d20[0] < d10[0] && d20[1] < d10[1];
    msg10 = fmt("dist(10)={%.4f,%.4f}", d10[0], d10[1]);
  } catch (const IllConditioned&) {
    msg10 = "lambda=10 raises IllConditioned (mode overlap ~0.83 >= 0.5)";
  }
  return {clause_a && clause_b,
          fmt("%s; dist(20)={%.4f,%.4f}; supplementary dist(16)={%.4f,%.4f}; "
              "overlap(16)=%.4f (<0.1: %s)",
              msg10.c_str(), d20[0], d20[1], d16[0], d16[1], overlap16,
              clause_b ? "yes" : "NO")};
}

// --------------------------------------------------------------- criterion 11
// Geometric-estimate grid verification at the default configuration.
Outcome criterion11() {
  LemmaConfig cfg;  // delta = 0.005, r0 = 0.33|eA1|, eps = 1e-8
  cfg.threads = 1;
  const auto rep1 = run_geom_lemma(cfg);
  cfg.threads = 2;
  const auto rep2 = run_geom_lemma(cfg);
  const bool deterministic = rep1.a1.min_margin == rep2.a1.min_margin &&
                             rep1.a4.min_margin == rep2.a4.min_margin &&
                             rep1.a2.min_margin == rep2.a2.min_margin;
  const bool verdicts = rep1.a1.verdict && rep1.a4.verdict && rep1.a3.verdict &&
                        rep1.a2.verdict && rep1.a1.min_margin > 0 && rep1.a4.min_margin > 0;
  return {verdicts && deterministic,
          fmt("grid=%lld, pairs=%lld, margins: a1=%.5f a2=%.5f a3=%.6f a4=%.5f, "
              "thread-count independent=%s",
              rep1.grid_size, rep1.a1.checked_pairs, rep1.a1.min_margin, rep1.a2.min_margin,
              rep1.a3.min_margin, rep1.a4.min_margin, deterministic ? "yes" : "NO")};
}

// --------------------------------------------------------------- criterion 12
// Free-particle sanity along Gamma-K-M-Gamma.
Outcome criterion12() {
  FourierPotential zero(0, false, "zero");
  const auto prob = make_problem(g, zero, 1.0, 6);
  const Vector2d nodes[4] = {Vector2d::Zero(), g.K(), 0.5 * (g.k1 + g.k2), Vector2d::Zero()};
  std::vector<Vector2d> path;
  for (int s = 0; s < 3; ++s)
    for (int i = 0; i < 10; ++i)
      path.push_back(nodes[s] + (nodes[s + 1] - nodes[s]) * (i / 10.0));
  path.push_back(nodes[3]);
  const BandStructure bs = band_path(prob, path, 5);
  double worst = 0.0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    std::vector<double> oracle;
    for (int m1 = -8; m1 <= 8; ++m1)
      for (int m2 = -8; m2 <= 8; ++m2)
        oracle.push_back((path[i] + g.dual(m1, m2)).squaredNorm());
    std::sort(oracle.begin(), oracle.end());
    for (int b = 0; b < 5; ++b)
      worst = std::max(worst, std::abs(bs.energies(static_cast<Index>(i), b) - oracle[b]));
  }
  return {worst < 1e-12, fmt("max |E - |k+m.kvec|^2| over path = %.2e", worst)};
}

}  // namespace

int main() {
  setvbuf(stdout, nullptr, _IONBF, 0);
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> fn;
  };
  const std::vector<Criterion> criteria = {
      {1, "tight-binding exactness on the zone grid", 5, criterion1},
      {2, "conical coefficient (3/4) I", 1, criterion2},
      {3, "cylindrical-well oracle", 30, criterion3},
      {4, "rho_lambda exponential law", 120, criterion4},
      {5, "Dirac degeneracy and rotation labels", 300, criterion5},
      {6, "rescaled dispersion converges to the two-band model", 1800, criterion6},
      {7, "Fermi velocity ratio", 600, criterion7},
      {8, "no-fold verdicts for three edges at two couplings", 600, criterion8},
      {9, "gap opening under inversion breaking", 300, criterion9},
      {10, "scaled resolvent distance", 600, criterion10},
      {11, "geometric-estimate grid verification", 600, criterion11},
      {12, "free-particle bands", 10, criterion12},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = secs < c.budget_s;
    const bool pass = out.pass && in_budget;
    if (!pass) ++failures;
    std::printf("%s criterion %2d [%s]: %s  (%.1fs%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.name, out.info.c_str(), secs, in_budget ? "" : " OVER BUDGET");
  }
  std::printf("%d/12 criteria passed\n", 12 - failures);
  return failures;
}
