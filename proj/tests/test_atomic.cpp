#include <doctest.h>

#include <cmath>
#include <vector>

#include "hexwell/atomic.hpp"
#include "hexwell/io.hpp"
#include "hexwell/errors.hpp"

using namespace hexwell;

namespace {

constexpr double kEA1 = 0.5773502691896258;

// Independent oracle: RK4 shooting of the regular solution from r ~ 0 and
// log-derivative matching to the decaying K0 tail at r = Rm, bisected in E.
double oracle_ground_energy(const AtomicWell& well, double lambda, int n, double Rm) {
  auto mismatch = [&](double E) {
    const double h = (Rm - 1e-8) / n;
    double r = 1e-8, u = 1.0, up = 0.0;
    auto f = [&](double rr, double uu, double uupp) {
      return -uupp / rr + (lambda * lambda * well.value(rr) - E) * uu;
    };
    for (int i = 0; i < n; ++i) {
      const double k1u = up, k1p = f(r, u, up);
      const double k2u = up + 0.5 * h * k1p, k2p = f(r + 0.5 * h, u + 0.5 * h * k1u, up + 0.5 * h * k1p);
      const double k3u = up + 0.5 * h * k2p, k3p = f(r + 0.5 * h, u + 0.5 * h * k2u, up + 0.5 * h * k2p);
      const double k4u = up + h * k3p, k4p = f(r + h, u + h * k3u, up + h * k3p);
      u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
      up += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
      r += h;
    }
    const double kappa = std::sqrt(-E);
    const double ld = -kappa * std::cyl_bessel_k(1, kappa * Rm) / std::cyl_bessel_k(0, kappa * Rm);
    return up - ld * u;
  };
  double lo = -0.95 * lambda * lambda, hi = -1e-3, flo = mismatch(lo);
  const int nscan = 400;
  for (int i = 1; i <= nscan; ++i) {
    const double E = lo + (hi - lo) * i / nscan;
    const double fE = mismatch(E);
    if (flo * fE < 0.0) {
      double a = lo + (hi - lo) * (i - 1) / nscan, b = E, fa = flo;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (a + b), fm = mismatch(mid);
        if (fa * fm <= 0.0)
          b = mid;
        else
          a = mid, fa = fm;
      }
      return 0.5 * (a + b);
    }
    flo = fE;
  }
  return 0.0;
}

}  // namespace

TEST_CASE("well profiles stay within [-1, 0] and vanish beyond r0") {
  const auto bump = AtomicWell::bump(0.33 * kEA1);
  const auto cyl = AtomicWell::smoothed_cylinder(0.15, 0.01);
  for (double r = 0.0; r < 0.4; r += 0.001) {
    for (const AtomicWell* w : {&bump, &cyl}) {
      CHECK(w->value(r) <= 0.0);
      CHECK(w->value(r) >= -1.0);
      if (r >= w->r0()) CHECK(w->value(r) == 0.0);
    }
  }
  CHECK(bump.value(0.0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(cyl.value(0.0) == -1.0);
  CHECK_THROWS_AS(AtomicWell::bump(0.4 * kEA1), ConfigError);
  CHECK_NOTHROW(AtomicWell::bump(0.45 * kEA1, /*allow_large_r0=*/true));
  CHECK_THROWS_AS(AtomicWell::bump(0.6 * kEA1, true), ConfigError);
}

TEST_CASE("hankel transform closed forms") {
  // disc indicator: 2 pi R J1(xi R)/xi, and area at xi = 0
  const int n = 6000;
  const double R = 0.8, rmax = 1.0;
  std::vector<double> r(n + 1), f(n + 1);
  for (int i = 0; i <= n; ++i) {
    r[i] = rmax * i / n;
    f[i] = r[i] < R ? 1.0 : 0.0;
  }
  CHECK(hankel_transform(r, f, 0.0) == doctest::Approx(kPi * R * R).epsilon(1e-3));
  for (double xi : {0.7, 2.0, 5.0}) {
    const double exact = 2.0 * kPi * R * std::cyl_bessel_j(1, xi * R) / xi;
    CHECK(hankel_transform(r, f, xi) == doctest::Approx(exact).epsilon(2e-3));
  }
  // Gaussian: transform of exp(-r^2) at xi is pi exp(-xi^2/4)
  std::vector<double> rg(n + 1), fg(n + 1);
  for (int i = 0; i <= n; ++i) {
    rg[i] = 8.0 * i / n;
    fg[i] = std::exp(-rg[i] * rg[i]);
  }
  CHECK(hankel_transform(rg, fg, 2.0) == doctest::Approx(kPi * std::exp(-1.0)).epsilon(1e-10));
}

TEST_CASE("bessel zeros") {
  CHECK(bessel_j_zero(0, 1) == doctest::Approx(2.404825557695773).epsilon(1e-12));
  CHECK(bessel_j_zero(0, 2) == doctest::Approx(5.520078110286311).epsilon(1e-12));
  CHECK(bessel_j_zero(1, 1) == doctest::Approx(3.831705970207512).epsilon(1e-12));
}

TEST_CASE("cylinder well matching") {
  const double lam = 40.0, R = 0.15;
  const double E = cylinder_well_eigenvalue(lam, R, 0, 1);
  // frozen from an independent root solve of the same matching condition
  CHECK(E + lam * lam == doctest::Approx(187.6777).epsilon(1e-4));
  // the finite well binds less tightly than the hard-wall limit (j01/R)^2
  const double ideal = std::pow(bessel_j_zero(0, 1) / R, 2);
  CHECK(E + lam * lam < ideal);
  // branch ordering
  CHECK(cylinder_well_eigenvalue(lam, R, 0, 2) > E);
  CHECK_THROWS_AS(cylinder_well_eigenvalue(2.0, 0.05, 3, 2), NoRoot);
}

TEST_CASE("ground state of the smoothed cylinder approaches the sharp matching root") {
  const double lam = 40.0, R = 0.15;
  const double Ematch = cylinder_well_eigenvalue(lam, R, 0, 1);
  double prev_err = 1e9;
  for (double ds : {0.01, 0.005, 0.0025}) {
    const auto well = AtomicWell::smoothed_cylinder(R, ds);
    const auto gs = ground_state(well, lam, {3000, 0.45});
    const double err = std::abs(gs.E0 - Ematch) / (Ematch + lam * lam);
    CHECK(err < prev_err);  // smoothing sweep converges monotonically
    prev_err = err;
  }
  CHECK(prev_err < 0.02);
}

TEST_CASE("ground state basics for the bump well") {
  const auto well = AtomicWell::bump(0.33 * kEA1);
  const double lam = 20.0;
  const auto gs = ground_state(well, lam, {4000, 0.0});

  SUBCASE("independent shooting solve at 4x resolution agrees") {
    const double Eo = oracle_ground_energy(well, lam, 16000, 0.6);
    CHECK(gs.E0 == doctest::Approx(Eo).epsilon(2e-5));
  }
  SUBCASE("variational bounds") {
    CHECK(gs.E0 >= -lam * lam);
    CHECK(gs.E0 <= -0.3 * lam * lam);  // measured binding fraction for this well
  }
  SUBCASE("positivity, monotonicity, normalization") {
    CHECK(gs.u[0] > 0.0);
    for (std::size_t i = 1; i < gs.u.size(); ++i) {
      CHECK(gs.u[i] > 0.0);
      CHECK(gs.u[i] <= gs.u[i - 1] * (1.0 + 1e-12));
    }
    double nrm = 0.0;
    const double h = gs.radial_grid[1] - gs.radial_grid[0];
    for (std::size_t i = 0; i < gs.u.size(); ++i) {
      const double mu = i == 0 ? h * h / 8.0 : gs.radial_grid[i] * h;
      nrm += gs.u[i] * gs.u[i] * mu;
    }
    CHECK(2 * kPi * nrm == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("gap channels are reported") {
    CHECK(gs.E1_m0 > gs.E0);
    CHECK(gs.E0_m1 > gs.E0);
  }
  SUBCASE("harmonic estimate of the bottom of the well") {
    // near r = 0 the bump is -1 + (r/r0)^2 + O(r^4), so E0 ~ -lam^2 + 2 lam/r0
    const auto deep = ground_state(well, 60.0, {4000, 0.35});
    const double pred = -3600.0 + 2.0 * 60.0 / well.r0();
    CHECK(deep.E0 == doctest::Approx(pred).epsilon(0.05));
  }
}

TEST_CASE("E0 decreases with lambda") {
  const auto well = AtomicWell::bump(0.33 * kEA1);
  double prev = 0.0;
  for (double lam : {8.0, 12.0, 16.0, 20.0}) {
    const auto gs = ground_state(well, lam, {4000, 0.0});
    CHECK(gs.E0 < prev);
    prev = gs.E0;
  }
}

TEST_CASE("exponential decay of the tail") {
  const auto well = AtomicWell::bump(0.33 * kEA1);
  for (double lam : {8.0, 16.0, 24.0}) {
    const auto gs = ground_state(well, lam, {4000, 0.0});
    const double r0 = well.r0();
    // fit c in u(r)/u(r0) <= exp(-c (r - r0) lambda) on [r0 + 0.1, r0 + 0.5]
    const double u0 = gs.eval(r0);
    double cmin = 1e9;
    for (double r = r0 + 0.1; r <= r0 + 0.5; r += 0.05) {
      const double c = -std::log(gs.eval(r) / u0) / ((r - r0) * lam);
      cmin = std::min(cmin, c);
    }
    CHECK(cmin > 0.0);
    for (double r = r0 + 0.1; r <= r0 + 0.5; r += 0.05)
      CHECK(gs.eval(r) / u0 <= std::exp(-cmin * (r - r0) * lam) * (1.0 + 1e-9));
  }
}

TEST_CASE("kernel identity: u equals the Bessel-kernel image of lambda^2 |V0| u") {
  const auto well = AtomicWell::bump(0.33 * kEA1);
  const double lam = 16.0;
  const auto gs = ground_state(well, lam, {3000, 0.0});
  const double kappa = std::sqrt(-gs.E0);
  const double r0 = well.r0();
  // p0(x) = (lam^2 / 2 pi) Int K0(kappa |x-y|) |V0(y)| p0(y) dy
  const int nr = 400, nth = 512;
  const double hr = r0 / nr;
  for (int s = 1; s <= 10; ++s) {
    const double rx = 0.25 * r0 + (s - 1) * (r0 + 0.45 - 0.25 * r0) / 9.0;
    double acc = 0.0;
    for (int i = 0; i < nr; ++i) {
      const double ry = (i + 0.5) * hr;
      const double vy = std::abs(well.value(ry));
      if (vy == 0.0) continue;
      const double uy = gs.eval(ry);
      double ring = 0.0;
      for (int j = 0; j < nth; ++j) {
        const double th = (j + 0.5) * (2.0 * kPi / nth);
        const double dist = std::sqrt(rx * rx + ry * ry - 2.0 * rx * ry * std::cos(th));
        ring += std::cyl_bessel_k(0, kappa * dist);
      }
      acc += vy * uy * ry * ring * hr * (2.0 * kPi / nth);
    }
    const double rhs = lam * lam / (2.0 * kPi) * acc;
    CHECK(rhs == doctest::Approx(gs.eval(rx)).epsilon(0.01));
  }
}

TEST_CASE("rho_lambda properties") {
  const auto well = AtomicWell::bump(0.33 * kEA1);
  const auto gs = ground_state(well, 16.0, {3000, 0.0});

  SUBCASE("crude majorant") {
    const double r0 = well.r0();
    const double umax = gs.eval(0.0);
    const double umax_shift = gs.eval(kEA1 - r0);
    const double bound = 16.0 * 16.0 * 1.0 * umax * umax_shift * kPi * r0 * r0;
    CHECK(gs.rho > 0.0);
    CHECK(gs.rho < bound);
  }
  SUBCASE("independent of the bond direction") {
    const auto g = build_geometry();
    const double base = rho_lambda(gs, well, g.eA[0]);
    for (const Vector2d& e : {g.eA[1], g.eA[2], g.eB[0], g.eB[1]})
      CHECK(rho_lambda(gs, well, e) == doctest::Approx(base).epsilon(1e-10));
  }
  SUBCASE("matches the value cached in the ground state") {
    CHECK(rho_lambda(gs, well) == doctest::Approx(gs.rho).epsilon(1e-14));
  }
}

TEST_CASE("grid refinement stability") {
  const auto well = AtomicWell::bump(0.33 * kEA1);
  const double lam = 16.0;
  const auto a = ground_state(well, lam, {3000, 0.0});
  const auto b = ground_state(well, lam, {6000, 0.0});
  CHECK(std::abs(a.E0 - b.E0) < 1e-6 * lam * lam);
  CHECK(std::abs(a.rho - b.rho) / b.rho < 0.01);
}

TEST_CASE("error paths") {
  const auto well = AtomicWell::bump(0.33 * kEA1);
  CHECK_THROWS_AS(ground_state(well, 16.0, {100, 0.0}), ConfigError);    // n_r too small
  CHECK_THROWS_AS(ground_state(well, 16.0, {2000, 0.25}), ConfigError);  // Rmax too small
  // a coarse grid at high lambda cannot resolve E0 to 1e-6 lambda^2
  CHECK_THROWS_AS(ground_state(AtomicWell::smoothed_cylinder(0.15, 0.002), 40.0, {220, 0.45}),
                  GridTooCoarse);
  // at lambda = 1 the binding is below the box resolution: no negative level
  CHECK_THROWS_AS(ground_state(well, 1.0, {1200, 5.5}), NoBoundState);
  // synthetic state whose tail underflows to zero at the shifted radii
  GroundState tiny;
  tiny.lambda = 16.0;
  const int n = 400;
  tiny.radial_grid.resize(n);
  tiny.u.resize(n);
  for (int i = 0; i < n; ++i) {
    tiny.radial_grid[i] = 1.4 * i / (n - 1);
    tiny.u[i] = std::exp(-5000.0 * tiny.radial_grid[i]);
  }
  CHECK_THROWS_AS(rho_lambda(tiny, well), Underflow);
}

TEST_CASE("ground state JSON round trip") {
  const auto well = AtomicWell::bump(0.33 * kEA1);
  const auto gs = ground_state(well, 8.0, {2000, 1.5});
  const auto back = ground_state_from_json(ground_state_to_json(gs));
  CHECK(back.lambda == gs.lambda);
  CHECK(back.E0 == gs.E0);
  CHECK(back.E1_m0 == gs.E1_m0);
  CHECK(back.E0_m1 == gs.E0_m1);
  CHECK(back.rho == gs.rho);
  CHECK(back.well_kind == gs.well_kind);
  CHECK(back.u == gs.u);
  CHECK(back.radial_grid == gs.radial_grid);
  // the interpolant is identical after the round trip
  for (double r : {0.05, 0.3, 0.9}) CHECK(back.eval(r) == gs.eval(r));
}
