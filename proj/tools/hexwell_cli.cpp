// hexwell: band structure, atomic wells and lattice-geometry checks for
// honeycomb Schroedinger operators -Laplace + lambda^2 V.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hexwell/bloch.hpp"
#include "hexwell/edges.hpp"
#include "hexwell/errors.hpp"
#include "hexwell/geomlemma.hpp"
#include "hexwell/io.hpp"
#include "hexwell/tightbinding.hpp"

namespace {

using namespace hexwell;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitVerdictFalse = 3;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct WellOptions {
  std::string kind = "bump";
  double r0 = 0.33 / std::sqrt(3.0);
  double smoothing = 0.015;
  bool allow_large_r0 = false;
};

void add_well_options(CLI::App* cmd, WellOptions& w) {
  cmd->add_option("--well", w.kind, "well profile: bump | cylinder")
      ->check(CLI::IsMember({"bump", "cylinder"}));
  cmd->add_option("--r0", w.r0, "support radius of the atomic well");
  cmd->add_option("--smoothing", w.smoothing, "cylinder ramp width");
  cmd->add_flag("--allow-large-r0", w.allow_large_r0,
                "accept r0 up to 0.5|eA1| instead of 0.33|eA1|");
}

AtomicWell make_well(const WellOptions& w) {
  if (w.kind == "bump") return AtomicWell::bump(w.r0, w.allow_large_r0);
  return AtomicWell::smoothed_cylinder(w.r0, w.smoothing, w.allow_large_r0);
}

struct GridOptions {
  int n_r = 4000;
  double Rmax = 0.0;
};

GroundState solve_ground(const AtomicWell& well, double lambda, const GridOptions& g,
                         const std::string& cache_dir) {
  const RadialGridSpec spec{g.n_r, g.Rmax};
  if (!cache_dir.empty()) {
    const std::string key = ground_state_cache_key(well.kind(), well.r0(), well.smoothing(),
                                                   lambda, g.n_r, g.Rmax);
    const std::filesystem::path file = std::filesystem::path(cache_dir) / (key + ".json");
    if (std::filesystem::exists(file)) {
      std::ifstream is(file);
      std::stringstream ss;
      ss << is.rdbuf();
      return ground_state_from_json(ss.str());
    }
    GroundState gs = ground_state(well, lambda, spec);
    write_file_atomic(file.string(), ground_state_to_json(gs));
    return gs;
  }
  return ground_state(well, lambda, spec);
}

Vector2d named_kpoint(const HoneycombGeometry& geom, const std::string& name) {
  if (name == "G" || name == "Gamma") return Vector2d::Zero();
  if (name == "K") return geom.dual(0, 0) + (geom.k1 - geom.k2) / 3.0;
  if (name == "Kp") return -(geom.k1 - geom.k2) / 3.0 + geom.k1;
  if (name == "M") return 0.5 * (geom.k1 + geom.k2);
  throw ConfigError("unknown k-point name: " + name + " (use G, K, Kp, M)");
}

std::vector<Vector2d> build_kpath(const HoneycombGeometry& geom, const std::string& spec,
                                  int per_segment) {
  std::vector<Vector2d> nodes;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) nodes.push_back(named_kpoint(geom, tok));
  if (nodes.size() < 2) throw ConfigError("k-path needs at least two nodes");
  std::vector<Vector2d> path;
  for (std::size_t s = 0; s + 1 < nodes.size(); ++s)
    for (int i = 0; i < per_segment; ++i)
      path.push_back(nodes[s] + (nodes[s + 1] - nodes[s]) * (static_cast<double>(i) / per_segment));
  path.push_back(nodes.back());
  return path;
}

// 12 quasi-momenta spread over the Gamma-K-M-Gamma circuit, vertices excluded.
std::vector<Vector2d> default_kset(const HoneycombGeometry& geom) {
  const Vector2d G = Vector2d::Zero();
  const Vector2d K = named_kpoint(geom, "K");
  const Vector2d M = named_kpoint(geom, "M");
  std::vector<Vector2d> ks;
  for (double s : {0.1, 0.25, 0.5, 0.75, 0.9}) ks.push_back(G + s * (K - G));
  for (double s : {1.0 / 3.0, 2.0 / 3.0}) ks.push_back(K + s * (M - K));
  ks.push_back(M);
  for (double s : {0.25, 0.5, 0.75, 0.9}) ks.push_back(M + s * (G - M));
  return ks;
}

FourierPotential make_potential(const HoneycombGeometry& geom, const std::string& name,
                                const WellOptions& wopt, int cutoff) {
  if (name == "trig") return trig_potential(geom);
  if (name == "bump" || name == "cylinder") {
    WellOptions w = wopt;
    w.kind = name;
    return periodize(geom, make_well(w), cutoff);
  }
  throw ConfigError("unknown potential: " + name + " (use trig, bump, cylinder)");
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

int cmd_tb(int grid_n, const std::string& out) {
  const auto geom = build_geometry();
  std::string csv = "k1_frac,k2_frac,kx,ky,wtb\n";
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const double f1 = static_cast<double>(i) / grid_n;
      const double f2 = static_cast<double>(j) / grid_n;
      const Vector2d k = f1 * geom.k1 + f2 * geom.k2;
      csv += fmt(f1) + "," + fmt(f2) + "," + fmt(k.x()) + "," + fmt(k.y()) + "," +
             fmt(wallace(geom, k)) + "\n";
    }
  }
  write_file_atomic(out, csv);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"honeycomb Schroedinger band structure toolkit"};
  app.set_config("--config", "", "flat key=value config file; flags win");
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0: hardware)");

  // ---- tb
  auto* tb = app.add_subcommand("tb", "two-band dispersion magnitude on a zone grid");
  int tb_grid = 201;
  std::string tb_out = "tb.csv";
  tb->add_option("--grid", tb_grid, "grid points per dual direction");
  tb->add_option("--out", tb_out, "output CSV");

  // ---- ground
  auto* ground = app.add_subcommand("ground", "atomic ground state solve");
  WellOptions g_well;
  GridOptions g_grid;
  double g_lambda = 16.0;
  std::string g_out = "ground.json", g_cache;
  add_well_options(ground, g_well);
  ground->add_option("--lambda", g_lambda, "coupling");
  ground->add_option("--nr", g_grid.n_r, "radial points");
  ground->add_option("--rmax", g_grid.Rmax, "radial extent (0: automatic)");
  ground->add_option("--out", g_out, "output JSON");
  ground->add_option("--cache-dir", g_cache, "ground-state cache directory");

  // ---- rho
  auto* rho = app.add_subcommand("rho", "overlap scale rho_lambda over a lambda sweep");
  WellOptions r_well;
  GridOptions r_grid;
  std::string r_lambdas = "8,12,16,20", r_out = "rho.csv", r_cache;
  add_well_options(rho, r_well);
  rho->add_option("--lambdas", r_lambdas, "comma-separated couplings");
  rho->add_option("--nr", r_grid.n_r, "radial points");
  rho->add_option("--out", r_out, "output CSV");
  rho->add_option("--cache-dir", r_cache, "ground-state cache directory");

  // ---- bands
  auto* bands = app.add_subcommand("bands", "Bloch bands along a k-path");
  WellOptions b_well;
  std::string b_pot = "trig", b_path = "G,K,M,G", b_out = "bands.csv";
  double b_lambda = 5.0;
  int b_N = 12, b_nbands = 5, b_seg = 30;
  bands->add_option("--potential", b_pot, "trig | bump | cylinder");
  add_well_options(bands, b_well);
  bands->add_option("--lambda", b_lambda, "coupling");
  bands->add_option("--N", b_N, "plane-wave truncation |m|_inf <= N");
  bands->add_option("--bands", b_nbands, "number of bands");
  bands->add_option("--path", b_path, "comma-separated nodes among G,K,Kp,M");
  bands->add_option("--samples", b_seg, "samples per path segment");
  bands->add_option("--out", b_out, "output CSV");

  // ---- dirac
  auto* dirac = app.add_subcommand("dirac", "degeneracy and cone report at a vertex");
  WellOptions d_well;
  GridOptions d_grid;
  std::string d_pot = "bump", d_vertex = "K", d_out = "dirac.json", d_cache;
  double d_lambda = 16.0;
  int d_N = 20;
  dirac->add_option("--potential", d_pot, "trig | bump | cylinder");
  add_well_options(dirac, d_well);
  dirac->add_option("--lambda", d_lambda, "coupling");
  dirac->add_option("--N", d_N, "plane-wave truncation");
  dirac->add_option("--vertex", d_vertex, "K or Kp");
  dirac->add_option("--nr", d_grid.n_r, "radial points for the atomic solve");
  dirac->add_option("--out", d_out, "output JSON");
  dirac->add_option("--cache-dir", d_cache, "ground-state cache directory");

  // ---- converge
  auto* conv = app.add_subcommand("converge", "rescaled-dispersion deviation over lambda");
  WellOptions c_well;
  GridOptions c_grid;
  std::string c_lambdas = "8,12,16,20", c_Ns = "", c_out = "converge.csv", c_cache;
  conv->add_option("--lambdas", c_lambdas, "comma-separated couplings");
  conv->add_option("--Ns", c_Ns, "matched truncations (empty: automatic)");
  add_well_options(conv, c_well);
  conv->add_option("--nr", c_grid.n_r, "radial points");
  conv->add_option("--out", c_out, "output CSV");
  conv->add_option("--cache-dir", c_cache, "ground-state cache directory");

  // ---- nofold
  auto* nofold = app.add_subcommand("nofold", "spectral no-fold verdicts on dual slices");
  std::string n_pot = "trig", n_edges = "1,0;1,1;2,1", n_out = "nofold.csv";
  std::string n_lambdas = "1,5", n_slice_dir;
  int n_N = 14, n_M = 41;
  nofold->add_option("--potential", n_pot, "trig | bump | cylinder");
  nofold->add_option("--lambda", n_lambdas, "comma-separated couplings");
  nofold->add_option("--edge", n_edges, "semicolon-separated a,b pairs");
  nofold->add_option("--N", n_N, "plane-wave truncation");
  nofold->add_option("--samples", n_M, "slice samples (odd)");
  nofold->add_option("--out", n_out, "output CSV");
  nofold->add_option("--slice-dir", n_slice_dir, "also write per-case xi,E1,E2,E_D CSVs here");

  // ---- gap
  auto* gap = app.add_subcommand("gap", "gap at K under an inversion-breaking perturbation");
  std::string gp_pot = "trig", gp_etas = "0.005,0.01,0.02,0.05,0.1", gp_out = "gap.csv";
  double gp_lambda = 5.0;
  int gp_N = 14;
  gap->add_option("--potential", gp_pot, "trig | bump | cylinder");
  gap->add_option("--lambda", gp_lambda, "coupling");
  gap->add_option("--N", gp_N, "plane-wave truncation");
  gap->add_option("--etas", gp_etas, "comma-separated perturbation strengths");
  gap->add_option("--out", gp_out, "output CSV");

  // ---- resolvent
  auto* resv = app.add_subcommand("resolvent", "scaled resolvent distance to the two-band model");
  WellOptions rv_well;
  GridOptions rv_grid;
  std::string rv_lambdas = "16,20", rv_out = "resolvent.csv", rv_cache;
  double rv_zim = 1.0;
  int rv_N = 14;
  add_well_options(resv, rv_well);
  resv->add_option("--lambdas", rv_lambdas, "comma-separated couplings");
  resv->add_option("--N", rv_N, "plane-wave truncation");
  resv->add_option("--z-imag", rv_zim, "imaginary part of the spectral parameter");
  resv->add_option("--nr", rv_grid.n_r, "radial points");
  resv->add_option("--out", rv_out, "output CSV");
  resv->add_option("--cache-dir", rv_cache, "ground-state cache directory");

  // ---- geomlemma
  auto* lemma = app.add_subcommand("geomlemma", "grid verification of the geometric estimates");
  LemmaConfig lcfg;
  std::string l_out = "geomlemma.json", l_precision = "double";
  double l_r0_factor = 0.33;
  lemma->add_option("--delta", lcfg.delta, "grid pitch");
  lemma->add_option("--r0-factor", l_r0_factor, "support radius in units of |eA1|");
  lemma->add_option("--epsilon", lcfg.epsilon, "slack in the lattice-vector checks");
  lemma->add_option("--margin-floor", lcfg.margin_floor, "rounding guard");
  lemma->add_option("--index-bound", lcfg.index_bound, "|m|_inf bound for assertions 2-3");
  lemma->add_option("--precision", l_precision, "double | long-double")
      ->check(CLI::IsMember({"double", "long-double"}));
  lemma->add_option("--out", l_out, "output JSON");

  // top-level flags (--config, --threads) may follow the subcommand
  for (CLI::App* sub : {tb, ground, rho, bands, dirac, conv, nofold, gap, resv, lemma})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const auto geom = build_geometry();
    if (threads > 0) {
      static std::string env = "HEXWELL_THREADS=" + std::to_string(threads);
      putenv(env.data());
    }

    if (tb->parsed()) return cmd_tb(tb_grid, tb_out);

    if (ground->parsed()) {
      const GroundState gs = solve_ground(make_well(g_well), g_lambda, g_grid, g_cache);
      write_file_atomic(g_out, ground_state_to_json(gs));
      std::printf("E0=%.12g E1_m0=%.12g E0_m1=%.12g rho=%.12g\n", gs.E0, gs.E1_m0, gs.E0_m1,
                  gs.rho);
      return kExitOk;
    }

    if (rho->parsed()) {
      std::string csv = "lambda,E0,E1_m0,E0_m1,rho,log_rho\n";
      for (double lam : parse_list(r_lambdas)) {
        const GroundState gs = solve_ground(make_well(r_well), lam, r_grid, r_cache);
        csv += fmt(lam) + "," + fmt(gs.E0) + "," + fmt(gs.E1_m0) + "," + fmt(gs.E0_m1) + "," +
               fmt(gs.rho) + "," + fmt(std::log(gs.rho)) + "\n";
      }
      write_file_atomic(r_out, csv);
      return kExitOk;
    }

    if (bands->parsed()) {
      const auto V = make_potential(geom, b_pot, b_well, 2 * b_N);
      const auto prob = make_problem(geom, V, b_lambda, b_N);
      const auto path = build_kpath(geom, b_path, b_seg);
      const BandStructure bs = band_path(prob, path, b_nbands);
      write_file_atomic(b_out, band_structure_to_csv(geom, bs));
      return kExitOk;
    }

    if (dirac->parsed()) {
      const auto V = make_potential(geom, d_pot, d_well, 2 * d_N);
      const auto prob = make_problem(geom, V, d_lambda, d_N);
      std::optional<double> rho_val;
      if (d_pot != "trig") {
        WellOptions w = d_well;
        w.kind = d_pot;
        rho_val = solve_ground(make_well(w), d_lambda, d_grid, d_cache).rho;
      }
      const Vector2d Ks = d_vertex == "Kp" ? geom.Kprime() : geom.K();
      const DiracReport rep = dirac_point(prob, Ks, rho_val);
      write_file_atomic(d_out, dirac_report_to_json(rep, d_lambda, d_N));
      std::printf("E_D=%.12g split=%.3g vF=%.6g leak=%.3g\n", rep.E_D, rep.split, rep.vF,
                  rep.rotation_leak);
      return kExitOk;
    }

    if (conv->parsed()) {
      const auto lambdas = parse_list(c_lambdas);
      std::vector<int> Ns;
      if (c_Ns.empty()) {
        for (double lam : lambdas) Ns.push_back(static_cast<int>(10 + std::lround(lam / 2.0)));
      } else {
        for (double v : parse_list(c_Ns)) Ns.push_back(static_cast<int>(v));
      }
      if (Ns.size() != lambdas.size()) throw ConfigError("--Ns must match --lambdas");
      const auto kset = default_kset(geom);
      std::string csv = "lambda,N,k1_frac,k2_frac,mu_minus,mu_plus,wtb,dev,sup_dev,converged\n";
      for (std::size_t i = 0; i < lambdas.size(); ++i) {
        WellOptions w = c_well;
        const AtomicWell well = make_well(w);
        const GroundState gs = solve_ground(well, lambdas[i], c_grid, c_cache);
        auto run = [&](int N) {
          const auto prob = make_problem(geom, periodize(geom, well, 2 * N), lambdas[i], N);
          return rescaled_dispersion(prob, gs, kset);
        };
        const RescaledDispersion table = run(Ns[i]);
        const RescaledDispersion check = run(Ns[i] + 4);
        const bool converged =
            std::abs(check.sup_dev - table.sup_dev) <= 0.01 * std::abs(table.sup_dev);
        for (const auto& row : table.rows) {
          const Vector2d f = geom.frac(row.k);
          csv += fmt(lambdas[i]) + "," + std::to_string(Ns[i]) + "," + fmt(f.x()) + "," +
                 fmt(f.y()) + "," + fmt(row.mu_minus) + "," + fmt(row.mu_plus) + "," +
                 fmt(row.wtb) + "," + fmt(row.dev) + "," + fmt(table.sup_dev) + "," +
                 (converged ? "1" : "0") + "\n";
        }
      }
      write_file_atomic(c_out, csv);
      return kExitOk;
    }

    if (nofold->parsed()) {
      const auto V = make_potential(geom, n_pot, WellOptions{}, 2 * n_N);
      std::string csv = "lambda,a1,b1,holds,n_crossings,crossings\n";
      bool all_hold = true;
      std::vector<std::pair<int, int>> edges;
      {
        std::stringstream ss(n_edges);
        std::string tok;
        while (std::getline(ss, tok, ';')) {
          const auto ab = parse_list(tok);
          if (ab.size() != 2) throw ConfigError("edge spec needs a,b");
          edges.emplace_back(static_cast<int>(ab[0]), static_cast<int>(ab[1]));
        }
      }
      for (double lam : parse_list(n_lambdas)) {
        const auto prob = make_problem(geom, V, lam, n_N);
        for (const auto& [a1, b1] : edges) {
          const EdgeSpec edge = edge_from_indices(geom, a1, b1);
          const BandSlice slice = dual_slice(prob, edge, geom.K(), n_M);
          if (!n_slice_dir.empty()) {
            char name[96];
            std::snprintf(name, sizeof name, "slice_lam%g_edge%d_%d.csv", lam, a1, b1);
            write_file_atomic((std::filesystem::path(n_slice_dir) / name).string(),
                              band_slice_to_csv(slice));
          }
          const NoFoldResult nf = nofold_check(slice, 1e-6 * lam * lam);
          all_hold = all_hold && nf.holds;
          std::string xs;
          for (double x : nf.crossings) xs += (xs.empty() ? "" : ";") + fmt(x);
          csv += fmt(lam) + "," + std::to_string(a1) + "," + std::to_string(b1) + "," +
                 (nf.holds ? "1" : "0") + "," + std::to_string(nf.crossings.size()) + "," +
                 xs + "\n";
          std::printf("lambda=%-4g edge=(%d,%d)  %s\n", lam, a1, b1,
                      nf.holds ? "holds" : "fails");
        }
      }
      write_file_atomic(n_out, csv);
      return all_hold ? kExitOk : kExitVerdictFalse;
    }

    if (gap->parsed()) {
      auto V = make_potential(geom, gp_pot, WellOptions{}, 2 * gp_N);
      const Vector2d center = V.center();  // W must be odd about the base center
      auto prob = make_problem(geom, std::move(V), gp_lambda, gp_N);
      prob.W = pt_breaking_potential(geom, center);
      const auto rows = gap_vs_eta(prob, geom.K(), parse_list(gp_etas));
      std::string csv = "eta,gap,theta_sharp,predicted_gap,ratio\n";
      for (const auto& r : rows)
        csv += fmt(r.eta) + "," + fmt(r.gap) + "," + fmt(r.theta_sharp) + "," +
               fmt(r.predicted_gap) + "," + fmt(r.gap / r.predicted_gap) + "\n";
      write_file_atomic(gp_out, csv);
      return kExitOk;
    }

    if (resv->parsed()) {
      const AtomicWell well = make_well(rv_well);
      std::string csv = "lambda,k_label,distance,mode_overlap\n";
      for (double lam : parse_list(rv_lambdas)) {
        const GroundState gs = solve_ground(well, lam, rv_grid, rv_cache);
        const auto prob = make_problem(geom, periodize(geom, well, 2 * rv_N), lam, rv_N);
        const Vector2d pts[2] = {Vector2d::Zero(), 0.5 * geom.K()};
        const char* labels[2] = {"Gamma", "mid-Gamma-K"};
        for (int i = 0; i < 2; ++i) {
          const auto res = resolvent_distance(prob, gs, pts[i], complexd(0.0, rv_zim));
          csv += fmt(lam) + std::string(",") + labels[i] + "," + fmt(res.distance) + "," +
                 fmt(res.mode_overlap) + "\n";
        }
      }
      write_file_atomic(rv_out, csv);
      return kExitOk;
    }

    if (lemma->parsed()) {
      lcfg.r0 = l_r0_factor / std::sqrt(3.0);
      lcfg.precision =
          l_precision == "double" ? LemmaPrecision::Double : LemmaPrecision::LongDouble;
      lcfg.threads = threads;
      const LemmaReport rep = run_geom_lemma(lcfg);
      write_file_atomic(l_out, lemma_report_to_json(rep));
      std::printf("grid=%lld  margins: a1=%.3g a2=%.3g a3=%.3g a4=%.3g  verdicts=%d%d%d%d\n",
                  rep.grid_size, rep.a1.min_margin, rep.a2.min_margin, rep.a3.min_margin,
                  rep.a4.min_margin, rep.a1.verdict, rep.a2.verdict, rep.a3.verdict,
                  rep.a4.verdict);
      return rep.all_verdicts() ? kExitOk : kExitVerdictFalse;
    }
  } catch (const ConfigError& e) {
    json err{{"error", "config"}, {"message", e.what()}};
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return kExitConfig;
  } catch (const std::exception& e) {
    json err{{"error", "numeric"}, {"message", e.what()}};
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return kExitNumeric;
  }
  return kExitConfig;
}
