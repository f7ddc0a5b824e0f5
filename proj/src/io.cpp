#include "hexwell/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "hexwell/errors.hpp"

namespace hexwell {

using nlohmann::json;

namespace {

const char* well_kind_name(WellKind k) {
  return k == WellKind::SmoothBump ? "smooth-bump" : "smoothed-cylinder";
}

WellKind well_kind_from_name(const std::string& s) {
  if (s == "smooth-bump") return WellKind::SmoothBump;
  if (s == "smoothed-cylinder") return WellKind::SmoothedCylinder;
  throw ConfigError("unknown well kind: " + s);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json assertion_to_json(const AssertionReport& a) {
  return json{{"name", a.name},
              {"checked_pairs", a.checked_pairs},
              {"min_margin", a.min_margin},
              {"verdict", a.verdict},
              {"witness",
               {{"z", {a.z.x(), a.z.y()}},
                {"y", {a.y.x(), a.y.y()}},
                {"l0", a.l0},
                {"index", {a.index.m1, a.index.m2}}}}};
}

}  // namespace

std::string ground_state_to_json(const GroundState& gs) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["lambda"] = gs.lambda;
  j["E0"] = gs.E0;
  j["E1_m0"] = gs.E1_m0;
  j["E0_m1"] = gs.E0_m1;
  j["norm"] = gs.norm;
  j["rho"] = gs.rho;
  j["well"] = {{"kind", well_kind_name(gs.well_kind)},
               {"r0", gs.well_r0},
               {"smoothing", gs.well_smoothing}};
  j["n_r"] = gs.n_r;
  j["radial_grid"] = gs.radial_grid;
  j["u"] = gs.u;
  return j.dump();
}

GroundState ground_state_from_json(const std::string& text) {
  const json j = json::parse(text);
  GroundState gs;
  gs.lambda = j.at("lambda").get<double>();
  gs.E0 = j.at("E0").get<double>();
  gs.E1_m0 = j.at("E1_m0").get<double>();
  gs.E0_m1 = j.at("E0_m1").get<double>();
  gs.norm = j.at("norm").get<double>();
  gs.rho = j.at("rho").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                 : j.at("rho").get<double>();
  gs.well_kind = well_kind_from_name(j.at("well").at("kind").get<std::string>());
  gs.well_r0 = j.at("well").at("r0").get<double>();
  gs.well_smoothing = j.at("well").at("smoothing").get<double>();
  gs.n_r = j.at("n_r").get<int>();
  gs.radial_grid = j.at("radial_grid").get<std::vector<double>>();
  gs.u = j.at("u").get<std::vector<double>>();
  return gs;
}

std::string potential_to_json(const FourierPotential& V) {
  json coeffs = json::array();
  for (int m1 = -V.cutoff(); m1 <= V.cutoff(); ++m1)
    for (int m2 = -V.cutoff(); m2 <= V.cutoff(); ++m2) {
      const complexd c = V.coeff(m1, m2);
      if (c == complexd(0.0, 0.0)) continue;
      coeffs.push_back({m1, m2, c.real(), c.imag()});
    }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["label"] = V.label();
  j["cutoff"] = V.cutoff();
  j["truncated"] = V.truncated();
  j["coeffs"] = coeffs;
  return j.dump();
}

FourierPotential potential_from_json(const std::string& text) {
  const json j = json::parse(text);
  FourierPotential V(j.at("cutoff").get<int>(), j.at("truncated").get<bool>(),
                     j.at("label").get<std::string>());
  for (const auto& row : j.at("coeffs"))
    V.set_coeff(row.at(0).get<int>(), row.at(1).get<int>(),
                complexd(row.at(2).get<double>(), row.at(3).get<double>()));
  return V;
}

std::string dirac_report_to_json(const DiracReport& rep, double lambda, int N) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = {{"lambda", lambda}, {"N", N}};
  j["Kstar"] = {rep.Kstar.x(), rep.Kstar.y()};
  j["E_D"] = rep.E_D;
  j["split"] = rep.split;
  j["vF"] = rep.vF;
  if (std::isfinite(rep.vF_ratio)) j["vF_ratio"] = rep.vF_ratio;
  j["vF_anisotropy"] = rep.vF_anisotropy;
  j["tau_index"] = rep.tau_index;
  j["rot_eig_tau"] = {rep.rot_eig_tau.real(), rep.rot_eig_tau.imag()};
  j["rot_eig_taubar"] = {rep.rot_eig_taubar.real(), rep.rot_eig_taubar.imag()};
  j["rotation_leak"] = rep.rotation_leak;
  auto dump_vec = [](const VectorXcd& v) {
    json arr = json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back({v[i].real(), v[i].imag()});
    return arr;
  };
  j["phi1"] = dump_vec(rep.phi1);
  j["phi2"] = dump_vec(rep.phi2);
  return j.dump();
}

std::string lemma_report_to_json(const LemmaReport& rep) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = {{"delta", rep.config.delta},
                 {"r0", rep.config.r0},
                 {"epsilon", rep.config.epsilon},
                 {"margin_floor", rep.config.margin_floor},
                 {"index_bound", rep.config.index_bound},
                 {"precision", rep.config.precision == LemmaPrecision::Double
                                   ? "double"
                                   : "long-double"}};
  j["grid_size"] = rep.grid_size;
  json cand = json::array();
  for (const auto& n : rep.candidate_n) cand.push_back({n.m1, n.m2});
  j["candidate_n"] = cand;
  j["assertions"] = {assertion_to_json(rep.a1), assertion_to_json(rep.a2),
                     assertion_to_json(rep.a3), assertion_to_json(rep.a4)};
  j["c_prime"] = rep.a1.min_margin / (1.0 / std::sqrt(3.0));
  j["all_verdicts"] = rep.all_verdicts();
  return j.dump(2);
}

std::string band_structure_to_csv(const HoneycombGeometry& geom, const BandStructure& bs) {
  std::string out = "k1_frac,k2_frac";
  for (int b = 1; b <= bs.n_bands; ++b) out += ",E_" + std::to_string(b);
  out += "\n";
  for (std::size_t i = 0; i < bs.kpoints.size(); ++i) {
    const Vector2d f = geom.frac(bs.kpoints[i]);
    out += fmt(f.x()) + "," + fmt(f.y());
    for (int b = 0; b < bs.n_bands; ++b)
      out += "," + fmt(bs.energies(static_cast<Index>(i), b));
    out += "\n";
  }
  return out;
}

std::string band_slice_to_csv(const BandSlice& slice) {
  std::string out = "xi,E1,E2,E_D\n";
  for (std::size_t i = 0; i < slice.xis.size(); ++i)
    out += fmt(slice.xis[i]) + "," + fmt(slice.E1[i]) + "," + fmt(slice.E2[i]) + "," +
           fmt(slice.E_D) + "\n";
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string());
    os << content;
  }
  fs::rename(tmp, target);
}

std::string ground_state_cache_key(WellKind kind, double r0, double smoothing,
                                   double lambda, int n_r, double Rmax) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s|%.17g|%.17g|%.17g|%d|%.17g", well_kind_name(kind), r0,
                smoothing, lambda, n_r, Rmax);
  std::uint64_t h = 1469598103934665603ull;
  for (const char* p = buf; *p; ++p) {
    h ^= static_cast<unsigned char>(*p);
    h *= 1099511628211ull;
  }
  char out[24];
  std::snprintf(out, sizeof out, "%016" PRIx64, h);
  return out;
}

}  // namespace hexwell
