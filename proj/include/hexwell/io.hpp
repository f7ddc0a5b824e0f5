#pragma once

#include <string>

#include "hexwell/atomic.hpp"
#include "hexwell/bloch.hpp"
#include "hexwell/edges.hpp"
#include "hexwell/geomlemma.hpp"
#include "hexwell/potential.hpp"

namespace hexwell {

inline constexpr int kSchemaVersion = 1;

// JSON documents carry "schema_version" and enough of the configuration to
// reproduce the run.
std::string ground_state_to_json(const GroundState& gs);
GroundState ground_state_from_json(const std::string& text);

std::string potential_to_json(const FourierPotential& V);
FourierPotential potential_from_json(const std::string& text);

std::string dirac_report_to_json(const DiracReport& rep, double lambda, int N);
std::string lemma_report_to_json(const LemmaReport& rep);

// CSV: comma separator, '.' decimal point, LF line endings, header row first.
std::string band_structure_to_csv(const HoneycombGeometry& geom, const BandStructure& bs);
std::string band_slice_to_csv(const BandSlice& slice);

// Writes via a temporary file in the same directory, then renames.
void write_file_atomic(const std::string& path, const std::string& content);

// Cache key for ground-state JSON files (FNV-1a over the defining parameters).
std::string ground_state_cache_key(WellKind kind, double r0, double smoothing,
                                   double lambda, int n_r, double Rmax);

}  // namespace hexwell
