#pragma once

#include <string>
#include <vector>

#include "hexwell/lattice.hpp"
#include "hexwell/types.hpp"

namespace hexwell {

enum class LemmaPrecision { Double, LongDouble };

struct LemmaConfig {
  double delta = 0.5e-2;                    // grid pitch
  double r0 = 0.33 * 0.5773502691896258;    // support radius, 0.33 |eA1|
  double epsilon = 1e-8;                    // slack in the lattice-vector checks
  double margin_floor = 1e-10;              // one-sided rounding guard
  int index_bound = 8;                      // |m|_inf for the bounded checks
  LemmaPrecision precision = LemmaPrecision::Double;
  int threads = 0;                          // 0: default
};

struct AssertionReport {
  std::string name;
  long long checked_pairs = 0;
  double min_margin = 0.0;
  bool verdict = false;
  // worst witness
  Vector2d z = Vector2d::Zero();
  Vector2d y = Vector2d::Zero();
  int l0 = 0;
  Index2 index;  // the lattice index (n or m) at the worst margin, when applicable
};

struct LemmaReport {
  LemmaConfig config;
  long long grid_size = 0;
  std::vector<Index2> candidate_n;  // lattice vectors enumerated for assertion 4
  AssertionReport a1, a2, a3, a4;
  bool all_verdicts() const { return a1.verdict && a2.verdict && a3.verdict && a4.verdict; }
};

// Grid of points (p1, p2) delta with |x| < r0 + delta/sqrt(2), row-major by
// p2 then p1 (deterministic order).
std::vector<Vector2d> build_grid(const LemmaConfig& cfg);

// Nonzero n with |n1 v1 + n2 v2| <= |eA1| + 3 r0 + epsilon.
std::vector<Index2> assertion4_candidates(const LemmaConfig& cfg);

// Indices m with |eA1 + m1 v1 + m2 v2| = |eA1| (the nearest-neighbour images).
std::vector<Index2> n_bad_set();

AssertionReport verify_assertion1(const LemmaConfig& cfg);
AssertionReport verify_assertion4(const LemmaConfig& cfg);
// Bounded-index checks of assertions (2) and (3).
std::pair<AssertionReport, AssertionReport> verify_assertions23_bounded(const LemmaConfig& cfg);

LemmaReport run_geom_lemma(const LemmaConfig& cfg);

}  // namespace hexwell
