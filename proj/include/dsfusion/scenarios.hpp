#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dsfusion/alt.hpp"
#include "dsfusion/classic.hpp"
#include "dsfusion/mass_function.hpp"

namespace dsfusion {

// --- Two Doctors template --------------------------------------------------
//
// Frame {A, B, C}.
//   doctor 1: {A}: a,  {A,B}: 1 - a
//   doctor 2: {A,B}: b1,  {C}: 1 - b1 - b2,  {A,B,C}: b2
// with a in [0,1], b1 > 0, b2 > 0, b1 + b2 <= 1. Dempster's rule returns
// doctor 1 unchanged for every admissible parameter choice.

struct TwoDoctorsParams {
  double a = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

/// Throws InvalidParams for inadmissible parameters.
void validate(const TwoDoctorsParams& params);

Frame two_doctors_frame();

/// Returns (doctor 1, doctor 2). Zero-mass entries are dropped.
std::pair<MassFunction, MassFunction> two_doctors(const TwoDoctorsParams& params);

// --- Paradox sweep -----------------------------------------------------------

/// Inclusive arithmetic progression lo, lo + step, ... <= hi.
struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;

  std::vector<double> values() const;
};

struct SweepGrid {
  ParamRange a{0.1, 0.9, 0.2};
  ParamRange b1{0.1, 0.5, 0.2};
  ParamRange b2{0.1, 0.4, 0.1};

  /// Cartesian product, keeping only points with b1 + b2 <= 1. Throws
  /// InvalidParams for malformed ranges or an empty result.
  std::vector<TwoDoctorsParams> points() const;
};

struct SweepPoint {
  TwoDoctorsParams params;
  double conflict = 0.0;
  AnomalyVerdict dempster;
  AnomalyVerdict alt;
  MassFunction alt_combined;
  /// SHA-256 of the canonical serialisation of alt_combined.
  std::string alt_digest;
};

struct SweepReport {
  double epsilon = kDefaultAnomalyEpsilon;
  std::vector<SweepPoint> points;

  std::size_t dempster_anomalous() const;
  std::size_t alt_anomalous() const;
};

SweepReport paradox_sweep(const SweepGrid& grid, double epsilon = kDefaultAnomalyEpsilon);

// --- Random mass functions and the replication verifier -------------------

/// Picks k uniformly in [1, max_focal], then k distinct non-empty subsets
/// uniformly without replacement, then masses uniformly on the simplex via
/// sorted uniform gaps. Masses below 1e-12 are dropped and the rest
/// renormalised. Deterministic given the engine state.
MassFunction random_bba(const Frame& frame, std::uint64_t max_focal, std::mt19937_64& rng);

/// Frame {t1, ..., tn} used by the verifier.
Frame numbered_frame(std::size_t n);

/// Per-trial engine seeded from (seed, trial index) only.
std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial);

struct TheoremOptions {
  /// Require one subset that differs from both inputs (the strict reading).
  /// When false, separate witnesses for each input suffice.
  bool same_witness = true;
  /// Worker threads; results do not depend on this.
  unsigned threads = 1;
  /// Upper bound on focal elements per random input; 0 means 2^n - 1.
  std::uint64_t max_focal = 0;
};

struct TheoremViolation {
  std::uint64_t trial = 0;
  MassFunction m1;
  MassFunction m2;
  MassFunction combined;
};

struct TheoremTrialReport {
  std::size_t frame_size = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double epsilon = kDefaultAnomalyEpsilon;
  bool same_witness = true;
  std::uint64_t passes = 0;
  std::uint64_t skipped_identical = 0;
  std::vector<TheoremViolation> violations;
  /// Trials where the alternative rule was undefined (every support pair
  /// disjoint); counted neither as pass nor as violation.
  std::vector<std::uint64_t> total_conflict_trials;
};

/// Outcome of one verifier trial, exposed for targeted tests.
enum class TrialOutcome { kPass, kViolation, kSkippedIdentical, kTotalConflict };

TrialOutcome check_replication(const MassFunction& m1, const MassFunction& m2, double epsilon, bool same_witness,
                               std::optional<MassFunction>* combined_out = nullptr);

/// Requires frame_size in [2, 8], trials >= 1, epsilon > 0.
TheoremTrialReport verify_theorem(std::size_t frame_size, std::uint64_t trials, std::uint64_t seed,
                                  double epsilon = kDefaultAnomalyEpsilon, const TheoremOptions& options = {});

}  // namespace dsfusion
