#pragma once

#include <vector>

#include "dsfusion/mass_function.hpp"

namespace dsfusion {

/// Dempster's rule is refused when 1 - conflict falls to or below this.
inline constexpr double kTotalConflictThreshold = 1e-12;

/// Default max-norm tolerance for "replicates an input".
inline constexpr double kDefaultAnomalyEpsilon = 1e-9;

/// Total product mass on disjoint focal pairs, in [0,1].
struct ConflictValue {
  double value = 0.0;
};

enum class Source { kNone, kSource1, kSource2 };

std::string_view to_string(Source source) noexcept;

struct AnomalyVerdict {
  bool anomalous = false;
  Source matched_source = Source::kNone;
  /// Either input is vacuous: replication is then the expected neutrality.
  bool vacuous_input = false;
  /// Max-norm distance from the combined output to the closer input.
  double max_deviation = 0.0;
};

struct DempsterResult {
  MassFunction combined;
  ConflictValue conflict;
};

/// Bel(A): total mass of focal elements contained in A.
double belief(const MassFunction& m, SubsetId subset);

/// Pl(A): total mass of focal elements meeting A.
double plausibility(const MassFunction& m, SubsetId subset);

/// Bel at every subset, indexed by encoded value. O(n 2^n) through the
/// subset-sum kernel; frames above kernels::kMaxDenseFrame are refused.
std::vector<double> belief_table(const MassFunction& m);

ConflictValue conflict(const MassFunction& m1, const MassFunction& m2);

/// Dempster's rule over focal-element pairs. Symmetric in its arguments bit
/// for bit. Throws TotalConflict when 1 - conflict <= kTotalConflictThreshold.
DempsterResult dempster_combine(const MassFunction& m1, const MassFunction& m2);

/// Flags a combination that replicates one of two differing inputs to within
/// `epsilon` at every subset. Source 1 wins ties.
AnomalyVerdict detect_anomaly(const MassFunction& m1, const MassFunction& m2, const MassFunction& combined,
                              double epsilon = kDefaultAnomalyEpsilon);

}  // namespace dsfusion
