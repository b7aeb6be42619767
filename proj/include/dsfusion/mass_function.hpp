#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dsfusion/frame.hpp"

namespace dsfusion {

/// Tolerance on |sum of masses - 1| accepted by make_bba.
inline constexpr double kSumTolerance = 1e-9;

struct FocalElement {
  SubsetId subset;
  double mass = 0.0;

  friend bool operator==(const FocalElement&, const FocalElement&) = default;
};

struct BbaOptions {
  /// Rescale the masses to sum to exactly one instead of rejecting a sum
  /// outside tolerance. Never applied unless asked for.
  bool normalize = false;
};

/// Basic belief assignment over a Frame. Immutable; the only way to obtain
/// one is through make_bba (or the helpers built on it), so every instance
/// satisfies: masses in (0,1], no mass on the empty set, sum within
/// kSumTolerance of one. Focal elements are kept sorted by encoded value.
class MassFunction {
 public:
  const Frame& frame() const { return frame_; }
  std::span<const FocalElement> focal_elements() const { return focal_; }
  std::size_t focal_count() const { return focal_.size(); }

  /// m(A); zero for non-focal subsets, including the empty set.
  double mass(SubsetId subset) const;
  bool is_focal(SubsetId subset) const { return mass(subset) > 0.0; }
  bool is_vacuous() const;
  double total() const;

  friend bool operator==(const MassFunction& a, const MassFunction& b) {
    return a.frame_ == b.frame_ && a.focal_ == b.focal_;
  }

 private:
  friend MassFunction make_bba(const Frame&, std::vector<FocalElement>, BbaOptions);

  MassFunction(Frame frame, std::vector<FocalElement> focal)
      : frame_(std::move(frame)), focal_(std::move(focal)) {}

  Frame frame_;
  std::vector<FocalElement> focal_;
};

/// Validates `entries` and builds a MassFunction. Entries with mass exactly
/// zero are dropped first.
MassFunction make_bba(const Frame& frame, std::vector<FocalElement> entries, BbaOptions options = {});

/// All mass on the full frame.
MassFunction vacuous_bba(const Frame& frame);

/// Every subset where the two mass functions differ by more than `epsilon`,
/// in ascending encoded order. Never has exactly one element for two valid
/// mass functions.
std::vector<SubsetId> differing_subsets(const MassFunction& m1, const MassFunction& m2, double epsilon);

/// max over all subsets of |m1(A) - m2(A)|.
double max_abs_difference(const MassFunction& m1, const MassFunction& m2);

}  // namespace dsfusion
