#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dsfusion/mass_function.hpp"

namespace dsfusion {

/// Frames above this size are refused by the alternative rule unless the
/// caller raises AltOptions::max_frame.
inline constexpr std::size_t kDefaultAltMaxFrame = 12;

struct WeightedSubset {
  SubsetId subset;
  double weight = 0.0;

  friend bool operator==(const WeightedSubset&, const WeightedSubset&) = default;
};

/// Mass redistributed evenly over the elements of each focal set and
/// extended to subsets by superset sums:
///
///   weight(A) = sum over focal H with A subset of H of m(H) / |H|
///
/// On singletons this is the per-element share; on larger sets it is the
/// share common to all members. The support is every non-empty subset of a
/// focal element, stored sorted by encoded value.
class TransformedMeasure {
 public:
  const Frame& frame() const { return frame_; }
  std::span<const WeightedSubset> weights() const { return weights_; }
  /// Provenance note naming the source mass function.
  const std::string& source() const { return source_; }

  double weight(SubsetId subset) const;
  std::size_t support_size() const { return weights_.size(); }

 private:
  friend class TransformBuilder;

  TransformedMeasure(Frame frame, std::vector<WeightedSubset> weights, std::string source)
      : frame_(std::move(frame)), weights_(std::move(weights)), source_(std::move(source)) {}

  Frame frame_;
  std::vector<WeightedSubset> weights_;
  std::string source_;
};

enum class TransformPath { kAuto, kDense, kSparse };

struct TransformOptions {
  std::string source;
  TransformPath path = TransformPath::kAuto;
};

/// Throws FrameTooLargeForAltFusion when a focal element has more than
/// kernels::kMaxDenseFrame members (its subsets could not be enumerated).
TransformedMeasure transform(const MassFunction& m, const TransformOptions& options = {});

/// How alt_combine enumerates the conjunctive sum.
enum class AltStrategy {
  kAuto,
  /// Every ordered pair of support subsets.
  kPairs,
  /// Superset-sum both measures, multiply pointwise, invert (dense kernels).
  kDense,
};

std::string_view to_string(AltStrategy strategy) noexcept;

struct AltOptions {
  std::size_t max_frame = kDefaultAltMaxFrame;
  AltStrategy strategy = AltStrategy::kAuto;
};

struct AltFusionResult {
  MassFunction combined;
  /// Product weight on disjoint support pairs. Not bounded by one.
  double conflict_mu = 0.0;
  /// Normalisation constant K with K (1 - conflict_mu) = denominator.
  /// Negative when conflict_mu > 1; absent when 1 - conflict_mu is within
  /// 1e-12 of zero.
  std::optional<double> normalizer_K;
  /// Product weight on intersecting support pairs; always positive.
  double denominator = 0.0;
  /// Number of intersecting (contributing) support pairs.
  std::uint64_t pair_count = 0;
  AltStrategy strategy = AltStrategy::kPairs;
};

/// Product weight over disjoint support pairs.
double alt_conflict(const TransformedMeasure& mu1, const TransformedMeasure& mu2);

/// Conjunctive pooling of two transformed measures, normalised to one.
/// Throws TotalAltConflict when every support pair is disjoint and
/// FrameTooLargeForAltFusion above options.max_frame.
AltFusionResult alt_combine(const TransformedMeasure& mu1, const TransformedMeasure& mu2,
                            const AltOptions& options = {});

/// transform both inputs, then alt_combine.
AltFusionResult fuse(const MassFunction& m1, const MassFunction& m2, const AltOptions& options = {});

}  // namespace dsfusion
