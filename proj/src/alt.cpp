#include "dsfusion/alt.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "dsfusion/error.hpp"
#include "dsfusion/kernels.hpp"
#include "ordering.hpp"

namespace dsfusion {

namespace {

constexpr double kTotalAltConflictThreshold = 1e-12;
constexpr double kUnitConflictThreshold = 1e-12;
// Dense transform is used up to this frame size under TransformPath::kAuto.
constexpr std::size_t kDenseTransformFrame = 16;

bool by_subset(const WeightedSubset& a, const WeightedSubset& b) { return a.subset < b.subset; }

void require_alt_frame(const Frame& frame, std::size_t max_frame) {
  if (frame.size() > max_frame) {
    throw FusionError(ErrorCode::kFrameTooLargeForAltFusion,
                      "alternative fusion is limited to frames of " + std::to_string(max_frame) +
                          " elements (got " + std::to_string(frame.size()) + ")");
  }
}

}  // namespace

class TransformBuilder {
 public:
  static TransformedMeasure build(const Frame& frame, std::vector<WeightedSubset> weights, std::string source) {
    return TransformedMeasure(frame, std::move(weights), std::move(source));
  }
};

double TransformedMeasure::weight(SubsetId subset) const {
  const auto it = std::lower_bound(weights_.begin(), weights_.end(), WeightedSubset{subset, 0.0}, by_subset);
  return (it != weights_.end() && it->subset == subset) ? it->weight : 0.0;
}

namespace {

std::vector<WeightedSubset> transform_dense(const MassFunction& m) {
  const std::size_t n = m.frame().size();
  std::vector<double> table(std::size_t{1} << n, 0.0);
  for (const auto& f : m.focal_elements()) table[f.subset.bits()] = f.mass / f.subset.cardinality();
  kernels::active().superset_sum(table, n);

  // Support is the downward closure of the focal elements; anything else in
  // the table is an exact zero already, but the mask keeps it explicit.
  std::vector<bool> in_support(table.size(), false);
  for (const auto& f : m.focal_elements()) in_support[f.subset.bits()] = true;
  for (std::size_t step = 1; step < table.size(); step <<= 1) {
    for (std::size_t s = 0; s < table.size(); ++s) {
      if ((s & step) != 0 && in_support[s]) in_support[s ^ step] = true;
    }
  }

  std::vector<WeightedSubset> out;
  for (std::size_t s = 1; s < table.size(); ++s) {
    if (in_support[s] && table[s] > 0.0) out.push_back({SubsetId{s}, table[s]});
  }
  return out;
}

std::vector<WeightedSubset> transform_sparse(const MassFunction& m) {
  std::unordered_map<std::uint64_t, double> acc;
  for (const auto& f : m.focal_elements()) {
    const double share = f.mass / f.subset.cardinality();
    const std::uint64_t h = f.subset.bits();
    // non-empty submasks of h, descending
    for (std::uint64_t s = h; s != 0; s = (s - 1) & h) acc[s] += share;
  }
  std::vector<WeightedSubset> out;
  out.reserve(acc.size());
  for (const auto& [bits, w] : acc) {
    if (w > 0.0) out.push_back({SubsetId{bits}, w});
  }
  std::sort(out.begin(), out.end(), by_subset);
  return out;
}

}  // namespace

TransformedMeasure transform(const MassFunction& m, const TransformOptions& options) {
  for (const auto& f : m.focal_elements()) {
    if (static_cast<std::size_t>(f.subset.cardinality()) > kernels::kMaxDenseFrame) {
      throw FusionError(ErrorCode::kFrameTooLargeForAltFusion,
                        "focal element with " + std::to_string(f.subset.cardinality()) +
                            " members has too many subsets to transform");
    }
  }
  const std::size_t n = m.frame().size();
  TransformPath path = options.path;
  if (path == TransformPath::kAuto) path = n <= kDenseTransformFrame ? TransformPath::kDense : TransformPath::kSparse;
  if (path == TransformPath::kDense && n > kernels::kMaxDenseFrame) {
    throw FusionError(ErrorCode::kFrameTooLargeForDenseTable,
                      "dense transform supports at most " + std::to_string(kernels::kMaxDenseFrame) + " elements");
  }
  auto weights = path == TransformPath::kDense ? transform_dense(m) : transform_sparse(m);
  return TransformBuilder::build(m.frame(), std::move(weights), options.source);
}

std::string_view to_string(AltStrategy strategy) noexcept {
  switch (strategy) {
    case AltStrategy::kAuto: return "auto";
    case AltStrategy::kPairs: return "pairs";
    case AltStrategy::kDense: return "dense";
  }
  return "auto";
}

namespace {

struct OrderedPair {
  const TransformedMeasure& first;
  const TransformedMeasure& second;
};

OrderedPair canonical(const TransformedMeasure& mu1, const TransformedMeasure& mu2) {
  if (detail::canonical_less<WeightedSubset, &WeightedSubset::weight>(mu2.weights(), mu1.weights())) {
    return {mu2, mu1};
  }
  return {mu1, mu2};
}

// Unnormalised conjunctive sums: entry A != 0 is the product weight landing on
// A, entry 0 the conflict. Stored densely up to kMaxDenseFrame, else hashed.
struct Conjunction {
  std::vector<WeightedSubset> meets;  // ascending, A != 0, value > 0
  double conflict = 0.0;
  std::uint64_t pair_count = 0;
};

Conjunction conjunction_pairs(const TransformedMeasure& mu1, const TransformedMeasure& mu2) {
  const auto [a, b] = canonical(mu1, mu2);
  const std::size_t n = a.frame().size();
  Conjunction out;
  if (n <= kernels::kMaxDenseFrame) {
    std::vector<double> acc(std::size_t{1} << n, 0.0);
    for (const auto& x : a.weights()) {
      for (const auto& y : b.weights()) {
        const std::uint64_t meet = x.subset.bits() & y.subset.bits();
        acc[meet] += x.weight * y.weight;
        if (meet != 0) ++out.pair_count;
      }
    }
    out.conflict = acc[0];
    for (std::size_t s = 1; s < acc.size(); ++s) {
      if (acc[s] > 0.0) out.meets.push_back({SubsetId{s}, acc[s]});
    }
  } else {
    std::unordered_map<std::uint64_t, double> acc;
    for (const auto& x : a.weights()) {
      for (const auto& y : b.weights()) {
        const std::uint64_t meet = x.subset.bits() & y.subset.bits();
        if (meet == 0) {
          out.conflict += x.weight * y.weight;
        } else {
          acc[meet] += x.weight * y.weight;
          ++out.pair_count;
        }
      }
    }
    for (const auto& [bits, value] : acc) {
      if (value > 0.0) out.meets.push_back({SubsetId{bits}, value});
    }
    std::sort(out.meets.begin(), out.meets.end(), by_subset);
  }
  return out;
}

Conjunction conjunction_dense(const TransformedMeasure& mu1, const TransformedMeasure& mu2) {
  const std::size_t n = mu1.frame().size();
  const std::size_t size = std::size_t{1} << n;
  const auto& k = kernels::active();

  std::vector<double> q1(size, 0.0);
  std::vector<double> q2(size, 0.0);
  for (const auto& w : mu1.weights()) q1[w.subset.bits()] = w.weight;
  for (const auto& w : mu2.weights()) q2[w.subset.bits()] = w.weight;
  k.superset_sum(q1, n);
  k.superset_sum(q2, n);
  k.multiply(q1, q2);
  k.superset_difference(q1, n);

  Conjunction out;
  out.conflict = q1[0];

  // Both supports are downward closed, so A = A & A is reachable exactly
  // when A lies in both; everything else is cancellation residue.
  std::vector<double> count2(size, 0.0);
  for (const auto& w : mu2.weights()) count2[w.subset.bits()] = 1.0;
  const std::vector<double> member2 = count2;
  for (const auto& w : mu1.weights()) {
    const std::uint64_t s = w.subset.bits();
    if (member2[s] != 0.0 && q1[s] > 0.0) out.meets.push_back({w.subset, q1[s]});
  }

  // intersecting pairs = all pairs - pairs with A2 inside the complement of A1
  k.subset_sum(count2, n);
  const std::uint64_t full = size - 1;
  double disjoint = 0.0;
  for (const auto& w : mu1.weights()) disjoint += count2[full & ~w.subset.bits()];
  out.pair_count = static_cast<std::uint64_t>(mu1.support_size()) * mu2.support_size() -
                   static_cast<std::uint64_t>(disjoint);
  return out;
}

AltStrategy resolve(AltStrategy requested, std::size_t n, std::size_t support1, std::size_t support2) {
  if (requested != AltStrategy::kAuto) return requested;
  if (n > kernels::kMaxDenseFrame) return AltStrategy::kPairs;
  const double pair_cost = static_cast<double>(support1) * static_cast<double>(support2);
  const double dense_cost = 4.0 * static_cast<double>(n + 1) * std::ldexp(1.0, static_cast<int>(n));
  return pair_cost > dense_cost ? AltStrategy::kDense : AltStrategy::kPairs;
}

}  // namespace

double alt_conflict(const TransformedMeasure& mu1, const TransformedMeasure& mu2) {
  require_same_frame(mu1.frame(), mu2.frame());
  const auto [a, b] = canonical(mu1, mu2);
  double sum = 0.0;
  for (const auto& x : a.weights()) {
    for (const auto& y : b.weights()) {
      if (!x.subset.intersects(y.subset)) sum += x.weight * y.weight;
    }
  }
  return sum;
}

AltFusionResult alt_combine(const TransformedMeasure& mu1, const TransformedMeasure& mu2, const AltOptions& options) {
  require_same_frame(mu1.frame(), mu2.frame());
  const Frame& frame = mu1.frame();
  require_alt_frame(frame, options.max_frame);

  const AltStrategy strategy = resolve(options.strategy, frame.size(), mu1.support_size(), mu2.support_size());
  if (strategy == AltStrategy::kDense && frame.size() > kernels::kMaxDenseFrame) {
    throw FusionError(ErrorCode::kFrameTooLargeForDenseTable,
                      "dense strategy supports at most " + std::to_string(kernels::kMaxDenseFrame) + " elements");
  }
  Conjunction conj = strategy == AltStrategy::kDense ? conjunction_dense(mu1, mu2) : conjunction_pairs(mu1, mu2);

  double denominator = 0.0;
  for (const auto& m : conj.meets) denominator += m.weight;
  if (denominator <= kTotalAltConflictThreshold) {
    throw FusionError(ErrorCode::kTotalAltConflict,
                      "every pair of transformed supports is disjoint: the alternative rule is undefined");
  }

  std::vector<FocalElement> out;
  out.reserve(conj.meets.size());
  for (const auto& m : conj.meets) out.push_back({m.subset, m.weight / denominator});

  AltFusionResult result{make_bba(frame, std::move(out)), conj.conflict, std::nullopt, denominator,
                         conj.pair_count, strategy};
  const double unit_gap = 1.0 - conj.conflict;
  if (std::abs(unit_gap) > kUnitConflictThreshold) result.normalizer_K = denominator / unit_gap;
  return result;
}

AltFusionResult fuse(const MassFunction& m1, const MassFunction& m2, const AltOptions& options) {
  require_same_frame(m1.frame(), m2.frame());
  require_alt_frame(m1.frame(), options.max_frame);
  return alt_combine(transform(m1, {.source = "m1"}), transform(m2, {.source = "m2"}), options);
}

}  // namespace dsfusion
