#include "dsfusion/classic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "dsfusion/error.hpp"
#include "dsfusion/kernels.hpp"
#include "ordering.hpp"

namespace dsfusion {

std::string_view to_string(Source source) noexcept {
  switch (source) {
    case Source::kNone: return "none";
    case Source::kSource1: return "source1";
    case Source::kSource2: return "source2";
  }
  return "none";
}

double belief(const MassFunction& m, SubsetId subset) {
  require_owned(m.frame(), subset);
  double sum = 0.0;
  for (const auto& f : m.focal_elements()) {
    if (f.subset.is_subset_of(subset)) sum += f.mass;
  }
  return sum;
}

double plausibility(const MassFunction& m, SubsetId subset) {
  require_owned(m.frame(), subset);
  double sum = 0.0;
  for (const auto& f : m.focal_elements()) {
    if (f.subset.intersects(subset)) sum += f.mass;
  }
  return sum;
}

std::vector<double> belief_table(const MassFunction& m) {
  const std::size_t n = m.frame().size();
  if (n > kernels::kMaxDenseFrame) {
    throw FusionError(ErrorCode::kFrameTooLargeForDenseTable,
                      "dense tables support at most " + std::to_string(kernels::kMaxDenseFrame) + " elements");
  }
  std::vector<double> table(std::size_t{1} << n, 0.0);
  for (const auto& f : m.focal_elements()) table[f.subset.bits()] = f.mass;
  kernels::active().subset_sum(table, n);
  return table;
}

namespace {

struct OrderedPair {
  const MassFunction& first;
  const MassFunction& second;
};

OrderedPair canonical(const MassFunction& m1, const MassFunction& m2) {
  if (detail::canonical_less<FocalElement, &FocalElement::mass>(m2.focal_elements(), m1.focal_elements())) return {m2, m1};
  return {m1, m2};
}

}  // namespace

ConflictValue conflict(const MassFunction& m1, const MassFunction& m2) {
  require_same_frame(m1.frame(), m2.frame());
  const auto [a, b] = canonical(m1, m2);
  double sum = 0.0;
  for (const auto& x : a.focal_elements()) {
    for (const auto& y : b.focal_elements()) {
      if (!x.subset.intersects(y.subset)) sum += x.mass * y.mass;
    }
  }
  return {sum};
}

DempsterResult dempster_combine(const MassFunction& m1, const MassFunction& m2) {
  require_same_frame(m1.frame(), m2.frame());
  const auto [a, b] = canonical(m1, m2);

  std::map<SubsetId, double> numerator;
  double conflicting = 0.0;
  double agreeing = 0.0;
  for (const auto& x : a.focal_elements()) {
    for (const auto& y : b.focal_elements()) {
      const double product = x.mass * y.mass;
      const SubsetId meet = x.subset & y.subset;
      if (meet.is_empty()) {
        conflicting += product;
      } else {
        numerator[meet] += product;
        agreeing += product;
      }
    }
  }

  if (1.0 - conflicting <= kTotalConflictThreshold || agreeing <= kTotalConflictThreshold) {
    std::ostringstream os;
    os.precision(17);
    os << "total conflict (C = " << conflicting << "): Dempster's rule is undefined";
    throw FusionError(ErrorCode::kTotalConflict, os.str());
  }

  // The agreeing mass equals 1 - C for exactly normalised inputs and keeps the
  // output normalised when the inputs sit anywhere inside the sum tolerance.
  std::vector<FocalElement> out;
  out.reserve(numerator.size());
  for (const auto& [subset, value] : numerator) out.push_back({subset, value / agreeing});
  return {make_bba(m1.frame(), std::move(out)), {conflicting}};
}

AnomalyVerdict detect_anomaly(const MassFunction& m1, const MassFunction& m2, const MassFunction& combined,
                              double epsilon) {
  if (!(epsilon > 0.0)) {
    throw FusionError(ErrorCode::kInvalidParams, "epsilon must be positive");
  }
  require_same_frame(m1.frame(), m2.frame());
  require_same_frame(m1.frame(), combined.frame());

  AnomalyVerdict verdict;
  verdict.vacuous_input = m1.is_vacuous() || m2.is_vacuous();
  const double to_first = max_abs_difference(combined, m1);
  const double to_second = max_abs_difference(combined, m2);
  verdict.max_deviation = std::min(to_first, to_second);

  if (max_abs_difference(m1, m2) <= epsilon) return verdict;

  if (to_first <= epsilon) {
    verdict.anomalous = true;
    verdict.matched_source = Source::kSource1;
    verdict.max_deviation = to_first;
  } else if (to_second <= epsilon) {
    verdict.anomalous = true;
    verdict.matched_source = Source::kSource2;
    verdict.max_deviation = to_second;
  }
  return verdict;
}

}  // namespace dsfusion
