#include "dsfusion/mass_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dsfusion/error.hpp"

namespace dsfusion {

namespace {

bool by_subset(const FocalElement& a, const FocalElement& b) { return a.subset < b.subset; }

std::string format_sum(double sum) {
  std::ostringstream os;
  os.precision(17);
  os << sum;
  return os.str();
}

}  // namespace

double MassFunction::mass(SubsetId subset) const {
  const auto it = std::lower_bound(focal_.begin(), focal_.end(), FocalElement{subset, 0.0}, by_subset);
  return (it != focal_.end() && it->subset == subset) ? it->mass : 0.0;
}

bool MassFunction::is_vacuous() const {
  return focal_.size() == 1 && focal_.front().subset == frame_.full();
}

double MassFunction::total() const {
  double sum = 0.0;
  for (const auto& f : focal_) sum += f.mass;
  return sum;
}

MassFunction make_bba(const Frame& frame, std::vector<FocalElement> entries, BbaOptions options) {
  std::sort(entries.begin(), entries.end(), by_subset);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (!frame.owns(e.subset)) {
      throw FusionError(ErrorCode::kSubsetOutOfFrame,
                        "subset uses elements outside a frame of size " + std::to_string(frame.size()));
    }
    if (i > 0 && entries[i - 1].subset == e.subset) {
      throw FusionError(ErrorCode::kDuplicateFocalElement,
                        "subset " + frame.describe(e.subset) + " listed more than once");
    }
    if (!std::isfinite(e.mass)) {
      throw FusionError(ErrorCode::kInvalidMass, "mass of " + frame.describe(e.subset) + " is not finite");
    }
    if (e.mass < 0.0) {
      throw FusionError(ErrorCode::kNegativeMass, "mass of " + frame.describe(e.subset) + " is negative");
    }
  }

  std::erase_if(entries, [](const FocalElement& e) { return e.mass == 0.0; });

  double sum = 0.0;
  for (const auto& e : entries) {
    if (e.subset.is_empty()) {
      throw FusionError(ErrorCode::kMassOnEmptySet, "the empty set cannot carry mass");
    }
    sum += e.mass;
  }

  if (options.normalize) {
    if (!(sum > 0.0)) {
      throw FusionError(ErrorCode::kSumNotOne, "cannot normalize: no positive mass");
    }
    for (auto& e : entries) e.mass /= sum;
  } else if (std::abs(sum - 1.0) > kSumTolerance) {
    throw FusionError(ErrorCode::kSumNotOne, "masses sum to " + format_sum(sum) + ", expected 1");
  }

  // (0,1] after the sum check, apart from entries within tolerance above one
  for (auto& e : entries) e.mass = std::min(e.mass, 1.0);
  return MassFunction(frame, std::move(entries));
}

MassFunction vacuous_bba(const Frame& frame) { return make_bba(frame, {{frame.full(), 1.0}}); }

namespace {

// Walks the union of both (sorted) supports, calling fn(subset, |m1 - m2|).
template <typename Fn>
void for_each_difference(const MassFunction& m1, const MassFunction& m2, Fn&& fn) {
  require_same_frame(m1.frame(), m2.frame());
  auto a = m1.focal_elements();
  auto b = m2.focal_elements();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].subset < b[j].subset)) {
      fn(a[i].subset, a[i].mass);
      ++i;
    } else if (i == a.size() || b[j].subset < a[i].subset) {
      fn(b[j].subset, b[j].mass);
      ++j;
    } else {
      fn(a[i].subset, std::abs(a[i].mass - b[j].mass));
      ++i;
      ++j;
    }
  }
}

}  // namespace

std::vector<SubsetId> differing_subsets(const MassFunction& m1, const MassFunction& m2, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw FusionError(ErrorCode::kInvalidParams, "epsilon must be positive");
  }
  std::vector<SubsetId> out;
  for_each_difference(m1, m2, [&](SubsetId s, double diff) {
    if (diff > epsilon) out.push_back(s);
  });
  return out;
}

double max_abs_difference(const MassFunction& m1, const MassFunction& m2) {
  double worst = 0.0;
  for_each_difference(m1, m2, [&](SubsetId, double diff) { worst = std::max(worst, diff); });
  return worst;
}

}  // namespace dsfusion
