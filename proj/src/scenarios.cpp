#include "dsfusion/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>
#include <thread>

#include "dsfusion/document.hpp"
#include "dsfusion/error.hpp"

namespace dsfusion {

namespace {

constexpr double kParamSlack = 1e-12;
constexpr double kDropBelow = 1e-12;
constexpr std::size_t kMaxGridAxis = 1'000'000;

[[noreturn]] void invalid(const std::string& what) { throw FusionError(ErrorCode::kInvalidParams, what); }

}  // namespace

void validate(const TwoDoctorsParams& p) {
  if (!std::isfinite(p.a) || !std::isfinite(p.b1) || !std::isfinite(p.b2)) invalid("parameters must be finite");
  if (p.a < 0.0 || p.a > 1.0) invalid("a must lie in [0,1]");
  if (!(p.b1 > 0.0) || !(p.b2 > 0.0)) invalid("b1 and b2 must be positive");
  if (p.b1 + p.b2 > 1.0 + kParamSlack) invalid("b1 + b2 must not exceed 1");
}

Frame two_doctors_frame() {
  static const Frame frame({"A", "B", "C"});
  return frame;
}

std::pair<MassFunction, MassFunction> two_doctors(const TwoDoctorsParams& p) {
  validate(p);
  const Frame frame = two_doctors_frame();
  const SubsetId a{0b001};
  const SubsetId ab{0b011};
  const SubsetId c{0b100};
  const SubsetId abc{0b111};
  const double rest = std::max(0.0, 1.0 - p.b1 - p.b2);
  return {make_bba(frame, {{a, p.a}, {ab, 1.0 - p.a}}),
          make_bba(frame, {{ab, p.b1}, {c, rest}, {abc, p.b2}})};
}

std::vector<double> ParamRange::values() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step)) invalid("range bounds must be finite");
  if (!(step > 0.0)) invalid("range step must be positive");
  if (lo > hi) invalid("range lower bound exceeds upper bound");
  const double span = (hi - lo) / step;
  if (span >= static_cast<double>(kMaxGridAxis)) invalid("range has too many points");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

std::vector<TwoDoctorsParams> SweepGrid::points() const {
  const auto as = a.values();
  const auto b1s = b1.values();
  const auto b2s = b2.values();
  if (as.front() < 0.0 || as.back() > 1.0 + kParamSlack) invalid("a range must lie in [0,1]");
  if (!(b1s.front() > 0.0) || !(b2s.front() > 0.0)) invalid("b1 and b2 ranges must be positive");

  std::vector<TwoDoctorsParams> out;
  for (double av : as) {
    for (double b1v : b1s) {
      for (double b2v : b2s) {
        if (b1v + b2v <= 1.0 + kParamSlack) out.push_back({std::min(av, 1.0), b1v, b2v});
      }
    }
  }
  if (out.empty()) invalid("grid has no admissible point (b1 + b2 <= 1)");
  return out;
}

std::size_t SweepReport::dempster_anomalous() const {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [](const SweepPoint& p) { return p.dempster.anomalous; }));
}

std::size_t SweepReport::alt_anomalous() const {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [](const SweepPoint& p) { return p.alt.anomalous; }));
}

SweepReport paradox_sweep(const SweepGrid& grid, double epsilon) {
  if (!(epsilon > 0.0)) invalid("epsilon must be positive");
  SweepReport report;
  report.epsilon = epsilon;
  for (const auto& params : grid.points()) {
    auto [m1, m2] = two_doctors(params);
    const auto ds = dempster_combine(m1, m2);
    auto alt = fuse(m1, m2);
    SweepPoint point{params,
                     ds.conflict.value,
                     detect_anomaly(m1, m2, ds.combined, epsilon),
                     detect_anomaly(m1, m2, alt.combined, epsilon),
                     alt.combined,
                     sha256_hex(serialize_distribution(alt.combined))};
    report.points.push_back(std::move(point));
  }
  return report;
}

MassFunction random_bba(const Frame& frame, std::uint64_t max_focal, std::mt19937_64& rng) {
  const std::uint64_t universe = frame.full().bits();  // number of non-empty subsets
  if (max_focal < 1 || max_focal > universe) invalid("max_focal must lie in [1, 2^n - 1]");

  const std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(1, max_focal)(rng);

  std::vector<std::uint64_t> chosen;
  chosen.reserve(k);
  if (universe <= 4096) {
    std::vector<std::uint64_t> pool(universe);
    for (std::uint64_t i = 0; i < universe; ++i) pool[i] = i + 1;
    for (std::uint64_t i = 0; i < k; ++i) {
      const auto j = std::uniform_int_distribution<std::uint64_t>(i, universe - 1)(rng);
      std::swap(pool[i], pool[j]);
      chosen.push_back(pool[i]);
    }
  } else {
    std::set<std::uint64_t> seen;
    std::uniform_int_distribution<std::uint64_t> pick(1, universe);
    while (chosen.size() < k) {
      const auto s = pick(rng);
      if (seen.insert(s).second) chosen.push_back(s);
    }
  }

  std::vector<double> cuts;
  cuts.reserve(k + 1);
  cuts.push_back(0.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::uint64_t i = 1; i < k; ++i) cuts.push_back(unit(rng));
  cuts.push_back(1.0);
  std::sort(cuts.begin() + 1, cuts.end() - 1);

  std::vector<FocalElement> entries;
  entries.reserve(k);
  for (std::uint64_t i = 0; i < k; ++i) {
    const double gap = cuts[i + 1] - cuts[i];
    if (gap >= kDropBelow) entries.push_back({SubsetId{chosen[i]}, gap});
  }
  return make_bba(frame, std::move(entries), {.normalize = true});
}

Frame numbered_frame(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("t" + std::to_string(i));
  return Frame(std::move(labels));
}

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

TrialOutcome check_replication(const MassFunction& m1, const MassFunction& m2, double epsilon, bool same_witness,
                               std::optional<MassFunction>* combined_out) {
  if (max_abs_difference(m1, m2) <= epsilon) return TrialOutcome::kSkippedIdentical;

  std::optional<AltFusionResult> fused;
  try {
    fused = fuse(m1, m2);
  } catch (const FusionError& e) {
    if (e.code() == ErrorCode::kTotalAltConflict) return TrialOutcome::kTotalConflict;
    throw;
  }
  const MassFunction& c = fused->combined;
  if (combined_out != nullptr) *combined_out = c;

  if (!same_witness) {
    const bool differs = max_abs_difference(c, m1) > epsilon && max_abs_difference(c, m2) > epsilon;
    return differs ? TrialOutcome::kPass : TrialOutcome::kViolation;
  }

  // Outside the union of the three supports every value is zero.
  std::set<SubsetId> candidates;
  for (const auto* m : {&m1, &m2, &c}) {
    for (const auto& f : m->focal_elements()) candidates.insert(f.subset);
  }
  for (const SubsetId s : candidates) {
    const double v = c.mass(s);
    if (std::abs(v - m1.mass(s)) > epsilon && std::abs(v - m2.mass(s)) > epsilon) return TrialOutcome::kPass;
  }
  return TrialOutcome::kViolation;
}

namespace {

struct TrialRecord {
  TrialOutcome outcome = TrialOutcome::kPass;
  std::optional<TheoremViolation> violation;
};

TrialRecord run_trial(const Frame& frame, std::uint64_t max_focal, std::uint64_t seed, std::uint64_t trial,
                      double epsilon, bool same_witness) {
  auto rng = trial_engine(seed, trial);
  MassFunction m1 = random_bba(frame, max_focal, rng);
  MassFunction m2 = random_bba(frame, max_focal, rng);
  std::optional<MassFunction> combined;
  TrialRecord record;
  record.outcome = check_replication(m1, m2, epsilon, same_witness, &combined);
  if (record.outcome == TrialOutcome::kViolation) {
    record.violation = TheoremViolation{trial, std::move(m1), std::move(m2), std::move(*combined)};
  }
  return record;
}

}  // namespace

TheoremTrialReport verify_theorem(std::size_t frame_size, std::uint64_t trials, std::uint64_t seed, double epsilon,
                                  const TheoremOptions& options) {
  if (frame_size < 2 || frame_size > 8) invalid("frame size must lie in [2, 8]");
  if (trials < 1) invalid("at least one trial is required");
  if (!(epsilon > 0.0)) invalid("epsilon must be positive");

  const Frame frame = numbered_frame(frame_size);
  const std::uint64_t max_focal = options.max_focal == 0 ? frame.full().bits() : options.max_focal;
  if (max_focal > frame.full().bits()) invalid("max_focal must lie in [1, 2^n - 1]");

  std::vector<TrialRecord> records(trials);
  const unsigned workers = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(trials)));
  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      records[t] = run_trial(frame, max_focal, seed, t, epsilon, options.same_witness);
    }
  };
  if (workers == 1) {
    run_range(0, trials);
  } else {
    std::vector<std::exception_ptr> failures(workers);
    {
      std::vector<std::jthread> pool;
      const std::uint64_t chunk = (trials + workers - 1) / workers;
      for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = std::min<std::uint64_t>(trials, w * chunk);
        const std::uint64_t end = std::min<std::uint64_t>(trials, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
          try {
            run_range(begin, end);
          } catch (...) {
            failures[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  TheoremTrialReport report;
  report.frame_size = frame_size;
  report.trials = trials;
  report.seed = seed;
  report.epsilon = epsilon;
  report.same_witness = options.same_witness;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto& r = records[t];
    switch (r.outcome) {
      case TrialOutcome::kPass: ++report.passes; break;
      case TrialOutcome::kSkippedIdentical: ++report.skipped_identical; break;
      case TrialOutcome::kTotalConflict: report.total_conflict_trials.push_back(t); break;
      case TrialOutcome::kViolation: report.violations.push_back(std::move(*r.violation)); break;
    }
  }
  return report;
}

}  // namespace dsfusion
