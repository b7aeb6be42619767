#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dsfusion/alt.hpp"
#include "dsfusion/classic.hpp"
#include "dsfusion/mass_function.hpp"

namespace dsfusion {

struct SweepReport;
struct TheoremTrialReport;

/// A frame plus named mass functions, as stored on disk:
///
///   {
///     "frame": ["head", "hand"],
///     "bbas": {
///       "m1": [ {"subset": ["head"], "mass": 0.9},
///               {"subset": ["head", "hand"], "mass": 0.1} ]
///     }
///   }
///
/// The label order in "frame" is the canonical bit order.
struct BbaDocument {
  Frame frame;
  std::map<std::string, MassFunction> bbas;
  /// Set when the masses were rescaled on load.
  bool normalized = false;

  const MassFunction& bba(const std::string& name) const;
};

/// Throws ParseError for malformed text, UnknownLabel for subsets naming
/// labels outside the frame, and any make_bba error with the BBA name in the
/// message.
BbaDocument parse_document(std::string_view text, BbaOptions options = {});

/// Canonical text: sorted keys, focal elements by encoded subset, labels in
/// frame order, 17 significant digits. Parsing the output reproduces the
/// document exactly.
std::string serialize_document(const BbaDocument& document);

// --- canonical JSON ---------------------------------------------------------

/// Deterministic, locale-independent rendering: two-space indentation, keys
/// in sorted order, floating-point values with 17 significant digits,
/// non-finite values as null.
std::string to_canonical_json(const nlohmann::json& value);

std::string format_double(double value);

std::string sha256_hex(std::string_view bytes);

nlohmann::json distribution_json(const MassFunction& m);
nlohmann::json subset_json(const Frame& frame, SubsetId subset);
nlohmann::json verdict_json(const AnomalyVerdict& verdict);
nlohmann::json transformed_json(const TransformedMeasure& mu);
nlohmann::json sweep_json(const SweepReport& report);
nlohmann::json theorem_json(const TheoremTrialReport& report);

/// Canonical text of a single distribution (used for digests).
std::string serialize_distribution(const MassFunction& m);

enum class Rule { kDempster, kAlt };

std::string_view to_string(Rule rule) noexcept;

/// Outcome of one combination run as written by the CLI.
struct RunReport {
  Rule rule = Rule::kDempster;
  std::vector<std::string> inputs;
  MassFunction combined;
  double conflict = 0.0;
  /// Alternative rule only.
  std::optional<double> normalizer;
  std::optional<double> denominator;
  AnomalyVerdict anomaly;
  double epsilon = kDefaultAnomalyEpsilon;
  bool normalized = false;
  std::string tool_version;
  std::string input_digest;
};

nlohmann::json run_report_json(const RunReport& report);

}  // namespace dsfusion
