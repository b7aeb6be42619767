#include "dsfusion/document.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <set>

#include "dsfusion/error.hpp"
#include "dsfusion/scenarios.hpp"

namespace dsfusion {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw FusionError(ErrorCode::kParseError, what); }

std::vector<std::string> read_labels(const json& node, const std::string& where) {
  if (!node.is_array()) parse_error(where + " must be a list of labels");
  std::vector<std::string> labels;
  for (const auto& item : node) {
    if (!item.is_string()) parse_error(where + " must contain only strings");
    labels.push_back(item.get<std::string>());
  }
  return labels;
}

MassFunction read_bba(const Frame& frame, const std::string& name, const json& node, BbaOptions options) {
  const std::string where = "bba '" + name + "'";
  if (!node.is_array()) parse_error(where + " must be a list of {subset, mass} entries");
  std::vector<FocalElement> entries;
  for (const auto& entry : node) {
    if (!entry.is_object() || !entry.contains("subset") || !entry.contains("mass")) {
      parse_error(where + ": every entry needs 'subset' and 'mass'");
    }
    if (entry.size() != 2) parse_error(where + ": entries take only 'subset' and 'mass'");
    const auto labels = read_labels(entry.at("subset"), where + " subset");
    if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size()) {
      parse_error(where + ": subset lists a label twice");
    }
    const auto& mass = entry.at("mass");
    if (!mass.is_number()) parse_error(where + ": mass must be a number");
    try {
      entries.push_back({frame.encode(labels), mass.get<double>()});
    } catch (const FusionError& e) {
      throw FusionError(e.code(), where + ": " + e.what());
    }
  }
  try {
    return make_bba(frame, std::move(entries), options);
  } catch (const FusionError& e) {
    throw FusionError(e.code(), where + ": " + e.what());
  }
}

void write_canonical(const json& value, int depth, std::string& out) {
  const auto indent = [&](int d) { out.append(static_cast<std::size_t>(2 * d), ' '); };
  switch (value.type()) {
    case json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : value.items()) {  // std::map: sorted keys
        if (!first) out += ",\n";
        first = false;
        indent(depth + 1);
        out += json(key).dump();
        out += ": ";
        write_canonical(item, depth + 1, out);
      }
      out += '\n';
      indent(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : value) {
        if (!first) out += ",\n";
        first = false;
        indent(depth + 1);
        write_canonical(item, depth + 1, out);
      }
      out += '\n';
      indent(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float:
      out += format_double(value.get<double>());
      return;
    default:
      out += value.dump();
      return;
  }
}

}  // namespace

const MassFunction& BbaDocument::bba(const std::string& name) const {
  const auto it = bbas.find(name);
  if (it == bbas.end()) {
    throw FusionError(ErrorCode::kInvalidParams, "document has no bba named '" + name + "'");
  }
  return it->second;
}

BbaDocument parse_document(std::string_view text, BbaOptions options) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_error(std::string("malformed document: ") + e.what());
  }
  if (!root.is_object()) parse_error("document root must be an object");
  if (!root.contains("frame")) parse_error("document lacks 'frame'");
  if (!root.contains("bbas")) parse_error("document lacks 'bbas'");
  for (const auto& [key, _] : root.items()) {
    if (key != "frame" && key != "bbas") parse_error("unexpected top-level field '" + key + "'");
  }

  Frame frame(read_labels(root.at("frame"), "frame"));
  const auto& bbas = root.at("bbas");
  if (!bbas.is_object()) parse_error("'bbas' must map names to lists of entries");

  BbaDocument doc{frame, {}, options.normalize};
  for (const auto& [name, node] : bbas.items()) {
    doc.bbas.emplace(name, read_bba(frame, name, node, options));
  }
  return doc;
}

json subset_json(const Frame& frame, SubsetId subset) { return frame.decode(subset); }

json distribution_json(const MassFunction& m) {
  json out = json::array();
  for (const auto& f : m.focal_elements()) {
    out.push_back({{"subset", subset_json(m.frame(), f.subset)}, {"mass", f.mass}});
  }
  return out;
}

std::string serialize_document(const BbaDocument& document) {
  json root;
  root["frame"] = json(std::vector<std::string>(document.frame.labels().begin(), document.frame.labels().end()));
  root["bbas"] = json::object();
  for (const auto& [name, m] : document.bbas) root["bbas"][name] = distribution_json(m);
  return to_canonical_json(root);
}

std::string serialize_distribution(const MassFunction& m) { return to_canonical_json(distribution_json(m)); }

std::string to_canonical_json(const json& value) {
  std::string out;
  write_canonical(value, 0, out);
  out += '\n';
  return out;
}

std::string format_double(double value) {
  if (!std::isfinite(value)) return "null";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  std::string text(buf.data(), res.ptr);
  // keep floats recognisable as floats when read back
  if (text.find_first_of(".en") == std::string::npos) text += ".0";
  return text;
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw FusionError(ErrorCode::kIoError, "SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

json verdict_json(const AnomalyVerdict& v) {
  return {{"anomalous", v.anomalous},
          {"matched_source", std::string(to_string(v.matched_source))},
          {"vacuous_input", v.vacuous_input},
          {"max_deviation", v.max_deviation}};
}

json transformed_json(const TransformedMeasure& mu) {
  json weights = json::array();
  double singleton_total = 0.0;
  for (const auto& w : mu.weights()) {
    weights.push_back({{"subset", subset_json(mu.frame(), w.subset)}, {"weight", w.weight}});
    if (w.subset.cardinality() == 1) singleton_total += w.weight;
  }
  return {{"source", mu.source()}, {"weights", weights}, {"singleton_total", singleton_total}};
}

json sweep_json(const SweepReport& report) {
  json points = json::array();
  for (const auto& p : report.points) {
    points.push_back({{"a", p.params.a},
                      {"b1", p.params.b1},
                      {"b2", p.params.b2},
                      {"conflict", p.conflict},
                      {"dempster", verdict_json(p.dempster)},
                      {"alt", verdict_json(p.alt)},
                      {"alt_combined", distribution_json(p.alt_combined)},
                      {"alt_digest", p.alt_digest}});
  }
  return {{"epsilon", report.epsilon},
          {"points", points},
          {"summary",
           {{"points", report.points.size()},
            {"dempster_anomalous", report.dempster_anomalous()},
            {"alt_anomalous", report.alt_anomalous()}}}};
}

json theorem_json(const TheoremTrialReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"trial", v.trial},
                          {"m1", distribution_json(v.m1)},
                          {"m2", distribution_json(v.m2)},
                          {"combined", distribution_json(v.combined)}});
  }
  return {{"frame_size", report.frame_size},
          {"trials", report.trials},
          {"seed", report.seed},
          {"epsilon", report.epsilon},
          {"same_witness", report.same_witness},
          {"passes", report.passes},
          {"skipped_identical", report.skipped_identical},
          {"total_conflict_trials", report.total_conflict_trials},
          {"violation_count", report.violations.size()},
          {"violations", violations}};
}

std::string_view to_string(Rule rule) noexcept { return rule == Rule::kDempster ? "dempster" : "alt"; }

json run_report_json(const RunReport& r) {
  json out = {{"rule", std::string(to_string(r.rule))},
              {"inputs", r.inputs},
              {"output", distribution_json(r.combined)},
              {"conflict", r.conflict},
              {"anomaly", verdict_json(r.anomaly)},
              {"epsilon", r.epsilon},
              {"normalized", r.normalized},
              {"tool_version", r.tool_version},
              {"input_digest", r.input_digest}};
  if (r.rule == Rule::kAlt) {
    out["normalizer"] = r.normalizer ? json(*r.normalizer) : json(nullptr);
    out["denominator"] = r.denominator ? json(*r.denominator) : json(nullptr);
  }
  return out;
}

}  // namespace dsfusion
