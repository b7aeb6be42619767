#include "dsfusion/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dsfusion/alt.hpp"
#include "dsfusion/classic.hpp"
#include "dsfusion/document.hpp"
#include "dsfusion/error.hpp"
#include "dsfusion/scenarios.hpp"

#ifndef DSFUSION_VERSION
#define DSFUSION_VERSION "0.0.0"
#endif

namespace dsfusion::cli {

namespace {

constexpr const char* kMaxFrameEnv = "FUSION_MAX_FRAME";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FusionError(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw FusionError(ErrorCode::kIoError, "cannot write '" + path + "'");
  file << text;
  if (!file) throw FusionError(ErrorCode::kIoError, "failed writing '" + path + "'");
}

AltOptions alt_options_from_env() {
  AltOptions options;
  if (const char* raw = std::getenv(kMaxFrameEnv); raw != nullptr && *raw != '\0') {
    std::size_t value = 0;
    const std::string_view text(raw);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value < 1 || value > kMaxFrameSize) {
      throw FusionError(ErrorCode::kInvalidParams, std::string(kMaxFrameEnv) + " must be an integer in [1, 63]");
    }
    options.max_frame = value;
  }
  return options;
}

Rule parse_rule(const std::string& name) {
  if (name == "dempster") return Rule::kDempster;
  if (name == "alt") return Rule::kAlt;
  throw FusionError(ErrorCode::kInvalidParams, "unknown rule '" + name + "' (expected dempster or alt)");
}

ParamRange parse_range(const std::string& text, const std::string& option) {
  // lo:hi:step, or a single value
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    const std::string piece = text.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || ec != std::errc{} || ptr != piece.data() + piece.size()) {
      throw FusionError(ErrorCode::kInvalidParams, option + ": malformed range '" + text + "' (expected lo:hi:step)");
    }
    parts.push_back(value);
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) return {parts[0], parts[0], 1.0};
  if (parts.size() != 3) {
    throw FusionError(ErrorCode::kInvalidParams, option + ": malformed range '" + text + "' (expected lo:hi:step)");
  }
  return {parts[0], parts[1], parts[2]};
}

std::string percent(std::size_t count, std::size_t total) {
  const double value = total == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(total);
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 2);
  std::string text(buf, res.ptr);
  if (text.size() > 3 && text.compare(text.size() - 3, 3, ".00") == 0) text.resize(text.size() - 3);
  return text + "%";
}

struct CombineRequest {
  Rule rule = Rule::kDempster;
  double epsilon = kDefaultAnomalyEpsilon;
  bool fail_on_anomaly = false;
  std::string output;
};

int run_combination(const BbaDocument& doc, const std::string& name1, const std::string& name2,
                    const std::string& digest, const CombineRequest& request, std::ostream& out) {
  const MassFunction& m1 = doc.bba(name1);
  const MassFunction& m2 = doc.bba(name2);

  const auto make_report = [&](Rule rule, const MassFunction& combined, double conflict) {
    return RunReport{.rule = rule,
                     .inputs = {name1, name2},
                     .combined = combined,
                     .conflict = conflict,
                     .normalizer = std::nullopt,
                     .denominator = std::nullopt,
                     .anomaly = detect_anomaly(m1, m2, combined, request.epsilon),
                     .epsilon = request.epsilon,
                     .normalized = doc.normalized,
                     .tool_version = DSFUSION_VERSION,
                     .input_digest = "sha256:" + digest};
  };

  std::optional<RunReport> report;
  if (request.rule == Rule::kDempster) {
    const auto result = dempster_combine(m1, m2);
    report = make_report(Rule::kDempster, result.combined, result.conflict.value);
  } else {
    const auto result = fuse(m1, m2, alt_options_from_env());
    report = make_report(Rule::kAlt, result.combined, result.conflict_mu);
    report->normalizer = result.normalizer_K;
    report->denominator = result.denominator;
  }

  emit(to_canonical_json(run_report_json(*report)), request.output, out);
  return request.fail_on_anomaly && report->anomaly.anomalous ? kAnomaly : kOk;
}

void print_violation(const TheoremViolation& v, std::ostream& err) {
  err << "trial " << v.trial << ":\n";
  err << "  m1 = " << to_canonical_json(distribution_json(v.m1));
  err << "  m2 = " << to_canonical_json(distribution_json(v.m2));
  err << "  combined = " << to_canonical_json(distribution_json(v.combined));
}

int exit_code_for(const FusionError& e) {
  switch (e.code()) {
    case ErrorCode::kTotalConflict:
    case ErrorCode::kTotalAltConflict:
      return kTotalConflict;
    default:
      return kValidationError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evidence fusion: Dempster's rule and the transformed-measure alternative"};
  app.name(args.empty() ? "dsfusion" : args.front());
  app.require_subcommand(1);
  app.set_version_flag("--version", DSFUSION_VERSION);

  std::string doc_path;
  std::vector<std::string> bba_names;
  std::string rule_name = "dempster";
  double epsilon = kDefaultAnomalyEpsilon;
  bool fail_on_anomaly = false;
  bool normalize = false;
  std::string output;
  std::vector<std::string> subset_labels;

  auto* validate_cmd = app.add_subcommand("validate", "Parse and validate a BBA document");
  validate_cmd->add_option("doc", doc_path, "Document path")->required();
  validate_cmd->add_flag("--normalize", normalize, "Rescale each BBA to sum to one");

  auto* combine_cmd = app.add_subcommand("combine", "Combine two BBAs from a document");
  combine_cmd->add_option("doc", doc_path, "Document path")->required();
  combine_cmd->add_option("--bba", bba_names, "BBA name (give exactly two)")
      ->required()
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  combine_cmd->add_option("--rule", rule_name, "dempster or alt")->capture_default_str();
  combine_cmd->add_option("--epsilon", epsilon, "Replication tolerance")->capture_default_str();
  combine_cmd->add_flag("--fail-on-anomaly", fail_on_anomaly, "Exit 4 when the output replicates an input");
  combine_cmd->add_flag("--normalize", normalize, "Rescale each BBA to sum to one");
  combine_cmd->add_option("-o,--output", output, "Write the report here instead of stdout");

  auto* bel_cmd = app.add_subcommand("bel", "Belief of a subset");
  auto* pl_cmd = app.add_subcommand("pl", "Plausibility of a subset");
  for (auto* cmd : {bel_cmd, pl_cmd}) {
    cmd->add_option("doc", doc_path, "Document path")->required();
    cmd->add_option("--bba", bba_names, "BBA name")->required()->expected(1);
    cmd->add_option("--subset", subset_labels, "Comma-separated labels")->required()->delimiter(',');
    cmd->add_flag("--normalize", normalize, "Rescale each BBA to sum to one");
  }

  auto* transform_cmd = app.add_subcommand("transform", "Transformed measure of a BBA");
  transform_cmd->add_option("doc", doc_path, "Document path")->required();
  transform_cmd->add_option("--bba", bba_names, "BBA name")->required()->expected(1);
  transform_cmd->add_flag("--normalize", normalize, "Rescale each BBA to sum to one");
  transform_cmd->add_option("-o,--output", output, "Write here instead of stdout");

  TwoDoctorsParams params;
  auto* doctors_cmd = app.add_subcommand("two-doctors", "Combine the Two Doctors template");
  doctors_cmd->add_option("--a", params.a, "Doctor 1 mass on {A}")->required();
  doctors_cmd->add_option("--b1", params.b1, "Doctor 2 mass on {A,B}")->required();
  doctors_cmd->add_option("--b2", params.b2, "Doctor 2 mass on {A,B,C}")->required();
  doctors_cmd->add_option("--rule", rule_name, "dempster or alt")->capture_default_str();
  doctors_cmd->add_option("--epsilon", epsilon, "Replication tolerance")->capture_default_str();
  doctors_cmd->add_flag("--fail-on-anomaly", fail_on_anomaly, "Exit 4 when the output replicates an input");
  doctors_cmd->add_option("-o,--output", output, "Write the report here instead of stdout");

  std::string a_range = "0.1:0.9:0.2";
  std::string b1_range = "0.1:0.5:0.2";
  std::string b2_range = "0.1:0.4:0.1";
  auto* sweep_cmd = app.add_subcommand("sweep", "Run both rules over a Two Doctors parameter grid");
  sweep_cmd->add_option("--a-range", a_range, "lo:hi:step")->capture_default_str();
  sweep_cmd->add_option("--b1-range", b1_range, "lo:hi:step")->capture_default_str();
  sweep_cmd->add_option("--b2-range", b2_range, "lo:hi:step")->capture_default_str();
  sweep_cmd->add_option("--epsilon", epsilon, "Replication tolerance")->capture_default_str();
  sweep_cmd->add_option("-o,--output", output, "Write the report here instead of stdout");

  std::size_t frame_size = 3;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  bool per_input_witness = false;
  unsigned threads = 1;
  auto* theorem_cmd =
      app.add_subcommand("verify-theorem", "Check on random BBA pairs that the alternative rule replicates neither input");
  theorem_cmd->add_option("--n", frame_size, "Frame size, 2..8")->required();
  theorem_cmd->add_option("--trials", trials, "Number of random pairs")->required();
  theorem_cmd->add_option("--seed", seed, "Base seed")->required();
  theorem_cmd->add_option("--epsilon", epsilon, "Difference tolerance")->capture_default_str();
  theorem_cmd->add_flag("--per-input-witness", per_input_witness,
                        "Accept different witness subsets for the two inputs");
  theorem_cmd->add_option("--threads", threads, "Worker threads")->capture_default_str();
  theorem_cmd->add_option("-o,--output", output, "Write the report here instead of stdout");

  try {
    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());  // CLI11 consumes vectors back to front
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << DSFUSION_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }

  try {
    const BbaOptions bba_options{.normalize = normalize};

    if (validate_cmd->parsed()) {
      const auto doc = parse_document(read_file(doc_path), bba_options);
      out << "ok: " << doc.bbas.size() << " bba(s) over a frame of " << doc.frame.size() << " labels\n";
      for (const auto& [name, m] : doc.bbas) out << "  " << name << ": " << m.focal_count() << " focal element(s)\n";
      return kOk;
    }

    if (combine_cmd->parsed()) {
      if (bba_names.size() != 2) throw FusionError(ErrorCode::kInvalidParams, "combine needs exactly two --bba names");
      const std::string text = read_file(doc_path);
      const auto doc = parse_document(text, bba_options);
      return run_combination(doc, bba_names[0], bba_names[1], sha256_hex(text),
                             {parse_rule(rule_name), epsilon, fail_on_anomaly, output}, out);
    }

    if (bel_cmd->parsed() || pl_cmd->parsed()) {
      if (bba_names.size() != 1) throw FusionError(ErrorCode::kInvalidParams, "give exactly one --bba name");
      const auto doc = parse_document(read_file(doc_path), bba_options);
      const auto& m = doc.bba(bba_names.front());
      const SubsetId subset = doc.frame.encode(subset_labels);
      const double value = bel_cmd->parsed() ? belief(m, subset) : plausibility(m, subset);
      out << format_double(value) << '\n';
      return kOk;
    }

    if (transform_cmd->parsed()) {
      if (bba_names.size() != 1) throw FusionError(ErrorCode::kInvalidParams, "give exactly one --bba name");
      const auto doc = parse_document(read_file(doc_path), bba_options);
      const auto& m = doc.bba(bba_names.front());
      if (m.frame().size() > alt_options_from_env().max_frame) {
        throw FusionError(ErrorCode::kFrameTooLargeForAltFusion,
                          "frame exceeds the alternative-fusion limit; raise " + std::string(kMaxFrameEnv));
      }
      const auto mu = transform(m, {.source = bba_names.front()});
      emit(to_canonical_json(transformed_json(mu)), output, out);
      return kOk;
    }

    if (doctors_cmd->parsed()) {
      auto [m1, m2] = two_doctors(params);
      BbaDocument doc{m1.frame(), {}, false};
      doc.bbas.emplace("doctor1", std::move(m1));
      doc.bbas.emplace("doctor2", std::move(m2));
      return run_combination(doc, "doctor1", "doctor2", sha256_hex(serialize_document(doc)),
                             {parse_rule(rule_name), epsilon, fail_on_anomaly, output}, out);
    }

    if (sweep_cmd->parsed()) {
      const SweepGrid grid{parse_range(a_range, "--a-range"), parse_range(b1_range, "--b1-range"),
                           parse_range(b2_range, "--b2-range")};
      const auto report = paradox_sweep(grid, epsilon);
      emit(to_canonical_json(sweep_json(report)), output, out);
      err << "points: " << report.points.size()
          << ", dempster_anomalous: " << percent(report.dempster_anomalous(), report.points.size())
          << ", alt_anomalous: " << percent(report.alt_anomalous(), report.points.size()) << '\n';
      return kOk;
    }

    if (theorem_cmd->parsed()) {
      const auto report = verify_theorem(frame_size, trials, seed, epsilon,
                                         {.same_witness = !per_input_witness, .threads = threads});
      emit(to_canonical_json(theorem_json(report)), output, out);
      err << "trials: " << report.trials << ", passes: " << report.passes
          << ", skipped_identical: " << report.skipped_identical
          << ", total_conflict: " << report.total_conflict_trials.size()
          << ", violations: " << report.violations.size() << '\n';
      if (!report.violations.empty()) {
        err << "counterexample (the combined output replicates an input):\n";
        print_violation(report.violations.front(), err);
        return kTheoremViolation;
      }
      return kOk;
    }
  } catch (const FusionError& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kValidationError;
}

}  // namespace dsfusion::cli
