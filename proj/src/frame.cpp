#include "dsfusion/frame.hpp"

#include <algorithm>
#include <unordered_set>

#include "dsfusion/error.hpp"

namespace dsfusion {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kEmptyFrame: return "EmptyFrame";
    case ErrorCode::kEmptyLabel: return "EmptyLabel";
    case ErrorCode::kDuplicateLabel: return "DuplicateLabel";
    case ErrorCode::kFrameTooLarge: return "FrameTooLarge";
    case ErrorCode::kFrameMismatch: return "FrameMismatch";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kMassOnEmptySet: return "MassOnEmptySet";
    case ErrorCode::kNegativeMass: return "NegativeMass";
    case ErrorCode::kInvalidMass: return "InvalidMass";
    case ErrorCode::kSumNotOne: return "SumNotOne";
    case ErrorCode::kDuplicateFocalElement: return "DuplicateFocalElement";
    case ErrorCode::kSubsetOutOfFrame: return "SubsetOutOfFrame";
    case ErrorCode::kFrameTooLargeForDenseTable: return "FrameTooLargeForDenseTable";
    case ErrorCode::kFrameTooLargeForAltFusion: return "FrameTooLargeForAltFusion";
    case ErrorCode::kTotalConflict: return "TotalConflict";
    case ErrorCode::kTotalAltConflict: return "TotalAltConflict";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Frame::Frame(std::vector<std::string> labels) {
  if (labels.empty()) {
    throw FusionError(ErrorCode::kEmptyFrame, "frame must contain at least one label");
  }
  if (labels.size() > kMaxFrameSize) {
    throw FusionError(ErrorCode::kFrameTooLarge,
                      "frame has " + std::to_string(labels.size()) + " labels, limit is " +
                          std::to_string(kMaxFrameSize));
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels) {
    if (label.empty()) {
      throw FusionError(ErrorCode::kEmptyLabel, "frame labels must be non-empty");
    }
    if (!seen.insert(label).second) {
      throw FusionError(ErrorCode::kDuplicateLabel, "duplicate frame label '" + label + "'");
    }
  }
  labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

std::size_t Frame::index_of(std::string_view label) const {
  const auto it = std::find(labels_->begin(), labels_->end(), label);
  if (it == labels_->end()) {
    throw FusionError(ErrorCode::kUnknownLabel, "label '" + std::string(label) + "' is not in the frame");
  }
  return static_cast<std::size_t>(it - labels_->begin());
}

SubsetId Frame::encode(std::span<const std::string> members) const {
  std::uint64_t bits = 0;
  for (const auto& member : members) {
    bits |= std::uint64_t{1} << index_of(member);
  }
  return SubsetId{bits};
}

std::vector<std::string> Frame::decode(SubsetId subset) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (subset.contains(i)) out.push_back((*labels_)[i]);
  }
  return out;
}

std::string Frame::describe(SubsetId subset) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!subset.contains(i)) continue;
    if (!first) out += ',';
    out += (*labels_)[i];
    first = false;
  }
  return out + "}";
}

Frame make_frame(std::vector<std::string> labels) { return Frame(std::move(labels)); }

void require_same_frame(const Frame& a, const Frame& b) {
  if (!(a == b)) {
    throw FusionError(ErrorCode::kFrameMismatch, "operands are defined over different frames");
  }
}

void require_owned(const Frame& frame, SubsetId subset) {
  if (!frame.owns(subset)) {
    throw FusionError(ErrorCode::kFrameMismatch,
                      "subset uses elements outside a frame of size " + std::to_string(frame.size()));
  }
}

}  // namespace dsfusion
