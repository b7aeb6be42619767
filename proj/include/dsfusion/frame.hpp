#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dsfusion {

/// Largest supported frame. Subsets are bit vectors in one 64-bit word and the
/// full set must stay representable, so the top bit is kept free.
inline constexpr std::size_t kMaxFrameSize = 63;

/// An element of the power set, encoded as a bit vector over the canonical
/// label order of its Frame: bit i set means label i is a member.
class SubsetId {
 public:
  constexpr SubsetId() = default;
  constexpr explicit SubsetId(std::uint64_t bits) : bits_(bits) {}

  static constexpr SubsetId empty() { return SubsetId{}; }
  static constexpr SubsetId singleton(std::size_t index) {
    return SubsetId{std::uint64_t{1} << index};
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool is_empty() const { return bits_ == 0; }
  constexpr int cardinality() const { return std::popcount(bits_); }
  constexpr bool contains(std::size_t index) const { return (bits_ >> index) & 1U; }
  constexpr bool is_subset_of(SubsetId other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(SubsetId other) const { return (bits_ & other.bits_) != 0; }

  friend constexpr SubsetId operator&(SubsetId a, SubsetId b) { return SubsetId{a.bits_ & b.bits_}; }
  friend constexpr SubsetId operator|(SubsetId a, SubsetId b) { return SubsetId{a.bits_ | b.bits_}; }
  friend constexpr auto operator<=>(SubsetId, SubsetId) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Ordered, finite set of hypothesis labels. Cheap to copy: the label list is
/// shared and immutable. Two frames are equal when their label sequences are.
class Frame {
 public:
  /// Validates and freezes `labels`; their order becomes the bit order.
  explicit Frame(std::vector<std::string> labels);

  std::size_t size() const { return labels_->size(); }
  std::span<const std::string> labels() const { return *labels_; }
  const std::string& label(std::size_t index) const { return (*labels_)[index]; }

  SubsetId full() const {
    return SubsetId{size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1};
  }
  SubsetId complement(SubsetId subset) const { return SubsetId{~subset.bits() & full().bits()}; }
  bool owns(SubsetId subset) const { return subset.is_subset_of(full()); }

  /// Position of `label`, or throws UnknownLabel.
  std::size_t index_of(std::string_view label) const;
  SubsetId encode(std::span<const std::string> members) const;
  std::vector<std::string> decode(SubsetId subset) const;
  /// "{a,b}" style rendering used in diagnostics.
  std::string describe(SubsetId subset) const;

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

Frame make_frame(std::vector<std::string> labels);

/// Throws FrameMismatch unless both frames are equal.
void require_same_frame(const Frame& a, const Frame& b);

/// Throws FrameMismatch when `subset` uses bits outside the frame.
void require_owned(const Frame& frame, SubsetId subset);

}  // namespace dsfusion
