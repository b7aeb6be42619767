#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Dense power-set kernels. A table for a frame of n elements holds 2^n doubles
// indexed by the encoded subset. Every kernel has a scalar reference
// implementation and, where the CPU allows, a SIMD variant selected at
// runtime. Variants perform the same additions in the same order per entry,
// so their results are bit-identical to the scalar reference.

namespace dsfusion::kernels {

/// Dense tables are capped at 2^24 entries (128 MiB of doubles).
inline constexpr std::size_t kMaxDenseFrame = 24;

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  /// t[S] <- sum over T subset of S of t[T]  (zeta transform; belief from mass)
  void (*subset_sum)(std::span<double> table, std::size_t n);
  /// Inverse of subset_sum (Moebius transform; mass from belief).
  void (*subset_difference)(std::span<double> table, std::size_t n);
  /// t[S] <- sum over T superset of S of t[T]  (commonality from mass)
  void (*superset_sum)(std::span<double> table, std::size_t n);
  /// Inverse of superset_sum.
  void (*superset_difference)(std::span<double> table, std::size_t n);
  /// dst[i] <- dst[i] * src[i]
  void (*multiply)(std::span<double> dst, std::span<const double> src);
};

bool isa_supported(Isa isa) noexcept;

/// Kernels for a specific instruction set; throws std::invalid_argument when
/// the running CPU (or this build) does not support it.
const KernelTable& table_for(Isa isa);

/// Best supported kernels, chosen once. Setting DSFUSION_ISA=scalar in the
/// environment pins the scalar reference.
const KernelTable& active();

namespace scalar {
void subset_sum(std::span<double> table, std::size_t n);
void subset_difference(std::span<double> table, std::size_t n);
void superset_sum(std::span<double> table, std::size_t n);
void superset_difference(std::span<double> table, std::size_t n);
void multiply(std::span<double> dst, std::span<const double> src);
}  // namespace scalar

}  // namespace dsfusion::kernels
