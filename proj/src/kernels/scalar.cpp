#include <cassert>

#include "dsfusion/kernels.hpp"

namespace dsfusion::kernels::scalar {

// For bit `step` the table splits into blocks of 2*step entries; the upper
// half of each block holds the sets containing the bit, the lower half the
// same sets without it.

void subset_sum(std::span<double> table, [[maybe_unused]] std::size_t n) {
  assert(table.size() == (std::size_t{1} << n));
  const std::size_t size = table.size();
  for (std::size_t step = 1; step < size; step <<= 1) {
    for (std::size_t base = 0; base < size; base += 2 * step) {
      for (std::size_t j = 0; j < step; ++j) table[base + step + j] += table[base + j];
    }
  }
}

void subset_difference(std::span<double> table, [[maybe_unused]] std::size_t n) {
  assert(table.size() == (std::size_t{1} << n));
  const std::size_t size = table.size();
  for (std::size_t step = 1; step < size; step <<= 1) {
    for (std::size_t base = 0; base < size; base += 2 * step) {
      for (std::size_t j = 0; j < step; ++j) table[base + step + j] -= table[base + j];
    }
  }
}

void superset_sum(std::span<double> table, [[maybe_unused]] std::size_t n) {
  assert(table.size() == (std::size_t{1} << n));
  const std::size_t size = table.size();
  for (std::size_t step = 1; step < size; step <<= 1) {
    for (std::size_t base = 0; base < size; base += 2 * step) {
      for (std::size_t j = 0; j < step; ++j) table[base + j] += table[base + step + j];
    }
  }
}

void superset_difference(std::span<double> table, [[maybe_unused]] std::size_t n) {
  assert(table.size() == (std::size_t{1} << n));
  const std::size_t size = table.size();
  for (std::size_t step = 1; step < size; step <<= 1) {
    for (std::size_t base = 0; base < size; base += 2 * step) {
      for (std::size_t j = 0; j < step; ++j) table[base + j] -= table[base + step + j];
    }
  }
}

void multiply(std::span<double> dst, std::span<const double> src) {
  assert(dst.size() == src.size());
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] *= src[i];
}

}  // namespace dsfusion::kernels::scalar
