// aarch64 only. Two doubles per register; bit 0 pairs share a register, so
// that pass stays scalar.

#include <arm_neon.h>

#include <cassert>

#include "dsfusion/kernels.hpp"
#include "kernels_internal.hpp"

namespace dsfusion::kernels::neon {

namespace {

template <bool Superset, bool Subtract>
void transform(std::span<double> table, std::size_t n) {
  assert(table.size() == (std::size_t{1} << n));
  double* t = table.data();
  const std::size_t size = table.size();
  for (std::size_t step = 1; step < size; step <<= 1) {
    for (std::size_t base = 0; base < size; base += 2 * step) {
      double* lower = t + base;
      double* upper = t + base + step;
      double* target = Superset ? lower : upper;
      const double* source = Superset ? upper : lower;
      if (step == 1) {
        *target = Subtract ? *target - *source : *target + *source;
        continue;
      }
      for (std::size_t j = 0; j < step; j += 2) {
        const float64x2_t a = vld1q_f64(target + j);
        const float64x2_t b = vld1q_f64(source + j);
        vst1q_f64(target + j, Subtract ? vsubq_f64(a, b) : vaddq_f64(a, b));
      }
    }
  }
}

}  // namespace

void subset_sum(std::span<double> table, std::size_t n) { transform<false, false>(table, n); }
void subset_difference(std::span<double> table, std::size_t n) { transform<false, true>(table, n); }
void superset_sum(std::span<double> table, std::size_t n) { transform<true, false>(table, n); }
void superset_difference(std::span<double> table, std::size_t n) { transform<true, true>(table, n); }

void multiply(std::span<double> dst, std::span<const double> src) {
  assert(dst.size() == src.size());
  std::size_t i = 0;
  for (; i + 2 <= dst.size(); i += 2) {
    vst1q_f64(dst.data() + i, vmulq_f64(vld1q_f64(dst.data() + i), vld1q_f64(src.data() + i)));
  }
  for (; i < dst.size(); ++i) dst[i] *= src[i];
}

}  // namespace dsfusion::kernels::neon
