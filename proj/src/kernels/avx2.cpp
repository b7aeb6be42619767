// Built with -mavx2 only (no FMA), so every lane performs exactly the
// rounding the scalar reference performs.

#include <immintrin.h>

#include <cassert>

#include "dsfusion/kernels.hpp"
#include "kernels_internal.hpp"

namespace dsfusion::kernels::avx2 {

namespace {

enum class Direction { kSubset, kSuperset };

template <bool Subtract>
inline __m256d combine(__m256d target, __m256d source) {
  if constexpr (Subtract) {
    return _mm256_sub_pd(target, source);
  } else {
    return _mm256_add_pd(target, source);
  }
}

// Subset direction: the entry with the bit set receives the one without.
// Superset direction: the other way round.
template <Direction Dir, bool Subtract>
void transform(std::span<double> table, std::size_t n) {
  assert(table.size() == (std::size_t{1} << n));
  if (n < 2) {
    if constexpr (Dir == Direction::kSubset) {
      Subtract ? scalar::subset_difference(table, n) : scalar::subset_sum(table, n);
    } else {
      Subtract ? scalar::superset_difference(table, n) : scalar::superset_sum(table, n);
    }
    return;
  }

  double* t = table.data();
  const std::size_t size = table.size();

  // bits 0 and 1 live inside one 4-wide register
  for (std::size_t i = 0; i < size; i += 4) {
    __m256d v = _mm256_loadu_pd(t + i);
    if constexpr (Dir == Direction::kSubset) {
      const __m256d lo = _mm256_permute_pd(v, 0b0000);  // t0 t0 t2 t2
      v = _mm256_blend_pd(v, combine<Subtract>(v, lo), 0b1010);
      const __m256d pair = _mm256_permute2f128_pd(v, v, 0x00);  // t0 t1 t0 t1
      v = _mm256_blend_pd(v, combine<Subtract>(v, pair), 0b1100);
    } else {
      const __m256d hi = _mm256_permute_pd(v, 0b1111);  // t1 t1 t3 t3
      v = _mm256_blend_pd(v, combine<Subtract>(v, hi), 0b0101);
      const __m256d pair = _mm256_permute2f128_pd(v, v, 0x11);  // t2 t3 t2 t3
      v = _mm256_blend_pd(v, combine<Subtract>(v, pair), 0b0011);
    }
    _mm256_storeu_pd(t + i, v);
  }

  for (std::size_t step = 4; step < size; step <<= 1) {
    for (std::size_t base = 0; base < size; base += 2 * step) {
      double* lower = t + base;
      double* upper = t + base + step;
      for (std::size_t j = 0; j < step; j += 4) {
        const __m256d a = _mm256_loadu_pd(lower + j);
        const __m256d b = _mm256_loadu_pd(upper + j);
        if constexpr (Dir == Direction::kSubset) {
          _mm256_storeu_pd(upper + j, combine<Subtract>(b, a));
        } else {
          _mm256_storeu_pd(lower + j, combine<Subtract>(a, b));
        }
      }
    }
  }
}

}  // namespace

void subset_sum(std::span<double> table, std::size_t n) { transform<Direction::kSubset, false>(table, n); }

void subset_difference(std::span<double> table, std::size_t n) {
  transform<Direction::kSubset, true>(table, n);
}

void superset_sum(std::span<double> table, std::size_t n) { transform<Direction::kSuperset, false>(table, n); }

void superset_difference(std::span<double> table, std::size_t n) {
  transform<Direction::kSuperset, true>(table, n);
}

void multiply(std::span<double> dst, std::span<const double> src) {
  assert(dst.size() == src.size());
  std::size_t i = 0;
  for (; i + 4 <= dst.size(); i += 4) {
    _mm256_storeu_pd(dst.data() + i, _mm256_mul_pd(_mm256_loadu_pd(dst.data() + i), _mm256_loadu_pd(src.data() + i)));
  }
  for (; i < dst.size(); ++i) dst[i] *= src[i];
}

}  // namespace dsfusion::kernels::avx2
