#pragma once

#include <cstddef>
#include <span>

namespace dsfusion::kernels {

#if defined(DSFUSION_HAVE_AVX2_TU)
namespace avx2 {
void subset_sum(std::span<double> table, std::size_t n);
void subset_difference(std::span<double> table, std::size_t n);
void superset_sum(std::span<double> table, std::size_t n);
void superset_difference(std::span<double> table, std::size_t n);
void multiply(std::span<double> dst, std::span<const double> src);
}  // namespace avx2
#endif

#if defined(DSFUSION_HAVE_NEON_TU)
namespace neon {
void subset_sum(std::span<double> table, std::size_t n);
void subset_difference(std::span<double> table, std::size_t n);
void superset_sum(std::span<double> table, std::size_t n);
void superset_difference(std::span<double> table, std::size_t n);
void multiply(std::span<double> dst, std::span<const double> src);
}  // namespace neon
#endif

}  // namespace dsfusion::kernels
