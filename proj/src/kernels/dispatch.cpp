#include <cstdlib>
#include <stdexcept>
#include <string>

#include "dsfusion/kernels.hpp"
#include "kernels_internal.hpp"

namespace dsfusion::kernels {

namespace {

constexpr KernelTable kScalar{Isa::kScalar,        scalar::subset_sum,          scalar::subset_difference,
                              scalar::superset_sum, scalar::superset_difference, scalar::multiply};

#if defined(DSFUSION_HAVE_AVX2_TU)
constexpr KernelTable kAvx2{Isa::kAvx2,         avx2::subset_sum,          avx2::subset_difference,
                            avx2::superset_sum, avx2::superset_difference, avx2::multiply};
#endif

#if defined(DSFUSION_HAVE_NEON_TU)
constexpr KernelTable kNeon{Isa::kNeon,         neon::subset_sum,          neon::subset_difference,
                            neon::superset_sum, neon::superset_difference, neon::multiply};
#endif

const KernelTable& choose() {
  if (const char* forced = std::getenv("DSFUSION_ISA"); forced != nullptr && std::string(forced) == "scalar") {
    return kScalar;
  }
  if (isa_supported(Isa::kAvx2)) return table_for(Isa::kAvx2);
  if (isa_supported(Isa::kNeon)) return table_for(Isa::kNeon);
  return kScalar;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(DSFUSION_HAVE_AVX2_TU)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(DSFUSION_HAVE_NEON_TU)
      return true;  // mandatory on aarch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table_for(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("kernels for " + std::string(to_string(isa)) + " are not available here");
  }
  switch (isa) {
#if defined(DSFUSION_HAVE_AVX2_TU)
    case Isa::kAvx2: return kAvx2;
#endif
#if defined(DSFUSION_HAVE_NEON_TU)
    case Isa::kNeon: return kNeon;
#endif
    default: return kScalar;
  }
}

const KernelTable& active() {
  static const KernelTable& selected = choose();
  return selected;
}

}  // namespace dsfusion::kernels
