#include <cstdlib>
#include <cstring>

#include "egta/kernels.hpp"

namespace egta::kern {
namespace {

const Backend* pick() {
  const char* force = std::getenv("EGTA_KERNELS");
  if (force && std::strcmp(force, "scalar") == 0) return &kScalar;
#if defined(EGTA_BUILD_AVX2)
  if (force && std::strcmp(force, "avx2") == 0) return &kAvx2;
  if (!force && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return &kAvx2;
#endif
#if defined(EGTA_BUILD_NEON)
  if (force && std::strcmp(force, "neon") == 0) return &kNeon;
  if (!force) return &kNeon;
#endif
  return &kScalar;
}

}  // namespace

const Backend& active() {
  static const Backend* chosen = pick();
  return *chosen;
}

std::string_view active_name() { return active().name; }

}  // namespace egta::kern
