#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops used by the payoff/regret machinery. A scalar
// reference implementation always exists; wider variants (AVX2 on x86-64,
// NEON on arm64) are selected once at startup based on what the CPU
// supports. Set EGTA_KERNELS=scalar in the environment to force the
// reference path.
namespace egta::kern {

struct Backend {
  const char* name;
  // sum_k a[k] * b[k]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // acc[k] += w * src[k]
  void (*axpy)(double* acc, double w, const double* src, std::size_t n);
  // out[k] = p[k] + alpha * p[k] * (dev[k] - base)
  void (*replicator)(double* out, const double* p, const double* dev,
                     double base, double alpha, std::size_t n);
  // max_k a[k]  (n >= 1)
  double (*max)(const double* a, std::size_t n);
};

extern const Backend kScalar;
#if defined(EGTA_BUILD_AVX2)
extern const Backend kAvx2;
#endif
#if defined(EGTA_BUILD_NEON)
extern const Backend kNeon;
#endif

const Backend& active();
std::string_view active_name();

inline double dot(const double* a, const double* b, std::size_t n) {
  return active().dot(a, b, n);
}
inline void axpy(double* acc, double w, const double* src, std::size_t n) {
  active().axpy(acc, w, src, n);
}
inline void replicator(double* out, const double* p, const double* dev,
                       double base, double alpha, std::size_t n) {
  active().replicator(out, p, dev, base, alpha, n);
}
inline double vmax(const double* a, std::size_t n) {
  return active().max(a, n);
}

}  // namespace egta::kern
