#include <arm_neon.h>

#include "egta/kernels.hpp"

namespace egta::kern {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2)
    acc = vfmaq_f64(acc, vld1q_f64(a + k), vld1q_f64(b + k));
  double s = vaddvq_f64(acc);
  for (; k < n; ++k) s += a[k] * b[k];
  return s;
}

void axpy_neon(double* acc, double w, const double* src, std::size_t n) {
  float64x2_t wv = vdupq_n_f64(w);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2)
    vst1q_f64(acc + k, vfmaq_f64(vld1q_f64(acc + k), wv, vld1q_f64(src + k)));
  for (; k < n; ++k) acc[k] += w * src[k];
}

void replicator_neon(double* out, const double* p, const double* dev,
                     double base, double alpha, std::size_t n) {
  float64x2_t bv = vdupq_n_f64(base);
  float64x2_t av = vdupq_n_f64(alpha);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    float64x2_t pv = vld1q_f64(p + k);
    float64x2_t gap = vsubq_f64(vld1q_f64(dev + k), bv);
    vst1q_f64(out + k, vfmaq_f64(pv, vmulq_f64(av, pv), gap));
  }
  for (; k < n; ++k) out[k] = p[k] + alpha * p[k] * (dev[k] - base);
}

double max_neon(const double* a, std::size_t n) {
  double m = a[0];
  std::size_t k = 1;
  if (n >= 2) {
    float64x2_t mv = vld1q_f64(a);
    for (k = 2; k + 2 <= n; k += 2) mv = vmaxq_f64(mv, vld1q_f64(a + k));
    m = vmaxvq_f64(mv);
  }
  for (; k < n; ++k)
    if (a[k] > m) m = a[k];
  return m;
}

}  // namespace

const Backend kNeon = {"neon", dot_neon, axpy_neon, replicator_neon, max_neon};

}  // namespace egta::kern
