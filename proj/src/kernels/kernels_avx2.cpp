#include <immintrin.h>

#include "egta/kernels.hpp"

namespace egta::kern {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4), acc1);
  }
  for (; k + 4 <= n; k += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += a[k] * b[k];
  return s;
}

void axpy_avx2(double* acc, double w, const double* src, std::size_t n) {
  __m256d wv = _mm256_set1_pd(w);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d r = _mm256_fmadd_pd(wv, _mm256_loadu_pd(src + k), _mm256_loadu_pd(acc + k));
    _mm256_storeu_pd(acc + k, r);
  }
  for (; k < n; ++k) acc[k] += w * src[k];
}

void replicator_avx2(double* out, const double* p, const double* dev,
                     double base, double alpha, std::size_t n) {
  __m256d bv = _mm256_set1_pd(base);
  __m256d av = _mm256_set1_pd(alpha);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d pv = _mm256_loadu_pd(p + k);
    __m256d gap = _mm256_sub_pd(_mm256_loadu_pd(dev + k), bv);
    __m256d r = _mm256_fmadd_pd(_mm256_mul_pd(av, pv), gap, pv);
    _mm256_storeu_pd(out + k, r);
  }
  for (; k < n; ++k) out[k] = p[k] + alpha * p[k] * (dev[k] - base);
}

double max_avx2(const double* a, std::size_t n) {
  if (n < 4) {
    double m = a[0];
    for (std::size_t k = 1; k < n; ++k)
      if (a[k] > m) m = a[k];
    return m;
  }
  __m256d mv = _mm256_loadu_pd(a);
  std::size_t k = 4;
  for (; k + 4 <= n; k += 4) mv = _mm256_max_pd(mv, _mm256_loadu_pd(a + k));
  __m128d lo = _mm256_castpd256_pd128(mv);
  __m128d hi = _mm256_extractf128_pd(mv, 1);
  lo = _mm_max_pd(lo, hi);
  double m = _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
  for (; k < n; ++k)
    if (a[k] > m) m = a[k];
  return m;
}

}  // namespace

const Backend kAvx2 = {"avx2", dot_avx2, axpy_avx2, replicator_avx2, max_avx2};

}  // namespace egta::kern
