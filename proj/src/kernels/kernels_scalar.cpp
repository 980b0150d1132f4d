#include "egta/kernels.hpp"

namespace egta::kern {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

void axpy_scalar(double* acc, double w, const double* src, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) acc[k] += w * src[k];
}

void replicator_scalar(double* out, const double* p, const double* dev,
                       double base, double alpha, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k)
    out[k] = p[k] + alpha * p[k] * (dev[k] - base);
}

double max_scalar(const double* a, std::size_t n) {
  double m = a[0];
  for (std::size_t k = 1; k < n; ++k)
    if (a[k] > m) m = a[k];
  return m;
}

}  // namespace

const Backend kScalar = {"scalar", dot_scalar, axpy_scalar, replicator_scalar,
                         max_scalar};

}  // namespace egta::kern
