#include <immintrin.h>

#include "variants.hpp"

namespace distls::kernels::avx2 {

void axpy(double a, const double* x, double* y, std::size_t len) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    __m256d y0 = _mm256_loadu_pd(y + i);
    __m256d y1 = _mm256_loadu_pd(y + i + 4);
    y0 = _mm256_add_pd(y0, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    y1 = _mm256_add_pd(y1, _mm256_mul_pd(va, _mm256_loadu_pd(x + i + 4)));
    _mm256_storeu_pd(y + i, y0);
    _mm256_storeu_pd(y + i + 4, y1);
  }
  for (; i + 4 <= len; i += 4) {
    __m256d y0 = _mm256_loadu_pd(y + i);
    y0 = _mm256_add_pd(y0, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, y0);
  }
  for (; i < len; ++i) {
    y[i] = y[i] + a * x[i];
  }
}

void rank1_update(double s, const double* u, std::size_t rows, const double* v, std::size_t cols, double* a) {
  for (std::size_t j = 0; j < cols; ++j) {
    axpy(s * v[j], u, a + j * rows, rows);
  }
}

void weighted_sum(const double* weights, const double* const* inputs, std::size_t count, double* out,
                  std::size_t len) {
  std::size_t i = 0;
  const __m256d zero = _mm256_setzero_pd();
  for (; i + 4 <= len; i += 4) {
    _mm256_storeu_pd(out + i, zero);
  }
  for (; i < len; ++i) {
    out[i] = 0.0;
  }
  for (std::size_t j = 0; j < count; ++j) {
    if (weights[j] != 0.0) {
      axpy(weights[j], inputs[j], out, len);
    }
  }
}

}  // namespace distls::kernels::avx2
