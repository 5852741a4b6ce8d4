#include <arm_neon.h>

#include "variants.hpp"

namespace distls::kernels::neon {

void axpy(double a, const double* x, double* y, std::size_t len) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    float64x2_t y0 = vld1q_f64(y + i);
    float64x2_t y1 = vld1q_f64(y + i + 2);
    y0 = vaddq_f64(y0, vmulq_f64(va, vld1q_f64(x + i)));
    y1 = vaddq_f64(y1, vmulq_f64(va, vld1q_f64(x + i + 2)));
    vst1q_f64(y + i, y0);
    vst1q_f64(y + i + 2, y1);
  }
  for (; i + 2 <= len; i += 2) {
    float64x2_t y0 = vld1q_f64(y + i);
    y0 = vaddq_f64(y0, vmulq_f64(va, vld1q_f64(x + i)));
    vst1q_f64(y + i, y0);
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
  for (std::size_t i = 0; i < len; ++i) {
    out[i] = 0.0;
  }
  for (std::size_t j = 0; j < count; ++j) {
    if (weights[j] != 0.0) {
      axpy(weights[j], inputs[j], out, len);
    }
  }
}

}  // namespace distls::kernels::neon
