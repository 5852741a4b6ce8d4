#include "variants.hpp"

namespace distls::kernels::scalar {

void axpy(double a, const double* x, double* y, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
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

}  // namespace distls::kernels::scalar
