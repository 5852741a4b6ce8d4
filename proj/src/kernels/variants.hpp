#pragma once

#include <cstddef>

namespace distls::kernels {

#define DISTLS_KERNEL_DECLS                                                                                  \
  void axpy(double a, const double* x, double* y, std::size_t len);                                          \
  void rank1_update(double s, const double* u, std::size_t rows, const double* v, std::size_t cols, double* a); \
  void weighted_sum(const double* weights, const double* const* inputs, std::size_t count, double* out,      \
                    std::size_t len);

namespace scalar {
DISTLS_KERNEL_DECLS
}
namespace avx2 {
DISTLS_KERNEL_DECLS
}
namespace neon {
DISTLS_KERNEL_DECLS
}

#undef DISTLS_KERNEL_DECLS

}  // namespace distls::kernels
