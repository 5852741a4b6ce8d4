#pragma once

// Data-parallel inner loops used by the estimators and the consensus phase.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, a vector variant (AVX2 on x86-64, NEON on aarch64). The active
// variant is chosen once at startup from the CPU's capabilities and can be
// overridden with the DISTLS_ISA environment variable ("scalar", "avx2",
// "neon") or set_isa().
//
// The vector variants only use separate multiply and add instructions (no
// fused multiply-add) and perform the same per-element operation sequence as
// the scalar loops, so all variants produce bit-identical results.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace distls::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// Variants compiled into this binary and supported by the running CPU.
std::vector<Isa> available_isas();

Isa active_isa();

/// Throws std::invalid_argument if the variant is not available.
void set_isa(Isa isa);

/// y[i] += a * x[i]
void axpy(double a, std::span<const double> x, std::span<double> y);

/// A += s * u * v^T for a column-major rows x cols matrix A (rows = u.size()).
void rank1_update(double s, std::span<const double> u, std::span<const double> v, std::span<double> a);

/// out = sum_j weights[j] * inputs[j]; every input has out.size() elements.
void weighted_sum(std::span<const double> weights, std::span<const double* const> inputs,
                  std::span<double> out);

/// Entry points of one variant, for equivalence testing against the scalar
/// reference. Pointers use raw (pointer, length) arguments.
struct KernelTable {
  void (*axpy)(double a, const double* x, double* y, std::size_t len);
  void (*rank1_update)(double s, const double* u, std::size_t rows, const double* v, std::size_t cols, double* a);
  void (*weighted_sum)(const double* weights, const double* const* inputs, std::size_t count, double* out,
                       std::size_t len);
};

/// nullptr when the variant is not in available_isas().
const KernelTable* kernel_table(Isa isa);

}  // namespace distls::kernels
