#include <atomic>
#include <cassert>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "distls/kernels.hpp"
#include "variants.hpp"

namespace distls::kernels {

namespace {

using Table = KernelTable;

constexpr Table kScalar{&scalar::axpy, &scalar::rank1_update, &scalar::weighted_sum};
#if defined(DISTLS_HAVE_AVX2)
constexpr Table kAvx2{&avx2::axpy, &avx2::rank1_update, &avx2::weighted_sum};
#endif
#if defined(DISTLS_HAVE_NEON)
constexpr Table kNeon{&neon::axpy, &neon::rank1_update, &neon::weighted_sum};
#endif

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(DISTLS_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(DISTLS_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const Table& table_for(Isa isa) {
  switch (isa) {
#if defined(DISTLS_HAVE_AVX2)
    case Isa::Avx2:
      return kAvx2;
#endif
#if defined(DISTLS_HAVE_NEON)
    case Isa::Neon:
      return kNeon;
#endif
    default:
      return kScalar;
  }
}

Isa detect() {
  if (const char* env = std::getenv("DISTLS_ISA")) {
    const std::string want(env);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (want == isa_name(isa) && cpu_supports(isa)) {
        return isa;
      }
    }
  }
  if (cpu_supports(Isa::Avx2)) return Isa::Avx2;
  if (cpu_supports(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (cpu_supports(isa)) out.push_back(isa);
  }
  return out;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!cpu_supports(isa)) {
    throw std::invalid_argument("kernel variant not available: " + std::string(isa_name(isa)));
  }
  current().store(isa, std::memory_order_relaxed);
}

const KernelTable* kernel_table(Isa isa) {
  if (!cpu_supports(isa)) return nullptr;
  return &table_for(isa);
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  table_for(active_isa()).axpy(a, x.data(), y.data(), y.size());
}

void rank1_update(double s, std::span<const double> u, std::span<const double> v, std::span<double> a) {
  assert(a.size() == u.size() * v.size());
  table_for(active_isa()).rank1_update(s, u.data(), u.size(), v.data(), v.size(), a.data());
}

void weighted_sum(std::span<const double> weights, std::span<const double* const> inputs,
                  std::span<double> out) {
  assert(weights.size() == inputs.size());
  table_for(active_isa()).weighted_sum(weights.data(), inputs.data(), inputs.size(), out.data(), out.size());
}

}  // namespace distls::kernels
