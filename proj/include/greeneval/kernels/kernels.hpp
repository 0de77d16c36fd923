#pragma once

// Data-parallel inner loops with one scalar reference implementation and
// ISA-specific variants picked at runtime. Every variant must agree with the
// scalar kernel: exactly for the dominance mask, to rounding for sums.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace greeneval::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

// Objectives laid out column-major: value of objective d for point j lives at
// data[d * n + j].
struct ObjectiveColumns {
  std::span<const double> data;
  std::size_t n = 0;
  std::size_t k = 0;

  double at(std::size_t point, std::size_t objective) const { return data[objective * n + point]; }
};

struct KernelTable {
  Isa isa;
  // Sum over i of (t[i+1] - t[i]) * (w[i] + w[i+1]); twice the trapezoid area.
  double (*trapezoid_sum2)(const double* t, const double* w, std::size_t count);
  // out[j] = 1 iff point j dominates point `target` (minimization), else 0.
  void (*dominator_mask)(const double* columns, std::size_t n, std::size_t k, std::size_t target,
                         std::uint8_t* out);
};

const KernelTable& scalar_kernels();
#if defined(GREENEVAL_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

// Best available variant unless overridden with set_active_isa().
const KernelTable& active_kernels();
Isa active_isa();
// Throws greeneval::Error(kInput) if the ISA is unavailable.
void set_active_isa(Isa isa);
void reset_active_isa();

double trapezoid_sum2(std::span<const double> t, std::span<const double> w);
void dominator_mask(const ObjectiveColumns& cols, std::size_t target, std::span<std::uint8_t> out);

}  // namespace greeneval::kernels
