#include <atomic>
#include <string>

#include "greeneval/error.hpp"
#include "greeneval/kernels/kernels.hpp"

namespace greeneval::kernels {

namespace {

const KernelTable& best_available() {
#if defined(GREENEVAL_HAVE_AVX2)
  if (isa_available(Isa::kAvx2)) return avx2_kernels();
#endif
  return scalar_kernels();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{&best_available()};
  return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(GREENEVAL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& active_kernels() { return *active_slot().load(std::memory_order_acquire); }

Isa active_isa() { return active_kernels().isa; }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw Error(ErrorCode::kInput, "kernel variant '" + std::string(isa_name(isa)) +
                                       "' is not available on this build/CPU");
  }
  const KernelTable* table = &scalar_kernels();
#if defined(GREENEVAL_HAVE_AVX2)
  if (isa == Isa::kAvx2) table = &avx2_kernels();
#endif
  active_slot().store(table, std::memory_order_release);
}

void reset_active_isa() { active_slot().store(&best_available(), std::memory_order_release); }

double trapezoid_sum2(std::span<const double> t, std::span<const double> w) {
  if (t.size() != w.size()) {
    throw Error(ErrorCode::kDimension, "trapezoid_sum2: column lengths differ");
  }
  return active_kernels().trapezoid_sum2(t.data(), w.data(), t.size());
}

void dominator_mask(const ObjectiveColumns& cols, std::size_t target,
                    std::span<std::uint8_t> out) {
  if (cols.data.size() != cols.n * cols.k || out.size() != cols.n || target >= cols.n) {
    throw Error(ErrorCode::kDimension, "dominator_mask: inconsistent column layout");
  }
  active_kernels().dominator_mask(cols.data.data(), cols.n, cols.k, target, out.data());
}

}  // namespace greeneval::kernels
