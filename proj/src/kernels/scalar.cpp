#include "greeneval/kernels/kernels.hpp"

namespace greeneval::kernels {

namespace {

double trapezoid_sum2_scalar(const double* t, const double* w, std::size_t count) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < count; ++i) {
    acc += (t[i + 1] - t[i]) * (w[i] + w[i + 1]);
  }
  return acc;
}

void dominator_mask_scalar(const double* columns, std::size_t n, std::size_t k,
                           std::size_t target, std::uint8_t* out) {
  for (std::size_t j = 0; j < n; ++j) {
    bool all_le = true;
    bool any_lt = false;
    for (std::size_t d = 0; d < k; ++d) {
      const double a = columns[d * n + j];
      const double b = columns[d * n + target];
      all_le = all_le && a <= b;
      any_lt = any_lt || a < b;
    }
    out[j] = (all_le && any_lt) ? 1 : 0;
  }
}

constexpr KernelTable kScalar{Isa::kScalar, &trapezoid_sum2_scalar, &dominator_mask_scalar};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace greeneval::kernels
