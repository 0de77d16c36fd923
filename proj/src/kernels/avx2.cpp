// Built with -mavx2; only reached through dispatch after a CPU check.

#include <immintrin.h>

#include "greeneval/kernels/kernels.hpp"

namespace greeneval::kernels {

namespace {

double trapezoid_sum2_avx2(const double* t, const double* w, std::size_t count) {
  if (count < 2) return 0.0;
  const std::size_t intervals = count - 1;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= intervals; i += 8) {
    const __m256d dt0 = _mm256_sub_pd(_mm256_loadu_pd(t + i + 1), _mm256_loadu_pd(t + i));
    const __m256d sw0 = _mm256_add_pd(_mm256_loadu_pd(w + i + 1), _mm256_loadu_pd(w + i));
    const __m256d dt1 = _mm256_sub_pd(_mm256_loadu_pd(t + i + 5), _mm256_loadu_pd(t + i + 4));
    const __m256d sw1 = _mm256_add_pd(_mm256_loadu_pd(w + i + 5), _mm256_loadu_pd(w + i + 4));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(dt0, sw0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(dt1, sw1));
  }
  for (; i + 4 <= intervals; i += 4) {
    const __m256d dt = _mm256_sub_pd(_mm256_loadu_pd(t + i + 1), _mm256_loadu_pd(t + i));
    const __m256d sw = _mm256_add_pd(_mm256_loadu_pd(w + i + 1), _mm256_loadu_pd(w + i));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(dt, sw));
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < intervals; ++i) {
    total += (t[i + 1] - t[i]) * (w[i] + w[i + 1]);
  }
  return total;
}

void dominator_mask_avx2(const double* columns, std::size_t n, std::size_t k, std::size_t target,
                         std::uint8_t* out) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d all_le = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    __m256d any_lt = _mm256_setzero_pd();
    for (std::size_t d = 0; d < k; ++d) {
      const double* col = columns + d * n;
      const __m256d v = _mm256_loadu_pd(col + j);
      const __m256d ref = _mm256_set1_pd(col[target]);
      all_le = _mm256_and_pd(all_le, _mm256_cmp_pd(v, ref, _CMP_LE_OQ));
      any_lt = _mm256_or_pd(any_lt, _mm256_cmp_pd(v, ref, _CMP_LT_OQ));
    }
    const int bits = _mm256_movemask_pd(_mm256_and_pd(all_le, any_lt));
    out[j + 0] = static_cast<std::uint8_t>(bits & 1);
    out[j + 1] = static_cast<std::uint8_t>((bits >> 1) & 1);
    out[j + 2] = static_cast<std::uint8_t>((bits >> 2) & 1);
    out[j + 3] = static_cast<std::uint8_t>((bits >> 3) & 1);
  }
  for (; j < n; ++j) {
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

constexpr KernelTable kAvx2{Isa::kAvx2, &trapezoid_sum2_avx2, &dominator_mask_avx2};

}  // namespace

const KernelTable& avx2_kernels() { return kAvx2; }

}  // namespace greeneval::kernels
