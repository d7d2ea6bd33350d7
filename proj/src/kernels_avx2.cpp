#include "pdm/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace pdm::kernels::avx2 {

__attribute__((target("avx2"))) void max_accumulate(double* acc, const double* row, std::size_t n) {
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d a = _mm256_loadu_pd(acc + k);
        const __m256d r = _mm256_loadu_pd(row + k);
        _mm256_storeu_pd(acc + k, _mm256_max_pd(r, a));
    }
    for (; k < n; ++k) acc[k] = acc[k] < row[k] ? row[k] : acc[k];
}

__attribute__((target("avx2"))) void relax_diag_up(const double* prev, const double* diag_cost, double up_cost,
                                                   double* out, std::size_t n) {
    const __m256d up_v = _mm256_set1_pd(up_cost);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d diag = _mm256_add_pd(_mm256_loadu_pd(prev + j), _mm256_loadu_pd(diag_cost + j));
        const __m256d up = _mm256_add_pd(_mm256_loadu_pd(prev + j + 1), up_v);
        // min_pd returns the second operand on equality; values are equal then anyway.
        _mm256_storeu_pd(out + j, _mm256_min_pd(up, diag));
    }
    for (; j < n; ++j) {
        const double diag = prev[j] + diag_cost[j];
        const double up = prev[j + 1] + up_cost;
        out[j] = up < diag ? up : diag;
    }
}

}  // namespace pdm::kernels::avx2

#endif
