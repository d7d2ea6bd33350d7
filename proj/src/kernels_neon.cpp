#include "pdm/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace pdm::kernels::neon {

void max_accumulate(double* acc, const double* row, std::size_t n) {
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) vst1q_f64(acc + k, vmaxq_f64(vld1q_f64(acc + k), vld1q_f64(row + k)));
    for (; k < n; ++k) acc[k] = acc[k] < row[k] ? row[k] : acc[k];
}

void relax_diag_up(const double* prev, const double* diag_cost, double up_cost, double* out, std::size_t n) {
    const float64x2_t up_v = vdupq_n_f64(up_cost);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const float64x2_t diag = vaddq_f64(vld1q_f64(prev + j), vld1q_f64(diag_cost + j));
        const float64x2_t up = vaddq_f64(vld1q_f64(prev + j + 1), up_v);
        vst1q_f64(out + j, vminq_f64(up, diag));
    }
    for (; j < n; ++j) {
        const double diag = prev[j] + diag_cost[j];
        const double up = prev[j + 1] + up_cost;
        out[j] = up < diag ? up : diag;
    }
}

}  // namespace pdm::kernels::neon

#endif
