#include "pdm/kernels.hpp"

namespace pdm::kernels::scalar {

void max_accumulate(double* acc, const double* row, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) acc[k] = acc[k] < row[k] ? row[k] : acc[k];
}

void relax_diag_up(const double* prev, const double* diag_cost, double up_cost, double* out, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        const double diag = prev[j] + diag_cost[j];
        const double up = prev[j + 1] + up_cost;
        out[j] = up < diag ? up : diag;
    }
}

}  // namespace pdm::kernels::scalar
