#pragma once

// Inner-loop kernels of the alignment DP. Every backend must produce results
// bit-identical to the scalar reference: the operations are elementwise
// max, add and min, which IEEE-754 evaluates exactly the same lane by lane.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace pdm::kernels {

enum class Backend { Scalar, Avx2, Neon };

std::string_view name(Backend b);

/// acc[k] = max(acc[k], row[k]) for k < acc.size().
using MaxAccumulateFn = void (*)(double* acc, const double* row, std::size_t n);

/// out[j] = min(prev[j] + diag_cost[j], prev[j + 1] + up_cost) for j < n.
/// `prev` has n + 1 entries; the caller offsets pointers so that
/// prev[j] is the diagonal predecessor of out[j].
using RelaxDiagUpFn = void (*)(const double* prev, const double* diag_cost, double up_cost, double* out,
                               std::size_t n);

struct Dispatch {
    Backend backend;
    MaxAccumulateFn max_accumulate;
    RelaxDiagUpFn relax_diag_up;
};

namespace scalar {
void max_accumulate(double* acc, const double* row, std::size_t n);
void relax_diag_up(const double* prev, const double* diag_cost, double up_cost, double* out, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void max_accumulate(double* acc, const double* row, std::size_t n);
void relax_diag_up(const double* prev, const double* diag_cost, double up_cost, double* out, std::size_t n);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
void max_accumulate(double* acc, const double* row, std::size_t n);
void relax_diag_up(const double* prev, const double* diag_cost, double up_cost, double* out, std::size_t n);
}  // namespace neon
#endif

/// Backends this binary was built with and the CPU supports.
std::vector<Backend> available_backends();
Dispatch dispatch_for(Backend b);

/// The process-wide active dispatch (best available unless overridden).
const Dispatch& active();

/// Overrides the active backend; throws if unavailable. Not thread-safe,
/// intended for startup and tests.
void force_backend(Backend b);

}  // namespace pdm::kernels
