#include "pdm/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace pdm::kernels {

std::string_view name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "unknown";
}

std::vector<Backend> available_backends() {
    std::vector<Backend> out{Backend::Scalar};
#if defined(__x86_64__) || defined(_M_X64)
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2")) out.push_back(Backend::Avx2);
#endif
#if defined(__aarch64__)
    out.push_back(Backend::Neon);
#endif
    return out;
}

Dispatch dispatch_for(Backend b) {
    switch (b) {
        case Backend::Scalar: return {b, &scalar::max_accumulate, &scalar::relax_diag_up};
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::Avx2: return {b, &avx2::max_accumulate, &avx2::relax_diag_up};
#endif
#if defined(__aarch64__)
        case Backend::Neon: return {b, &neon::max_accumulate, &neon::relax_diag_up};
#endif
        default: break;
    }
    throw std::invalid_argument("kernel backend not compiled in: " + std::string(name(b)));
}

namespace {

Dispatch select_default() {
    // PDM_KERNELS=scalar pins the reference path.
    if (const char* env = std::getenv("PDM_KERNELS")) {
        for (Backend b : available_backends())
            if (name(b) == env) return dispatch_for(b);
    }
    return dispatch_for(available_backends().back());
}

Dispatch& state() {
    static Dispatch d = select_default();
    return d;
}

}  // namespace

const Dispatch& active() { return state(); }

void force_backend(Backend b) {
    for (Backend avail : available_backends()) {
        if (avail == b) {
            state() = dispatch_for(b);
            return;
        }
    }
    throw std::invalid_argument("kernel backend not available on this CPU: " + std::string(name(b)));
}

}  // namespace pdm::kernels
