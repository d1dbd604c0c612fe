#include "adkde/simd/kernel_sum.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace adkde::simd {

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "?";
}

std::vector<Backend> compiled_backends() {
    std::vector<Backend> v{Backend::scalar};
#if defined(ADKDE_HAVE_AVX2)
    v.push_back(Backend::avx2);
#endif
#if defined(ADKDE_HAVE_NEON)
    v.push_back(Backend::neon);
#endif
    return v;
}

bool backend_available(Backend b) {
    switch (b) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
#if defined(ADKDE_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") != 0;
#else
            return false;
#endif
        case Backend::neon:
#if defined(ADKDE_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

namespace {

Backend pick_default() {
    if (const char* env = std::getenv("ADKDE_BACKEND")) {
        std::string want(env);
        for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon})
            if (want == backend_name(b)) {
                if (!backend_available(b))
                    throw std::runtime_error("ADKDE_BACKEND=" + want +
                                             " is not available on this machine");
                return b;
            }
        throw std::runtime_error("ADKDE_BACKEND=" + want +
                                 " is not one of scalar|avx2|neon");
    }
#if defined(ADKDE_HAVE_AVX2)
    if (backend_available(Backend::avx2)) return Backend::avx2;
#endif
#if defined(ADKDE_HAVE_NEON)
    return Backend::neon;
#else
    return Backend::scalar;
#endif
}

Backend& backend_slot() {
    static Backend b = pick_default();
    return b;
}

} // namespace

Backend active_backend() { return backend_slot(); }

void force_backend(Backend b) {
    if (!backend_available(b))
        throw std::runtime_error(std::string("backend not available: ") + backend_name(b));
    backend_slot() = b;
}

KernelSumResult kernel_sum(const KernelSumPlan& plan) {
    switch (backend_slot()) {
#if defined(ADKDE_HAVE_AVX2)
        case Backend::avx2: return kernel_sum_avx2(plan);
#endif
#if defined(ADKDE_HAVE_NEON)
        case Backend::neon: return kernel_sum_neon(plan);
#endif
        default: return kernel_sum_scalar(plan);
    }
}

} // namespace adkde::simd
