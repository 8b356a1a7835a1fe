#include "qsl/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace qsl::kernels {

namespace {

const Backend& pick() {
    const char* force = std::getenv("QSL_KERNEL");
    if (force != nullptr) {
        if (std::strcmp(force, "scalar") == 0) return scalar_backend();
#if defined(__x86_64__)
        if (std::strcmp(force, "avx2") == 0) return avx2_backend();
#endif
    }
#if defined(__x86_64__)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return avx2_backend();
#endif
    return scalar_backend();
}

} // namespace

const Backend& active() {
    static const Backend& b = pick();
    return b;
}

} // namespace qsl::kernels
