#include <cstdlib>

#include "retcc/kernels.hpp"

namespace retcc::kernels {

namespace {

Backend resolve_backend() {
#ifdef RETCC_BUILD_AVX2
    if (std::getenv("RETCC_NO_SIMD") == nullptr && __builtin_cpu_supports("avx2") &&
        __builtin_cpu_supports("fma"))
        return Backend::avx2;
#endif
    return Backend::scalar;
}

const Backend g_backend = resolve_backend();

}  // namespace

Backend active_backend() { return g_backend; }

std::string backend_name() {
    return g_backend == Backend::avx2 ? "avx2" : "scalar";
}

void faddeeva_re(const double* x, std::size_t n, double y, double* out) {
#ifdef RETCC_BUILD_AVX2
    if (g_backend == Backend::avx2) {
        detail::faddeeva_re_avx2(x, n, y, out);
        return;
    }
#endif
    detail::faddeeva_re_scalar(x, n, y, out);
}

void axpy(double a, const double* x, std::size_t n, double* y) {
#ifdef RETCC_BUILD_AVX2
    if (g_backend == Backend::avx2) {
        detail::axpy_avx2(a, x, n, y);
        return;
    }
#endif
    detail::axpy_scalar(a, x, n, y);
}

double dot(const double* a, const double* b, std::size_t n) {
#ifdef RETCC_BUILD_AVX2
    if (g_backend == Backend::avx2) return detail::dot_avx2(a, b, n);
#endif
    return detail::dot_scalar(a, b, n);
}

}  // namespace retcc::kernels
