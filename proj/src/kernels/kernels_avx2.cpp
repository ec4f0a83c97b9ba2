#include "retcc/kernels.hpp"

#ifdef RETCC_BUILD_AVX2

#include <immintrin.h>

namespace retcc::kernels::detail {

namespace {

constexpr double kInvSqrtPi = 0.564189583547756287;

// four Re w(x + iy) values per pass; both branches are evaluated and blended
// so lane results match the scalar kernel's per-point branch choice
inline __m256d wre4(__m256d x, double yv) {
    const __m256d y = _mm256_set1_pd(yv);
    const __m256d L = _mm256_set1_pd(kWeidemanL);

    // --- Weideman path ---
    const __m256d cr = _mm256_add_pd(L, y);           // Re(L - iz)
    const __m256d ci = _mm256_sub_pd(_mm256_setzero_pd(), x);  // Im(L - iz)
    const __m256d den = _mm256_fmadd_pd(cr, cr, _mm256_mul_pd(ci, ci));
    const __m256d nr = _mm256_sub_pd(L, y);
    const __m256d ni = x;
    __m256d zr = _mm256_div_pd(_mm256_fmadd_pd(nr, cr, _mm256_mul_pd(ni, ci)), den);
    __m256d zi = _mm256_div_pd(_mm256_fmsub_pd(ni, cr, _mm256_mul_pd(nr, ci)), den);
    __m256d pr = _mm256_set1_pd(kWeidemanCoeff[0]);
    __m256d pi = _mm256_setzero_pd();
    for (int k = 1; k < kWeidemanN; ++k) {
        const __m256d ck = _mm256_set1_pd(kWeidemanCoeff[k]);
        const __m256d tr =
            _mm256_add_pd(_mm256_fmsub_pd(pr, zr, _mm256_mul_pd(pi, zi)), ck);
        pi = _mm256_fmadd_pd(pr, zi, _mm256_mul_pd(pi, zr));
        pr = tr;
    }
    const __m256d c2r = _mm256_fmsub_pd(cr, cr, _mm256_mul_pd(ci, ci));
    const __m256d c2i = _mm256_mul_pd(_mm256_set1_pd(2.0), _mm256_mul_pd(cr, ci));
    const __m256d d2 = _mm256_fmadd_pd(c2r, c2r, _mm256_mul_pd(c2i, c2i));
    const __m256d t1 = _mm256_div_pd(
        _mm256_mul_pd(_mm256_set1_pd(2.0), _mm256_fmadd_pd(pr, c2r, _mm256_mul_pd(pi, c2i))),
        d2);
    const __m256d t2 =
        _mm256_div_pd(_mm256_mul_pd(_mm256_set1_pd(kInvSqrtPi), cr), den);
    const __m256d w_weid = _mm256_add_pd(t1, t2);

    // --- continued-fraction path ---
    __m256d rr = _mm256_setzero_pd();
    __m256d ri = _mm256_setzero_pd();
    for (int n = kCfTerms; n >= 1; --n) {
        const __m256d ar = _mm256_sub_pd(x, rr);
        const __m256d ai = _mm256_sub_pd(y, ri);
        const __m256d d = _mm256_fmadd_pd(ar, ar, _mm256_mul_pd(ai, ai));
        const __m256d c = _mm256_set1_pd(0.5 * n);
        rr = _mm256_div_pd(_mm256_mul_pd(c, ar), d);
        ri = _mm256_sub_pd(_mm256_setzero_pd(), _mm256_div_pd(_mm256_mul_pd(c, ai), d));
    }
    const __m256d ar = _mm256_sub_pd(x, rr);
    const __m256d ai = _mm256_sub_pd(y, ri);
    const __m256d d = _mm256_fmadd_pd(ar, ar, _mm256_mul_pd(ai, ai));
    const __m256d w_cf =
        _mm256_div_pd(_mm256_mul_pd(_mm256_set1_pd(kInvSqrtPi), ai), d);

    const __m256d r2 = _mm256_fmadd_pd(x, x, _mm256_mul_pd(y, y));
    const __m256d use_cf = _mm256_cmp_pd(r2, _mm256_set1_pd(kCfRadius2), _CMP_GT_OQ);
    return _mm256_blendv_pd(w_weid, w_cf, use_cf);
}

}  // namespace

void faddeeva_re_avx2(const double* x, std::size_t n, double y, double* out) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d xv = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(out + i, wre4(xv, y));
    }
    if (i < n) faddeeva_re_scalar(x + i, n - i, y, out + i);
}

void axpy_avx2(double a, const double* x, std::size_t n, double* y) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yv = _mm256_loadu_pd(y + i);
        yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
        _mm256_storeu_pd(y + i, yv);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace retcc::kernels::detail

#endif  // RETCC_BUILD_AVX2
