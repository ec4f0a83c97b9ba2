#include <cmath>
#include <numbers>

#include "retcc/kernels.hpp"

namespace retcc::kernels::detail {

const double kWeidemanCoeff[32] = {
    -1.30317978630500875e-12, 3.74088129316536249e-12, 8.03036789996388945e-12,
    -2.15436320778387687e-11, -5.54423594816646238e-11, 1.16582510935237737e-10,
    4.15374309183345315e-10, -5.23102048119632885e-10, -3.20801509172336887e-09,
    8.12488945684665156e-10, 2.37975567798974168e-08, 2.29304390650999664e-08,
    -1.48130789151209774e-07, -4.18407637021697758e-07, 4.25583313757500854e-07,
    4.40153173157854990e-06, 6.82103194400198485e-06, -2.14096192017107501e-05,
    -1.30754492546153456e-04, -2.45329802700214317e-04, 3.92591360700703107e-04,
    4.51954110534921738e-03, 1.90061557848454077e-02, 5.73044035298372195e-02,
    1.40607162268937685e-01, 2.95444510715087316e-01, 5.46013972063934094e-01,
    9.01925489364799882e-01, 1.34554416923454490e+00, 1.82566962963248147e+00,
    2.26353729990026764e+00, 2.57225340812456960e+00};

namespace {

constexpr double kInvSqrtPi = 0.564189583547756287;  // 1/sqrt(pi)

// z = x + iy, y >= 0
inline double wre_weideman(double x, double y) {
    const double L = kWeidemanL;
    // Z = (L + iz)/(L - iz); L - iz = (L + y) - i x
    const double cr = L + y, ci = -x;
    const double den = cr * cr + ci * ci;
    // (L - y + i x) / (L + y - i x)
    const double nr = L - y, ni = x;
    double zr = (nr * cr + ni * ci) / den;
    double zi = (ni * cr - nr * ci) / den;
    // Horner in Z
    double pr = kWeidemanCoeff[0], pi = 0.0;
    for (int k = 1; k < kWeidemanN; ++k) {
        const double tr = pr * zr - pi * zi + kWeidemanCoeff[k];
        pi = pr * zi + pi * zr;
        pr = tr;
    }
    // w = 2 p / (L - iz)^2 + (1/sqrt(pi)) / (L - iz)
    const double c2r = cr * cr - ci * ci;
    const double c2i = 2.0 * cr * ci;
    const double d2 = c2r * c2r + c2i * c2i;
    const double t1r = 2.0 * (pr * c2r + pi * c2i) / d2;
    const double t2r = kInvSqrtPi * cr / den;
    return t1r + t2r;
}

inline double wre_contfrac(double x, double y) {
    // w(z) = (i/sqrt(pi)) / (z - 1/2/(z - 1/(z - 3/2/(z - ...))))
    double rr = 0.0, ri = 0.0;
    for (int n = kCfTerms; n >= 1; --n) {
        const double ar = x - rr, ai = y - ri;
        const double d = ar * ar + ai * ai;
        const double c = 0.5 * n;
        rr = c * ar / d;
        ri = -c * ai / d;
    }
    const double ar = x - rr, ai = y - ri;
    const double d = ar * ar + ai * ai;
    // i/sqrt(pi) * (ar - i ai)/d -> real part = ai/ (sqrt(pi) d)
    return kInvSqrtPi * ai / d;
}

}  // namespace

void faddeeva_re_scalar(const double* x, std::size_t n, double y, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        if (xi * xi + y * y > kCfRadius2)
            out[i] = wre_contfrac(xi, y);
        else
            out[i] = wre_weideman(xi, y);
    }
}

void axpy_scalar(double a, const double* x, std::size_t n, double* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace retcc::kernels::detail
