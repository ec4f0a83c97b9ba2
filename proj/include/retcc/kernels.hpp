#pragma once

#include <cstddef>
#include <string>

// Batch kernels behind the lineshape synthesis and fitting loops.  Scalar
// reference implementations always exist; an AVX2 variant is selected at
// runtime when the CPU supports it (set RETCC_NO_SIMD=1 to force scalar).
// The two variants agree to rounding (equivalence-tested).

namespace retcc::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
std::string backend_name();

// Re w(x_i + i y) for the Faddeeva function w, y >= 0.
// Weideman rational approximation (N=32) inside |z| < 6, Laplace continued
// fraction outside; relative error < 1e-6 on Re for y >= 1e-6.
void faddeeva_re(const double* x, std::size_t n, double y, double* out);

// y_i += a * x_i
void axpy(double a, const double* x, std::size_t n, double* y);

double dot(const double* a, const double* b, std::size_t n);

namespace detail {
void faddeeva_re_scalar(const double* x, std::size_t n, double y, double* out);
void axpy_scalar(double a, const double* x, std::size_t n, double* y);
double dot_scalar(const double* a, const double* b, std::size_t n);
#ifdef RETCC_BUILD_AVX2
void faddeeva_re_avx2(const double* x, std::size_t n, double y, double* out);
void axpy_avx2(double a, const double* x, std::size_t n, double* y);
double dot_avx2(const double* a, const double* b, std::size_t n);
#endif

// shared constants of the rational approximation
inline constexpr double kWeidemanL = 4.756828460010884;
inline constexpr int kWeidemanN = 32;
inline constexpr int kCfTerms = 12;
inline constexpr double kCfRadius2 = 36.0;  // switch to the continued fraction
extern const double kWeidemanCoeff[32];     // highest order first
}  // namespace detail

}  // namespace retcc::kernels
