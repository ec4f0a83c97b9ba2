#include <cmath>
#include <numbers>
#include <vector>

#include "retcc/errors.hpp"
#include "retcc/kernels.hpp"
#include "retcc/kinetics.hpp"

namespace retcc {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2Pi = 2.50662827463100050;
}  // namespace

void VoigtShape::validate() const {
    if (gaussian_sigma < 0.0 || lorentzian_gamma < 0.0)
        throw ValidationError("Voigt widths must be >= 0");
    if (gaussian_sigma == 0.0 && lorentzian_gamma == 0.0)
        throw ValidationError("Voigt shape needs at least one nonzero width");
}

double VoigtShape::fwhm() const {
    // Olivero-Longbothum approximation, good to ~0.02%
    const double fl = 2.0 * lorentzian_gamma;
    const double fg = 2.0 * std::sqrt(2.0 * std::log(2.0)) * gaussian_sigma;
    return 0.5346 * fl + std::sqrt(0.2166 * fl * fl + fg * fg);
}

void voigt_profile_batch(const double* x, std::size_t n, const VoigtShape& shape,
                         double* out) {
    shape.validate();
    const double sg = shape.gaussian_sigma;
    const double gm = shape.lorentzian_gamma;
    if (sg == 0.0) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = gm / (kPi * (x[i] * x[i] + gm * gm));
        return;
    }
    if (gm == 0.0) {
        const double inv2s2 = 1.0 / (2.0 * sg * sg);
        const double norm = 1.0 / (sg * kSqrt2Pi);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = norm * std::exp(-x[i] * x[i] * inv2s2);
        return;
    }
    const double inv = 1.0 / (sg * std::sqrt(2.0));
    const double y = gm * inv;
    const double norm = 1.0 / (sg * kSqrt2Pi);
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = x[i] * inv;
    kernels::faddeeva_re(xs.data(), n, y, out);
    for (std::size_t i = 0; i < n; ++i) out[i] *= norm;
}

double voigt_profile(double x, const VoigtShape& shape) {
    double out;
    voigt_profile_batch(&x, 1, shape, &out);
    return out;
}

double LineModel::line_center(int j) const {
    int ju = j;
    if (branch == "R") ju = j + 1;
    else if (branch == "P") ju = j - 1;
    else if (branch != "Q") throw ValidationError("line model branch must be P, Q or R");
    if (ju < 0) throw ValidationError("P branch undefined for j=0");
    return nu0 + b_upper * ju * (ju + 1.0) - b_lower * j * (j + 1.0);
}

}  // namespace retcc
