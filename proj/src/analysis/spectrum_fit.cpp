#include <algorithm>
#include <cmath>

#include "retcc/analysis.hpp"
#include "retcc/errors.hpp"
#include "retcc/kernels.hpp"

namespace retcc {

namespace {

// parameter layout: [b0, b1,] shared ? [sigma, gamma] : per-line widths,
// then {center_k, area_k} pairs
struct Layout {
    bool baseline;
    bool shared;
    int nlines;
    int base() const { return baseline ? 2 : 0; }
    int i_b0() const { return 0; }
    int i_b1() const { return 1; }
    int i_sigma(int k) const { return shared ? base() : base() + 2 * k; }
    int i_gamma(int k) const { return i_sigma(k) + 1; }
    int lines_start() const { return base() + (shared ? 2 : 2 * nlines); }
    int i_center(int k) const { return lines_start() + 2 * k; }
    int i_area(int k) const { return i_center(k) + 1; }
    int count() const { return lines_start() + 2 * nlines; }
};

}  // namespace

MultipeakFit fit_multipeak_voigt(const std::vector<double>& axis,
                                 const std::vector<double>& intensity,
                                 const std::vector<SpectralLine>& initial,
                                 const MultipeakOptions& opt) {
    if (axis.size() != intensity.size() || axis.size() < 8)
        throw ValidationError("fit_multipeak_voigt: bad spectrum");
    if (initial.empty()) throw ValidationError("fit_multipeak_voigt: no initial lines");

    const auto n = static_cast<Eigen::Index>(axis.size());
    const int nl = static_cast<int>(initial.size());
    Layout lay{opt.linear_baseline, opt.shared_width, nl};

    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y[i] = intensity[static_cast<std::size_t>(i)];
    const double x0 = axis.front();

    VoigtShape shape0 = opt.initial_shape;
    shape0.validate();
    const double peak0 = voigt_profile(0.0, shape0);

    Eigen::VectorXd p0 = Eigen::VectorXd::Zero(lay.count());
    std::vector<std::string> names(static_cast<std::size_t>(lay.count()));
    double base0 = 0.0;
    if (opt.linear_baseline) {
        base0 = std::max(0.0, *std::min_element(intensity.begin(), intensity.end()));
        p0[lay.i_b0()] = base0;
        p0[lay.i_b1()] = 0.0;
        names[0] = "b0";
        names[1] = "b1";
    }
    const int nwidth = opt.shared_width ? 1 : nl;
    for (int k = 0; k < nwidth; ++k) {
        p0[lay.i_sigma(k)] = shape0.gaussian_sigma;
        p0[lay.i_gamma(k)] = shape0.lorentzian_gamma;
        const std::string suffix = opt.shared_width ? "" : "_" + std::to_string(initial[k].j_final);
        names[static_cast<std::size_t>(lay.i_sigma(k))] = "sigma" + suffix;
        names[static_cast<std::size_t>(lay.i_gamma(k))] = "gamma" + suffix;
    }
    for (int k = 0; k < nl; ++k) {
        p0[lay.i_center(k)] = initial[k].center;
        auto it = std::lower_bound(axis.begin(), axis.end(), initial[k].center);
        std::size_t idx = std::min<std::size_t>(
            axis.size() - 1, static_cast<std::size_t>(it - axis.begin()));
        const double h = std::max(0.0, intensity[idx] - base0);
        p0[lay.i_area(k)] = h / peak0;
        names[static_cast<std::size_t>(lay.i_center(k))] =
            "center_" + std::to_string(initial[k].j_final);
        names[static_cast<std::size_t>(lay.i_area(k))] =
            "area_" + std::to_string(initial[k].j_final);
    }

    auto model = [&, lay](const Eigen::VectorXd& p, Eigen::VectorXd& f) {
        f.resize(n);
        if (lay.baseline) {
            for (Eigen::Index i = 0; i < n; ++i)
                f[i] = p[lay.i_b0()] + p[lay.i_b1()] * (axis[static_cast<std::size_t>(i)] - x0);
        } else {
            f.setZero();
        }
        std::vector<double> offs(static_cast<std::size_t>(n)),
            prof(static_cast<std::size_t>(n));
        for (int k = 0; k < nl; ++k) {
            VoigtShape sh{std::abs(p[lay.i_sigma(lay.shared ? 0 : k)]),
                          std::abs(p[lay.i_gamma(lay.shared ? 0 : k)])};
            if (sh.gaussian_sigma == 0.0 && sh.lorentzian_gamma == 0.0)
                sh.gaussian_sigma = 1e-12;
            const double c = p[lay.i_center(k)];
            for (Eigen::Index i = 0; i < n; ++i)
                offs[static_cast<std::size_t>(i)] = axis[static_cast<std::size_t>(i)] - c;
            voigt_profile_batch(offs.data(), offs.size(), sh, prof.data());
            kernels::axpy(p[lay.i_area(k)], prof.data(), prof.size(), f.data());
        }
    };

    FitResult fit = levenberg_marquardt(model, nullptr, y, p0, names, opt.levmar);

    MultipeakFit out;
    out.fit = fit;
    double fwhm_min = 1e300;
    for (int k = 0; k < nwidth; ++k) {
        VoigtShape sh{std::abs(fit.parameters[lay.i_sigma(k)]),
                      std::abs(fit.parameters[lay.i_gamma(k)])};
        if (sh.gaussian_sigma > 0 || sh.lorentzian_gamma > 0)
            fwhm_min = std::min(fwhm_min, sh.fwhm());
    }
    for (int k = 0; k < nl; ++k) {
        PeakArea pa;
        pa.j_final = initial[k].j_final;
        pa.center = fit.parameters[lay.i_center(k)];
        pa.area = fit.parameters[lay.i_area(k)];
        if (pa.area < 0.0) {
            out.fit.warnings.push_back("negative fitted area for j=" +
                                       std::to_string(pa.j_final) + " clamped to 0");
            pa.area = 0.0;
        }
        out.areas.push_back(pa);
    }
    for (int a = 0; a < nl; ++a)
        for (int b = a + 1; b < nl; ++b) {
            const double d = std::abs(out.areas[static_cast<std::size_t>(a)].center -
                                      out.areas[static_cast<std::size_t>(b)].center);
            if (d < 0.5 * fwhm_min)
                out.fit.warnings.push_back(
                    "peaks j=" + std::to_string(initial[static_cast<std::size_t>(a)].j_final) +
                    " and j=" + std::to_string(initial[static_cast<std::size_t>(b)].j_final) +
                    " overlap within half a FWHM; joint areas unreliable");
        }
    return out;
}

}  // namespace retcc
