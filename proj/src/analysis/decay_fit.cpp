#include <algorithm>
#include <cmath>

#include "retcc/analysis.hpp"
#include "retcc/errors.hpp"

namespace retcc {

FitResult fit_exponential(const DecayTrace& trace, const LevMarOptions& opt) {
    const auto n = trace.times.size();
    if (n < 8) throw ValidationError("fit_exponential: need at least 8 samples");
    Eigen::VectorXd t(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[static_cast<Eigen::Index>(i)] = trace.times[i];
        y[static_cast<Eigen::Index>(i)] = trace.signal[i];
    }

    // initial guesses: baseline from the tail, rate from a log-linear pass
    const std::size_t ntail = std::max<std::size_t>(1, n / 10);
    double c0 = 0.0;
    for (std::size_t i = n - ntail; i < n; ++i) c0 += trace.signal[i];
    c0 /= ntail;
    double a0 = trace.signal.front() - c0;
    if (a0 == 0.0) a0 = 1e-12;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = (trace.signal[i] - c0) / a0;
        if (d <= 1e-3) continue;
        const double ly = std::log(d);
        sx += trace.times[i];
        sy += ly;
        sxx += trace.times[i] * trace.times[i];
        sxy += trace.times[i] * ly;
        ++m;
    }
    double k0 = 1.0 / std::max(trace.times.back(), 1e-300);
    if (m >= 2) {
        const double slope = (m * sxy - sx * sy) / std::max(m * sxx - sx * sx, 1e-300);
        if (slope < 0) k0 = -slope;
    }

    auto model = [&](const Eigen::VectorXd& p, Eigen::VectorXd& f) {
        f = p[0] * (-p[1] * t.array()).exp() + p[2];
    };
    auto jac = [&](const Eigen::VectorXd& p, Eigen::MatrixXd& j) {
        j.resize(t.size(), 3);
        Eigen::ArrayXd e = (-p[1] * t.array()).exp();
        j.col(0) = e;
        j.col(1) = -p[0] * t.array() * e;
        j.col(2).setOnes();
    };

    Eigen::VectorXd p0(3);
    p0 << a0, k0, c0;
    FitResult res = levenberg_marquardt(model, jac, y, p0,
                                        {"amplitude", "k_exp", "baseline"}, opt);

    const double peak = y.cwiseAbs().maxCoeff();
    if (std::abs(res.parameter("amplitude")) < 1e-6 * peak)
        res.warnings.push_back("degenerate trace: amplitude ~ 0");
    const double kfit = res.parameter("k_exp");
    if (kfit <= 0) {
        res.converged = false;
        res.warnings.push_back("k_exp <= 0");
    } else if (kfit * (trace.times.back() - trace.times.front()) < 2.0) {
        res.warnings.push_back("trace spans fewer than 2 decay times");
    }
    return res;
}

double total_rate_from_decay(double k_exp, double f_eq, double density_cm3) {
    if (!(k_exp > 0.0)) throw std::domain_error("k_exp must be > 0");
    if (!(density_cm3 > 0.0)) throw std::domain_error("density must be > 0");
    if (!(f_eq >= 0.0 && f_eq < 1.0)) throw std::domain_error("f_eq must lie in [0, 1)");
    return k_exp * (1.0 - f_eq) / density_cm3;
}

}  // namespace retcc
