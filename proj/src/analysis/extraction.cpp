#include <cmath>
#include <random>

#include "retcc/analysis.hpp"
#include "retcc/errors.hpp"

namespace retcc {

ExtractionResult state_to_state_rates(int j_initial,
                                      const std::vector<PeakArea>& areas_short,
                                      const std::vector<PeakArea>& areas_eq,
                                      const std::vector<double>& f_eq_per_j,
                                      double delta_t, double density_cm3,
                                      double temperature) {
    if (!(delta_t > 0.0) || !(density_cm3 > 0.0))
        throw ValidationError("extraction needs delta_t > 0 and density > 0");

    ExtractionResult out;
    out.rates.temperature = temperature;
    out.rates.provenance = Provenance::extracted;

    for (const auto& ps : areas_short) {
        const int jf = ps.j_final;
        if (jf == j_initial) continue;  // the prepared state is not a transfer entry
        const PeakArea* pe = nullptr;
        for (const auto& q : areas_eq)
            if (q.j_final == jf) pe = &q;
        if (pe == nullptr) {
            out.warnings.push_back("no equilibrium area for j_f=" + std::to_string(jf));
            continue;
        }
        if (jf < 0 || jf >= static_cast<int>(f_eq_per_j.size()))
            throw ValidationError("extraction: f_eq vector does not cover j_f");

        ExtractionInputs in;
        in.j_final = jf;
        in.i_short = ps.area;
        in.i_eq = pe->area;
        in.f_eq = f_eq_per_j[static_cast<std::size_t>(jf)];
        in.delta_t = delta_t;
        in.density_cm3 = density_cm3;
        if (pe->area <= 0.0) {
            in.defined = false;
            out.inputs.push_back(in);
            out.warnings.push_back("undefined entry: zero equilibrium area for j_f=" +
                                   std::to_string(jf));
            continue;
        }
        const double k =
            (ps.area * in.f_eq / pe->area) / (delta_t * density_cm3);
        out.rates.set(j_initial, jf, std::max(0.0, k));
        out.inputs.push_back(in);
    }
    return out;
}

Uncertainty2Sigma uncertainty_2sigma(
    const std::function<double(const Eigen::VectorXd&)>& quantity,
    const ModelFn& model, const JacobianFn& jacobian, const Eigen::VectorXd& y,
    const FitResult& fit, const UncertaintyOptions& opt) {
    if (!fit.converged && fit.iterations == 0)
        throw ValidationError("uncertainty_2sigma: no usable fit");

    Uncertainty2Sigma out;
    if (!opt.use_bootstrap) {
        // linear propagation through the covariance
        const auto np = fit.parameters.size();
        Eigen::VectorXd grad(np);
        const double q0 = quantity(fit.parameters);
        for (Eigen::Index i = 0; i < np; ++i) {
            const double h = std::max(1e-7 * std::abs(fit.parameters[i]), 1e-12);
            Eigen::VectorXd p = fit.parameters;
            p[i] += h;
            grad[i] = (quantity(p) - q0) / h;
        }
        out.two_sigma = 2.0 * std::sqrt(std::max(0.0, grad.dot(fit.covariance * grad)));
        out.method = "covariance";
        return out;
    }

    // residual-resampling bootstrap: refit on y* = f(p) + resampled residuals
    Eigen::VectorXd f0(y.size());
    model(fit.parameters, f0);
    Eigen::VectorXd resid = y - f0;
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::size_t> pick(0, static_cast<std::size_t>(y.size()) - 1);
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(opt.n_bootstrap));
    LevMarOptions lmopt;
    lmopt.max_iterations = 60;
    for (int b = 0; b < opt.n_bootstrap; ++b) {
        Eigen::VectorXd yb(y.size());
        for (Eigen::Index i = 0; i < y.size(); ++i)
            yb[i] = f0[i] + resid[static_cast<Eigen::Index>(pick(rng))];
        FitResult rb = levenberg_marquardt(model, jacobian, yb, fit.parameters,
                                           fit.parameter_names, lmopt);
        if (rb.converged || rb.iterations > 0) samples.push_back(quantity(rb.parameters));
    }
    if (samples.size() < 8)
        throw ValidationError("uncertainty_2sigma: insufficient bootstrap replicates");
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= static_cast<double>(samples.size());
    double var = 0.0;
    for (double v : samples) var += (v - mean) * (v - mean);
    var /= static_cast<double>(samples.size() - 1);
    out.two_sigma = 2.0 * std::sqrt(var);
    out.method = "bootstrap(n=" + std::to_string(samples.size()) +
                 ", seed=" + std::to_string(opt.seed) + ")";
    return out;
}

}  // namespace retcc
