#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "retcc/kinetics.hpp"
#include "retcc/thermal.hpp"

namespace retcc {

struct FitResult {
    std::vector<std::string> parameter_names;
    Eigen::VectorXd parameters;
    Eigen::MatrixXd covariance;  // sigma^2 (J^T J)^-1 at the optimum
    double residual_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<std::string> warnings;

    double parameter(const std::string& name) const;
    double stderr_of(const std::string& name) const;
};

// ---- Levenberg-Marquardt core ---------------------------------------------

struct LevMarOptions {
    int max_iterations = 200;
    double rel_tolerance = 1e-10;
    double gradient_tolerance = 1e-12;
    double tau = 1e-3;  // initial damping scale
};

using ModelFn = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;
using JacobianFn = std::function<void(const Eigen::VectorXd&, Eigen::MatrixXd&)>;

// minimize ||y - f(p)||^2; pass an empty JacobianFn for forward differences
FitResult levenberg_marquardt(const ModelFn& model, const JacobianFn& jacobian,
                              const Eigen::VectorXd& y, const Eigen::VectorXd& p0,
                              const std::vector<std::string>& names,
                              const LevMarOptions& opt = {});

// ---- decay fits and Eq. (1) ------------------------------------------------

// a e^(-k t) + c with analytic Jacobian; parameters named amplitude/k_exp/baseline
FitResult fit_exponential(const DecayTrace& trace, const LevMarOptions& opt = {});

double total_rate_from_decay(double k_exp, double f_eq, double density_cm3);

// ---- multipeak Voigt fits and Eq. (2) ---------------------------------------

struct MultipeakOptions {
    bool shared_width = true;
    bool linear_baseline = true;
    VoigtShape initial_shape{0.08, 0.02};
    LevMarOptions levmar;
};

struct PeakArea {
    int j_final = 0;
    double center = 0.0;
    double area = 0.0;
};

struct MultipeakFit {
    std::vector<PeakArea> areas;
    FitResult fit;
};

MultipeakFit fit_multipeak_voigt(const std::vector<double>& axis,
                                 const std::vector<double>& intensity,
                                 const std::vector<SpectralLine>& initial,
                                 const MultipeakOptions& opt = {});

// ---- extraction -------------------------------------------------------------

struct ExtractionInputs {
    int j_final = 0;
    double i_short = 0.0;
    double i_eq = 0.0;
    double f_eq = 0.0;
    double delta_t = 0.0;
    double density_cm3 = 0.0;
    bool defined = true;  // false when the equilibrium area vanished
};

struct ExtractionResult {
    RateTable rates;  // provenance = extracted
    std::vector<ExtractionInputs> inputs;
    std::vector<std::string> warnings;
};

// k(i->f) = (I_short f_eq / I_eq) / (dt rho) for every f != j_initial
ExtractionResult state_to_state_rates(int j_initial,
                                      const std::vector<PeakArea>& areas_short,
                                      const std::vector<PeakArea>& areas_eq,
                                      const std::vector<double>& f_eq_per_j,
                                      double delta_t, double density_cm3,
                                      double temperature);

struct UncertaintyOptions {
    int n_bootstrap = 200;
    std::uint64_t seed = 1;
    bool use_bootstrap = true;  // false -> covariance propagation
};

// 2 sigma for a fitted quantity via residual-resampling bootstrap of the fit
struct Uncertainty2Sigma {
    double two_sigma = 0.0;
    std::string method;
};

Uncertainty2Sigma uncertainty_2sigma(
    const std::function<double(const Eigen::VectorXd&)>& quantity,
    const ModelFn& model, const JacobianFn& jacobian, const Eigen::VectorXd& y,
    const FitResult& fit, const UncertaintyOptions& opt = {});

// ---- propensity & comparison ------------------------------------------------

struct PropensityRow {
    int j_final = 0;
    int delta_j = 0;
    double rate = 0.0;
    std::optional<double> contrast;  // k(|dj|) / mean(k(|dj|-1), k(|dj|+1))
    bool even_flag = false;          // contrast > 1 on an even |dj|
    bool odd_flag = false;
};

struct PropensityReport {
    int j_initial = 0;
    std::vector<PropensityRow> rows;
    // best fit of k = A exp(-beta |dE|)
    double gap_a = 0.0;
    double gap_beta = 0.0;
    double gap_residual_rms = 0.0;  // rms of log-space residuals
    std::vector<std::string> observations;
};

PropensityReport propensity_report(const RateTable& table, const RigidRotorSpecies& s,
                                   int j_initial);

struct DeviationEntry {
    int j_initial = 0;
    int j_final = 0;
    double value = 0.0;
    double reference = 0.0;
    double ratio = 0.0;
    double difference = 0.0;
    std::optional<double> z_score;  // |diff| / 2sigma when available
    bool outside_2sigma = false;
};

struct DeviationReport {
    std::vector<DeviationEntry> entries;
    double ratio_mean = 0.0;
    double ratio_rms_dev = 0.0;
    int n_outside = 0;
    bool empty_overlap = false;
};

DeviationReport compare_to_reference(const RateTable& extracted, const RateTable& reference);

}  // namespace retcc
