#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "retcc/molsys.hpp"
#include "retcc/thermal.hpp"

namespace retcc {

// master-equation generator over levels 0..jmax: off-diagonal G(f,i) = k(i->f)
// in cm^3 s^-1, columns sum to zero
class RateMatrix {
  public:
    RateMatrix(const RateTable& table, const RigidRotorSpecies& species, double temperature,
               int jmax);
    static RateMatrix zero(int jmax, double temperature);

    const Eigen::MatrixXd& generator() const { return g_; }
    int jmax() const { return static_cast<int>(g_.rows()) - 1; }
    double temperature() const { return temperature_; }
    // Boltzmann vector over the truncated level set (its stationary state
    // when the table is detailed-balance complete)
    const Eigen::VectorXd& equilibrium() const { return eq_; }
    // max |G pi| over entries, a measure of detailed-balance consistency
    double balance_defect() const;

  private:
    RateMatrix() = default;
    Eigen::MatrixXd g_;
    Eigen::VectorXd eq_;
    double temperature_ = 0.0;
};

struct PopulationTrajectory {
    std::vector<double> times;             // s
    std::vector<Eigen::VectorXd> populations;
};

// dp/dt = density * G * p via eigendecomposition of the similarity-symmetrized
// generator (exact for detailed-balanced G; a general eigensolver covers
// slightly unbalanced reference data)
PopulationTrajectory evolve(const RateMatrix& g, double density_cm3,
                            const Eigen::VectorXd& p0, const std::vector<double>& times);

struct NoiseModel {
    double additive_rel = 0.0;        // sigma relative to the trace/spectrum peak
    double multiplicative_rel = 0.0;  // sigma relative to each sample (shot-to-shot jitter)
    std::uint64_t seed = 0;
};

struct DecayTrace {
    std::vector<double> times;   // s
    std::vector<double> signal;  // a.u.
    // ground truth
    int j_initial = 0;
    std::string probe_line;
    double density_cm3 = 0.0;
    NoiseModel noise;
    double asymptote_over_initial = 0.0;  // noiseless f_eq check value
};

DecayTrace synth_decay(int j_initial, const RateMatrix& g, double density_cm3,
                       const NoiseModel& noise, const std::vector<double>& times);

struct VoigtShape {
    double gaussian_sigma = 0.0;    // cm^-1
    double lorentzian_gamma = 0.0;  // cm^-1
    void validate() const;
    double fwhm() const;
};

// unit-area Voigt profile at offset x from the line center
double voigt_profile(double x, const VoigtShape& shape);
void voigt_profile_batch(const double* x, std::size_t n, const VoigtShape& shape,
                         double* out);

struct SpectralLine {
    int j_final = 0;
    double center = 0.0;    // cm^-1
    double strength = 1.0;  // > 0
};

// rigid-rotor two-state band model for probe line positions
struct LineModel {
    double nu0 = 60500.0;     // cm^-1, band origin (illustrative placement)
    double b_upper = 1.6116;  // cm^-1
    double b_lower = 1.8875;  // cm^-1
    std::string branch = "Q";  // Q -> j'=j, R -> j'=j+1, P -> j'=j-1
    double line_center(int j) const;
};

struct Spectrum {
    std::vector<double> axis;       // cm^-1
    std::vector<double> intensity;  // a.u.
    std::vector<SpectralLine> lines;
    double delay = 0.0;  // s
    NoiseModel noise;
    // ground truth: populations at the delay, per line j_final
    std::vector<double> populations;
    std::vector<std::string> warnings;
};

struct SpectraConfig {
    double delta_t = 20e-9;  // s, short delay
    double t_eq = 2.5e-6;    // s, equilibrated delay
    VoigtShape shape{0.08, 0.02};
    LineModel lines;
    std::vector<double> strengths;  // per j 0..jmax; empty -> all 1
    double axis_pad = 4.0;          // FWHM units on both sides
    int axis_points = 2048;
    NoiseModel noise;
};

std::pair<Spectrum, Spectrum> synth_spectra(int j_initial, const RateMatrix& g,
                                            double density_cm3, const SpectraConfig& cfg);

}  // namespace retcc
