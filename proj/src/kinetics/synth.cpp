#include <algorithm>
#include <cmath>
#include <random>

#include "retcc/errors.hpp"
#include "retcc/kernels.hpp"
#include "retcc/kinetics.hpp"

namespace retcc {

namespace {

void apply_noise(std::vector<double>& y, const NoiseModel& noise) {
    if (noise.additive_rel == 0.0 && noise.multiplicative_rel == 0.0) return;
    std::mt19937_64 rng(noise.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double peak = 0.0;
    for (double v : y) peak = std::max(peak, std::abs(v));
    for (double& v : y) {
        if (noise.multiplicative_rel > 0.0)
            v *= 1.0 + noise.multiplicative_rel * gauss(rng);
        if (noise.additive_rel > 0.0) v += noise.additive_rel * peak * gauss(rng);
    }
}

}  // namespace

DecayTrace synth_decay(int j_initial, const RateMatrix& g, double density_cm3,
                       const NoiseModel& noise, const std::vector<double>& times) {
    if (j_initial < 0 || j_initial > g.jmax())
        throw ValidationError("synth_decay: j_initial outside the rate matrix");
    if (times.empty()) throw ValidationError("synth_decay: empty time grid");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            throw ValidationError("synth_decay: times must strictly increase");

    Eigen::VectorXd p0 = Eigen::VectorXd::Zero(g.jmax() + 1);
    p0[j_initial] = 1.0;
    auto traj = evolve(g, density_cm3, p0, times);

    DecayTrace trace;
    trace.times = times;
    trace.signal.reserve(times.size());
    for (const auto& p : traj.populations) trace.signal.push_back(p[j_initial]);
    trace.j_initial = j_initial;
    trace.probe_line = "Q(" + std::to_string(j_initial) + ")";
    trace.density_cm3 = density_cm3;
    trace.noise = noise;
    // noiseless asymptote of the Q(j_i) signal over its t = 0 value (= 1)
    Eigen::VectorXd pinf = evolve(g, density_cm3, p0, {1.0}).populations[0];
    trace.asymptote_over_initial = pinf[j_initial];
    apply_noise(trace.signal, noise);
    return trace;
}

std::pair<Spectrum, Spectrum> synth_spectra(int j_initial, const RateMatrix& g,
                                            double density_cm3, const SpectraConfig& cfg) {
    if (j_initial < 0 || j_initial > g.jmax())
        throw ValidationError("synth_spectra: j_initial outside the rate matrix");
    cfg.shape.validate();
    const int nlev = g.jmax() + 1;
    std::vector<double> strengths = cfg.strengths;
    if (strengths.empty()) strengths.assign(nlev, 1.0);
    if (static_cast<int>(strengths.size()) != nlev)
        throw ValidationError("synth_spectra: strengths size mismatch");
    for (double s : strengths)
        if (s <= 0.0) throw ValidationError("synth_spectra: strengths must be > 0");

    const double max_total_rate = g.generator().diagonal().cwiseAbs().maxCoeff();
    if (cfg.delta_t * density_cm3 * max_total_rate > 1.0)
        throw ValidationError("synth_spectra: delta_t is not a short delay for this system");

    Eigen::VectorXd p0 = Eigen::VectorXd::Zero(nlev);
    p0[j_initial] = 1.0;
    auto traj = evolve(g, density_cm3, p0, {cfg.delta_t, cfg.t_eq});

    auto build = [&](const Eigen::VectorXd& pops, double delay, const NoiseModel& noise) {
        Spectrum sp;
        sp.delay = delay;
        sp.noise = noise;
        double lo = 1e300, hi = -1e300;
        for (int j = 0; j < nlev; ++j) {
            const double c = cfg.lines.line_center(j);
            sp.lines.push_back({j, c, strengths[j]});
            sp.populations.push_back(pops[j]);
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        const double pad = cfg.axis_pad * cfg.shape.fwhm();
        sp.axis.resize(cfg.axis_points);
        const double step = (hi - lo + 2 * pad) / (cfg.axis_points - 1);
        for (int i = 0; i < cfg.axis_points; ++i) sp.axis[i] = lo - pad + i * step;
        sp.intensity.assign(cfg.axis_points, 0.0);

        std::vector<double> offs(cfg.axis_points), prof(cfg.axis_points);
        for (const auto& line : sp.lines) {
            const double area = line.strength * pops[line.j_final];
            if (area == 0.0) continue;
            for (int i = 0; i < cfg.axis_points; ++i) offs[i] = sp.axis[i] - line.center;
            voigt_profile_batch(offs.data(), offs.size(), cfg.shape, prof.data());
            kernels::axpy(area, prof.data(), prof.size(), sp.intensity.data());
        }
        // resolvability warning for close line pairs
        const double fwhm = cfg.shape.fwhm();
        for (std::size_t a = 0; a < sp.lines.size(); ++a)
            for (std::size_t b = a + 1; b < sp.lines.size(); ++b) {
                const double d = std::abs(sp.lines[a].center - sp.lines[b].center);
                if (d < 0.5 * fwhm)
                    sp.warnings.push_back("lines j=" + std::to_string(sp.lines[a].j_final) +
                                          " and j=" + std::to_string(sp.lines[b].j_final) +
                                          " closer than half a FWHM");
            }
        apply_noise(sp.intensity, sp.noise);
        return sp;
    };

    // the two scans carry independent noise streams
    NoiseModel noise_long = cfg.noise;
    noise_long.seed = cfg.noise.seed + 1;
    Spectrum short_sp = build(traj.populations[0], cfg.delta_t, cfg.noise);
    Spectrum long_sp = build(traj.populations[1], cfg.t_eq, noise_long);
    return {std::move(short_sp), std::move(long_sp)};
}

}  // namespace retcc
