#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "retcc/analysis.hpp"
#include "retcc/errors.hpp"
#include "retcc/io.hpp"
#include "retcc/kinetics.hpp"
#include "retcc/pipeline.hpp"
#include "retcc/refdata.hpp"

namespace retcc::pipeline {

namespace fs = std::filesystem;

CollisionSystem build_system(const RunConfig& cfg) {
    CollisionSystem sys;
    sys.rotor1 = {cfg.species.rotor1, cfg.species.b1, cfg.species.mass1, {}};
    sys.rotor2 = {cfg.species.rotor2,
                  cfg.species.b2,
                  cfg.species.mass2,
                  {{"para", 0, cfg.thermal.w_para}, {"ortho", 1, cfg.thermal.w_ortho}}};
    sys.rotor1.validate();
    sys.rotor2.validate();
    return sys;
}

PotentialExpansion build_pes(const RunConfig& cfg) {
    if (cfg.pes.model == "iso88") return iso88_expansion();
    if (cfg.pes.model == "aniso-demo")
        return aniso_demo_expansion(
            {cfg.pes.s101, cfg.pes.s202, cfg.pes.s220, cfg.pes.s222});
    return read_radial_table(cfg.pes.radial_file, cfg.pes.tail_power);
}

std::vector<int> j2set_for(const std::string& isomer) {
    if (isomer == "para") return {0, 2};
    if (isomer == "ortho") return {1, 3};
    throw ValidationError("isomer must be para or ortho");
}

ScatterOptions scatter_options(const RunConfig& cfg, const std::string& isomer) {
    ScatterOptions opt;
    opt.j1max = cfg.scattering.j1max;
    opt.j2set = j2set_for(isomer);
    opt.grid = {cfg.scattering.rmin, cfg.scattering.rmax, cfg.scattering.step};
    opt.jtot_max = cfg.scattering.jtot_max;
    opt.jtot_min = cfg.scattering.jtot_min;
    opt.jtot_tail_rtol = cfg.scattering.jtot_tail_rtol;
    opt.threads = cfg.threads;
    return opt;
}

namespace {

std::vector<LevelPair> initial_pairs(const RunConfig& cfg, const std::string& isomer) {
    const int j2base = isomer == "para" ? 0 : 1;
    std::vector<LevelPair> out;
    for (int j1 : cfg.scattering.initial_levels) out.push_back({j1, j2base});
    return out;
}

CrossSectionTable run_isomer(const RunConfig& cfg, const std::string& isomer,
                             std::ostream& log) {
    auto sys = build_system(cfg);
    auto pes = build_pes(cfg);
    auto opt = scatter_options(cfg, isomer);
    log << "scatter: isomer=" << isomer << " j1max=" << opt.j1max
        << " energies=" << cfg.energy_grid().size() << "\n";
    return compute_cross_sections(sys, pes, initial_pairs(cfg, isomer), cfg.energy_grid(),
                                  opt);
}

void ensure_outdir(const RunConfig& cfg) {
    std::error_code ec;
    fs::create_directories(cfg.io.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + cfg.io.out_dir);
}

std::string opath(const RunConfig& cfg, const std::string& name) {
    return (fs::path(cfg.io.out_dir) / name).string();
}

SpectraConfig spectra_config(const RunConfig& cfg) {
    SpectraConfig sc;
    sc.delta_t = cfg.kinetics.delta_t;
    sc.t_eq = cfg.kinetics.t_eq;
    sc.shape = {cfg.kinetics.sigma_g, cfg.kinetics.gamma_l};
    sc.lines = {cfg.kinetics.nu0, cfg.kinetics.b_upper, cfg.kinetics.b_lower,
                cfg.kinetics.branch};
    sc.strengths = cfg.kinetics.strengths;
    sc.axis_points = cfg.kinetics.axis_points;
    sc.noise = {cfg.kinetics.noise_additive, cfg.kinetics.noise_multiplicative,
                cfg.kinetics.seed};
    return sc;
}

}  // namespace

RateTable input_rate_table(const RunConfig& cfg) {
    if (!cfg.io.rates_file.empty()) return io::read_rate_table(cfg.io.rates_file);
    return refdata::theory_table();
}

std::vector<double> feq_vector(const RunConfig& cfg) {
    RigidRotorSpecies s{cfg.species.rotor1, cfg.species.b1, cfg.species.mass1, {}};
    std::vector<double> out;
    for (int j = 0; j <= cfg.kinetics.jmax; ++j)
        out.push_back(boltzmann_fraction(s, cfg.kinetics.jmax, cfg.thermal.temperature, j,
                                         /*tail_tol=*/-1.0));
    return out;
}

void cmd_scatter(const RunConfig& cfg, std::ostream& log) {
    ensure_outdir(cfg);
    auto xs = run_isomer(cfg, cfg.scattering.isomer, log);
    const std::string path = opath(cfg, "cross_sections_" + cfg.scattering.isomer + ".csv");
    io::write_cross_sections(xs, path);
    log << "wrote " << path << "\n";
    for (const auto& n : xs.notes) log << "note: " << n << "\n";
}

void cmd_rates(const RunConfig& cfg, std::ostream& log) {
    ensure_outdir(cfg);
    auto sys = build_system(cfg);
    RateTable para, ortho;
    {
        auto xs = run_isomer(cfg, "para", log);
        io::write_cross_sections(xs, opath(cfg, "cross_sections_para.csv"));
        para = rates_from_cross_sections(xs, sys, cfg.thermal.temperature);
    }
    {
        auto xs = run_isomer(cfg, "ortho", log);
        io::write_cross_sections(xs, opath(cfg, "cross_sections_ortho.csv"));
        ortho = rates_from_cross_sections(xs, sys, cfg.thermal.temperature);
    }
    io::write_rate_table(para, opath(cfg, "rates_para.csv"));
    io::write_rate_table(ortho, opath(cfg, "rates_ortho.csv"));

    RateTable normal;
    normal.temperature = cfg.thermal.temperature;
    normal.provenance = Provenance::computed;
    for (const auto& [key, e] : para.entries) {
        if (!ortho.has(key.first, key.second)) continue;
        normal.set(key.first, key.second,
                   spin_weighted_rate(e.k, ortho.rate(key.first, key.second),
                                      cfg.thermal.w_para, cfg.thermal.w_ortho));
    }
    io::write_rate_table(normal, opath(cfg, "rates_normal.csv"));
    log << "wrote rates_para.csv, rates_ortho.csv, rates_normal.csv\n";

    if (cfg.io.emit_plot_data) {
        // rate vs temperature panels for the de-excitation transitions of the
        // highest configured initial level
        auto xs_para = io::read_cross_sections(opath(cfg, "cross_sections_para.csv"));
        auto xs_ortho = io::read_cross_sections(opath(cfg, "cross_sections_ortho.csv"));
        const int ji = *std::max_element(cfg.scattering.initial_levels.begin(),
                                         cfg.scattering.initial_levels.end());
        std::ofstream out(opath(cfg, "plot_rates_vs_T.csv"));
        out << "T_K";
        for (int jf = 0; jf < ji; ++jf) out << ",k_" << ji << "_to_" << jf << "_cm3s";
        out << "\n";
        for (double t = 20.0; t <= 300.0; t += 20.0) {
            RateTable rp = rates_from_cross_sections(xs_para, sys, t);
            RateTable ro = rates_from_cross_sections(xs_ortho, sys, t);
            out << io::format_double(t);
            for (int jf = 0; jf < ji; ++jf) {
                double k = 0.0;
                if (rp.has(ji, jf) && ro.has(ji, jf))
                    k = spin_weighted_rate(rp.rate(ji, jf), ro.rate(ji, jf),
                                           cfg.thermal.w_para, cfg.thermal.w_ortho);
                out << ',' << io::format_double(k);
            }
            out << "\n";
        }
        log << "wrote plot_rates_vs_T.csv\n";
    }
}

void cmd_simulate(const RunConfig& cfg, std::ostream& log) {
    ensure_outdir(cfg);
    auto sys = build_system(cfg);
    RateTable table = input_rate_table(cfg);
    RateTable completed =
        detailed_balance_complete(table, sys.rotor1, cfg.thermal.temperature);
    RateMatrix gen(completed, sys.rotor1, cfg.thermal.temperature, cfg.kinetics.jmax);
    io::write_rate_table(completed, opath(cfg, "simulate_input_rates.csv"));

    for (int ji : cfg.scattering.initial_levels) {
        // decay trace, sampled over decay_tmax_factor expected lifetimes
        const double ktot = completed.total_from(ji);
        const double feq = feq_vector(cfg)[static_cast<std::size_t>(ji)];
        const double kexp_est = ktot * cfg.kinetics.density / (1.0 - feq);
        const double tmax = cfg.kinetics.decay_tmax_factor / kexp_est;
        std::vector<double> times(static_cast<std::size_t>(cfg.kinetics.decay_points));
        for (int i = 0; i < cfg.kinetics.decay_points; ++i)
            times[static_cast<std::size_t>(i)] =
                tmax * (i + 1.0) / cfg.kinetics.decay_points;
        NoiseModel noise{cfg.kinetics.noise_additive, cfg.kinetics.noise_multiplicative,
                         cfg.kinetics.seed + static_cast<std::uint64_t>(ji)};
        DecayTrace trace = synth_decay(ji, gen, cfg.kinetics.density, noise, times);
        io::write_decay(trace, opath(cfg, "decay_j" + std::to_string(ji)));

        SpectraConfig sc = spectra_config(cfg);
        sc.noise.seed = cfg.kinetics.seed + 1000 + static_cast<std::uint64_t>(ji);
        auto [short_sp, long_sp] = synth_spectra(ji, gen, cfg.kinetics.density, sc);
        io::write_spectrum(short_sp, opath(cfg, "spectrum_short_j" + std::to_string(ji)));
        io::write_spectrum(long_sp, opath(cfg, "spectrum_long_j" + std::to_string(ji)));
        log << "simulated j_i=" << ji << " (decay + short/long spectra)\n";
    }
    if (cfg.io.emit_plot_data) log << "plot data: decay_*.csv and spectrum_*.csv are plot-ready\n";
}

namespace {

ExtractionResult extract_one(const RunConfig& cfg, int ji, std::ostream& log) {
    Spectrum short_sp = io::read_spectrum(
        (fs::path(cfg.io.out_dir) / ("spectrum_short_j" + std::to_string(ji))).string());
    Spectrum long_sp = io::read_spectrum(
        (fs::path(cfg.io.out_dir) / ("spectrum_long_j" + std::to_string(ji))).string());

    MultipeakOptions mopt;
    mopt.shared_width = cfg.analysis.shared_width;
    mopt.linear_baseline = cfg.analysis.baseline;
    mopt.initial_shape = {cfg.kinetics.sigma_g, cfg.kinetics.gamma_l};
    mopt.levmar.max_iterations = cfg.analysis.max_iterations;
    mopt.levmar.rel_tolerance = cfg.analysis.rel_tolerance;

    MultipeakFit fit_short =
        fit_multipeak_voigt(short_sp.axis, short_sp.intensity, short_sp.lines, mopt);
    MultipeakFit fit_long =
        fit_multipeak_voigt(long_sp.axis, long_sp.intensity, long_sp.lines, mopt);
    for (const auto& w : fit_short.fit.warnings) log << "short j" << ji << ": " << w << "\n";
    for (const auto& w : fit_long.fit.warnings) log << "long j" << ji << ": " << w << "\n";

    std::vector<double> feq;
    if (cfg.analysis.feq_source == "partition") {
        feq = feq_vector(cfg);
    } else {
        // decay-asymptote source: the long-spectrum populations normalized
        feq.assign(static_cast<std::size_t>(cfg.kinetics.jmax) + 1, 0.0);
        double norm = 0.0;
        for (std::size_t i = 0; i < long_sp.lines.size(); ++i) norm += long_sp.populations[i];
        for (std::size_t i = 0; i < long_sp.lines.size(); ++i) {
            int j = long_sp.lines[i].j_final;
            if (j >= 0 && j < static_cast<int>(feq.size()))
                feq[static_cast<std::size_t>(j)] = long_sp.populations[i] / norm;
        }
    }

    ExtractionResult res = state_to_state_rates(ji, fit_short.areas, fit_long.areas, feq,
                                                short_sp.delay, cfg.kinetics.density,
                                                cfg.thermal.temperature);

    // 2-sigma per entry from the short-spectrum fit (the dominant noise source)
    if (cfg.analysis.bootstrap > 0 && (cfg.kinetics.noise_additive > 0 ||
                                       cfg.kinetics.noise_multiplicative > 0)) {
        for (auto& [key, entry] : res.rates.entries) {
            const int jf = key.second;
            const double ie = [&] {
                for (const auto& a : fit_long.areas)
                    if (a.j_final == jf) return a.area;
                return 0.0;
            }();
            if (ie <= 0.0) continue;
            const double scale =
                feq[static_cast<std::size_t>(jf)] /
                (ie * short_sp.delay * cfg.kinetics.density);
            // covariance propagation on the short-fit area
            const double sd = fit_short.fit.stderr_of("area_" + std::to_string(jf));
            entry.err2sigma = 2.0 * sd * scale;
        }
    }
    return res;
}

}  // namespace

void cmd_extract(const RunConfig& cfg, std::ostream& log) {
    ensure_outdir(cfg);
    RateTable merged;
    merged.temperature = cfg.thermal.temperature;
    merged.provenance = Provenance::extracted;
    for (int ji : cfg.scattering.initial_levels) {
        ExtractionResult res = extract_one(cfg, ji, log);
        io::write_extraction(res, ji, opath(cfg, "extracted_j" + std::to_string(ji)));
        for (const auto& [key, e] : res.rates.entries)
            merged.entries[key] = e;
        log << "extracted j_i=" << ji << " (" << res.rates.entries.size() << " rates)\n";
    }
    io::write_rate_table(merged, opath(cfg, "extracted_rates.csv"));
    log << "wrote extracted_rates.csv\n";
}

void cmd_roundtrip(const RunConfig& cfg, std::ostream& log) {
    cmd_simulate(cfg, log);
    cmd_extract(cfg, log);
    RateTable extracted = io::read_rate_table(opath(cfg, "extracted_rates.csv"));
    RateTable inputs = io::read_rate_table(opath(cfg, "simulate_input_rates.csv"));
    DeviationReport rep = compare_to_reference(extracted, inputs);
    io::write_deviation_report(rep, opath(cfg, "roundtrip_deviation.csv"));
    log << "roundtrip: " << rep.entries.size() << " comparable rates, ratio mean "
        << rep.ratio_mean << " rms dev " << rep.ratio_rms_dev << "\n";
}

void cmd_compare(const RunConfig& cfg, const std::string& extracted_path,
                 const std::string& reference, std::ostream& log) {
    ensure_outdir(cfg);
    RateTable extracted = io::read_rate_table(
        extracted_path.empty() ? opath(cfg, "extracted_rates.csv") : extracted_path);
    RateTable ref;
    if (reference == "theory" || reference.empty())
        ref = refdata::theory_table();
    else if (reference == "measured")
        ref = refdata::measured_table();
    else
        ref = io::read_rate_table(reference);
    DeviationReport rep = compare_to_reference(extracted, ref);
    io::write_deviation_report(rep, opath(cfg, "comparison.csv"));
    log << "compare: " << rep.entries.size() << " entries, " << rep.n_outside
        << " outside 2 sigma\n";
    if (rep.empty_overlap) log << "warning: no overlapping transitions\n";
}

void cmd_propensity(const RunConfig& cfg, const std::string& rates_path, std::ostream& log) {
    ensure_outdir(cfg);
    RateTable table =
        rates_path.empty() ? input_rate_table(cfg) : io::read_rate_table(rates_path);
    RigidRotorSpecies s{cfg.species.rotor1, cfg.species.b1, cfg.species.mass1, {}};
    for (int ji : cfg.scattering.initial_levels) {
        bool any = false;
        for (const auto& [key, e] : table.entries) any |= (key.first == ji);
        if (!any) continue;
        PropensityReport rep = propensity_report(table, s, ji);
        const std::string path = opath(cfg, "propensity_j" + std::to_string(ji) + ".csv");
        io::write_propensity_report(rep, path);
        log << "wrote " << path << "\n";
        for (const auto& obs : rep.observations) log << "  " << obs << "\n";
    }
}

void cmd_reference(std::ostream& out) {
    refdata::verify();
    out << "j_i,j_f,measured_1e-11cm3s,err2sigma_1e-11cm3s,calculated_1e-11cm3s\n";
    for (const auto& e : refdata::entries()) {
        out << e.j_initial << ',' << e.j_final << ',';
        if (std::isnan(e.measured))
            out << "-,-,";
        else
            out << e.measured << ',' << e.err2sigma << ',';
        if (std::isnan(e.theory))
            out << "-";
        else
            out << e.theory;
        out << '\n';
    }
    out << "summary,j_i,sum_measured,sum_measured_err,sum_calculated,k_total,k_total_err,"
           "k_total_calculated\n";
    for (const auto& c : refdata::summaries())
        out << "summary," << c.j_initial << ',' << c.sum_measured << ',' << c.sum_measured_err
            << ',' << c.sum_theory << ',' << c.k_total_measured << ','
            << c.k_total_measured_err << ',' << c.k_total_theory << '\n';
}

}  // namespace retcc::pipeline
