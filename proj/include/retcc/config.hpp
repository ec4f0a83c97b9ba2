#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace retcc {

// Plain-text key/value configuration with sections and explicit unit
// suffixes.  Unknown keys are rejected, every dimensioned value must carry
// the exact unit listed for its key, and parse -> serialize -> parse is the
// identity.
struct RunConfig {
    struct Species {
        std::string rotor1 = "CO";
        double b1 = 1.8875;                  // cm^-1
        double mass1 = 27.99491461957;       // u
        std::string rotor2 = "H2";
        double b2 = 59.322;                  // cm^-1
        double mass2 = 2.01565006448;        // u
    } species;

    struct Pes {
        std::string model = "aniso-demo";  // iso88 | aniso-demo | file
        double s101 = 0.15;
        double s202 = 0.30;
        double s220 = 0.10;
        double s222 = 0.05;
        std::string radial_file;
        int tail_power = 6;
    } pes;

    struct Scattering {
        int j1max = 6;
        std::string isomer = "para";  // para | ortho
        double rmin = 3.0;            // bohr
        double rmax = 40.0;           // bohr
        double step = 0.1;            // bohr
        int jtot_max = 40;
        int jtot_min = 4;
        double jtot_tail_rtol = 1e-3;
        double e_min = 3.9;     // cm^-1
        double e_split = 100.0; // cm^-1
        double e_max = 2200.0;  // cm^-1
        int n_log = 24;
        int n_lin = 24;
        std::vector<int> initial_levels = {0, 1, 4};
    } scattering;

    struct Thermal {
        double temperature = 293.0;  // K
        double w_para = 0.25;
        double w_ortho = 0.75;
        int jmax_partition = 60;
    } thermal;

    struct Kinetics {
        int jmax = 10;
        double density = 1.6e16;   // cm^-3
        double delta_t = 15e-9;    // s
        double t_eq = 300e-6;      // s
        double decay_tmax_factor = 6.0;
        int decay_points = 400;
        double noise_additive = 0.0;
        double noise_multiplicative = 0.0;
        std::uint64_t seed = 12345;
        double sigma_g = 0.08;  // cm^-1
        double gamma_l = 0.02;  // cm^-1
        double nu0 = 60500.0;   // cm^-1
        double b_upper = 1.6116;  // cm^-1
        double b_lower = 1.8875;  // cm^-1
        std::string branch = "Q";
        int axis_points = 2048;
        std::vector<double> strengths;  // empty -> all 1
    } kinetics;

    struct Analysis {
        bool shared_width = true;
        bool baseline = true;
        int max_iterations = 200;
        double rel_tolerance = 1e-10;
        int bootstrap = 200;
        std::uint64_t bootstrap_seed = 1;
        std::string feq_source = "partition";  // partition | asymptote
    } analysis;

    struct Io {
        std::string out_dir = "out";
        std::string rates_file;  // input table; empty -> bundled reference (calculated column)
        bool emit_plot_data = false;
    } io;

    int threads = 1;

    std::vector<double> energy_grid() const;  // log below e_split, linear above
    void validate() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

}  // namespace retcc
