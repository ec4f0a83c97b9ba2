#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "retcc/config.hpp"
#include "retcc/errors.hpp"
#include "retcc/io.hpp"

namespace retcc {

namespace {

enum class Kind { real, integer, uint64, boolean, text, int_list, real_list };

struct KeySpec {
    const char* section;
    const char* key;
    const char* unit;  // "" for dimensionless
    Kind kind;
    std::function<std::string(const RunConfig&)> get;
    std::function<void(RunConfig&, const std::string&)> set;
};

double parse_real(const std::string& s) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw ValidationError("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ValidationError("bad numeric value '" + s + "'");
    }
}

long long parse_int(const std::string& s) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw ValidationError("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ValidationError("bad integer value '" + s + "'");
    }
}

std::string fmt_list_int(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(v[i]);
    }
    return out;
}

std::string fmt_list_real(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += io::format_double(v[i]);
    }
    return out;
}

std::vector<int> parse_list_int(const std::string& s) {
    std::vector<int> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(static_cast<int>(parse_int(tok)));
    return out;
}

std::vector<double> parse_list_real(const std::string& s) {
    std::vector<double> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(parse_real(tok));
    return out;
}

#define REAL_KEY(sec, name, unit, field)                                        \
    KeySpec{sec, name, unit, Kind::real,                                        \
            [](const RunConfig& c) { return io::format_double(c.field); },      \
            [](RunConfig& c, const std::string& v) { c.field = parse_real(v); }}
#define INT_KEY(sec, name, field)                                               \
    KeySpec{sec, name, "", Kind::integer,                                       \
            [](const RunConfig& c) { return std::to_string(c.field); },         \
            [](RunConfig& c, const std::string& v) {                            \
                c.field = static_cast<int>(parse_int(v));                       \
            }}
#define U64_KEY(sec, name, field)                                               \
    KeySpec{sec, name, "", Kind::uint64,                                        \
            [](const RunConfig& c) { return std::to_string(c.field); },         \
            [](RunConfig& c, const std::string& v) {                            \
                c.field = static_cast<std::uint64_t>(parse_int(v));             \
            }}
#define BOOL_KEY(sec, name, field)                                              \
    KeySpec{sec, name, "", Kind::boolean,                                       \
            [](const RunConfig& c) { return std::string(c.field ? "1" : "0"); },\
            [](RunConfig& c, const std::string& v) {                            \
                if (v != "0" && v != "1") throw ValidationError("boolean key "  \
                    name " takes 0 or 1");                                      \
                c.field = (v == "1");                                           \
            }}
#define TEXT_KEY(sec, name, field)                                              \
    KeySpec{sec, name, "", Kind::text,                                          \
            [](const RunConfig& c) { return c.field; },                         \
            [](RunConfig& c, const std::string& v) { c.field = v; }}

const std::vector<KeySpec>& key_table() {
    static const std::vector<KeySpec> table = {
        TEXT_KEY("species", "rotor1", species.rotor1),
        REAL_KEY("species", "b1", "cm^-1", species.b1),
        REAL_KEY("species", "mass1", "u", species.mass1),
        TEXT_KEY("species", "rotor2", species.rotor2),
        REAL_KEY("species", "b2", "cm^-1", species.b2),
        REAL_KEY("species", "mass2", "u", species.mass2),

        TEXT_KEY("pes", "model", pes.model),
        REAL_KEY("pes", "s101", "", pes.s101),
        REAL_KEY("pes", "s202", "", pes.s202),
        REAL_KEY("pes", "s220", "", pes.s220),
        REAL_KEY("pes", "s222", "", pes.s222),
        TEXT_KEY("pes", "radial_file", pes.radial_file),
        INT_KEY("pes", "tail_power", pes.tail_power),

        INT_KEY("scattering", "j1max", scattering.j1max),
        TEXT_KEY("scattering", "isomer", scattering.isomer),
        REAL_KEY("scattering", "rmin", "bohr", scattering.rmin),
        REAL_KEY("scattering", "rmax", "bohr", scattering.rmax),
        REAL_KEY("scattering", "step", "bohr", scattering.step),
        INT_KEY("scattering", "jtot_max", scattering.jtot_max),
        INT_KEY("scattering", "jtot_min", scattering.jtot_min),
        REAL_KEY("scattering", "jtot_tail_rtol", "", scattering.jtot_tail_rtol),
        REAL_KEY("scattering", "e_min", "cm^-1", scattering.e_min),
        REAL_KEY("scattering", "e_split", "cm^-1", scattering.e_split),
        REAL_KEY("scattering", "e_max", "cm^-1", scattering.e_max),
        INT_KEY("scattering", "n_log", scattering.n_log),
        INT_KEY("scattering", "n_lin", scattering.n_lin),
        KeySpec{"scattering", "initial_levels", "", Kind::int_list,
                [](const RunConfig& c) { return fmt_list_int(c.scattering.initial_levels); },
                [](RunConfig& c, const std::string& v) {
                    c.scattering.initial_levels = parse_list_int(v);
                }},

        REAL_KEY("thermal", "temperature", "K", thermal.temperature),
        REAL_KEY("thermal", "w_para", "", thermal.w_para),
        REAL_KEY("thermal", "w_ortho", "", thermal.w_ortho),
        INT_KEY("thermal", "jmax_partition", thermal.jmax_partition),

        INT_KEY("kinetics", "jmax", kinetics.jmax),
        REAL_KEY("kinetics", "density", "cm^-3", kinetics.density),
        REAL_KEY("kinetics", "delta_t", "s", kinetics.delta_t),
        REAL_KEY("kinetics", "t_eq", "s", kinetics.t_eq),
        REAL_KEY("kinetics", "decay_tmax_factor", "", kinetics.decay_tmax_factor),
        INT_KEY("kinetics", "decay_points", kinetics.decay_points),
        REAL_KEY("kinetics", "noise_additive", "", kinetics.noise_additive),
        REAL_KEY("kinetics", "noise_multiplicative", "", kinetics.noise_multiplicative),
        U64_KEY("kinetics", "seed", kinetics.seed),
        REAL_KEY("kinetics", "sigma_g", "cm^-1", kinetics.sigma_g),
        REAL_KEY("kinetics", "gamma_l", "cm^-1", kinetics.gamma_l),
        REAL_KEY("kinetics", "nu0", "cm^-1", kinetics.nu0),
        REAL_KEY("kinetics", "b_upper", "cm^-1", kinetics.b_upper),
        REAL_KEY("kinetics", "b_lower", "cm^-1", kinetics.b_lower),
        TEXT_KEY("kinetics", "branch", kinetics.branch),
        INT_KEY("kinetics", "axis_points", kinetics.axis_points),
        KeySpec{"kinetics", "strengths", "", Kind::real_list,
                [](const RunConfig& c) { return fmt_list_real(c.kinetics.strengths); },
                [](RunConfig& c, const std::string& v) {
                    c.kinetics.strengths = parse_list_real(v);
                }},

        BOOL_KEY("analysis", "shared_width", analysis.shared_width),
        BOOL_KEY("analysis", "baseline", analysis.baseline),
        INT_KEY("analysis", "max_iterations", analysis.max_iterations),
        REAL_KEY("analysis", "rel_tolerance", "", analysis.rel_tolerance),
        INT_KEY("analysis", "bootstrap", analysis.bootstrap),
        U64_KEY("analysis", "bootstrap_seed", analysis.bootstrap_seed),
        TEXT_KEY("analysis", "feq_source", analysis.feq_source),

        TEXT_KEY("io", "out_dir", io.out_dir),
        TEXT_KEY("io", "rates_file", io.rates_file),
        BOOL_KEY("io", "emit_plot_data", io.emit_plot_data),

        INT_KEY("run", "threads", threads),
    };
    return table;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<double> RunConfig::energy_grid() const {
    std::vector<double> out;
    const auto& s = scattering;
    if (s.n_log > 0) {
        const double le0 = std::log(s.e_min);
        const double le1 = std::log(std::min(s.e_split, s.e_max));
        for (int i = 0; i < s.n_log; ++i)
            out.push_back(std::exp(le0 + (le1 - le0) * i / std::max(1, s.n_log - 1)));
    }
    if (s.n_lin > 0 && s.e_max > s.e_split) {
        for (int i = 1; i <= s.n_lin; ++i)
            out.push_back(s.e_split + (s.e_max - s.e_split) * i / s.n_lin);
    }
    return out;
}

void RunConfig::validate() const {
    if (species.b1 <= 0 || species.b2 <= 0) throw ValidationError("rotational constants must be > 0");
    if (species.mass1 <= 0 || species.mass2 <= 0) throw ValidationError("masses must be > 0");
    if (pes.model != "iso88" && pes.model != "aniso-demo" && pes.model != "file")
        throw ValidationError("pes.model must be iso88, aniso-demo or file");
    if (pes.model == "file" && pes.radial_file.empty())
        throw ValidationError("pes.model=file needs pes.radial_file");
    if (scattering.isomer != "para" && scattering.isomer != "ortho")
        throw ValidationError("scattering.isomer must be para or ortho");
    if (scattering.j1max < 0) throw ValidationError("j1max must be >= 0");
    if (!(scattering.rmin > 0 && scattering.rmax > scattering.rmin && scattering.step > 0))
        throw ValidationError("bad propagation grid");
    if (!(scattering.e_min > 0 && scattering.e_max >= scattering.e_min))
        throw ValidationError("bad energy range");
    if (thermal.temperature <= 0) throw ValidationError("temperature must be > 0");
    if (std::abs(thermal.w_para + thermal.w_ortho - 1.0) > 1e-12)
        throw ValidationError("spin weights must sum to 1");
    if (kinetics.jmax < 1) throw ValidationError("kinetics.jmax must be >= 1");
    if (kinetics.density <= 0) throw ValidationError("density must be > 0");
    if (!(kinetics.delta_t > 0) || !(kinetics.t_eq > kinetics.delta_t))
        throw ValidationError("need 0 < delta_t < t_eq");
    if (kinetics.branch != "P" && kinetics.branch != "Q" && kinetics.branch != "R")
        throw ValidationError("kinetics.branch must be P, Q or R");
    if (analysis.feq_source != "partition" && analysis.feq_source != "asymptote")
        throw ValidationError("analysis.feq_source must be partition or asymptote");
    if (threads < 1) throw ValidationError("threads must be >= 1");
    for (int j : scattering.initial_levels)
        if (j < 0 || j > kinetics.jmax)
            throw ValidationError("initial level outside 0..kinetics.jmax");
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ValidationError("config line " + std::to_string(lineno) +
                                      ": malformed section header");
            section = line.substr(1, line.size() - 2);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        std::string rhs = trim(line.substr(eq + 1));

        const KeySpec* spec = nullptr;
        for (const auto& ks : key_table())
            if (section == ks.section && key == ks.key) spec = &ks;
        if (spec == nullptr)
            throw ValidationError("config line " + std::to_string(lineno) + ": unknown key [" +
                                  section + "] " + key);

        std::string value = rhs;
        if (spec->unit[0] != '\0') {
            // dimensioned: value must end with the exact unit token
            auto sp = rhs.rfind(' ');
            if (sp == std::string::npos)
                throw ValidationError("config line " + std::to_string(lineno) + ": key '" + key +
                                      "' requires unit '" + spec->unit + "'");
            const std::string unit = rhs.substr(sp + 1);
            if (unit != spec->unit)
                throw ValidationError("config line " + std::to_string(lineno) + ": key '" + key +
                                      "' requires unit '" + spec->unit + "', got '" + unit + "'");
            value = trim(rhs.substr(0, sp));
        }
        try {
            spec->set(cfg, value);
        } catch (const ValidationError& e) {
            throw ValidationError("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    std::string section;
    for (const auto& ks : key_table()) {
        if (section != ks.section) {
            if (!section.empty()) out << '\n';
            section = ks.section;
            out << '[' << section << "]\n";
        }
        out << ks.key << " = " << ks.get(cfg);
        if (ks.unit[0] != '\0') out << ' ' << ks.unit;
        out << '\n';
    }
    return out.str();
}

}  // namespace retcc
