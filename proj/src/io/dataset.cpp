#include <fstream>

#include <json.hpp>

#include "retcc/errors.hpp"
#include "retcc/io.hpp"

namespace retcc::io {

namespace {

using nlohmann::json;

json noise_to_json(const NoiseModel& n) {
    return json{{"additive_rel", n.additive_rel},
                {"multiplicative_rel", n.multiplicative_rel},
                {"seed", n.seed}};
}

NoiseModel noise_from_json(const json& j) {
    NoiseModel n;
    n.additive_rel = j.at("additive_rel").get<double>();
    n.multiplicative_rel = j.at("multiplicative_rel").get<double>();
    n.seed = j.at("seed").get<std::uint64_t>();
    return n;
}

void write_columns(const std::string& path, const std::string& header,
                   const std::vector<double>& a, const std::vector<double>& b) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << header << '\n';
    for (std::size_t i = 0; i < a.size(); ++i)
        out << format_double(a[i]) << ',' << format_double(b[i]) << '\n';
}

void read_columns(const std::string& path, const std::string& expect_header,
                  std::vector<double>& a, std::vector<double>& b) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::string line;
    if (!std::getline(in, line) || line != expect_header)
        throw IoError("bad header in " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw IoError("bad row in " + path);
        a.push_back(std::stod(line.substr(0, comma)));
        b.push_back(std::stod(line.substr(comma + 1)));
    }
}

}  // namespace

void write_decay(const DecayTrace& trace, const std::string& stem) {
    write_columns(stem + ".csv", "t_s,signal", trace.times, trace.signal);
    json meta{{"kind", "decay"},
              {"j_initial", trace.j_initial},
              {"probe_line", trace.probe_line},
              {"density_cm3", trace.density_cm3},
              {"asymptote_over_initial", trace.asymptote_over_initial},
              {"noise", noise_to_json(trace.noise)},
              {"units", {{"t", "s"}, {"signal", "a.u."}, {"density", "cm^-3"}}}};
    std::ofstream out(stem + ".meta.json");
    if (!out) throw IoError("cannot write " + stem + ".meta.json");
    out << meta.dump(2) << '\n';
}

DecayTrace read_decay(const std::string& stem) {
    DecayTrace trace;
    read_columns(stem + ".csv", "t_s,signal", trace.times, trace.signal);
    std::ifstream in(stem + ".meta.json");
    if (!in) throw IoError("cannot read " + stem + ".meta.json");
    json meta = json::parse(in);
    trace.j_initial = meta.at("j_initial").get<int>();
    trace.probe_line = meta.at("probe_line").get<std::string>();
    trace.density_cm3 = meta.at("density_cm3").get<double>();
    trace.asymptote_over_initial = meta.at("asymptote_over_initial").get<double>();
    trace.noise = noise_from_json(meta.at("noise"));
    return trace;
}

void write_spectrum(const Spectrum& spec, const std::string& stem) {
    write_columns(stem + ".csv", "nu_cm1,intensity", spec.axis, spec.intensity);
    json lines = json::array();
    for (std::size_t i = 0; i < spec.lines.size(); ++i) {
        lines.push_back(json{{"j_final", spec.lines[i].j_final},
                             {"center_cm1", spec.lines[i].center},
                             {"strength", spec.lines[i].strength},
                             {"population", spec.populations[i]}});
    }
    json meta{{"kind", "spectrum"},
              {"delay_s", spec.delay},
              {"lines", lines},
              {"warnings", spec.warnings},
              {"noise", noise_to_json(spec.noise)},
              {"units", {{"nu", "cm^-1"}, {"intensity", "a.u."}, {"delay", "s"}}}};
    std::ofstream out(stem + ".meta.json");
    if (!out) throw IoError("cannot write " + stem + ".meta.json");
    out << meta.dump(2) << '\n';
}

Spectrum read_spectrum(const std::string& stem) {
    Spectrum spec;
    read_columns(stem + ".csv", "nu_cm1,intensity", spec.axis, spec.intensity);
    std::ifstream in(stem + ".meta.json");
    if (!in) throw IoError("cannot read " + stem + ".meta.json");
    json meta = json::parse(in);
    spec.delay = meta.at("delay_s").get<double>();
    for (const auto& l : meta.at("lines")) {
        spec.lines.push_back({l.at("j_final").get<int>(), l.at("center_cm1").get<double>(),
                              l.at("strength").get<double>()});
        spec.populations.push_back(l.at("population").get<double>());
    }
    for (const auto& w : meta.at("warnings")) spec.warnings.push_back(w.get<std::string>());
    spec.noise = noise_from_json(meta.at("noise"));
    return spec;
}

void write_extraction(const ExtractionResult& r, int j_initial, const std::string& stem) {
    write_rate_table(r.rates, stem + ".rates.csv");
    json inputs = json::array();
    for (const auto& in : r.inputs) {
        inputs.push_back(json{{"j_final", in.j_final},
                              {"I_short", in.i_short},
                              {"I_eq", in.i_eq},
                              {"f_eq", in.f_eq},
                              {"delta_t_s", in.delta_t},
                              {"density_cm3", in.density_cm3},
                              {"defined", in.defined}});
    }
    json meta{{"kind", "extraction"},
              {"j_initial", j_initial},
              {"temperature_K", r.rates.temperature},
              {"inputs", inputs},
              {"warnings", r.warnings},
              {"formula", "k = (I_short * f_eq / I_eq) / (delta_t * density)"}};
    std::ofstream out(stem + ".meta.json");
    if (!out) throw IoError("cannot write " + stem + ".meta.json");
    out << meta.dump(2) << '\n';
}

}  // namespace retcc::io
