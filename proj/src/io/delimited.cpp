#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "retcc/errors.hpp"
#include "retcc/io.hpp"

namespace retcc::io {

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string tok;
    std::istringstream is(line);
    while (std::getline(is, tok, ',')) out.push_back(tok);
    return out;
}

double parse_double(const std::string& s) {
    double v{};
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw IoError("bad numeric field: '" + s + "'");
    return v;
}

constexpr double kRateScale = 1e-11;  // table display unit, cm^3 s^-1

}  // namespace

void write_cross_sections(const CrossSectionTable& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "E_coll_cm1,j1,j2,j1p,j2p,sigma_A2\n";
    for (const auto& [key, series] : t.entries)
        for (const auto& [e, sigma] : series)
            out << format_double(e) << ',' << key.from.j1 << ',' << key.from.j2 << ','
                << key.to.j1 << ',' << key.to.j2 << ',' << format_double(sigma) << '\n';
    for (const auto& note : t.notes) out << "# " << note << '\n';
}

CrossSectionTable read_cross_sections(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::string line;
    if (!std::getline(in, line) || line != "E_coll_cm1,j1,j2,j1p,j2p,sigma_A2")
        throw IoError("bad cross-section header in " + path);
    CrossSectionTable t;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            t.notes.push_back(line.substr(2));
            continue;
        }
        auto f = split_csv(line);
        if (f.size() != 6) throw IoError("bad cross-section row in " + path);
        TransitionKey key{{static_cast<int>(parse_double(f[1])), static_cast<int>(parse_double(f[2]))},
                          {static_cast<int>(parse_double(f[3])), static_cast<int>(parse_double(f[4]))}};
        t.add(key, parse_double(f[0]), parse_double(f[5]));
    }
    return t;
}

void write_rate_table(const RateTable& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "T_K,j_i,j_f,k_cm3s,err2sigma_cm3s,provenance\n";
    for (const auto& [key, e] : t.entries) {
        out << format_double(t.temperature) << ',' << key.first << ',' << key.second << ','
            << format_double(e.k / kRateScale) << ','
            << (e.err2sigma ? format_double(*e.err2sigma / kRateScale) : std::string("-"))
            << ',' << to_string(t.provenance) << '\n';
    }
}

RateTable read_rate_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::string line;
    if (!std::getline(in, line) || line != "T_K,j_i,j_f,k_cm3s,err2sigma_cm3s,provenance")
        throw IoError("bad rate-table header in " + path);
    RateTable t;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto f = split_csv(line);
        if (f.size() != 6) throw IoError("bad rate-table row in " + path);
        const double temp = parse_double(f[0]);
        if (first) {
            t.temperature = temp;
            t.provenance = provenance_from_string(f[5]);
            first = false;
        } else if (temp != t.temperature) {
            throw IoError("rate table mixes temperatures");
        }
        std::optional<double> err;
        if (f[4] != "-") err = parse_double(f[4]) * kRateScale;
        t.set(static_cast<int>(parse_double(f[1])), static_cast<int>(parse_double(f[2])),
              parse_double(f[3]) * kRateScale, err);
    }
    return t;
}

void write_deviation_report(const DeviationReport& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "j_i,j_f,value_cm3s,reference_cm3s,ratio,difference_cm3s,z_2sigma,outside_2sigma\n";
    for (const auto& d : r.entries) {
        out << d.j_initial << ',' << d.j_final << ',' << format_double(d.value / kRateScale)
            << ',' << format_double(d.reference / kRateScale) << ',' << format_double(d.ratio)
            << ',' << format_double(d.difference / kRateScale) << ','
            << (d.z_score ? format_double(*d.z_score) : std::string("-")) << ','
            << (d.outside_2sigma ? 1 : 0) << '\n';
    }
    out << "# ratio_mean=" << format_double(r.ratio_mean)
        << " ratio_rms_dev=" << format_double(r.ratio_rms_dev)
        << " n_outside=" << r.n_outside << (r.empty_overlap ? " EMPTY_OVERLAP" : "") << '\n';
}

void write_propensity_report(const PropensityReport& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "j_i,j_f,delta_j,k_cm3s,contrast,even_flag,odd_flag\n";
    for (const auto& row : r.rows) {
        out << r.j_initial << ',' << row.j_final << ',' << row.delta_j << ','
            << format_double(row.rate / kRateScale) << ','
            << (row.contrast ? format_double(*row.contrast) : std::string("-")) << ','
            << (row.even_flag ? 1 : 0) << ',' << (row.odd_flag ? 1 : 0) << '\n';
    }
    out << "# energy_gap_fit A=" << format_double(r.gap_a / kRateScale)
        << "e-11cm3s beta=" << format_double(r.gap_beta)
        << " log_rms=" << format_double(r.gap_residual_rms) << '\n';
    for (const auto& obs : r.observations) out << "# " << obs << '\n';
}

}  // namespace retcc::io
