#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "retcc/errors.hpp"
#include "retcc/pes.hpp"

namespace retcc {

namespace {
constexpr double kPi = std::numbers::pi;
}

PotentialExpansion::PotentialExpansion(std::vector<ExpansionTerm> terms,
                                       std::string provenance)
    : terms_(std::move(terms)), provenance_(std::move(provenance)) {
    std::set<TermIndex> seen;
    int n_iso = 0;
    for (const auto& t : terms_) {
        const auto& ix = t.index;
        if (ix.l1 < 0 || ix.l2 < 0 || ix.l < std::abs(ix.l1 - ix.l2) ||
            ix.l > ix.l1 + ix.l2 || ((ix.l1 + ix.l2 + ix.l) % 2) != 0)
            throw ValidationError("expansion term (" + std::to_string(ix.l1) + "," +
                                  std::to_string(ix.l2) + "," + std::to_string(ix.l) +
                                  ") violates bispherical parity/triangle rules");
        if (!seen.insert(ix).second)
            throw ValidationError("duplicate expansion term");
        if (ix.l1 == 0 && ix.l2 == 0 && ix.l == 0) ++n_iso;
        if (!t.radial) throw ValidationError("expansion term without radial function");
    }
    if (n_iso != 1) throw ValidationError("expansion needs exactly one isotropic term");
    std::sort(terms_.begin(), terms_.end(),
              [](const ExpansionTerm& a, const ExpansionTerm& b) { return a.index < b.index; });
}

double PotentialExpansion::evaluate(double r, double theta1, double theta2,
                                    double phi) const {
    if (r <= 0.0) throw std::domain_error("evaluate needs r > 0");
    double v = 0.0;
    for (const auto& t : terms_)
        v += t.radial->value(r) * bispherical_term(t.index, theta1, theta2, phi);
    return v;
}

std::vector<std::pair<TermIndex, double>> PotentialExpansion::radial_coefficients(
    double r) const {
    std::vector<std::pair<TermIndex, double>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.emplace_back(t.index, t.radial->value(r));
    return out;
}

PotentialExpansion project(const ModelPotential& model, const ProjectionOptions& opt) {
    if (opt.r_knots.size() < 4)
        throw ValidationError("projection needs >= 4 radial knots");
    const int n1 = opt.n_theta1 > 0 ? opt.n_theta1 : opt.l1max + 6;
    const int n2 = opt.n_theta2 > 0 ? opt.n_theta2 : opt.l2max + 6;
    const int nphi = opt.n_phi > 0 ? opt.n_phi : 2 * std::min(opt.l1max, opt.l2max) + 4;
    auto q1 = gauss_legendre(n1);
    auto q2 = gauss_legendre(n2);

    std::vector<TermIndex> indices;
    for (int l1 = 0; l1 <= opt.l1max; ++l1)
        for (int l2 = 0; l2 <= opt.l2max; ++l2)
            for (int l = std::abs(l1 - l2); l <= l1 + l2; l += 2)
                if ((l1 + l2 + l) % 2 == 0) indices.push_back({l1, l2, l});

    // model samples on the product grid, reused for every term
    const std::size_t nr = opt.r_knots.size();
    std::vector<std::vector<double>> coeff(indices.size(), std::vector<double>(nr, 0.0));
    std::vector<double> phis(nphi);
    for (int k = 0; k < nphi; ++k) phis[k] = 2.0 * kPi * k / nphi;
    const double wphi = 2.0 * kPi / nphi;

    for (std::size_t ir = 0; ir < nr; ++ir) {
        const double r = opt.r_knots[ir];
        for (int i1 = 0; i1 < n1; ++i1) {
            const double th1 = std::acos(q1.nodes[i1]);
            for (int i2 = 0; i2 < n2; ++i2) {
                const double th2 = std::acos(q2.nodes[i2]);
                for (int k = 0; k < nphi; ++k) {
                    const double w = q1.weights[i1] * q2.weights[i2] * wphi;
                    const double v = model(r, th1, th2, phis[k]);
                    for (std::size_t it = 0; it < indices.size(); ++it) {
                        coeff[it][ir] += w * v * bispherical_term(indices[it], th1, th2, phis[k]);
                    }
                }
            }
        }
    }

    std::vector<ExpansionTerm> terms;
    for (std::size_t it = 0; it < indices.size(); ++it) {
        const auto& ix = indices[it];
        const double norm = (2.0 * ix.l1 + 1) * (2.0 * ix.l2 + 1) / (8.0 * kPi);
        double vmax = 0.0;
        for (auto& c : coeff[it]) {
            c *= norm;
            vmax = std::max(vmax, std::abs(c));
        }
        const bool iso = ix.l1 == 0 && ix.l2 == 0 && ix.l == 0;
        if (!iso && vmax < opt.coefficient_floor) continue;
        terms.push_back({ix, std::make_shared<TabulatedRadial>(
                                 opt.r_knots, std::move(coeff[it]), opt.tail_power)});
    }
    return PotentialExpansion(std::move(terms), "projected model potential");
}

PotentialExpansion read_radial_table(const std::string& path, int tail_power) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open radial table: " + path);
    std::string header;
    if (!std::getline(in, header)) throw IoError("empty radial table: " + path);
    std::vector<TermIndex> indices;
    {
        std::istringstream hs(header);
        std::string col;
        bool first = true;
        while (std::getline(hs, col, ',')) {
            if (first) {
                if (col != "R_bohr")
                    throw IoError("radial table must start with R_bohr column");
                first = false;
                continue;
            }
            int l1, l2, l;
            if (std::sscanf(col.c_str(), "v_%d_%d_%d", &l1, &l2, &l) != 3)
                throw IoError("bad radial table column name: " + col);
            indices.push_back({l1, l2, l});
        }
    }
    if (indices.empty()) throw IoError("radial table has no coefficient columns");
    std::vector<double> r;
    std::vector<std::vector<double>> cols(indices.size());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        std::vector<double> vals;
        while (std::getline(ls, tok, ',')) vals.push_back(std::stod(tok));
        if (vals.size() != indices.size() + 1)
            throw IoError("radial table row has wrong column count");
        r.push_back(vals[0]);
        for (std::size_t i = 0; i < indices.size(); ++i) cols[i].push_back(vals[i + 1]);
    }
    std::vector<ExpansionTerm> terms;
    for (std::size_t i = 0; i < indices.size(); ++i)
        terms.push_back({indices[i], std::make_shared<TabulatedRadial>(r, cols[i], tail_power)});
    return PotentialExpansion(std::move(terms), "imported: " + path);
}

void write_radial_table(const PotentialExpansion& e, const std::string& path,
                        const std::vector<double>& r_knots) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write radial table: " + path);
    out << "R_bohr";
    for (const auto& t : e.terms())
        out << ",v_" << t.index.l1 << "_" << t.index.l2 << "_" << t.index.l;
    out << "\n";
    out.precision(17);
    for (double r : r_knots) {
        out << r;
        for (const auto& t : e.terms()) out << "," << t.radial->value(r);
        out << "\n";
    }
}

}  // namespace retcc
