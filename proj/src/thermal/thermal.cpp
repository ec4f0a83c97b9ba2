#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "retcc/constants.hpp"
#include "retcc/errors.hpp"
#include "retcc/thermal.hpp"

namespace retcc {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::computed: return "computed";
        case Provenance::reference: return "reference";
        case Provenance::extracted: return "extracted";
    }
    return "computed";
}

Provenance provenance_from_string(const std::string& s) {
    if (s == "computed") return Provenance::computed;
    if (s == "reference") return Provenance::reference;
    if (s == "extracted") return Provenance::extracted;
    throw ValidationError("unknown provenance: " + s);
}

double RateTable::rate(int ji, int jf) const {
    auto it = entries.find({ji, jf});
    if (it == entries.end()) throw std::out_of_range("rate table has no such entry");
    return it->second.k;
}

void RateTable::set(int ji, int jf, double k, std::optional<double> err) {
    if (k < 0.0) throw ValidationError("rates must be >= 0");
    entries[{ji, jf}] = {k, err};
}

double RateTable::total_from(int ji) const {
    double sum = 0.0;
    for (const auto& [key, e] : entries)
        if (key.first == ji && key.second != ji) sum += e.k;
    return sum;
}

int RateTable::max_level() const {
    int m = 0;
    for (const auto& [key, e] : entries) m = std::max({m, key.first, key.second});
    return m;
}

double mean_speed(double mu_u, double temperature) {
    const double mu_kg = mu_u * constants::amu_kg;
    const double v_mps =
        std::sqrt(8.0 * constants::kb_J_per_K * temperature / (kPi * mu_kg));
    return v_mps * 100.0;  // cm/s
}

double rate_from_sigma(const std::vector<std::pair<double, double>>& sigma_of_e,
                       double mu_u, double temperature, double threshold_e,
                       double tail_coverage) {
    if (temperature <= 0.0) throw std::domain_error("temperature must be > 0");
    if (sigma_of_e.empty()) return 0.0;
    const double kt = constants::kb_cm_per_K * temperature;
    const double emax = sigma_of_e.back().first;
    if (emax < tail_coverage * kt)
        throw ConvergenceError("cross-section grid reaches only " +
                               std::to_string(emax / kt) + " kT; need " +
                               std::to_string(tail_coverage));

    // k = <v> * Int sigma(x) x e^-x dx, x = E/kT; sigma linear between samples,
    // zero below the threshold, constant beyond the last sample
    auto integrand = [&](double e, double sigma) {
        const double x = e / kt;
        return sigma * x * std::exp(-x) / kt;  // per unit E
    };

    double integral = 0.0;
    // leading edge: from threshold (or 0) up to the first sample
    const double e0 = sigma_of_e.front().first;
    const double s0 = sigma_of_e.front().second;
    const double estart = std::max(threshold_e, 0.0);
    if (e0 > estart) {
        // endothermic channels open linearly from zero at the threshold;
        // exothermic ones are extended flat
        const int nsub = 24;
        const bool ramp = threshold_e > 0.0;
        double prev_e = estart;
        double prev_f = integrand(estart, ramp ? 0.0 : s0);
        for (int i = 1; i <= nsub; ++i) {
            const double e = estart + (e0 - estart) * i / nsub;
            const double sig = ramp ? s0 * (e - estart) / (e0 - estart) : s0;
            const double f = integrand(e, sig);
            integral += 0.5 * (prev_f + f) * (e - prev_e);
            prev_e = e;
            prev_f = f;
        }
    }
    for (std::size_t i = 0; i + 1 < sigma_of_e.size(); ++i) {
        const auto [ea, sa] = sigma_of_e[i];
        const auto [eb, sb] = sigma_of_e[i + 1];
        if (eb <= ea) throw ValidationError("sigma(E) samples must increase in E");
        // subdivide so the e^-x weight is resolved even on coarse grids
        const int nsub = std::max(1, static_cast<int>(std::ceil((eb - ea) / (0.05 * kt))));
        double prev_e = ea;
        double prev_f = integrand(ea, sa);
        for (int s = 1; s <= nsub; ++s) {
            const double e = ea + (eb - ea) * s / nsub;
            const double sig = sa + (sb - sa) * (e - ea) / (eb - ea);
            const double f = integrand(e, sig);
            integral += 0.5 * (prev_f + f) * (e - prev_e);
            prev_e = e;
            prev_f = f;
        }
    }
    // analytic tail with sigma frozen at the last sample:
    // Int_x^inf t e^-t dt = (1 + x) e^-x
    const double xN = emax / kt;
    integral += sigma_of_e.back().second * (1.0 + xN) * std::exp(-xN);

    return mean_speed(mu_u, temperature) * constants::A2_to_cm2 * integral;
}

double spin_weighted_rate(double k_para, double k_ortho, double w_para, double w_ortho) {
    if (k_para < 0.0 || k_ortho < 0.0) throw ValidationError("rates must be >= 0");
    return w_para * k_para + w_ortho * k_ortho;
}

RateTable detailed_balance_complete(const RateTable& table, const RigidRotorSpecies& s,
                                    double temperature) {
    if (temperature <= 0.0) throw std::domain_error("temperature must be > 0");
    RateTable out = table;
    out.temperature = temperature;
    const double kt = constants::kb_cm_per_K * temperature;
    for (const auto& [key, entry] : table.entries) {
        const auto [ji, jf] = key;
        if (ji == jf) continue;
        if (out.has(jf, ji)) continue;
        const double ei = level_energy(s, ji);
        const double ef = level_energy(s, jf);
        const double kr = entry.k * (2.0 * ji + 1) / (2.0 * jf + 1) * std::exp((ef - ei) / kt);
        out.set(jf, ji, kr);
    }
    return out;
}

RateTable rates_from_cross_sections(const CrossSectionTable& xs,
                                    const CollisionSystem& sys, double temperature,
                                    Provenance prov) {
    RateTable out;
    out.temperature = temperature;
    out.provenance = prov;

    // thermal weights of the rotor-2 states occurring as initial states;
    // rotor-2 is marginalized: averaged over initial j2, summed over final j2
    const double kt = constants::kb_cm_per_K * temperature;
    std::map<int, double> w2;
    for (const auto& [key, series] : xs.entries) w2[key.from.j2] = 0.0;
    double q2 = 0.0;
    for (auto& [j2, w] : w2) {
        w = (2.0 * j2 + 1) * std::exp(-level_energy(sys.rotor2, j2) / kt);
        q2 += w;
    }
    for (auto& [j2, w] : w2) w /= q2;

    for (const auto& [key, series] : xs.entries) {
        if (key.from.j1 == key.to.j1 && key.from.j2 == key.to.j2) continue;
        if (key.from.j1 == key.to.j1) continue;  // pure rotor-2 transfer folds out
        std::vector<std::pair<double, double>> samples(series.begin(), series.end());
        const double ei = level_energy(sys.rotor1, key.from.j1) +
                          level_energy(sys.rotor2, key.from.j2);
        const double ef = level_energy(sys.rotor1, key.to.j1) +
                          level_energy(sys.rotor2, key.to.j2);
        const double threshold = std::max(0.0, ef - ei);
        const double k = rate_from_sigma(samples, sys.mu(), temperature, threshold);
        const double kw = w2.at(key.from.j2) * k;
        auto mk = std::make_pair(key.from.j1, key.to.j1);
        auto it = out.entries.find(mk);
        if (it == out.entries.end())
            out.set(key.from.j1, key.to.j1, kw);
        else
            it->second.k += kw;
    }
    return out;
}

}  // namespace retcc
