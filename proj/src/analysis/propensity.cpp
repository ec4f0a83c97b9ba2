#include <algorithm>
#include <cmath>

#include "retcc/analysis.hpp"
#include "retcc/errors.hpp"

namespace retcc {

PropensityReport propensity_report(const RateTable& table, const RigidRotorSpecies& s,
                                   int j_initial) {
    PropensityReport rep;
    rep.j_initial = j_initial;

    std::map<int, double> by_dj;  // |dj| -> rate (from this j_initial)
    for (const auto& [key, entry] : table.entries) {
        if (key.first != j_initial || key.second == j_initial) continue;
        PropensityRow row;
        row.j_final = key.second;
        row.delta_j = key.second - j_initial;
        row.rate = entry.k;
        rep.rows.push_back(row);
        by_dj[std::abs(row.delta_j)] = entry.k;  // final states are unique per |dj| side
    }
    std::sort(rep.rows.begin(), rep.rows.end(),
              [](const PropensityRow& a, const PropensityRow& b) {
                  return a.j_final < b.j_final;
              });

    // contrast r(|dj|) = k(|dj|) / mean(k(|dj|-1), k(|dj|+1)) over upward dj
    for (auto& row : rep.rows) {
        const int adj = std::abs(row.delta_j);
        auto lo = by_dj.find(adj - 1);
        auto hi = by_dj.find(adj + 1);
        if (row.delta_j > 0 && lo != by_dj.end() && hi != by_dj.end()) {
            const double mean = 0.5 * (lo->second + hi->second);
            if (mean > 0.0) {
                row.contrast = row.rate / mean;
                if (*row.contrast > 1.0) {
                    if (adj % 2 == 0)
                        row.even_flag = true;
                    else
                        row.odd_flag = true;
                }
            }
        }
    }

    // energy-gap law fit k = A exp(-beta |dE|), linear regression in log space
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& row : rep.rows) {
        if (row.rate <= 0.0) continue;
        const double de = std::abs(level_energy(s, row.j_final) - level_energy(s, j_initial));
        const double ly = std::log(row.rate);
        sx += de;
        sy += ly;
        sxx += de * de;
        sxy += de * ly;
        ++m;
    }
    if (m >= 2) {
        const double denom = m * sxx - sx * sx;
        const double slope = denom != 0.0 ? (m * sxy - sx * sy) / denom : 0.0;
        const double inter = (sy - slope * sx) / m;
        rep.gap_beta = -slope;
        rep.gap_a = std::exp(inter);
        double ss = 0.0;
        for (const auto& row : rep.rows) {
            if (row.rate <= 0.0) continue;
            const double de =
                std::abs(level_energy(s, row.j_final) - level_energy(s, j_initial));
            const double r = std::log(row.rate) - (inter + slope * de);
            ss += r * r;
        }
        rep.gap_residual_rms = std::sqrt(ss / m);
    }

    for (const auto& row : rep.rows) {
        if (row.even_flag)
            rep.observations.push_back("even-propensity peak at |dj|=" +
                                       std::to_string(std::abs(row.delta_j)));
        if (row.odd_flag)
            rep.observations.push_back("odd-propensity peak at |dj|=" +
                                       std::to_string(std::abs(row.delta_j)));
    }
    if (rep.gap_residual_rms > 0.3)
        rep.observations.push_back(
            "energy-gap law misses the dj structure (log-rms residual " +
            std::to_string(rep.gap_residual_rms) + ")");
    return rep;
}

DeviationReport compare_to_reference(const RateTable& extracted,
                                     const RateTable& reference) {
    DeviationReport rep;
    double rsum = 0.0;
    for (const auto& [key, e] : extracted.entries) {
        auto it = reference.entries.find(key);
        if (it == reference.entries.end()) continue;
        DeviationEntry d;
        d.j_initial = key.first;
        d.j_final = key.second;
        d.value = e.k;
        d.reference = it->second.k;
        d.ratio = it->second.k != 0.0 ? e.k / it->second.k : 0.0;
        d.difference = e.k - it->second.k;
        std::optional<double> err = e.err2sigma;
        if (!err && it->second.err2sigma) err = it->second.err2sigma;
        if (err && *err > 0.0) {
            d.z_score = std::abs(d.difference) / *err;
            d.outside_2sigma = *d.z_score > 1.0;
            if (d.outside_2sigma) ++rep.n_outside;
        }
        rsum += d.ratio;
        rep.entries.push_back(d);
    }
    if (rep.entries.empty()) {
        rep.empty_overlap = true;
        return rep;
    }
    rep.ratio_mean = rsum / static_cast<double>(rep.entries.size());
    double ss = 0.0;
    for (const auto& d : rep.entries) {
        ss += (d.ratio - rep.ratio_mean) * (d.ratio - rep.ratio_mean);
    }
    rep.ratio_rms_dev = std::sqrt(ss / static_cast<double>(rep.entries.size()));
    return rep;
}

}  // namespace retcc
