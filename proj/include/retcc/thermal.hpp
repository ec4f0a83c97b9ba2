#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "retcc/molsys.hpp"
#include "retcc/scatter.hpp"

namespace retcc {

enum class Provenance { computed, reference, extracted };
std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

struct RateEntry {
    double k = 0.0;  // cm^3 s^-1
    std::optional<double> err2sigma;
};

struct RateTable {
    double temperature = 0.0;  // K
    Provenance provenance = Provenance::computed;
    std::map<std::pair<int, int>, RateEntry> entries;  // (j_i, j_f) -> rate

    bool has(int ji, int jf) const { return entries.count({ji, jf}) > 0; }
    double rate(int ji, int jf) const;
    void set(int ji, int jf, double k, std::optional<double> err = std::nullopt);
    double total_from(int ji) const;  // sum over j_f != j_i
    int max_level() const;
};

// mean relative speed, cm/s
double mean_speed(double mu_u, double temperature);

// Maxwell-Boltzmann thermal average of sigma(E): trapezoid over the sampled
// grid plus an analytic constant-sigma exponential tail beyond the last point.
// sigma_of_e: (E_coll cm^-1, sigma A^2) samples sorted in E.  The grid must
// reach at least `tail_coverage` * kT or a ConvergenceError is thrown.
double rate_from_sigma(const std::vector<std::pair<double, double>>& sigma_of_e,
                       double mu_u, double temperature, double threshold_e = 0.0,
                       double tail_coverage = 8.0);

double spin_weighted_rate(double k_para, double k_ortho, double w_para = 0.25,
                          double w_ortho = 0.75);

// fill missing reverse entries by detailed balance; existing entries untouched
RateTable detailed_balance_complete(const RateTable& table, const RigidRotorSpecies& s,
                                    double temperature);

// thermal rates for every transition in the table at temperature T
RateTable rates_from_cross_sections(const CrossSectionTable& xs,
                                    const CollisionSystem& sys, double temperature,
                                    Provenance prov = Provenance::computed);

}  // namespace retcc
