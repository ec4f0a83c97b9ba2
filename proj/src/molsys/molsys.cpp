#include "retcc/molsys.hpp"

#include <cmath>
#include <stdexcept>

#include "retcc/constants.hpp"
#include "retcc/errors.hpp"

namespace retcc {

void RigidRotorSpecies::validate() const {
    if (rotational_constant <= 0.0)
        throw ValidationError(label + ": rotational constant must be > 0");
    if (mass <= 0.0) throw ValidationError(label + ": mass must be > 0");
    if (!spin_isomers.empty()) {
        double wsum = 0.0;
        for (const auto& iso : spin_isomers) {
            if (iso.weight < 0.0) throw ValidationError(label + ": negative spin weight");
            wsum += iso.weight;
        }
        if (std::abs(wsum - 1.0) > 1e-12)
            throw ValidationError(label + ": spin-isomer weights must sum to 1");
    }
}

void ThermalContext::validate() const {
    if (temperature <= 0.0) throw ValidationError("temperature must be > 0");
    if (reduced_mass <= 0.0) throw ValidationError("reduced mass must be > 0");
}

RigidRotorSpecies co_species() {
    return {"CO", constants::b_co_cm, constants::mass_co_u, {}};
}

RigidRotorSpecies h2_species() {
    return {"H2",
            constants::b_h2_cm,
            constants::mass_h2_u,
            {{"para", 0, 0.25}, {"ortho", 1, 0.75}}};
}

double level_energy(const RigidRotorSpecies& s, int j) {
    if (j < 0) throw std::domain_error("j must be >= 0");
    return s.rotational_constant * j * (j + 1.0);
}

RotorLevel make_level(const RigidRotorSpecies& s, int j) {
    return {j, level_energy(s, j), 2 * j + 1};
}

double partition_function(const RigidRotorSpecies& s, int jmax, double temperature) {
    if (temperature <= 0.0) throw std::domain_error("temperature must be > 0");
    const double kt = constants::kb_cm_per_K * temperature;
    double q = 0.0;
    for (int j = 0; j <= jmax; ++j) q += (2.0 * j + 1) * std::exp(-level_energy(s, j) / kt);
    return q;
}

double partition_tail_bound(const RigidRotorSpecies& s, int jmax, double temperature) {
    // E_j = B j(j+1) rises monotonically, so the tail is bounded by the
    // integral of (2x+1) e^(-B x(x+1)/kT) from jmax upward, which is
    // (kT/B) e^(-B jmax(jmax+1)/kT).
    const double kt = constants::kb_cm_per_K * temperature;
    const double b = s.rotational_constant;
    return (kt / b) * std::exp(-b * jmax * (jmax + 1.0) / kt);
}

double boltzmann_fraction(const RigidRotorSpecies& s, int jmax, double temperature,
                          int j, double tail_tol) {
    if (j < 0 || j > jmax) throw std::domain_error("j outside 0..jmax");
    const double q = partition_function(s, jmax, temperature);
    if (tail_tol > 0.0) {
        double tail = partition_tail_bound(s, jmax, temperature);
        if (tail / q > tail_tol)
            throw ConvergenceError("partition function not converged at jmax=" +
                                   std::to_string(jmax) + " (tail/Q = " +
                                   std::to_string(tail / q) + ")");
    }
    const double kt = constants::kb_cm_per_K * temperature;
    return (2.0 * j + 1) * std::exp(-level_energy(s, j) / kt) / q;
}

double reduced_mass(double mass_a, double mass_b) {
    if (mass_a <= 0.0 || mass_b <= 0.0) throw std::domain_error("masses must be > 0");
    return mass_a * mass_b / (mass_a + mass_b);
}

}  // namespace retcc
