#pragma once

#include <optional>
#include <string>
#include <vector>

namespace retcc {

// One nuclear-spin isomer: which j parity it occupies and its statistical weight.
struct SpinIsomer {
    std::string label;
    int j_parity = 0;      // 0 -> even j, 1 -> odd j
    double weight = 0.0;   // statistical weight, isomer weights sum to 1
};

struct RigidRotorSpecies {
    std::string label;
    double rotational_constant = 0.0;  // cm^-1
    double mass = 0.0;                 // u
    std::vector<SpinIsomer> spin_isomers;  // empty when not tracked

    void validate() const;  // throws ValidationError on bad fields
};

struct RotorLevel {
    int j = 0;
    double energy = 0.0;  // cm^-1
    int degeneracy = 1;   // 2j+1
};

struct ThermalContext {
    double temperature = 0.0;   // K
    double reduced_mass = 0.0;  // u

    void validate() const;
};

RigidRotorSpecies co_species();
RigidRotorSpecies h2_species();

double level_energy(const RigidRotorSpecies& s, int j);
RotorLevel make_level(const RigidRotorSpecies& s, int j);

// (2j+1) exp(-E_j/kT) / Q with Q summed over 0..jmax.  Throws
// ConvergenceError when the jmax tail bound exceeds `tail_tol`
// (set tail_tol <= 0 to skip the check).
double boltzmann_fraction(const RigidRotorSpecies& s, int jmax, double temperature,
                          int j, double tail_tol = 1e-10);

double partition_function(const RigidRotorSpecies& s, int jmax, double temperature);

// upper bound on the neglected tail sum_{j>jmax} (2j+1) e^(-Ej/kT)
double partition_tail_bound(const RigidRotorSpecies& s, int jmax, double temperature);

double reduced_mass(double mass_a, double mass_b);

}  // namespace retcc
