#pragma once

// Internal unit system: energies in cm^-1, lengths in bohr, masses in u,
// temperatures in K.  Rate coefficients are held in cm^3 s^-1 and scaled to
// 1e-11 cm^3 s^-1 only when tables are serialized.

namespace retcc::constants {

// CODATA 2018
inline constexpr double kb_cm_per_K = 0.69503480;          // Boltzmann constant, cm^-1/K
inline constexpr double kb_J_per_K = 1.380649e-23;         // J/K (exact)
inline constexpr double hbar_Js = 1.054571817e-34;         // J s
inline constexpr double h_Js = 6.62607015e-34;             // J s (exact)
inline constexpr double c_cm_per_s = 2.99792458e10;        // cm/s (exact)
inline constexpr double amu_kg = 1.66053906660e-27;        // kg
inline constexpr double bohr_m = 0.529177210903e-10;       // m
inline constexpr double bohr_cm = bohr_m * 100.0;

// k^2 [bohr^-2] = wavenumber_factor * mu[u] * E[cm^-1]
inline constexpr double wavenumber_factor =
    2.0 * amu_kg * bohr_m * bohr_m * (h_Js * c_cm_per_s) / (hbar_Js * hbar_Js);

inline constexpr double bohr2_to_A2 = (bohr_m * 1e10) * (bohr_m * 1e10);
inline constexpr double A2_to_cm2 = 1e-16;

// default isotopic masses (12C16O, 1H2)
inline constexpr double mass_co_u = 27.99491461957;
inline constexpr double mass_h2_u = 2.01565006448;

inline constexpr double b_co_cm = 1.8875;   // CO X(v=2) rotational constant
inline constexpr double b_h2_cm = 59.322;   // H2 rotational constant

}  // namespace retcc::constants
