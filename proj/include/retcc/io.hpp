#pragma once

#include <string>
#include <vector>

#include "retcc/analysis.hpp"
#include "retcc/kinetics.hpp"
#include "retcc/scatter.hpp"
#include "retcc/thermal.hpp"

namespace retcc::io {

// shortest decimal representation that round-trips to the same double
std::string format_double(double v);

// cross sections: header E_coll_cm1,j1,j2,j1p,j2p,sigma_A2
void write_cross_sections(const CrossSectionTable& t, const std::string& path);
CrossSectionTable read_cross_sections(const std::string& path);

// rate table: header T_K,j_i,j_f,k_cm3s,err2sigma_cm3s,provenance
// (k written in units of 1e-11 cm^3 s^-1, matching the reference tables)
void write_rate_table(const RateTable& t, const std::string& path);
RateTable read_rate_table(const std::string& path);

// paired dataset files: trace/spectrum as two-column text plus a JSON sidecar
// with ground truth, seeds and units
void write_decay(const DecayTrace& trace, const std::string& stem);
DecayTrace read_decay(const std::string& stem);

void write_spectrum(const Spectrum& spec, const std::string& stem);
Spectrum read_spectrum(const std::string& stem);

void write_extraction(const ExtractionResult& r, int j_initial, const std::string& stem);

void write_deviation_report(const DeviationReport& r, const std::string& path);
void write_propensity_report(const PropensityReport& r, const std::string& path);

}  // namespace retcc::io
