#pragma once

#include <iosfwd>
#include <string>

#include "retcc/config.hpp"
#include "retcc/pes.hpp"
#include "retcc/scatter.hpp"
#include "retcc/thermal.hpp"

namespace retcc::pipeline {

CollisionSystem build_system(const RunConfig& cfg);
PotentialExpansion build_pes(const RunConfig& cfg);
std::vector<int> j2set_for(const std::string& isomer);
ScatterOptions scatter_options(const RunConfig& cfg, const std::string& isomer);

// subcommand bodies; outputs land under cfg.io.out_dir
void cmd_scatter(const RunConfig& cfg, std::ostream& log);
void cmd_rates(const RunConfig& cfg, std::ostream& log);
void cmd_simulate(const RunConfig& cfg, std::ostream& log);
void cmd_extract(const RunConfig& cfg, std::ostream& log);
void cmd_roundtrip(const RunConfig& cfg, std::ostream& log);
void cmd_compare(const RunConfig& cfg, const std::string& extracted_path,
                 const std::string& reference, std::ostream& log);
void cmd_propensity(const RunConfig& cfg, const std::string& rates_path, std::ostream& log);
void cmd_reference(std::ostream& out);

// shared helpers
RateTable input_rate_table(const RunConfig& cfg);  // io.rates_file or bundled theory
std::vector<double> feq_vector(const RunConfig& cfg);

}  // namespace retcc::pipeline
