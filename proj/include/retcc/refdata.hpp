#pragma once

#include <optional>
#include <vector>

#include "retcc/thermal.hpp"

namespace retcc::refdata {

// Bundled CO + normal-H2 room-temperature reference dataset: state-to-state
// rate coefficients at 293 K for j_i = 0, 1, 4 with 2-sigma limits, the
// matching calculated values, plus the per-column sums and the total removal
// coefficients from the kinetic experiments.  Units 1e-11 cm^3 s^-1.

struct Entry {
    int j_initial;
    int j_final;
    double measured;    // may be NaN when not measured
    double err2sigma;   // NaN when not measured
    double theory;      // NaN when not reported
};

struct ColumnSummary {
    int j_initial;
    double sum_measured;
    double sum_measured_err;
    double sum_theory;
    double k_total_measured;
    double k_total_measured_err;
    double k_total_theory;
};

const std::vector<Entry>& entries();
const std::vector<ColumnSummary>& summaries();

// loader-verified tables (throws ValidationError if the bundled sums do not
// match the stored summary rows to 0.05, i.e. last-digit rounding)
RateTable measured_table();
RateTable theory_table();

void verify();  // runs the consistency checks

}  // namespace retcc::refdata
