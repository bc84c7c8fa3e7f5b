#ifndef CAVSIM_SWEEP_HPP
#define CAVSIM_SWEEP_HPP

#include <string>
#include <vector>

#include "cavsim/metrics.hpp"

namespace cavsim {

struct SweepRow {
    double x;        ///< coupling ratio g/sqrt(kappa*gamma)
    double log10_x;
    double r;        ///< resonant reflection at x
    double f_cnot;
    double p_cnot;
    double f_toffoli;
    double p_toffoli;
};

struct SweepTable {
    std::vector<SweepRow> rows;  ///< sorted by x ascending
    int cnot_nodes;
    int toffoli_nodes;
};

/// Average fidelity and efficiency of both gates over a coupling-ratio grid.
/// Requires 0 < x_min < x_max and n >= 2; log spacing places the grid
/// geometrically, otherwise linearly. Endpoints included.
SweepTable sweep_coupling_ratio(double x_min, double x_max, int n,
                                bool log_spacing, int cnot_nodes = 128,
                                int toffoli_nodes = 64);

/// Formats a floating-point value with 12 significant digits and '.' decimal
/// separator; shared by every CSV/JSON emitter so the two encodings carry
/// identical values.
std::string format_value(double v);

/// Deterministic CSV: a fixed header plus one row per grid point.
std::string sweep_to_csv(const SweepTable& table);

} // namespace cavsim

#endif
