#include "cavsim/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "cavsim/cavity.hpp"

namespace cavsim {

SweepTable sweep_coupling_ratio(double x_min, double x_max, int n,
                                bool log_spacing, int cnot_nodes,
                                int toffoli_nodes)
{
    if (!(x_min > 0.0) || !(x_min < x_max) || !std::isfinite(x_max))
        throw std::invalid_argument("sweep: require 0 < x_min < x_max");
    if (n < 2)
        throw std::invalid_argument("sweep: need at least 2 grid points");

    SweepTable table{{}, cnot_nodes, toffoli_nodes};
    table.rows.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        const double x = (i == n - 1) ? x_max
            : log_spacing ? x_min * std::pow(x_max / x_min, t)
                          : x_min + t * (x_max - x_min);
        const double r = resonant_reflection(x);
        const AverageResult c = average_cnot(r, cnot_nodes);
        const AverageResult tof = average_toffoli(r, toffoli_nodes);
        table.rows.push_back({x, std::log10(x), r, c.fidelity, c.efficiency,
                              tof.fidelity, tof.efficiency});
    }
    return table;
}

std::string format_value(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string sweep_to_csv(const SweepTable& table)
{
    std::ostringstream os;
    os << "x,log10_x,r,F_cnot,P_cnot,F_toffoli,P_toffoli\n";
    for (const auto& row : table.rows) {
        os << format_value(row.x) << ',' << format_value(row.log10_x) << ','
           << format_value(row.r) << ',' << format_value(row.f_cnot) << ','
           << format_value(row.p_cnot) << ',' << format_value(row.f_toffoli)
           << ',' << format_value(row.p_toffoli) << '\n';
    }
    return os.str();
}

} // namespace cavsim
