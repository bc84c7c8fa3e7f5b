#include "cavsim/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cavsim {

namespace {

double sq(double x) { return x * x; }
double norm2(Complex z) { return std::norm(z); }

double guarded_ratio(double num, double den)
{
    if (den < 1e-300)
        throw std::domain_error("fidelity: degenerate input, zero surviving norm");
    return num / den;
}

/// Pairwise sum for deterministic, well-conditioned reduction.
double pairwise_sum(const double* v, size_t n)
{
    if (n <= 8) {
        double s = 0.0;
        for (size_t i = 0; i < n; ++i)
            s += v[i];
        return s;
    }
    const size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

double grid_mean(const std::vector<double>& v)
{
    return pairwise_sum(v.data(), v.size()) / static_cast<double>(v.size());
}

/// Mean over the stride-2 subgrid of a dims-dimensional grid with n nodes per
/// dimension, stored row-major.
double subgrid_mean(const std::vector<double>& v, int n, int dims)
{
    const int h = n / 2;
    std::vector<double> sub;
    sub.reserve(static_cast<size_t>(std::pow(h, dims)));
    if (dims == 2) {
        for (int i = 0; i < n; i += 2)
            for (int j = 0; j < n; j += 2)
                sub.push_back(v[static_cast<size_t>(i) * n + j]);
    } else {
        for (int i = 0; i < n; i += 2)
            for (int j = 0; j < n; j += 2)
                for (int k = 0; k < n; k += 2)
                    sub.push_back(v[(static_cast<size_t>(i) * n + j) * n + k]);
    }
    return grid_mean(sub);
}

void check_nodes(int nodes)
{
    if (nodes < 4 || nodes % 2 != 0)
        throw std::invalid_argument("average: node count must be even and >= 4");
}

} // namespace

double cnot_fidelity_closed(Complex r, const InputAngles& angles)
{
    const double ap = std::cos(angles.varphi), bp = std::sin(angles.varphi);
    const double a = std::cos(angles.theta), b = std::sin(angles.theta);
    const double num =
        norm2(sq(ap) + 0.5 * sq(bp) * (2.0 * a * b * (r - 1.0) + r + 1.0));
    return guarded_ratio(num, cnot_efficiency_closed(r, angles));
}

double cnot_efficiency_closed(Complex r, const InputAngles& angles)
{
    const double ap = std::cos(angles.varphi), bp = std::sin(angles.varphi);
    const double a = std::cos(angles.theta), b = std::sin(angles.theta);
    return sq(ap) + 0.25 * norm2(a * bp * (r - 1.0) + b * bp * (r + 1.0))
         + 0.25 * norm2(a * bp * (r + 1.0) + b * bp * (r - 1.0));
}

ToffoliXi toffoli_xi_terms(Complex r, const InputAngles& angles)
{
    const double ap = std::cos(angles.varphi), bp = std::sin(angles.varphi);
    const double a1 = std::cos(angles.theta), b1 = std::sin(angles.theta);
    const double a2 = std::cos(angles.eta), b2 = std::sin(angles.eta);
    const Complex rm = r - 1.0, rp = r + 1.0;

    ToffoliXi xi{};
    xi.xi1 = sq(ap);
    xi.xi2 = norm2(bp * a1 * (a2 * rm * rm * rm + b2 * rm * rm * rp + 2.0 * a2 * rp * rp))
           / 64.0;
    xi.xi3 = norm2(bp * a1 * (b2 * rm * rm * rm + a2 * rm * rm * rp + 2.0 * b2 * rp * rp))
           / 64.0;
    xi.xi4 = norm2(bp * b1 * (a2 * rm + b2 * rp)) / 4.0;
    xi.xi5 = norm2(bp * b1 * (a2 * rp + b2 * rm)) / 4.0;
    xi.xi6 = norm2(bp * a1 * (a2 + b2) * rp * rp * (1.0 - r)) / 32.0;
    return xi;
}

double toffoli_fidelity_closed(Complex r, const InputAngles& angles)
{
    const double ap = std::cos(angles.varphi), bp = std::sin(angles.varphi);
    const double a1 = std::cos(angles.theta), b1 = std::sin(angles.theta);
    const double a2 = std::cos(angles.eta), b2 = std::sin(angles.eta);
    const Complex rm = r - 1.0, rp = r + 1.0;

    const double num = norm2(
        sq(ap)
        + sq(bp) * sq(a1) / 8.0
              * (rm * rm * rm + 2.0 * a2 * b2 * rm * rm * rp + 2.0 * rp * rp)
        + sq(bp) * sq(b1) / 2.0 * (2.0 * a2 * b2 * rm + rp));
    return guarded_ratio(num, toffoli_xi_terms(r, angles).sum());
}

double toffoli_efficiency_closed(Complex r, const InputAngles& angles)
{
    return toffoli_xi_terms(r, angles).out_port();
}

GateMetrics metrics_from_engine(GateKind kind, Complex r, const InputAngles& angles)
{
    const ReflectionPair pair{r, Complex{-1.0, 0.0}};
    const CircuitSpec circuit = (kind == GateKind::Cnot)
        ? build_cnot(pair)
        : build_toffoli(pair, pair);

    std::vector<double> atom_angles{angles.theta};
    if (kind == GateKind::Toffoli)
        atom_angles.push_back(angles.eta);

    const HybridState input = product_input(circuit, angles.varphi, atom_angles);
    const RunOutput result = run(circuit, input);

    const Eigen::VectorXcd in_vec = state_vector_at(input, circuit.input_port());
    const Eigen::VectorXcd ideal_out = ideal_gate_matrix(kind) * in_vec;
    const Eigen::VectorXcd out_vec =
        state_vector_at(result.out_state, circuit.output_port());

    const double surviving =
        total_norm(result.out_state) + total_norm(result.discard_state);
    const double overlap2 = std::norm(ideal_out.dot(out_vec));

    GateMetrics m{};
    m.fidelity = guarded_ratio(overlap2, surviving);
    m.efficiency = (kind == GateKind::Cnot) ? surviving : total_norm(result.out_state);
    return m;
}

AverageResult average_cnot(Complex r, int nodes)
{
    check_nodes(nodes);
    const double step = 2.0 * std::numbers::pi / nodes;
    std::vector<double> f(static_cast<size_t>(nodes) * nodes);
    std::vector<double> p(f.size());
    for (int i = 0; i < nodes; ++i) {
        for (int j = 0; j < nodes; ++j) {
            const InputAngles angles{i * step, j * step};
            const size_t idx = static_cast<size_t>(i) * nodes + j;
            p[idx] = cnot_efficiency_closed(r, angles);
            f[idx] = cnot_fidelity_closed(r, angles);
        }
    }
    AverageResult out{};
    out.nodes = nodes;
    out.fidelity = grid_mean(f);
    out.efficiency = grid_mean(p);
    out.fidelity_err = std::abs(out.fidelity - subgrid_mean(f, nodes, 2));
    out.efficiency_err = std::abs(out.efficiency - subgrid_mean(p, nodes, 2));
    return out;
}

AverageResult average_toffoli(Complex r, int nodes)
{
    check_nodes(nodes);
    const double step = 2.0 * std::numbers::pi / nodes;
    std::vector<double> f(static_cast<size_t>(nodes) * nodes * nodes);
    std::vector<double> p(f.size());
    for (int i = 0; i < nodes; ++i) {
        for (int j = 0; j < nodes; ++j) {
            for (int k = 0; k < nodes; ++k) {
                const InputAngles angles{i * step, j * step, k * step};
                const size_t idx =
                    (static_cast<size_t>(i) * nodes + j) * nodes + k;
                const ToffoliXi xi = toffoli_xi_terms(r, angles);
                p[idx] = xi.out_port();
                f[idx] = toffoli_fidelity_closed(r, angles);
            }
        }
    }
    AverageResult out{};
    out.nodes = nodes;
    out.fidelity = grid_mean(f);
    out.efficiency = grid_mean(p);
    out.fidelity_err = std::abs(out.fidelity - subgrid_mean(f, nodes, 3));
    out.efficiency_err = std::abs(out.efficiency - subgrid_mean(p, nodes, 3));
    return out;
}

} // namespace cavsim
