#ifndef CAVSIM_METRICS_HPP
#define CAVSIM_METRICS_HPP

#include "cavsim/circuit.hpp"

namespace cavsim {

/// Angle parametrization of the product input state:
///   photon  alpha_p = cos(varphi), beta_p = sin(varphi)
///   atom 1  alpha_1 = cos(theta),  beta_1 = sin(theta)
///   atom 2  alpha_2 = cos(eta),    beta_2 = sin(eta)   (Toffoli only)
struct InputAngles {
    double varphi;
    double theta;
    double eta = 0.0;
};

/// The six non-negative norm contributions decomposing the Toffoli output.
/// xi1..xi5 sum to the out-port norm; xi6 is the discard-port leakage, zero
/// at r = 1.
struct ToffoliXi {
    double xi1, xi2, xi3, xi4, xi5, xi6;

    double sum() const { return xi1 + xi2 + xi3 + xi4 + xi5 + xi6; }
    double surviving() const { return sum(); }
    double out_port() const { return xi1 + xi2 + xi3 + xi4 + xi5; }
};

struct GateMetrics {
    double fidelity;
    double efficiency;
};

/// Closed-form CNOT fidelity as a function of the coupled reflection
/// amplitude r (the empty-cavity reflection is fixed at -1, its exact
/// resonant value).
double cnot_fidelity_closed(Complex r, const InputAngles& angles);

/// Closed-form CNOT efficiency; equals the surviving norm of the run.
double cnot_efficiency_closed(Complex r, const InputAngles& angles);

ToffoliXi toffoli_xi_terms(Complex r, const InputAngles& angles);

/// Closed-form Toffoli fidelity, normalized by the full surviving norm
/// xi1 + ... + xi6.
double toffoli_fidelity_closed(Complex r, const InputAngles& angles);

/// Closed-form Toffoli efficiency: xi1 + ... + xi5 (the out-port norm;
/// the discard leakage xi6 is excluded).
double toffoli_efficiency_closed(Complex r, const InputAngles& angles);

/// Same quantities computed through the state engine: builds the circuit with
/// the given coupled reflection (r_empty = -1), runs the product input, and
/// evaluates F = |<ideal_out|out>|^2 / surviving norm and P as above.
GateMetrics metrics_from_engine(GateKind kind, Complex r, const InputAngles& angles);

struct AverageResult {
    double fidelity;
    double efficiency;
    double fidelity_err;    ///< estimated quadrature error (vs half resolution)
    double efficiency_err;
    int nodes;              ///< nodes per dimension
};

/// Uniform angle averages over [0, 2pi)^2 (CNOT) and [0, 2pi)^3 (Toffoli) by
/// the composite trapezoid rule, which is spectrally accurate here because
/// the integrands are periodic. Node counts must be even and >= 4.
AverageResult average_cnot(Complex r, int nodes = 128);
AverageResult average_toffoli(Complex r, int nodes = 64);

} // namespace cavsim

#endif
