#ifndef CAVSIM_CAVITY_HPP
#define CAVSIM_CAVITY_HPP

#include <complex>
#include <vector>

namespace cavsim {

using Complex = std::complex<double>;

/// Physical parameters of one atom-cavity node. All rates and frequencies
/// are entered in units of 2*pi*MHz, i.e. the values usually quoted as
/// [g, kappa, gamma]/2pi go in directly. Every formula below is homogeneous
/// in these quantities, so the unit cancels.
struct CavityParams {
    double g;             ///< atom-cavity coupling strength
    double kappa;         ///< cavity damping rate
    double gamma;         ///< atomic decay rate
    double omega_c = 0.0; ///< cavity frequency (as detuning from a reference)
    double omega_0 = 0.0; ///< atomic transition frequency (same convention)

    /// g / sqrt(kappa * gamma), the single knob controlling the resonant
    /// reflection amplitude.
    double coupling_ratio() const;

    /// Throws std::invalid_argument unless g >= 0, kappa > 0, gamma > 0 and
    /// all fields are finite.
    void validate() const;
};

/// Reflection amplitudes of one node: the atom-coupled response and the
/// bare-cavity response seen by the decoupled atomic state.
struct ReflectionPair {
    Complex r_coupled{1.0, 0.0};
    Complex r_empty{-1.0, 0.0};
};

/// Steady-state reflection coefficient of a single-photon pulse at probe
/// frequency omega_p off the coupled atom-cavity node:
///
///   r = { [i(w_c - w_p) - k/2][i(w_0 - w_p) + y/2] + g^2 }
///       / { [i(w_c - w_p) + k/2][i(w_0 - w_p) + y/2] + g^2 }
///
/// |r| <= 1 for all physical parameters.
Complex reflection_coefficient(const CavityParams& params, double omega_p);

/// Bare-cavity (g = 0) reflection; unit modulus for all inputs.
Complex empty_cavity_reflection(const CavityParams& params, double omega_p);

/// Fully resonant (w_0 = w_c = w_p) coupled reflection as a function of the
/// coupling ratio x = g/sqrt(kappa*gamma):  (4x^2 - 1) / (4x^2 + 1).
/// Strictly increasing, range [-1, 1).
double resonant_reflection(double x);

/// Scale-separation diagnostics for the bad-cavity hierarchy
/// kappa > g^2/kappa > gamma. A separation claim passes only if each ratio
/// exceeds the margin factor.
struct RegimeReport {
    double kappa;
    double g2_over_kappa;
    double gamma;
    double coupling_ratio;
    double margin;
    bool kappa_dominates;  ///< kappa > margin * g^2/kappa
    bool g2_dominates;     ///< g^2/kappa > margin * gamma
    bool bad_cavity;       ///< both of the above
};

RegimeReport regime_check(const CavityParams& params, double margin = 2.0);

struct SpectrumRow {
    double omega_p;
    Complex r;   ///< coupled reflection
    Complex r0;  ///< empty-cavity reflection
};

/// Tabulates both reflection coefficients over an inclusive probe-frequency
/// grid of n >= 2 points. Requires omega_min < omega_max, both finite.
std::vector<SpectrumRow> reflection_spectrum(const CavityParams& params,
                                             double omega_min, double omega_max,
                                             int n);

} // namespace cavsim

#endif
