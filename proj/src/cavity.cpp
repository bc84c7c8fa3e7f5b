#include "cavsim/cavity.hpp"

#include <cmath>
#include <stdexcept>

namespace cavsim {

namespace {
const Complex kI{0.0, 1.0};

bool all_finite(const CavityParams& p)
{
    return std::isfinite(p.g) && std::isfinite(p.kappa) && std::isfinite(p.gamma)
        && std::isfinite(p.omega_c) && std::isfinite(p.omega_0);
}
} // namespace

double CavityParams::coupling_ratio() const
{
    return g / std::sqrt(kappa * gamma);
}

void CavityParams::validate() const
{
    if (!all_finite(*this))
        throw std::invalid_argument("CavityParams: non-finite parameter");
    if (g < 0.0)
        throw std::invalid_argument("CavityParams: g must be >= 0");
    if (kappa <= 0.0)
        throw std::invalid_argument("CavityParams: kappa must be > 0");
    if (gamma <= 0.0)
        throw std::invalid_argument("CavityParams: gamma must be > 0");
}

Complex reflection_coefficient(const CavityParams& params, double omega_p)
{
    params.validate();
    if (!std::isfinite(omega_p))
        throw std::invalid_argument("reflection_coefficient: non-finite omega_p");

    const Complex dc = kI * (params.omega_c - omega_p);
    const Complex da = kI * (params.omega_0 - omega_p) + params.gamma / 2.0;
    const double g2 = params.g * params.g;
    return ((dc - params.kappa / 2.0) * da + g2)
         / ((dc + params.kappa / 2.0) * da + g2);
}

Complex empty_cavity_reflection(const CavityParams& params, double omega_p)
{
    params.validate();
    if (!std::isfinite(omega_p))
        throw std::invalid_argument("empty_cavity_reflection: non-finite omega_p");

    const Complex dc = kI * (params.omega_c - omega_p);
    return (dc - params.kappa / 2.0) / (dc + params.kappa / 2.0);
}

double resonant_reflection(double x)
{
    if (!std::isfinite(x) || x < 0.0)
        throw std::invalid_argument("resonant_reflection: coupling ratio must be finite and >= 0");
    const double x2 = 4.0 * x * x;
    return (x2 - 1.0) / (x2 + 1.0);
}

RegimeReport regime_check(const CavityParams& params, double margin)
{
    params.validate();
    RegimeReport rep{};
    rep.kappa = params.kappa;
    rep.g2_over_kappa = params.g * params.g / params.kappa;
    rep.gamma = params.gamma;
    rep.coupling_ratio = params.coupling_ratio();
    rep.margin = margin;
    rep.kappa_dominates = rep.kappa > margin * rep.g2_over_kappa;
    rep.g2_dominates = rep.g2_over_kappa > margin * rep.gamma;
    rep.bad_cavity = rep.kappa_dominates && rep.g2_dominates;
    return rep;
}

std::vector<SpectrumRow> reflection_spectrum(const CavityParams& params,
                                             double omega_min, double omega_max,
                                             int n)
{
    params.validate();
    if (!(std::isfinite(omega_min) && std::isfinite(omega_max)))
        throw std::invalid_argument("reflection_spectrum: non-finite range");
    if (!(omega_min < omega_max))
        throw std::invalid_argument("reflection_spectrum: empty or degenerate range");
    if (n < 2)
        throw std::invalid_argument("reflection_spectrum: need at least 2 points");

    std::vector<SpectrumRow> rows;
    rows.reserve(static_cast<size_t>(n));
    const double step = (omega_max - omega_min) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double w = (i == n - 1) ? omega_max : omega_min + i * step;
        rows.push_back({w, reflection_coefficient(params, w),
                        empty_cavity_reflection(params, w)});
    }
    return rows;
}

} // namespace cavsim
