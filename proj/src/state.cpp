#include "cavsim/state.hpp"

#include <cmath>

namespace cavsim {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void check_loc(const HybridState& s, int loc, const char* what)
{
    if (loc < 0 || loc >= s.location_count())
        throw WiringError(std::string(what) + ": unregistered location id");
}

void check_atom(const HybridState& s, int atom_idx, const char* what)
{
    if (atom_idx < 0 || atom_idx >= s.atom_count())
        throw WiringError(std::string(what) + ": atom index out of range");
}
} // namespace

void HybridState::prune(double tol)
{
    for (auto it = amps_.begin(); it != amps_.end();)
        it = (std::abs(it->second) <= tol) ? amps_.erase(it) : std::next(it);
}

void apply_cpbs(HybridState& s, int in_a, int in_b, int out_a, int out_b)
{
    check_loc(s, in_a, "apply_cpbs");
    check_loc(s, in_b, "apply_cpbs");
    check_loc(s, out_a, "apply_cpbs");
    check_loc(s, out_b, "apply_cpbs");
    if (in_a == in_b || out_a == out_b || in_a == out_a || in_a == out_b
        || in_b == out_a || in_b == out_b)
        throw WiringError("apply_cpbs: the four locations must be distinct");

    HybridState next(s.atom_count(), s.location_count());
    for (const auto& [label, amp] : s.amplitudes()) {
        BasisLabel moved = label;
        if (label.loc == in_a)
            moved.loc = (label.pol == Pol::R) ? out_a : out_b;
        else if (label.loc == in_b)
            moved.loc = (label.pol == Pol::R) ? out_b : out_a;
        next.add(moved, amp);
    }
    s = std::move(next);
}

void apply_photon_hadamard(HybridState& s, int loc)
{
    check_loc(s, loc, "apply_photon_hadamard");

    HybridState next(s.atom_count(), s.location_count());
    for (const auto& [label, amp] : s.amplitudes()) {
        if (label.loc != loc) {
            next.add(label, amp);
            continue;
        }
        BasisLabel r = label, l = label;
        r.pol = Pol::R;
        l.pol = Pol::L;
        if (label.pol == Pol::R) {
            next.add(r, amp * kInvSqrt2);
            next.add(l, amp * kInvSqrt2);
        } else {
            next.add(r, amp * kInvSqrt2);
            next.add(l, -amp * kInvSqrt2);
        }
    }
    next.prune();
    s = std::move(next);
}

void apply_photon_sigma_x(HybridState& s, int loc)
{
    check_loc(s, loc, "apply_photon_sigma_x");

    HybridState next(s.atom_count(), s.location_count());
    for (const auto& [label, amp] : s.amplitudes()) {
        BasisLabel moved = label;
        if (label.loc == loc)
            moved.pol = (label.pol == Pol::R) ? Pol::L : Pol::R;
        next.add(moved, amp);
    }
    s = std::move(next);
}

void apply_atom_hadamard(HybridState& s, int atom_idx)
{
    check_atom(s, atom_idx, "apply_atom_hadamard");

    const int n = s.atom_count();
    HybridState next(n, s.location_count());
    for (const auto& [label, amp] : s.amplitudes()) {
        const BasisLabel zero = with_atom_bit(label, atom_idx, n, 0);
        const BasisLabel one = with_atom_bit(label, atom_idx, n, 1);
        if (atom_bit(label, atom_idx, n) == 0) {
            next.add(zero, amp * kInvSqrt2);
            next.add(one, amp * kInvSqrt2);
        } else {
            next.add(zero, amp * kInvSqrt2);
            next.add(one, -amp * kInvSqrt2);
        }
    }
    next.prune();
    s = std::move(next);
}

void apply_cavity_scatter(HybridState& s, int loc, int atom_idx,
                          Complex r_coupled, Complex r_empty)
{
    check_loc(s, loc, "apply_cavity_scatter");
    check_atom(s, atom_idx, "apply_cavity_scatter");

    HybridState next(s.atom_count(), s.location_count());
    for (const auto& [label, amp] : s.amplitudes()) {
        if (label.loc != loc) {
            next.add(label, amp);
            continue;
        }
        if (label.pol == Pol::R) {
            if (std::abs(amp) > 1e-12)
                throw RoutingError("apply_cavity_scatter: R-polarized amplitude "
                                   "routed into a cavity");
            continue;
        }
        const Complex factor =
            atom_bit(label, atom_idx, s.atom_count()) == 0 ? r_coupled : r_empty;
        next.add(label, amp * factor);
    }
    next.prune();
    s = std::move(next);
}

void apply_relabel(HybridState& s, int from, int to)
{
    check_loc(s, from, "apply_relabel");
    check_loc(s, to, "apply_relabel");
    if (from == to)
        return;

    HybridState next(s.atom_count(), s.location_count());
    for (const auto& [label, amp] : s.amplitudes()) {
        BasisLabel moved = label;
        if (label.loc == from)
            moved.loc = to;
        next.add(moved, amp);
    }
    s = std::move(next);
}

double total_norm(const HybridState& s)
{
    double n = 0.0;
    for (const auto& [label, amp] : s.amplitudes())
        n += std::norm(amp);
    return n;
}

HybridState project_location(const HybridState& s, int loc)
{
    check_loc(s, loc, "project_location");
    HybridState out(s.atom_count(), s.location_count());
    for (const auto& [label, amp] : s.amplitudes())
        if (label.loc == loc)
            out.set(label, amp);
    return out;
}

} // namespace cavsim
