#ifndef CAVSIM_STATE_HPP
#define CAVSIM_STATE_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>

#include "cavsim/cavity.hpp"

namespace cavsim {

/// Thrown when an element references a location or atom outside the
/// registered set, or when element wiring is internally inconsistent.
struct WiringError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a circuit routes an R-polarized amplitude into a cavity.
struct RoutingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Pol : std::uint8_t { R = 0, L = 1 };

/// One basis ket of the joint photon-atom system: photon polarization,
/// photon location (a path or port id registered with the circuit), and the
/// atomic ground-state bits. Atom i occupies bit (atom_count - 1 - i) of
/// `atoms`, so the packed value reads as the bit string a0 a1 ... and doubles
/// as the atomic part of a dense basis index.
struct BasisLabel {
    Pol pol;
    std::uint16_t loc;
    std::uint8_t atoms;

    friend auto operator<=>(const BasisLabel&, const BasisLabel&) = default;
};

inline int atom_bit(const BasisLabel& l, int atom_idx, int atom_count)
{
    return (l.atoms >> (atom_count - 1 - atom_idx)) & 1;
}

inline BasisLabel with_atom_bit(BasisLabel l, int atom_idx, int atom_count, int bit)
{
    const std::uint8_t mask = std::uint8_t(1) << (atom_count - 1 - atom_idx);
    l.atoms = bit ? (l.atoms | mask) : (l.atoms & ~mask);
    return l;
}

/// Sub-normalized amplitude map over BasisLabel. Absent labels mean zero.
/// Value-like; dimensions are tiny, so storage is an ordered map which also
/// gives deterministic iteration.
class HybridState {
public:
    using AmplitudeMap = std::map<BasisLabel, Complex>;

    HybridState(int atom_count, int location_count)
        : atom_count_(atom_count), location_count_(location_count)
    {
        if (atom_count < 0 || atom_count > 8)
            throw std::invalid_argument("HybridState: unsupported atom count");
        if (location_count <= 0)
            throw std::invalid_argument("HybridState: need at least one location");
    }

    int atom_count() const { return atom_count_; }
    int location_count() const { return location_count_; }

    const AmplitudeMap& amplitudes() const { return amps_; }

    Complex amplitude(const BasisLabel& l) const
    {
        auto it = amps_.find(l);
        return it == amps_.end() ? Complex{} : it->second;
    }

    /// Sets one amplitude; a zero value erases the label.
    void set(const BasisLabel& l, Complex a)
    {
        check_label(l);
        if (a == Complex{})
            amps_.erase(l);
        else
            amps_[l] = a;
    }

    void add(const BasisLabel& l, Complex a)
    {
        check_label(l);
        auto [it, inserted] = amps_.try_emplace(l, a);
        if (!inserted)
            it->second += a;
    }

    /// Drops entries below `tol` in modulus; keeps the map sparse after
    /// cancellations.
    void prune(double tol = 0.0);

    friend bool operator==(const HybridState&, const HybridState&) = default;

private:
    void check_label(const BasisLabel& l) const
    {
        if (l.loc >= location_count_)
            throw WiringError("HybridState: unregistered location id");
        if (atom_count_ < 8 && (l.atoms >> atom_count_) != 0)
            throw WiringError("HybridState: atom bits exceed atom count");
    }

    int atom_count_;
    int location_count_;
    AmplitudeMap amps_;
};

/// Circularly polarizing beam splitter across two lines. Transmission keeps
/// the line, reflection crosses it, no phase either way:
///   R@in_a -> out_a,  R@in_b -> out_b,  L@in_a -> out_b,  L@in_b -> out_a.
/// All four locations must be registered and pairwise distinct.
void apply_cpbs(HybridState& s, int in_a, int in_b, int out_a, int out_b);

/// Polarization rotation at one location:
///   |R> -> (|R>+|L>)/sqrt2,  |L> -> (|R>-|L>)/sqrt2.
void apply_photon_hadamard(HybridState& s, int loc);

/// Swaps R and L amplitudes at one location.
void apply_photon_sigma_x(HybridState& s, int loc);

/// Ground-state rotation of one atom across all photon labels:
///   |0> -> (|0>+|1>)/sqrt2,  |1> -> (|0>-|1>)/sqrt2.
void apply_atom_hadamard(HybridState& s, int atom_idx);

/// Conditional reflection off the cavity at `loc`: amplitudes with atom bit 0
/// pick up r_coupled, bit 1 picks up r_empty. Only L polarization may be
/// present at `loc`; an R amplitude above 1e-12 signals a mis-built circuit
/// and raises RoutingError.
void apply_cavity_scatter(HybridState& s, int loc, int atom_idx,
                          Complex r_coupled, Complex r_empty);

/// Moves all amplitude from one location to another, phase-free (mirrors and
/// delay lines).
void apply_relabel(HybridState& s, int from, int to);

/// Sum of |amplitude|^2 over all labels.
double total_norm(const HybridState& s);

/// Restriction of the amplitude map to one location, not renormalized.
HybridState project_location(const HybridState& s, int loc);

} // namespace cavsim

#endif
