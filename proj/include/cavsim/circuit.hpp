#ifndef CAVSIM_CIRCUIT_HPP
#define CAVSIM_CIRCUIT_HPP

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cavsim/state.hpp"

namespace cavsim {

enum class ElementKind {
    Cpbs,            ///< locs = {in_a, in_b, out_a, out_b}
    PhotonHadamard,  ///< locs[0]
    PhotonSigmaX,    ///< locs[0]
    AtomHadamard,    ///< atom
    CavityScatter,   ///< locs[0], atom; reflection bound per atom at run time
    Relabel,         ///< locs = {from, to}
    Checkpoint,      ///< label
};

struct Element {
    ElementKind kind;
    std::array<int, 4> locs{-1, -1, -1, -1};
    int atom = -1;
    std::string label;

    friend bool operator==(const Element&, const Element&) = default;
};

/// An immutable-after-construction description of one interferometer:
/// the registered location set (paths plus ports), the atom count, and the
/// ordered element list. Cavity reflection values are not part of the
/// structural description; they are bound per atom, either through the
/// default bindings stored here or through an override passed to run().
class CircuitSpec {
public:
    explicit CircuitSpec(int atom_count);

    int atom_count() const { return atom_count_; }
    int location_count() const { return static_cast<int>(location_names_.size()); }
    const std::vector<std::string>& location_names() const { return location_names_; }

    /// Registers a plain path location; returns its id. Names must be unique.
    int add_location(const std::string& name);

    int add_input_port(const std::string& name);
    int add_output_port(const std::string& name);
    int add_discard_port(const std::string& name);

    int input_port() const { return in_port_; }
    int output_port() const { return out_port_; }
    int discard_port() const { return discard_port_; }  ///< -1 when absent
    bool is_port(int loc) const;

    /// Id lookup by name; throws WiringError for unknown names.
    int location_id(const std::string& name) const;
    std::optional<int> find_location(const std::string& name) const;

    void add_cpbs(int in_a, int in_b, int out_a, int out_b);
    void add_photon_hadamard(int loc);
    void add_photon_sigma_x(int loc);
    void add_atom_hadamard(int atom_idx);
    void add_cavity_scatter(int loc, int atom_idx);
    void add_relabel(int from, int to);
    void add_checkpoint(const std::string& label);

    const std::vector<Element>& elements() const { return elements_; }

    /// Default per-atom reflection pairs used by run() when no override is
    /// given; ideal (r = 1, r0 = -1) unless set.
    const std::vector<ReflectionPair>& bindings() const { return bindings_; }
    void bind_cavity(int atom_idx, const ReflectionPair& r);

    /// Throws WiringError unless both mandatory ports exist.
    void validate_ports() const;

    /// Structural equality: locations, ports, atom count and elements.
    /// Bindings are runtime data and deliberately excluded.
    friend bool operator==(const CircuitSpec& a, const CircuitSpec& b)
    {
        return a.atom_count_ == b.atom_count_
            && a.location_names_ == b.location_names_
            && a.in_port_ == b.in_port_ && a.out_port_ == b.out_port_
            && a.discard_port_ == b.discard_port_
            && a.elements_ == b.elements_;
    }

private:
    void check_loc(int loc, const char* what) const;
    void check_atom(int atom_idx, const char* what) const;

    int atom_count_;
    std::vector<std::string> location_names_;
    int in_port_ = -1;
    int out_port_ = -1;
    int discard_port_ = -1;
    std::vector<Element> elements_;
    std::vector<ReflectionPair> bindings_;
};

struct RunOutput {
    HybridState out_state;      ///< restriction to the out port, not renormalized
    HybridState discard_state;  ///< restriction to the discard port (zero if none)
    double absorbed;            ///< input norm minus total surviving norm
    std::vector<std::pair<std::string, HybridState>> checkpoints;
};

/// Applies the elements in order, then projects onto the ports.
/// The input state must live entirely at the input port.
RunOutput run(const CircuitSpec& circuit, const HybridState& input);
RunOutput run(const CircuitSpec& circuit, const HybridState& input,
              std::span<const ReflectionPair> bindings);

/// Photon-atom CNOT: the photon polarization controls (L = on), the atom in
/// the cavity is the target. Checkpoints "psi1".."psi4" snapshot the state
/// after the input split, the first atom rotation, the scattering, and the
/// recombination.
CircuitSpec build_cnot(const ReflectionPair& r = {});

/// Photon-atom-atom Toffoli: photon polarization (L = on) and the cavity-1
/// atom (|1> = on) control, the cavity-2 atom is the target. Checkpoints
/// "phi1".."phi3" and "phif" snapshot the four stages.
CircuitSpec build_toffoli(const ReflectionPair& r_cavity1 = {},
                          const ReflectionPair& r_cavity2 = {});

enum class GateKind { Cnot, Toffoli };

/// Canonical controlled-X (4x4) and controlled-controlled-X (8x8) matrices in
/// the basis ordering {R, L} x {0, 1} (x {0, 1}): index = pol * 2^n + atom
/// bits with atom 0 most significant.
Eigen::MatrixXcd ideal_gate_matrix(GateKind kind);

/// Dense index of a label within one location: pol * 2^atom_count + atoms.
int basis_index(const BasisLabel& label, int atom_count);

/// Dense amplitude vector (size 2 * 2^atom_count) of the restriction of `s`
/// to one location.
Eigen::VectorXcd state_vector_at(const HybridState& s, int loc);

/// Inverse of state_vector_at: places a dense vector at one location.
HybridState state_from_vector(const Eigen::VectorXcd& v, int loc,
                              int atom_count, int location_count);

/// Product input (cos f |R> + sin f |L>) x prod_i (cos t_i |0> + sin t_i |1>)
/// placed at the circuit's input port. `atom_angles` must have
/// circuit.atom_count() entries.
HybridState product_input(const CircuitSpec& circuit, double photon_angle,
                          std::span<const double> atom_angles);

} // namespace cavsim

#endif
