#include "cavsim/circuit.hpp"

#include <cmath>

namespace cavsim {

CircuitSpec::CircuitSpec(int atom_count) : atom_count_(atom_count)
{
    if (atom_count < 1 || atom_count > 8)
        throw std::invalid_argument("CircuitSpec: unsupported atom count");
    bindings_.assign(static_cast<size_t>(atom_count), ReflectionPair{});
}

int CircuitSpec::add_location(const std::string& name)
{
    if (find_location(name))
        throw WiringError("CircuitSpec: duplicate location name '" + name + "'");
    location_names_.push_back(name);
    return location_count() - 1;
}

int CircuitSpec::add_input_port(const std::string& name)
{
    if (in_port_ >= 0)
        throw WiringError("CircuitSpec: input port already declared");
    return in_port_ = add_location(name);
}

int CircuitSpec::add_output_port(const std::string& name)
{
    if (out_port_ >= 0)
        throw WiringError("CircuitSpec: output port already declared");
    return out_port_ = add_location(name);
}

int CircuitSpec::add_discard_port(const std::string& name)
{
    if (discard_port_ >= 0)
        throw WiringError("CircuitSpec: discard port already declared");
    return discard_port_ = add_location(name);
}

bool CircuitSpec::is_port(int loc) const
{
    return loc == in_port_ || loc == out_port_ || loc == discard_port_;
}

int CircuitSpec::location_id(const std::string& name) const
{
    if (auto id = find_location(name))
        return *id;
    throw WiringError("CircuitSpec: unknown location '" + name + "'");
}

std::optional<int> CircuitSpec::find_location(const std::string& name) const
{
    for (int i = 0; i < location_count(); ++i)
        if (location_names_[static_cast<size_t>(i)] == name)
            return i;
    return std::nullopt;
}

void CircuitSpec::check_loc(int loc, const char* what) const
{
    if (loc < 0 || loc >= location_count())
        throw WiringError(std::string(what) + ": unregistered location id");
}

void CircuitSpec::check_atom(int atom_idx, const char* what) const
{
    if (atom_idx < 0 || atom_idx >= atom_count_)
        throw WiringError(std::string(what) + ": atom index out of range");
}

void CircuitSpec::add_cpbs(int in_a, int in_b, int out_a, int out_b)
{
    check_loc(in_a, "add_cpbs");
    check_loc(in_b, "add_cpbs");
    check_loc(out_a, "add_cpbs");
    check_loc(out_b, "add_cpbs");
    if (in_a == in_b || out_a == out_b || in_a == out_a || in_a == out_b
        || in_b == out_a || in_b == out_b)
        throw WiringError("add_cpbs: the four locations must be distinct");
    elements_.push_back({ElementKind::Cpbs, {in_a, in_b, out_a, out_b}});
}

void CircuitSpec::add_photon_hadamard(int loc)
{
    check_loc(loc, "add_photon_hadamard");
    elements_.push_back({ElementKind::PhotonHadamard, {loc, -1, -1, -1}});
}

void CircuitSpec::add_photon_sigma_x(int loc)
{
    check_loc(loc, "add_photon_sigma_x");
    elements_.push_back({ElementKind::PhotonSigmaX, {loc, -1, -1, -1}});
}

void CircuitSpec::add_atom_hadamard(int atom_idx)
{
    check_atom(atom_idx, "add_atom_hadamard");
    Element e{ElementKind::AtomHadamard};
    e.atom = atom_idx;
    elements_.push_back(e);
}

void CircuitSpec::add_cavity_scatter(int loc, int atom_idx)
{
    check_loc(loc, "add_cavity_scatter");
    check_atom(atom_idx, "add_cavity_scatter");
    Element e{ElementKind::CavityScatter, {loc, -1, -1, -1}};
    e.atom = atom_idx;
    elements_.push_back(e);
}

void CircuitSpec::add_relabel(int from, int to)
{
    check_loc(from, "add_relabel");
    check_loc(to, "add_relabel");
    elements_.push_back({ElementKind::Relabel, {from, to, -1, -1}});
}

void CircuitSpec::add_checkpoint(const std::string& label)
{
    Element e{ElementKind::Checkpoint};
    e.label = label;
    elements_.push_back(e);
}

void CircuitSpec::bind_cavity(int atom_idx, const ReflectionPair& r)
{
    check_atom(atom_idx, "bind_cavity");
    bindings_[static_cast<size_t>(atom_idx)] = r;
}

void CircuitSpec::validate_ports() const
{
    if (in_port_ < 0)
        throw WiringError("CircuitSpec: no input port declared");
    if (out_port_ < 0)
        throw WiringError("CircuitSpec: no output port declared");
}

RunOutput run(const CircuitSpec& circuit, const HybridState& input)
{
    return run(circuit, input, circuit.bindings());
}

RunOutput run(const CircuitSpec& circuit, const HybridState& input,
              std::span<const ReflectionPair> bindings)
{
    circuit.validate_ports();
    if (bindings.size() != static_cast<size_t>(circuit.atom_count()))
        throw std::invalid_argument("run: need one reflection pair per atom");
    if (input.atom_count() != circuit.atom_count()
        || input.location_count() != circuit.location_count())
        throw std::invalid_argument("run: input state shape does not match circuit");
    for (const auto& [label, amp] : input.amplitudes())
        if (label.loc != circuit.input_port() && std::abs(amp) > 0.0)
            throw std::invalid_argument("run: input amplitude outside the input port");

    const double input_norm = total_norm(input);

    RunOutput out{HybridState(circuit.atom_count(), circuit.location_count()),
                  HybridState(circuit.atom_count(), circuit.location_count()),
                  0.0,
                  {}};
    HybridState s = input;
    for (const auto& e : circuit.elements()) {
        switch (e.kind) {
        case ElementKind::Cpbs:
            apply_cpbs(s, e.locs[0], e.locs[1], e.locs[2], e.locs[3]);
            break;
        case ElementKind::PhotonHadamard:
            apply_photon_hadamard(s, e.locs[0]);
            break;
        case ElementKind::PhotonSigmaX:
            apply_photon_sigma_x(s, e.locs[0]);
            break;
        case ElementKind::AtomHadamard:
            apply_atom_hadamard(s, e.atom);
            break;
        case ElementKind::CavityScatter: {
            const auto& r = bindings[static_cast<size_t>(e.atom)];
            apply_cavity_scatter(s, e.locs[0], e.atom, r.r_coupled, r.r_empty);
            break;
        }
        case ElementKind::Relabel:
            apply_relabel(s, e.locs[0], e.locs[1]);
            break;
        case ElementKind::Checkpoint:
            out.checkpoints.emplace_back(e.label, s);
            break;
        }
    }

    out.out_state = project_location(s, circuit.output_port());
    if (circuit.discard_port() >= 0)
        out.discard_state = project_location(s, circuit.discard_port());
    out.absorbed = input_norm - total_norm(s);
    return out;
}

CircuitSpec build_cnot(const ReflectionPair& r)
{
    CircuitSpec c(1);
    c.add_input_port("in");
    c.add_location("vac");
    c.add_location("path1");
    c.add_location("path2");
    c.add_location("path3");
    c.add_output_port("out");
    c.add_discard_port("discard");

    const int in = c.location_id("in"), vac = c.location_id("vac");
    const int p1 = c.location_id("path1"), p2 = c.location_id("path2");
    const int p3 = c.location_id("path3");
    const int out = c.location_id("out"), disc = c.location_id("discard");

    c.add_cpbs(in, vac, p1, p2);       // R -> path1, L -> path2
    c.add_checkpoint("psi1");
    c.add_atom_hadamard(0);
    c.add_checkpoint("psi2");
    c.add_cavity_scatter(p2, 0);
    c.add_relabel(p2, p3);             // mirror + delay line, phase-free
    c.add_checkpoint("psi3");
    c.add_atom_hadamard(0);
    c.add_cpbs(p1, p3, out, disc);     // R@path1 and L@path3 recombine at out
    c.add_checkpoint("psi4");

    c.bind_cavity(0, r);
    return c;
}

CircuitSpec build_toffoli(const ReflectionPair& r_cavity1,
                          const ReflectionPair& r_cavity2)
{
    CircuitSpec c(2);
    c.add_input_port("in");
    c.add_location("vac");
    c.add_location("sink");
    c.add_location("path1");
    c.add_location("path2");
    c.add_location("path3");
    c.add_location("path4");
    c.add_location("path5");
    c.add_location("m1arm");
    c.add_location("cav1a");
    c.add_location("m2arm");
    c.add_location("cav2");
    c.add_location("m3arm");
    c.add_location("cav1b");
    c.add_output_port("out");
    c.add_discard_port("discard");

    const int in = c.location_id("in");
    const int vac = c.location_id("vac"), sink = c.location_id("sink");
    const int p1 = c.location_id("path1"), p2 = c.location_id("path2");
    const int p3 = c.location_id("path3"), p4 = c.location_id("path4");
    const int p5 = c.location_id("path5");
    const int m1 = c.location_id("m1arm"), c1a = c.location_id("cav1a");
    const int m2 = c.location_id("m2arm"), c2 = c.location_id("cav2");
    const int m3 = c.location_id("m3arm"), c1b = c.location_id("cav1b");
    const int out = c.location_id("out"), disc = c.location_id("discard");

    c.add_cpbs(in, vac, p2, p1);       // R -> path2 (bypass), L -> path1
    c.add_checkpoint("phi1");

    // First visit to cavity 1: conditions the photon polarization on atom 1.
    c.add_photon_hadamard(p1);
    c.add_cpbs(p1, vac, m1, c1a);
    c.add_cavity_scatter(c1a, 0);
    c.add_cpbs(m1, c1a, p3, sink);
    c.add_photon_hadamard(p3);
    c.add_photon_sigma_x(p3);
    c.add_checkpoint("phi2");

    // Cavity 2: CNOT-style flip of atom 2, controlled by the photon.
    c.add_atom_hadamard(1);
    c.add_cpbs(p3, vac, m2, c2);
    c.add_cavity_scatter(c2, 1);
    c.add_cpbs(m2, c2, p4, sink);
    c.add_atom_hadamard(1);
    c.add_checkpoint("phi3");

    // Second visit to cavity 1: undoes the conditioning.
    c.add_photon_sigma_x(p4);
    c.add_photon_hadamard(p4);
    c.add_cpbs(p4, vac, m3, c1b);
    c.add_cavity_scatter(c1b, 0);
    c.add_cpbs(m3, c1b, p5, sink);
    c.add_photon_hadamard(p5);

    c.add_cpbs(p2, p5, out, disc);     // R@path2 and L@path5 exit at out
    c.add_checkpoint("phif");

    c.bind_cavity(0, r_cavity1);
    c.bind_cavity(1, r_cavity2);
    return c;
}

int basis_index(const BasisLabel& label, int atom_count)
{
    return (static_cast<int>(label.pol) << atom_count) | label.atoms;
}

Eigen::MatrixXcd ideal_gate_matrix(GateKind kind)
{
    const int dim = (kind == GateKind::Cnot) ? 4 : 8;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
    if (kind == GateKind::Cnot) {
        // |L0> <-> |L1>
        m(2, 2) = m(3, 3) = 0.0;
        m(2, 3) = m(3, 2) = 1.0;
    } else {
        // |L10> <-> |L11>
        m(6, 6) = m(7, 7) = 0.0;
        m(6, 7) = m(7, 6) = 1.0;
    }
    return m;
}

Eigen::VectorXcd state_vector_at(const HybridState& s, int loc)
{
    const int dim = 2 << s.atom_count();
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    for (const auto& [label, amp] : s.amplitudes())
        if (label.loc == loc)
            v(basis_index(label, s.atom_count())) += amp;
    return v;
}

HybridState state_from_vector(const Eigen::VectorXcd& v, int loc,
                              int atom_count, int location_count)
{
    if (v.size() != (2 << atom_count))
        throw std::invalid_argument("state_from_vector: dimension mismatch");
    HybridState s(atom_count, location_count);
    for (int i = 0; i < v.size(); ++i) {
        if (v(i) == Complex{})
            continue;
        BasisLabel label{i >= (1 << atom_count) ? Pol::L : Pol::R,
                         static_cast<std::uint16_t>(loc),
                         static_cast<std::uint8_t>(i & ((1 << atom_count) - 1))};
        s.set(label, v(i));
    }
    return s;
}

HybridState product_input(const CircuitSpec& circuit, double photon_angle,
                          std::span<const double> atom_angles)
{
    if (atom_angles.size() != static_cast<size_t>(circuit.atom_count()))
        throw std::invalid_argument("product_input: need one angle per atom");

    const int n = circuit.atom_count();
    const int dim = 2 << n;
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) {
        double a = (i >= (1 << n)) ? std::sin(photon_angle) : std::cos(photon_angle);
        for (int k = 0; k < n; ++k) {
            const int bit = (i >> (n - 1 - k)) & 1;
            a *= bit ? std::sin(atom_angles[static_cast<size_t>(k)])
                     : std::cos(atom_angles[static_cast<size_t>(k)]);
        }
        v(i) = a;
    }
    return state_from_vector(v, circuit.input_port(), n, circuit.location_count());
}

} // namespace cavsim
