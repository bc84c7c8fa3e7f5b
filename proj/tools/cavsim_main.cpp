// Command-line front end: coupling-ratio sweeps, single-point gate metrics,
// reflection spectra, bad-cavity regime checks, and circuit-file execution.

#include <complex>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cavsim/cavity.hpp"
#include "cavsim/circuit.hpp"
#include "cavsim/circuit_io.hpp"
#include "cavsim/metrics.hpp"
#include "cavsim/sweep.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;
using namespace cavsim;

std::string iso_timestamp()
{
    char buf[32];
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
}

std::string label_text(const BasisLabel& label, const CircuitSpec& spec)
{
    std::string atoms;
    for (int i = 0; i < spec.atom_count(); ++i)
        atoms += char('0' + atom_bit(label, i, spec.atom_count()));
    return std::string(label.pol == Pol::R ? "R" : "L") + "@"
         + spec.location_names()[label.loc] + "|" + atoms;
}

json state_json(const HybridState& s, const CircuitSpec& spec)
{
    json arr = json::array();
    for (const auto& [label, amp] : s.amplitudes()) {
        arr.push_back({{"ket", label_text(label, spec)},
                       {"re", amp.real()},
                       {"im", amp.imag()}});
    }
    return arr;
}

void print_state(const std::string& title, const HybridState& s,
                 const CircuitSpec& spec)
{
    std::cout << title << "  (norm^2 = " << format_value(total_norm(s)) << ")\n";
    for (const auto& [label, amp] : s.amplitudes()) {
        std::cout << "  " << label_text(label, spec) << " : "
                  << format_value(amp.real());
        if (amp.imag() != 0.0)
            std::cout << (amp.imag() < 0 ? " - " : " + ")
                      << format_value(std::abs(amp.imag())) << "i";
        std::cout << "\n";
    }
    if (s.amplitudes().empty())
        std::cout << "  (empty)\n";
}

json averages_json(const AverageResult& c, const AverageResult& t)
{
    return {{"F_cnot", c.fidelity},
            {"P_cnot", c.efficiency},
            {"F_toffoli", t.fidelity},
            {"P_toffoli", t.efficiency},
            {"cnot_nodes", c.nodes},
            {"toffoli_nodes", t.nodes}};
}

json regime_json(const RegimeReport& rep)
{
    return {{"kappa", rep.kappa},
            {"g2_over_kappa", rep.g2_over_kappa},
            {"gamma", rep.gamma},
            {"coupling_ratio", rep.coupling_ratio},
            {"margin", rep.margin},
            {"kappa_dominates", rep.kappa_dominates},
            {"g2_dominates", rep.g2_dominates},
            {"bad_cavity", rep.bad_cavity}};
}

void print_regime(const RegimeReport& rep)
{
    std::cout << "kappa          = " << format_value(rep.kappa) << "\n"
              << "g^2/kappa      = " << format_value(rep.g2_over_kappa) << "\n"
              << "gamma          = " << format_value(rep.gamma) << "\n"
              << "coupling ratio = " << format_value(rep.coupling_ratio) << "\n"
              << "margin         = " << format_value(rep.margin) << "\n"
              << "kappa >> g^2/kappa : " << (rep.kappa_dominates ? "yes" : "no") << "\n"
              << "g^2/kappa >> gamma : " << (rep.g2_dominates ? "yes" : "no") << "\n"
              << "bad cavity         : " << (rep.bad_cavity ? "yes" : "no") << "\n";
}

struct QuadNodes {
    int cnot = 128;
    int toffoli = 64;
};

QuadNodes resolve_nodes(int quad_nodes)
{
    if (quad_nodes > 0)
        return {quad_nodes, quad_nodes};
    return {};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Photon-atom hybrid gate simulator (single-sided bad cavities)"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // sweep
    auto* sweep_cmd =
        app.add_subcommand("sweep", "Average gate metrics over a coupling-ratio grid");
    double x_min = 0.5, x_max = 10.0;
    int sweep_n = 60;
    bool linear = false, sweep_json_flag = false;
    int sweep_quad = 0;
    std::string sweep_csv_path;
    sweep_cmd->add_option("--xmin", x_min, "Lowest coupling ratio (> 0)");
    sweep_cmd->add_option("--xmax", x_max, "Highest coupling ratio");
    sweep_cmd->add_option("-n,--points", sweep_n, "Grid points");
    sweep_cmd->add_flag("--linear", linear, "Linear grid spacing (default logarithmic)");
    sweep_cmd->add_option("--csv", sweep_csv_path, "Write CSV to this path");
    sweep_cmd->add_flag("--json", sweep_json_flag, "Emit JSON on stdout");
    sweep_cmd->add_option("--quad-nodes", sweep_quad, "Quadrature nodes per dimension");

    // point
    auto* point_cmd =
        app.add_subcommand("point", "Gate metrics for one parameter set (units 2*pi*MHz)");
    double pg = 0, pk = 0, pgam = 0, p_wc = 0, p_w0 = 0, p_wp = 0, p_margin = 2.0;
    bool point_json_flag = false;
    int point_quad = 0;
    point_cmd->add_option("g", pg, "Coupling strength g")->required();
    point_cmd->add_option("kappa", pk, "Cavity damping rate")->required();
    point_cmd->add_option("gamma", pgam, "Atomic decay rate")->required();
    point_cmd->add_option("--omega-c", p_wc, "Cavity detuning");
    point_cmd->add_option("--omega-0", p_w0, "Atomic detuning");
    point_cmd->add_option("--omega-p", p_wp, "Probe detuning");
    point_cmd->add_option("--margin", p_margin, "Regime margin factor");
    point_cmd->add_flag("--json", point_json_flag, "Emit JSON on stdout");
    point_cmd->add_option("--quad-nodes", point_quad, "Quadrature nodes per dimension");

    // run
    auto* run_cmd = app.add_subcommand("run", "Run a circuit file on a product input");
    std::string run_file;
    double r_varphi = 0, r_theta = 0, r_eta = 0;
    std::vector<double> run_r, run_r0;
    bool run_json_flag = false;
    run_cmd->add_option("file", run_file, "Circuit description file")->required();
    run_cmd->add_option("--varphi", r_varphi, "Photon angle (rad)");
    run_cmd->add_option("--theta", r_theta, "Atom-1 angle (rad)");
    run_cmd->add_option("--eta", r_eta, "Atom-2 angle (rad)");
    run_cmd->add_option("--r", run_r, "Coupled reflection per atom (repeatable, default 1)");
    run_cmd->add_option("--r0", run_r0, "Empty-cavity reflection per atom (default -1)");
    run_cmd->add_flag("--json", run_json_flag, "Emit JSON on stdout");

    // spectrum
    auto* spec_cmd =
        app.add_subcommand("spectrum", "Tabulate reflection coefficients vs probe frequency");
    double sg = 0, sk = 0, sgam = 0, s_wc = 0, s_w0 = 0;
    double wmin = 0, wmax = 0;
    int spec_n = 801;
    bool spec_json_flag = false;
    std::string spec_csv_path;
    spec_cmd->add_option("g", sg, "Coupling strength g")->required();
    spec_cmd->add_option("kappa", sk, "Cavity damping rate")->required();
    spec_cmd->add_option("gamma", sgam, "Atomic decay rate")->required();
    spec_cmd->add_option("--wmin", wmin, "Lowest probe frequency")->required();
    spec_cmd->add_option("--wmax", wmax, "Highest probe frequency")->required();
    spec_cmd->add_option("-n,--points", spec_n, "Grid points");
    spec_cmd->add_option("--omega-c", s_wc, "Cavity detuning");
    spec_cmd->add_option("--omega-0", s_w0, "Atomic detuning");
    spec_cmd->add_option("--csv", spec_csv_path, "Write CSV to this path");
    spec_cmd->add_flag("--json", spec_json_flag, "Emit JSON on stdout");

    // check
    auto* check_cmd = app.add_subcommand("check", "Bad-cavity regime diagnostics");
    double cg = 0, ck = 0, cgam = 0, c_margin = 2.0;
    bool check_json_flag = false;
    check_cmd->add_option("g", cg, "Coupling strength g")->required();
    check_cmd->add_option("kappa", ck, "Cavity damping rate")->required();
    check_cmd->add_option("gamma", cgam, "Atomic decay rate")->required();
    check_cmd->add_option("--margin", c_margin, "Separation margin factor");
    check_cmd->add_flag("--json", check_json_flag, "Emit JSON on stdout");

    // parse
    auto* parse_cmd = app.add_subcommand("parse", "Validate a circuit file");
    std::string parse_file;
    bool parse_canonical = false;
    parse_cmd->add_option("file", parse_file, "Circuit description file")->required();
    parse_cmd->add_flag("--canonical", parse_canonical, "Print the canonical form");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep_cmd->parsed()) {
            const QuadNodes nodes = resolve_nodes(sweep_quad);
            const SweepTable table = sweep_coupling_ratio(
                x_min, x_max, sweep_n, !linear, nodes.cnot, nodes.toffoli);
            if (sweep_json_flag) {
                json rows = json::array();
                for (const auto& row : table.rows)
                    rows.push_back({{"x", row.x},
                                    {"log10_x", row.log10_x},
                                    {"r", row.r},
                                    {"F_cnot", row.f_cnot},
                                    {"P_cnot", row.p_cnot},
                                    {"F_toffoli", row.f_toffoli},
                                    {"P_toffoli", row.p_toffoli}});
                json doc = {{"rows", rows},
                            {"metadata",
                             {{"cnot_nodes", table.cnot_nodes},
                              {"toffoli_nodes", table.toffoli_nodes},
                              {"timestamp", iso_timestamp()},
                              {"version", kVersion}}}};
                std::cout << doc.dump(2) << "\n";
                if (!sweep_csv_path.empty())
                    write_text(sweep_csv_path, sweep_to_csv(table));
            } else {
                write_text(sweep_csv_path, sweep_to_csv(table));
            }
        } else if (point_cmd->parsed()) {
            const CavityParams params{pg, pk, pgam, p_wc, p_w0};
            params.validate();
            const Complex r = reflection_coefficient(params, p_wp);
            const RegimeReport rep = regime_check(params, p_margin);
            const QuadNodes nodes = resolve_nodes(point_quad);
            const AverageResult c = average_cnot(r, nodes.cnot);
            const AverageResult t = average_toffoli(r, nodes.toffoli);
            if (point_json_flag) {
                json doc = {{"coupling_ratio", params.coupling_ratio()},
                            {"r", {{"re", r.real()}, {"im", r.imag()}}},
                            {"regime", regime_json(rep)},
                            {"averages", averages_json(c, t)},
                            {"version", kVersion}};
                std::cout << doc.dump(2) << "\n";
            } else {
                std::cout << "coupling ratio x = "
                          << format_value(params.coupling_ratio()) << "\n"
                          << "reflection r     = " << format_value(r.real());
                if (r.imag() != 0.0)
                    std::cout << (r.imag() < 0 ? " - " : " + ")
                              << format_value(std::abs(r.imag())) << "i";
                std::cout << "\n\n";
                print_regime(rep);
                std::cout << "\nF_cnot    = " << format_value(c.fidelity) << "\n"
                          << "P_cnot    = " << format_value(c.efficiency) << "\n"
                          << "F_toffoli = " << format_value(t.fidelity) << "\n"
                          << "P_toffoli = " << format_value(t.efficiency) << "\n";
            }
        } else if (run_cmd->parsed()) {
            std::ifstream in(run_file);
            if (!in)
                throw std::runtime_error("cannot open '" + run_file + "'");
            std::stringstream buffer;
            buffer << in.rdbuf();
            CircuitSpec circuit = parse_circuit(buffer.str());

            for (size_t i = 0; i < run_r.size(); ++i) {
                if (i >= static_cast<size_t>(circuit.atom_count()))
                    throw std::runtime_error("more --r values than atoms");
                const double r0 = i < run_r0.size() ? run_r0[i] : -1.0;
                circuit.bind_cavity(static_cast<int>(i),
                                    {Complex{run_r[i], 0}, Complex{r0, 0}});
            }

            std::vector<double> atom_angles{r_theta};
            if (circuit.atom_count() >= 2)
                atom_angles.push_back(r_eta);
            const HybridState input = product_input(circuit, r_varphi, atom_angles);
            const RunOutput result = run(circuit, input);

            if (run_json_flag) {
                json cps = json::array();
                for (const auto& [label, state] : result.checkpoints)
                    cps.push_back({{"label", label}, {"state", state_json(state, circuit)}});
                json doc = {{"out", state_json(result.out_state, circuit)},
                            {"out_norm2", total_norm(result.out_state)},
                            {"discard", state_json(result.discard_state, circuit)},
                            {"discard_norm2", total_norm(result.discard_state)},
                            {"absorbed", result.absorbed},
                            {"checkpoints", cps}};
                std::cout << doc.dump(2) << "\n";
            } else {
                for (const auto& [label, state] : result.checkpoints)
                    print_state("checkpoint " + label, state, circuit);
                print_state("out port", result.out_state, circuit);
                print_state("discard port", result.discard_state, circuit);
                std::cout << "absorbed = " << format_value(result.absorbed) << "\n";
            }
        } else if (spec_cmd->parsed()) {
            const CavityParams params{sg, sk, sgam, s_wc, s_w0};
            const auto rows = reflection_spectrum(params, wmin, wmax, spec_n);
            if (spec_json_flag) {
                json arr = json::array();
                for (const auto& row : rows)
                    arr.push_back({{"omega_p", row.omega_p},
                                   {"re_r", row.r.real()},
                                   {"im_r", row.r.imag()},
                                   {"abs_r", std::abs(row.r)},
                                   {"arg_r", std::arg(row.r)},
                                   {"re_r0", row.r0.real()},
                                   {"im_r0", row.r0.imag()}});
                std::cout << json{{"rows", arr}}.dump(2) << "\n";
            } else {
                std::ostringstream os;
                os << "omega_p,re_r,im_r,abs_r,arg_r,re_r0,im_r0\n";
                for (const auto& row : rows)
                    os << format_value(row.omega_p) << ','
                       << format_value(row.r.real()) << ','
                       << format_value(row.r.imag()) << ','
                       << format_value(std::abs(row.r)) << ','
                       << format_value(std::arg(row.r)) << ','
                       << format_value(row.r0.real()) << ','
                       << format_value(row.r0.imag()) << '\n';
                write_text(spec_csv_path, os.str());
            }
        } else if (check_cmd->parsed()) {
            const CavityParams params{cg, ck, cgam};
            const RegimeReport rep = regime_check(params, c_margin);
            if (check_json_flag)
                std::cout << regime_json(rep).dump(2) << "\n";
            else
                print_regime(rep);
        } else if (parse_cmd->parsed()) {
            std::ifstream in(parse_file);
            if (!in)
                throw std::runtime_error("cannot open '" + parse_file + "'");
            std::stringstream buffer;
            buffer << in.rdbuf();
            const CircuitSpec circuit = parse_circuit(buffer.str());
            if (parse_canonical) {
                std::cout << serialize_circuit(circuit);
            } else {
                std::cout << "ok: " << circuit.atom_count() << " atom(s), "
                          << circuit.location_count() << " location(s), "
                          << circuit.elements().size() << " element(s)\n";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
