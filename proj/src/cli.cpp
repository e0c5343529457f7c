/**
 * Copyright 2026 The pdu-forge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pduforge/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "pduforge/analysis.hpp"
#include "pduforge/circuit.hpp"
#include "pduforge/config.hpp"
#include "pduforge/device.hpp"
#include "pduforge/netlist_io.hpp"

namespace pduforge::cli {

namespace {

/// Input problem that maps to exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

std::string printf_string(const char* fmt, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, value);
    return buf;
}

std::string fixed6(double value) { return printf_string("%.6f", value); }

/// Three significant figures unless raw output was requested.
std::string headline(double value, bool raw) { return printf_string(raw ? "%.17g" : "%.3g", value); }

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

/// Writes `content` to `path`, or to `out` when no path was given.
void emit(const std::string& path, bool force, const std::string& content, std::ostream& out) {
    if (path.empty()) {
        out << content;
        return;
    }
    if (std::filesystem::exists(path) && !force)
        throw UsageError("'" + path + "' exists; pass --force to overwrite");
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("cannot write '" + path + "'");
    file << content;
}

double parse_real(const std::string& text, const std::string& what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value))
        throw UsageError(what + ": expected a real number, got '" + text + "'");
    return value;
}

/// Everything the user asked for in one invocation.
struct RunManifest {
    std::string subcommand;

    // design
    std::string config_path;
    bool summary = false;
    bool raw = false;
    std::string sweep;
    double qmin = 1e5, qmax = 2e8;
    double rmin = 10e-6, rmax = 100e-6;
    double pmin = 1e-4, pmax = 50e-3;
    double lmin = 1e-3, lmax = 3e-2;
    std::size_t points = 500;
    std::size_t lpoints = 100;
    bool log_spacing = false;
    int sfg = 1;

    // generate
    std::string family;
    unsigned stages = 1;
    double phi = 0.0;
    std::vector<double> phases;
    double eta_pdc = 1.0, eta_puc_s = 1.0, eta_puc_i = 1.0;

    // simulate
    std::string netlist_path;
    bool postselect = false;
    std::string encoding;
    std::string target;
    std::string terms_csv;
    std::optional<unsigned> n_max;

    std::string output_path;
    bool force = false;
};

unsigned default_n_max() {
    if (const char* env = std::getenv("PDU_FORGE_NMAX"); env && *env) {
        unsigned value = 0;
        const std::string_view text(env);
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size() || value < 1 || value > fock::kMaxOccupationLimit)
            throw UsageError("PDU_FORGE_NMAX must be an integer in [1, " + std::to_string(fock::kMaxOccupationLimit) + "]");
        return value;
    }
    return fock::kDefaultMaxOccupation;
}

int cmd_design(const RunManifest& m, std::ostream& out, std::ostream& err) {
    const device::LoadedConfig loaded = device::load_config_file(m.config_path);
    for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';
    const device::DeviceConfig& cfg = loaded.config;

    if (!m.sweep.empty()) {
        const auto spacing = m.log_spacing ? device::Spacing::Log : device::Spacing::Linear;
        device::SweepTable table;
        if (m.sweep == "eta_pdc") {
            table = device::sweep_eta_pdc(cfg, {m.qmin, m.qmax, m.points, spacing},
                                          device::angular_frequency(cfg.lambda_q_ref));
        } else if (m.sweep == "q_vs_radius") {
            table = device::sweep_q_required_vs_radius(cfg, {m.rmin, m.rmax, m.points, spacing},
                                                       device::angular_frequency(cfg.lambda_q_ref));
        } else {
            const auto which = m.sfg == 2 ? device::SfgProcess::Sfg2 : device::SfgProcess::Sfg1;
            table = device::sweep_eta_puc(device::design_kappa(cfg, which), {m.pmin, m.pmax, m.points, spacing},
                                          {m.lmin, m.lmax, m.lpoints, device::Spacing::Linear});
        }
        emit(m.output_path, m.force, table.to_csv(), out);
        if (!m.summary) return kSuccess;
    }

    const device::DesignSummary s = device::summarize(cfg);
    const double nm = 1e9;
    out << "config: " << m.config_path << '\n';
    out << "xi_rad_per_s: " << headline(s.xi, m.raw) << '\n';
    out << "Q_SLM: " << headline(s.q_slm_min, m.raw) << "  (radius " << headline(cfg.radius * 1e6, m.raw)
        << " um, lambda_ref " << printf_string("%.2f", cfg.lambda_slm_ref * nm) << " nm)\n";
    out << "Q_DPDC: " << headline(s.q_required_dpdc, m.raw) << "  (lambda_ref "
        << printf_string("%.2f", cfg.lambda_q_ref * nm) << " nm)\n";
    out << "t1_s: " << headline(s.interaction_time, m.raw) << '\n';
    const char* source = s.kappa_calibrated ? "calibrated" : "formula";
    out << "kappa_SFG1: " << headline(s.kappa_sfg1, m.raw) << " W^-1 m^-2 (" << source << ")\n";
    out << "kappa_SFG2: " << headline(s.kappa_sfg2, m.raw) << " W^-1 m^-2 (" << source << ")\n";
    out << "kappa_formula_SFG1: " << headline(s.kappa_formula_sfg1, m.raw) << " W^-1 m^-2\n";
    out << "kappa_formula_SFG2: " << headline(s.kappa_formula_sfg2, m.raw) << " W^-1 m^-2\n";
    out << "P_DPUC_SFG1: " << headline(s.p_required_sfg1 * 1e3, m.raw) << " mW  (l = "
        << headline(s.waveguide_length * 1e2, m.raw) << " cm)\n";
    out << "P_DPUC_SFG2: " << headline(s.p_required_sfg2 * 1e3, m.raw) << " mW  (l = "
        << headline(s.waveguide_length * 1e2, m.raw) << " cm)\n";
    return kSuccess;
}

int cmd_generate(const RunManifest& m, std::ostream& out) {
    const optics::PduParams params{m.eta_pdc, m.eta_puc_s, m.eta_puc_i};
    circuit::Netlist netlist;
    try {
        if (m.family == "fock") {
            netlist = circuit::build_fock_chain(m.stages, params);
        } else if (m.family == "ghz") {
            netlist = circuit::build_ghz(m.stages, m.phi, params);
        } else {
            circuit::ClusterPhases phases;
            if (!m.phases.empty()) {
                if (m.phases.size() != 4) throw UsageError("--phases expects four values");
                phases = {m.phases[0], m.phases[1], m.phases[2], m.phases[3]};
            }
            netlist = circuit::build_cluster4(phases, params);
        }
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    emit(m.output_path, m.force, circuit::write_netlist(netlist), out);
    return kSuccess;
}

std::string component_kind(const circuit::Element& element) {
    static constexpr const char* names[] = {"source", "bs", "phase", "cross", "pdu"};
    return names[element.index()];
}

int cmd_simulate(const RunManifest& m, std::ostream& out, std::ostream& err) {
    circuit::Netlist netlist;
    try {
        netlist = circuit::parse_netlist(read_file(m.netlist_path));
    } catch (const circuit::ParseError& e) {
        throw UsageError(m.netlist_path + ": " + e.what());
    }
    if (!m.encoding.empty()) {
        try {
            netlist.encoding = circuit::parse_encoding(m.encoding);
        } catch (const InvalidArgument& e) {
            throw UsageError(std::string("--encoding: ") + e.what());
        }
    }
    if (auto diagnostics = circuit::validate(netlist); !diagnostics.empty()) {
        std::string message = m.netlist_path + ": invalid netlist";
        for (const auto& d : diagnostics) {
            message += "\n  " + d.to_string();
            if (d.component != std::string::npos && netlist.components[d.component].line)
                message += " (line " + std::to_string(netlist.components[d.component].line) + ")";
        }
        throw UsageError(message);
    }

    std::optional<analysis::LogicalState> target;
    if (!m.target.empty()) {
        if (netlist.encoding.empty()) throw UsageError("--target needs a dual-rail encoding");
        if (m.target == "cluster4") {
            target = analysis::target_cluster4();
        } else if (m.target.starts_with("ghz:")) {
            const std::string rest = m.target.substr(4);
            const auto colon = rest.find(':');
            if (colon == std::string::npos) throw UsageError("--target ghz expects ghz:N:phi");
            const double n = parse_real(rest.substr(0, colon), "--target qubit count");
            if (n < 2 || n != std::floor(n)) throw UsageError("--target ghz qubit count must be an integer >= 2");
            target = analysis::target_ghz(static_cast<std::size_t>(n), parse_real(rest.substr(colon + 1), "--target phase"));
        } else {
            throw UsageError("--target must be ghz:N:phi or cluster4");
        }
        if (target->qubits != netlist.encoding.size())
            throw UsageError("--target has " + std::to_string(target->qubits) + " qubits, encoding has " +
                             std::to_string(netlist.encoding.size()));
    }

    const analysis::QubitEncoding encoding{netlist.encoding};
    const fock::ModeRegistry full_registry = circuit::simulation_registry(netlist);
    std::vector<bool> residual(full_registry.size(), false);
    for (std::size_t k = netlist.registry.size(); k < full_registry.size(); ++k) residual[k] = true;

    circuit::Postselection predicate;
    if (m.postselect) {
        if (!encoding.pairs.empty()) {
            predicate = [&encoding, &full_registry](const fock::OccupationVector& occupation) {
                std::vector<bool> in_pair(full_registry.size(), false);
                for (const auto& p : encoding.pairs) {
                    if (occupation[p.rail0] + occupation[p.rail1] != 1) return false;
                    in_pair[p.rail0] = in_pair[p.rail1] = true;
                }
                for (std::size_t k = 0; k < occupation.size(); ++k)
                    if (!in_pair[k] && occupation[k] != 0) return false;
                return true;
            };
        } else {
            predicate = [&residual](const fock::OccupationVector& occupation) {
                for (std::size_t k = 0; k < occupation.size(); ++k)
                    if (residual[k] && occupation[k] != 0) return false;
                return true;
            };
        }
    }

    circuit::SimulationOptions options;
    options.n_max = m.n_max ? *m.n_max : default_n_max();
    std::optional<circuit::SimulationReport> simulated;
    try {
        simulated = circuit::simulate(netlist, predicate, options);
    } catch (const circuit::SimulationError& e) {
        err << "error: simulation failed at component " << e.component() << " ("
            << component_kind(netlist.components[e.component()].element);
        if (e.line()) err << ", line " << e.line();
        err << "): " << e.what() << '\n';
        return kSimulationError;
    }
    const circuit::SimulationReport& report = *simulated;
    const fock::StateVector& state = report.final_state;

    out << "netlist: " << (netlist.name.empty() ? m.netlist_path : netlist.name) << '\n';
    out << "modes: " << state.mode_count() << " (declared " << netlist.registry.size() << ", residual "
        << report.residual_modes.size() << ")\n";
    out << "terms: " << state.size() << '\n';
    out << "success_probability: " << fixed6(report.success_probability) << '\n';
    if (!encoding.pairs.empty()) {
        const auto logical = analysis::extract_logical(state, encoding);
        out << "leakage: " << fixed6(logical.leakage) << '\n';
        if (target) out << "fidelity: " << fixed6(analysis::fidelity(logical, *target)) << '\n';
        if (target && report.postselected_state) {
            const auto conditioned = analysis::extract_logical(*report.postselected_state, encoding);
            out << "fidelity_postselected: " << fixed6(analysis::fidelity(conditioned, *target)) << '\n';
        }
    }
    out << "photons: {";
    bool first = true;
    for (const auto& [count, probability] : analysis::photon_number_distribution(state)) {
        out << (first ? "" : ", ") << count << ": " << fixed6(probability);
        first = false;
    }
    out << "}\n";

    if (!m.terms_csv.empty()) {
        std::ostringstream csv;
        csv << "occupation,re,im,probability\n";
        for (const auto& [occupation, amp] : state.terms()) {
            for (std::size_t k = 0; k < occupation.size(); ++k) csv << (k ? " " : "") << occupation[k];
            csv << ',' << circuit::format_real(amp.real()) << ',' << circuit::format_real(amp.imag()) << ','
                << circuit::format_real(std::norm(amp)) << '\n';
        }
        emit(m.terms_csv, m.force, csv.str(), out);
    }
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunManifest m;
    CLI::App app{"Photon-number doubling circuit simulator and PDU design calculator", "pdu-forge"};
    app.require_subcommand(1);

    auto* design = app.add_subcommand("design", "Device requirements and efficiency sweeps");
    design->add_option("--config", m.config_path, "Device config file (key = value)")->required();
    design->add_flag("--summary", m.summary, "Print headline requirements");
    design->add_flag("--raw", m.raw, "Full precision instead of 3 significant figures");
    design->add_option("--sweep", m.sweep, "Sweep to emit as CSV")
        ->check(CLI::IsMember({"eta_pdc", "q_vs_radius", "eta_puc"}));
    design->add_option("--qmin", m.qmin, "Lowest Q")->capture_default_str();
    design->add_option("--qmax", m.qmax, "Highest Q")->capture_default_str();
    design->add_option("--rmin", m.rmin, "Smallest ring radius, m")->capture_default_str();
    design->add_option("--rmax", m.rmax, "Largest ring radius, m")->capture_default_str();
    design->add_option("--pmin", m.pmin, "Lowest SFG laser power, W")->capture_default_str();
    design->add_option("--pmax", m.pmax, "Highest SFG laser power, W")->capture_default_str();
    design->add_option("--lmin", m.lmin, "Shortest waveguide, m")->capture_default_str();
    design->add_option("--lmax", m.lmax, "Longest waveguide, m")->capture_default_str();
    design->add_option("--points", m.points, "Samples along the primary axis")->capture_default_str()
        ->check(CLI::PositiveNumber);
    design->add_option("--lpoints", m.lpoints, "Samples along the waveguide length axis")->capture_default_str()
        ->check(CLI::PositiveNumber);
    design->add_flag("--log", m.log_spacing, "Logarithmic spacing on the primary axis");
    design->add_option("--sfg", m.sfg, "Up-conversion process for eta_puc (1 or 2)")->check(CLI::IsMember({1, 2}));
    design->add_option("--out", m.output_path, "CSV output path (stdout when omitted)");
    design->add_flag("--force", m.force, "Overwrite existing output");

    auto* generate = app.add_subcommand("generate", "Write a built-in circuit as a netlist");
    generate->add_option("family", m.family, "fock, ghz or cluster4")->required()
        ->check(CLI::IsMember({"fock", "ghz", "cluster4"}));
    generate->add_option("--stages", m.stages, "PDU stages M")->capture_default_str();
    generate->add_option("--phi", m.phi, "GHZ relative phase, rad")->capture_default_str();
    generate->add_option("--phases", m.phases, "Cluster phases phi1..phi4, rad")->delimiter(',');
    generate->add_option("--eta-pdc", m.eta_pdc, "Down-conversion efficiency")->capture_default_str();
    generate->add_option("--eta-puc-s", m.eta_puc_s, "Signal up-conversion efficiency")->capture_default_str();
    generate->add_option("--eta-puc-i", m.eta_puc_i, "Idler up-conversion efficiency")->capture_default_str();
    generate->add_option("--out", m.output_path, "Netlist output path (stdout when omitted)");
    generate->add_flag("--force", m.force, "Overwrite existing output");

    auto* sim = app.add_subcommand("simulate", "Run a netlist and report photon statistics");
    sim->add_option("netlist", m.netlist_path, "Netlist file")->required();
    sim->add_flag("--postselect", m.postselect,
                  "Condition on one photon per rail pair (or on empty residual modes without an encoding)");
    sim->add_option("--encoding", m.encoding, "Dual-rail pairs, e.g. \"2:5 3:6\"");
    sim->add_option("--target", m.target, "ghz:N:phi or cluster4");
    sim->add_option("--terms-csv", m.terms_csv, "Write basis terms as CSV");
    sim->add_option("--nmax", m.n_max, "Per-mode occupation cap (overrides PDU_FORGE_NMAX)")
        ->check(CLI::Range(1u, fock::kMaxOccupationLimit));
    sim->add_flag("--force", m.force, "Overwrite existing output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (design->parsed()) return cmd_design(m, out, err);
        if (generate->parsed()) return cmd_generate(m, out);
        return cmd_simulate(m, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const device::ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const circuit::SimulationError& e) {
        err << "error: simulation failed at component " << e.component();
        if (e.line()) err << " (line " << e.line() << ")";
        err << ": " << e.what() << '\n';
        return kSimulationError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kSimulationError;
    }
}

}  // namespace pduforge::cli
