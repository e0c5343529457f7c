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

#include "pduforge/circuit.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace pduforge::circuit {

using fock::Band;
using fock::ModeRegistry;
using fock::StateVector;

std::size_t Netlist::pdu_count() const {
    std::size_t n = 0;
    for (const auto& c : components) n += std::holds_alternative<Pdu>(c.element) ? 1 : 0;
    return n;
}

std::string_view to_string(DiagnosticKind kind) {
    switch (kind) {
        case DiagnosticKind::UnknownMode: return "UnknownMode";
        case DiagnosticKind::TopologyViolation: return "TopologyViolation";
        case DiagnosticKind::BandMismatch: return "BandMismatch";
        case DiagnosticKind::DuplicateMode: return "DuplicateMode";
        case DiagnosticKind::InvalidParameter: return "InvalidParameter";
    }
    return "Unknown";
}

std::string Diagnostic::to_string() const {
    std::string out(circuit::to_string(kind));
    out += '@';
    out += component == std::string::npos ? std::string("encoding") : std::to_string(component);
    if (!message.empty()) out += ": " + message;
    return out;
}

namespace {

// Modes a component reads or writes, in declaration order.
std::vector<std::size_t> referenced_modes(const Element& element) {
    return std::visit(
        [](const auto& e) -> std::vector<std::size_t> {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, Source>) return {e.mode};
            else if constexpr (std::is_same_v<T, BeamSplitter>) return {e.m1, e.m2};
            else if constexpr (std::is_same_v<T, Phase>) return {e.mode};
            else if constexpr (std::is_same_v<T, Crosser>) return {e.m1, e.m2};
            else {
                std::vector<std::size_t> modes{e.in, e.out_s, e.out_i};
                if (e.residuals) {
                    modes.push_back(e.residuals->pdc_fail);
                    modes.push_back(e.residuals->puc_s_fail);
                    modes.push_back(e.residuals->puc_i_fail);
                }
                return modes;
            }
        },
        element);
}

class Validator {
public:
    explicit Validator(const Netlist& netlist) : netlist_(netlist) {}

    std::vector<Diagnostic> run() {
        for (std::size_t k = 0; k < netlist_.components.size(); ++k) check_component(k);
        check_encoding();
        return std::move(diagnostics_);
    }

private:
    void report(DiagnosticKind kind, std::size_t k, std::string message) {
        diagnostics_.push_back(Diagnostic{kind, k, std::move(message)});
    }

    bool known(std::size_t mode) const { return mode < netlist_.registry.size(); }
    Band band(std::size_t mode) const { return netlist_.registry[mode].band; }

    void check_component(std::size_t k) {
        const Element& element = netlist_.components[k].element;
        const auto modes = referenced_modes(element);

        bool all_known = true;
        for (std::size_t m : modes) {
            if (!known(m)) {
                report(DiagnosticKind::UnknownMode, k, "mode " + std::to_string(m) + " is not declared");
                all_known = false;
            }
        }
        if (std::set<std::size_t>(modes.begin(), modes.end()).size() != modes.size())
            report(DiagnosticKind::DuplicateMode, k, "component references the same mode twice");

        check_parameters(k, element);
        if (!all_known) return;
        check_bands(k, element);

        for (std::size_t m : modes) {
            if (consumed_.contains(m))
                report(DiagnosticKind::TopologyViolation, k,
                       "mode " + std::to_string(m) + " was consumed by an earlier pdu");
        }
        if (const auto* pdu = std::get_if<Pdu>(&element)) {
            for (std::size_t i = 1; i < modes.size(); ++i) {
                if (used_.contains(modes[i]))
                    report(DiagnosticKind::TopologyViolation, k,
                           "pdu output mode " + std::to_string(modes[i]) + " is already in use upstream");
            }
            consumed_.insert(pdu->in);
        }
        used_.insert(modes.begin(), modes.end());
    }

    void check_parameters(std::size_t k, const Element& element) {
        if (const auto* bs = std::get_if<BeamSplitter>(&element)) {
            const double t = bs->spec.theta;
            if (!(std::isfinite(t) && t >= 0.0 && t <= std::numbers::pi / 2))
                report(DiagnosticKind::InvalidParameter, k, "beam splitter angle outside [0, pi/2]");
        } else if (const auto* ph = std::get_if<Phase>(&element)) {
            if (!std::isfinite(ph->phi)) report(DiagnosticKind::InvalidParameter, k, "phase is not finite");
        } else if (const auto* pdu = std::get_if<Pdu>(&element)) {
            for (double eta : {pdu->params.eta_pdc, pdu->params.eta_puc_s, pdu->params.eta_puc_i}) {
                if (!(eta >= 0.0 && eta <= 1.0)) {
                    report(DiagnosticKind::InvalidParameter, k, "pdu efficiency outside [0, 1]");
                    break;
                }
            }
        }
    }

    void check_bands(std::size_t k, const Element& element) {
        if (const auto* bs = std::get_if<BeamSplitter>(&element)) {
            if (band(bs->m1) != band(bs->m2))
                report(DiagnosticKind::BandMismatch, k, "beam splitter joins different bands");
        } else if (const auto* cr = std::get_if<Crosser>(&element)) {
            if (band(cr->m1) != band(cr->m2))
                report(DiagnosticKind::BandMismatch, k, "crosser joins different bands");
        } else if (const auto* pdu = std::get_if<Pdu>(&element)) {
            for (std::size_t m : {pdu->in, pdu->out_s, pdu->out_i}) {
                if (band(m) != Band::Pump)
                    report(DiagnosticKind::BandMismatch, k, "pdu port " + std::to_string(m) + " is not pump band");
            }
            if (pdu->residuals) {
                const auto& r = *pdu->residuals;
                if (band(r.pdc_fail) != Band::Pump || band(r.puc_s_fail) != Band::Signal ||
                    band(r.puc_i_fail) != Band::Idler)
                    report(DiagnosticKind::BandMismatch, k, "pdu residual modes must be pump/signal/idler");
            }
        }
    }

    void check_encoding() {
        constexpr std::size_t where = std::string::npos;
        std::set<std::size_t> seen;
        for (const auto& pair : netlist_.encoding) {
            for (std::size_t m : {pair.rail0, pair.rail1}) {
                if (!known(m)) {
                    report(DiagnosticKind::UnknownMode, where, "encoding mode " + std::to_string(m) + " is not declared");
                    continue;
                }
                if (!seen.insert(m).second)
                    report(DiagnosticKind::DuplicateMode, where, "encoding reuses mode " + std::to_string(m));
                if (band(m) != Band::Pump)
                    report(DiagnosticKind::BandMismatch, where, "encoding mode " + std::to_string(m) + " is not pump band");
            }
        }
    }

    const Netlist& netlist_;
    std::vector<Diagnostic> diagnostics_;
    std::set<std::size_t> consumed_;
    std::set<std::size_t> used_;
};

struct ResolvedCircuit {
    std::shared_ptr<const ModeRegistry> registry;
    std::vector<optics::PduResiduals> residuals;  // one per component; unused for non-PDUs
    std::vector<std::size_t> residual_modes;
};

ResolvedCircuit resolve(const Netlist& netlist) {
    auto registry = std::make_shared<ModeRegistry>(netlist.registry);
    ResolvedCircuit out;
    out.residuals.resize(netlist.components.size());
    std::size_t pdu_index = 0;
    for (std::size_t k = 0; k < netlist.components.size(); ++k) {
        const auto* pdu = std::get_if<Pdu>(&netlist.components[k].element);
        if (!pdu) continue;
        if (pdu->residuals) {
            out.residuals[k] = *pdu->residuals;
        } else {
            const std::string prefix = "pdu" + std::to_string(pdu_index) + ".";
            optics::PduResiduals r;
            r.pdc_fail = registry->add(prefix + "pdc_fail", Band::Pump);
            r.puc_s_fail = registry->add(prefix + "puc_s_fail", Band::Signal);
            r.puc_i_fail = registry->add(prefix + "puc_i_fail", Band::Idler);
            out.residual_modes.insert(out.residual_modes.end(), {r.pdc_fail, r.puc_s_fail, r.puc_i_fail});
            out.residuals[k] = r;
        }
        ++pdu_index;
    }
    out.registry = std::move(registry);
    return out;
}

StateVector apply(const StateVector& state, const Element& element, const optics::PduResiduals& residuals) {
    return std::visit(
        [&](const auto& e) -> StateVector {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, Source>) return fock::create_photon(state, e.mode);
            else if constexpr (std::is_same_v<T, BeamSplitter>) return optics::apply_beamsplitter(state, e.m1, e.m2, e.spec);
            else if constexpr (std::is_same_v<T, Phase>) return optics::apply_phase(state, e.mode, e.phi);
            else if constexpr (std::is_same_v<T, Crosser>) return optics::apply_crosser(state, e.m1, e.m2);
            else return optics::apply_pdu(state, e.in, e.out_s, e.out_i, residuals, e.params);
        },
        element);
}

}  // namespace

std::vector<Diagnostic> validate(const Netlist& netlist) { return Validator(netlist).run(); }

fock::ModeRegistry simulation_registry(const Netlist& netlist) { return *resolve(netlist).registry; }

SimulationReport simulate(const Netlist& netlist, const Postselection& postselect, const SimulationOptions& options) {
    if (auto diagnostics = validate(netlist); !diagnostics.empty()) {
        std::string message = "invalid netlist";
        for (const auto& d : diagnostics) message += "\n  " + d.to_string();
        throw InvalidNetlist(message);
    }
    ResolvedCircuit resolved = resolve(netlist);
    StateVector state = fock::vacuum(resolved.registry, options.n_max, options.prune_epsilon);

    for (std::size_t k = 0; k < netlist.components.size(); ++k) {
        const Component& component = netlist.components[k];
        try {
            state = apply(state, component.element, resolved.residuals[k]);
            fock::check_normalized(state, "component " + std::to_string(k));
        } catch (const SimulationError&) {
            throw;
        } catch (const Error& e) {
            throw SimulationError(k, component.line, e.what());
        }
    }

    SimulationReport report{state, 1.0, std::nullopt, resolved.residual_modes};
    if (postselect) {
        StateVector::TermMap kept;
        double probability = 0.0;
        for (const auto& [occupation, amp] : state.terms()) {
            if (!postselect(occupation)) continue;
            kept.emplace(occupation, amp);
            probability += std::norm(amp);
        }
        report.success_probability = std::min(probability, 1.0);
        if (probability > 0.0) {
            const double scale = 1.0 / std::sqrt(probability);
            for (auto& [occupation, amp] : kept) amp *= scale;
            report.postselected_state = state.with_terms(std::move(kept));
        }
    } else {
        report.success_probability = std::min(fock::norm(state) * fock::norm(state), 1.0);
    }
    return report;
}

namespace {

void check_stages(unsigned stages, unsigned max_stages) {
    if (stages < 1) throw InvalidArgument("at least one PDU stage is required");
    if (stages > max_stages)
        throw InvalidArgument(std::to_string(stages) + " stages exceeds the state-space guard of " +
                              std::to_string(max_stages));
}

// Declares a binary tree of PDUs rooted at `root`; returns the leaf modes in order.
std::vector<std::size_t> add_tree(Netlist& netlist, std::size_t root, const std::string& prefix, unsigned stages,
                                  const optics::PduParams& params) {
    std::vector<std::size_t> level{root};
    for (unsigned s = 1; s <= stages; ++s) {
        std::vector<std::size_t> next;
        next.reserve(level.size() * 2);
        for (std::size_t j = 0; j < level.size(); ++j) {
            const std::size_t a = netlist.registry.add(prefix + std::to_string(s) + "." + std::to_string(2 * j), Band::Pump);
            const std::size_t b = netlist.registry.add(prefix + std::to_string(s) + "." + std::to_string(2 * j + 1), Band::Pump);
            netlist.components.push_back({Pdu{level[j], a, b, std::nullopt, params}});
            next.push_back(a);
            next.push_back(b);
        }
        level = std::move(next);
    }
    return level;
}

}  // namespace

Netlist build_fock_chain(unsigned stages, const optics::PduParams& params, unsigned max_stages) {
    check_stages(stages, max_stages);
    optics::validate(params);
    Netlist netlist;
    netlist.name = "fock_M" + std::to_string(stages);
    const std::size_t root = netlist.registry.add("t0.0", Band::Pump);
    netlist.components.push_back({Source{root}});
    add_tree(netlist, root, "t", stages, params);
    return netlist;
}

Netlist build_ghz(unsigned stages, double phi, const optics::PduParams& params, unsigned max_stages) {
    check_stages(stages, max_stages);
    optics::validate(params);
    if (!std::isfinite(phi)) throw InvalidArgument("GHZ phase must be finite");
    Netlist netlist;
    netlist.name = "ghz_M" + std::to_string(stages);
    const std::size_t a = netlist.registry.add("a0.0", Band::Pump);
    const std::size_t b = netlist.registry.add("b0.0", Band::Pump);
    netlist.components.push_back({Source{a}});
    netlist.components.push_back({BeamSplitter{a, b, {}}});
    // Reflection already contributes a factor i.
    netlist.components.push_back({Phase{b, phi - std::numbers::pi / 2}});
    const auto leaves_a = add_tree(netlist, a, "a", stages, params);
    const auto leaves_b = add_tree(netlist, b, "b", stages, params);
    for (std::size_t j = 0; j < leaves_a.size(); ++j) netlist.encoding.push_back({leaves_a[j], leaves_b[j]});
    return netlist;
}

Netlist build_cluster4(const ClusterPhases& phases, const optics::PduParams& params) {
    optics::validate(params);
    Netlist netlist;
    netlist.name = "cluster4";
    auto& reg = netlist.registry;
    auto& parts = netlist.components;

    const std::size_t p0 = reg.add("p0", Band::Pump);
    const std::size_t p1 = reg.add("p1", Band::Pump);
    parts.push_back({Source{p0}});
    parts.push_back({BeamSplitter{p0, p1, {}}});
    parts.push_back({Phase{p1, phases.phi1}});

    // Stage 1: waveguides w0..w3 in spatial order carry s0, i0, s1, i1.
    std::array<std::size_t, 4> w{};
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = reg.add("w" + std::to_string(j), Band::Pump);
    parts.push_back({Pdu{p0, w[0], w[1], std::nullopt, params}});
    parts.push_back({Pdu{p1, w[2], w[3], std::nullopt, params}});
    parts.push_back({Phase{w[3], phases.phi3}});

    // Bring the two idler paths together and interfere them.
    parts.push_back({Crosser{w[1], w[2]}});
    parts.push_back({BeamSplitter{w[2], w[3], {}}});
    parts.push_back({Phase{w[3], phases.phi2}});
    parts.push_back({Phase{w[2], phases.phi4}});

    // Stage 2: each path doubles into one rail of two qubits.
    std::array<std::array<std::size_t, 2>, 4> q{};
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t r = 0; r < 2; ++r) q[j][r] = reg.add("q" + std::to_string(j + 1) + ".r" + std::to_string(r), Band::Pump);
    parts.push_back({Pdu{w[0], q[0][0], q[1][0], std::nullopt, params}});
    parts.push_back({Pdu{w[1], q[0][1], q[1][1], std::nullopt, params}});
    parts.push_back({Pdu{w[2], q[2][0], q[3][0], std::nullopt, params}});
    parts.push_back({Pdu{w[3], q[2][1], q[3][1], std::nullopt, params}});

    for (std::size_t j = 0; j < 4; ++j) netlist.encoding.push_back({q[j][0], q[j][1]});
    return netlist;
}

}  // namespace pduforge::circuit
