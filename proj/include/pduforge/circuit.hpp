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

#pragma once

#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pduforge/errors.hpp"
#include "pduforge/fock.hpp"
#include "pduforge/optics.hpp"

namespace pduforge::circuit {

struct Source {
    std::size_t mode = 0;
    bool operator==(const Source&) const = default;
};

struct BeamSplitter {
    std::size_t m1 = 0;
    std::size_t m2 = 0;
    optics::BeamSplitterSpec spec;
    bool operator==(const BeamSplitter&) const = default;
};

struct Phase {
    std::size_t mode = 0;
    double phi = 0.0;
    bool operator==(const Phase&) const = default;
};

struct Crosser {
    std::size_t m1 = 0;
    std::size_t m2 = 0;
    bool operator==(const Crosser&) const = default;
};

struct Pdu {
    std::size_t in = 0;
    std::size_t out_s = 0;
    std::size_t out_i = 0;
    /// Allocated by simulate() when absent.
    std::optional<optics::PduResiduals> residuals;
    optics::PduParams params;
    bool operator==(const Pdu&) const = default;
};

using Element = std::variant<Source, BeamSplitter, Phase, Crosser, Pdu>;

struct Component {
    Element element;
    /// 1-based line in the netlist file this came from; 0 when built in code.
    std::size_t line = 0;

    bool operator==(const Component& other) const { return element == other.element; }
};

/// One logical qubit stored as a photon in one of two paths.
struct RailPair {
    std::size_t rail0 = 0;
    std::size_t rail1 = 0;
    bool operator==(const RailPair&) const = default;
};

struct Netlist {
    std::string name;
    fock::ModeRegistry registry;
    std::vector<Component> components;
    /// Dual-rail readout, empty for circuits without a logical interpretation.
    std::vector<RailPair> encoding;

    std::size_t pdu_count() const;
};

enum class DiagnosticKind {
    UnknownMode,
    TopologyViolation,
    BandMismatch,
    DuplicateMode,
    InvalidParameter,
};

std::string_view to_string(DiagnosticKind kind);

struct Diagnostic {
    DiagnosticKind kind;
    /// Component index; registry/encoding problems use npos.
    std::size_t component;
    std::string message;

    /// "TopologyViolation@3: ..."
    std::string to_string() const;
};

/// Empty iff the netlist is well formed.
std::vector<Diagnostic> validate(const Netlist& netlist);

using Postselection = std::function<bool(const fock::OccupationVector&)>;

struct SimulationOptions {
    unsigned n_max = fock::kDefaultMaxOccupation;
    double prune_epsilon = fock::kDefaultPruneEpsilon;
};

struct SimulationReport {
    fock::StateVector final_state;
    double success_probability = 1.0;
    std::optional<fock::StateVector> postselected_state;
    /// Auto-allocated PDU failure modes (indices into final_state's registry).
    std::vector<std::size_t> residual_modes;
};

/// Thrown when an element fails during simulation; names the component.
class SimulationError : public Error {
public:
    SimulationError(std::size_t component, std::size_t line, const std::string& what)
        : Error(what), component_(component), line_(line) {}
    std::size_t component() const { return component_; }
    std::size_t line() const { return line_; }

private:
    std::size_t component_;
    std::size_t line_;
};

/// Applies the components in order to the vacuum. Throws InvalidNetlist when
/// validate() reports problems and SimulationError on element failures.
SimulationReport simulate(const Netlist& netlist, const Postselection& postselect = {},
                          const SimulationOptions& options = {});

/// Registry plus auto-allocated residual modes, as seen by simulate().
fock::ModeRegistry simulation_registry(const Netlist& netlist);

inline constexpr unsigned kDefaultMaxStages = 6;

/// Binary tree of 2^M - 1 PDUs fed by a single source.
Netlist build_fock_chain(unsigned stages, const optics::PduParams& params = {},
                         unsigned max_stages = kDefaultMaxStages);

/// Photon split over two branches, each carrying an independent Fock chain.
/// Qubit j pairs the j-th output of branch A (rail 0) with that of branch B.
Netlist build_ghz(unsigned stages, double phi, const optics::PduParams& params = {},
                  unsigned max_stages = kDefaultMaxStages);

struct ClusterPhases {
    double phi1 = std::numbers::pi / 2;
    double phi2 = 7 * std::numbers::pi / 4;
    double phi3 = std::numbers::pi / 2;
    double phi4 = std::numbers::pi / 4;
};

/// Four-qubit linear cluster from two PDU stages and a BS/crosser/phase network.
Netlist build_cluster4(const ClusterPhases& phases = {}, const optics::PduParams& params = {});

}  // namespace pduforge::circuit
