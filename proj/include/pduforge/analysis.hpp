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
#include <map>
#include <string>
#include <vector>

#include "pduforge/circuit.hpp"
#include "pduforge/fock.hpp"

namespace pduforge::analysis {

/// Ordered dual-rail pairs; |0~> is a photon in rail0, |1~> in rail1.
struct QubitEncoding {
    std::vector<circuit::RailPair> pairs;

    std::size_t qubits() const { return pairs.size(); }
};

/// Amplitudes keyed by bit strings, qubit 0 first (leftmost character).
struct LogicalState {
    std::size_t qubits = 0;
    std::map<std::string, fock::Amplitude> amplitudes;
    /// Probability outside the one-photon-per-pair subspace.
    double leakage = 0.0;

    fock::Amplitude amplitude(const std::string& bits) const;
    double logical_probability() const;
};

LogicalState extract_logical(const fock::StateVector& state, const QubitEncoding& encoding);

/// |<target|state>|^2. Throws RegistryMismatch / DimensionMismatch.
double fidelity(const fock::StateVector& state, const fock::StateVector& target);
double fidelity(const LogicalState& state, const LogicalState& target);

/// (|0..0> + e^{i phi}|1..1>)/sqrt(2) on n qubits, n >= 2.
LogicalState target_ghz(std::size_t n, double phi);
/// (|0000> + |0011> + |1100> - |1111>)/2.
LogicalState target_cluster4();

/// Total photon count -> probability.
std::map<unsigned, double> photon_number_distribution(const fock::StateVector& state);

}  // namespace pduforge::analysis
