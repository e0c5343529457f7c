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

#include "pduforge/analysis.hpp"

#include <cmath>
#include <set>

#include "pduforge/errors.hpp"

namespace pduforge::analysis {

using fock::Amplitude;

fock::Amplitude LogicalState::amplitude(const std::string& bits) const {
    auto it = amplitudes.find(bits);
    return it == amplitudes.end() ? Amplitude{} : it->second;
}

double LogicalState::logical_probability() const {
    double sum = 0.0;
    for (const auto& [bits, amp] : amplitudes) sum += std::norm(amp);
    return sum;
}

LogicalState extract_logical(const fock::StateVector& state, const QubitEncoding& encoding) {
    std::vector<bool> in_encoding(state.mode_count(), false);
    for (const auto& pair : encoding.pairs) {
        for (std::size_t m : {pair.rail0, pair.rail1}) {
            if (m >= state.mode_count())
                throw RegistryMismatch("encoding mode " + std::to_string(m) + " not in state registry");
            if (in_encoding[m]) throw InvalidArgument("encoding uses mode " + std::to_string(m) + " twice");
            in_encoding[m] = true;
        }
    }

    LogicalState out;
    out.qubits = encoding.qubits();
    for (const auto& [occupation, amp] : state.terms()) {
        bool logical = true;
        for (std::size_t m = 0; m < occupation.size() && logical; ++m)
            if (!in_encoding[m] && occupation[m] != 0) logical = false;

        std::string bits;
        bits.reserve(encoding.qubits());
        for (const auto& pair : encoding.pairs) {
            if (!logical) break;
            const unsigned n0 = occupation[pair.rail0];
            const unsigned n1 = occupation[pair.rail1];
            if (n0 == 1 && n1 == 0) bits += '0';
            else if (n0 == 0 && n1 == 1) bits += '1';
            else logical = false;
        }
        if (logical) out.amplitudes[bits] += amp;
        else out.leakage += std::norm(amp);
    }
    return out;
}

double fidelity(const fock::StateVector& state, const fock::StateVector& target) {
    return std::norm(fock::inner_product(target, state));
}

double fidelity(const LogicalState& state, const LogicalState& target) {
    if (state.qubits != target.qubits)
        throw DimensionMismatch("fidelity between " + std::to_string(state.qubits) + " and " +
                                std::to_string(target.qubits) + " qubit states");
    Amplitude overlap{};
    for (const auto& [bits, amp] : target.amplitudes) overlap += std::conj(amp) * state.amplitude(bits);
    return std::norm(overlap);
}

LogicalState target_ghz(std::size_t n, double phi) {
    if (n < 2) throw InvalidArgument("GHZ target needs at least two qubits");
    LogicalState out;
    out.qubits = n;
    const double h = 1.0 / std::sqrt(2.0);
    out.amplitudes[std::string(n, '0')] = Amplitude{h, 0.0};
    out.amplitudes[std::string(n, '1')] = std::polar(h, phi);
    return out;
}

LogicalState target_cluster4() {
    LogicalState out;
    out.qubits = 4;
    out.amplitudes["0000"] = 0.5;
    out.amplitudes["0011"] = 0.5;
    out.amplitudes["1100"] = 0.5;
    out.amplitudes["1111"] = -0.5;
    return out;
}

std::map<unsigned, double> photon_number_distribution(const fock::StateVector& state) {
    std::map<unsigned, double> out;
    for (const auto& [occupation, amp] : state.terms()) out[occupation.total()] += std::norm(amp);
    return out;
}

}  // namespace pduforge::analysis
