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
#include <numbers>

#include "pduforge/fock.hpp"

namespace pduforge::optics {

/// Conversion efficiencies of one photon-number doubling unit.
///
/// The down-converted branch carries a fixed -i, the up-converted branches a
/// fixed +1; failure branches carry real positive amplitudes.
struct PduParams {
    double eta_pdc = 1.0;
    double eta_puc_s = 1.0;
    double eta_puc_i = 1.0;

    bool operator==(const PduParams&) const = default;
};

/// Throws InvalidArgument unless every efficiency is a finite value in [0, 1].
void validate(const PduParams& params);

/// Symmetric beam splitter: a+ -> cos(t) a+ + i sin(t) b+, b+ -> i sin(t) a+ + cos(t) b+.
struct BeamSplitterSpec {
    double theta = std::numbers::pi / 4;

    bool operator==(const BeamSplitterSpec&) const = default;
};

/// Failure modes of a PDU: unconverted pump, unconverted signal, unconverted idler.
struct PduResiduals {
    std::size_t pdc_fail = 0;
    std::size_t puc_s_fail = 0;
    std::size_t puc_i_fail = 0;

    bool operator==(const PduResiduals&) const = default;
};

/// Acts on arbitrary occupations by expanding the transformed creation
/// operators. Any real theta is accepted; theta and -theta are inverses.
fock::StateVector apply_beamsplitter(const fock::StateVector& state, std::size_t m1, std::size_t m2,
                                     const BeamSplitterSpec& spec);

/// Multiplies each term by exp(i n_m phi).
fock::StateVector apply_phase(const fock::StateVector& state, std::size_t mode, double phi);

/// Swaps the occupations of two modes.
fock::StateVector apply_crosser(const fock::StateVector& state, std::size_t m1, std::size_t m2);

/**
 * Photon-number doubling unit: cavity down-conversion followed by an
 * up-conversion stage on each daughter photon.
 *
 * For a term holding one photon in `in_mode`:
 *   sqrt(1-eta_pdc)                         -> photon in pdc_fail
 *   -i sqrt(eta_pdc) * [sqrt(eta_s)  out_s  + sqrt(1-eta_s) puc_s_fail]
 *                    * [sqrt(eta_i)  out_i  + sqrt(1-eta_i) puc_i_fail]
 * Terms with an empty input are unchanged. Two or more input photons throw
 * PumpOccupancyUnsupported. Output and residual modes must be empty on every
 * converted term (PduOutputOccupied otherwise).
 */
fock::StateVector apply_pdu(const fock::StateVector& state, std::size_t in_mode, std::size_t out_s,
                            std::size_t out_i, const PduResiduals& residuals, const PduParams& params);

}  // namespace pduforge::optics
