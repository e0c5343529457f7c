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

#include "pduforge/optics.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "pduforge/errors.hpp"

namespace pduforge::optics {

using fock::Amplitude;
using fock::OccupationVector;
using fock::StateVector;

namespace {

void check_mode(const StateVector& state, std::size_t mode, const char* what) {
    if (mode >= state.mode_count())
        throw InvalidArgument(std::string(what) + ": mode " + std::to_string(mode) +
                              " not in registry of " + std::to_string(state.mode_count()) + " modes");
}

double binomial(unsigned n, unsigned k) {
    double r = 1.0;
    for (unsigned j = 1; j <= k; ++j) r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
    return r;
}

double factorial(unsigned n) {
    double r = 1.0;
    for (unsigned j = 2; j <= n; ++j) r *= j;
    return r;
}

// c^k for possibly-zero c without pow(0, 0) surprises.
Amplitude ipow(Amplitude base, unsigned exp) {
    Amplitude r{1.0, 0.0};
    for (unsigned j = 0; j < exp; ++j) r *= base;
    return r;
}

}  // namespace

void validate(const PduParams& params) {
    for (double eta : {params.eta_pdc, params.eta_puc_s, params.eta_puc_i}) {
        if (!(eta >= 0.0 && eta <= 1.0))
            throw InvalidArgument("PDU efficiency " + std::to_string(eta) + " outside [0, 1]");
    }
}

StateVector apply_beamsplitter(const StateVector& state, std::size_t m1, std::size_t m2,
                               const BeamSplitterSpec& spec) {
    check_mode(state, m1, "beam splitter");
    check_mode(state, m2, "beam splitter");
    if (m1 == m2) throw InvalidArgument("beam splitter needs two distinct modes");
    if (!std::isfinite(spec.theta)) throw InvalidArgument("beam splitter angle must be finite");

    const Amplitude c{std::cos(spec.theta), 0.0};
    const Amplitude is{0.0, std::sin(spec.theta)};

    StateVector::TermMap out;
    for (const auto& [occupation, amp] : state.terms()) {
        const unsigned n1 = occupation[m1];
        const unsigned n2 = occupation[m2];
        if (n1 == 0 && n2 == 0) {
            out[occupation] += amp;
            continue;
        }
        // (c A + is B)^n1 (is A + c B)^n2 |0>, normalized by 1/sqrt(n1! n2!).
        // Coefficients of A^p B^(N-p) are collected before the sqrt(p!(N-p)!) factor.
        const unsigned total = n1 + n2;
        std::vector<Amplitude> poly(total + 1, Amplitude{});
        for (unsigned j = 0; j <= n1; ++j) {
            const Amplitude left = binomial(n1, j) * ipow(c, j) * ipow(is, n1 - j);
            if (left == Amplitude{}) continue;
            for (unsigned k = 0; k <= n2; ++k) {
                const Amplitude right = binomial(n2, k) * ipow(is, k) * ipow(c, n2 - k);
                if (right == Amplitude{}) continue;
                poly[j + k] += left * right;
            }
        }
        const double inv_norm = 1.0 / std::sqrt(factorial(n1) * factorial(n2));
        for (unsigned p = 0; p <= total; ++p) {
            if (poly[p] == Amplitude{}) continue;
            const double bosonic = std::sqrt(factorial(p) * factorial(total - p));
            OccupationVector key = occupation.with(m1, p).with(m2, total - p);
            out[std::move(key)] += amp * poly[p] * (bosonic * inv_norm);
        }
    }
    return state.with_terms(std::move(out));
}

StateVector apply_phase(const StateVector& state, std::size_t mode, double phi) {
    check_mode(state, mode, "phase");
    if (!std::isfinite(phi)) throw InvalidArgument("phase must be finite");
    StateVector::TermMap out;
    for (const auto& [occupation, amp] : state.terms()) {
        const double angle = static_cast<double>(occupation[mode]) * phi;
        out.emplace(occupation, occupation[mode] == 0 ? amp : amp * std::polar(1.0, angle));
    }
    return state.with_terms(std::move(out));
}

StateVector apply_crosser(const StateVector& state, std::size_t m1, std::size_t m2) {
    check_mode(state, m1, "crosser");
    check_mode(state, m2, "crosser");
    if (m1 == m2) throw InvalidArgument("crosser needs two distinct modes");
    StateVector::TermMap out;
    for (const auto& [occupation, amp] : state.terms())
        out.emplace(occupation.with(m1, occupation[m2]).with(m2, occupation[m1]), amp);
    return state.with_terms(std::move(out));
}

StateVector apply_pdu(const StateVector& state, std::size_t in_mode, std::size_t out_s,
                      std::size_t out_i, const PduResiduals& residuals, const PduParams& params) {
    validate(params);
    const std::array<std::size_t, 6> modes{in_mode, out_s, out_i, residuals.pdc_fail,
                                           residuals.puc_s_fail, residuals.puc_i_fail};
    for (std::size_t a = 0; a < modes.size(); ++a) {
        check_mode(state, modes[a], "pdu");
        for (std::size_t b = a + 1; b < modes.size(); ++b)
            if (modes[a] == modes[b]) throw InvalidArgument("pdu modes must be pairwise distinct");
    }

    const double keep = std::sqrt(1.0 - params.eta_pdc);
    const Amplitude convert{0.0, -std::sqrt(params.eta_pdc)};
    const double s_up = std::sqrt(params.eta_puc_s);
    const double s_fail = std::sqrt(1.0 - params.eta_puc_s);
    const double i_up = std::sqrt(params.eta_puc_i);
    const double i_fail = std::sqrt(1.0 - params.eta_puc_i);

    StateVector::TermMap out;
    auto emit = [&out](OccupationVector key, Amplitude value) {
        if (value != Amplitude{}) out[std::move(key)] += value;
    };

    for (const auto& [occupation, amp] : state.terms()) {
        const unsigned pump = occupation[in_mode];
        if (pump == 0) {
            out[occupation] += amp;
            continue;
        }
        if (pump >= 2)
            throw PumpOccupancyUnsupported("pdu input mode " + std::to_string(in_mode) + " holds " +
                                           std::to_string(pump) + " photons in term " +
                                           occupation.to_string());
        for (std::size_t m : {out_s, out_i, residuals.pdc_fail, residuals.puc_s_fail, residuals.puc_i_fail}) {
            if (occupation[m] != 0)
                throw PduOutputOccupied("pdu output mode " + std::to_string(m) +
                                        " is occupied in term " + occupation.to_string());
        }
        const OccupationVector base = occupation.with(in_mode, 0);
        emit(base.with(residuals.pdc_fail, 1), amp * keep);

        const Amplitude pair = amp * convert;
        const std::array<std::pair<std::size_t, double>, 2> signal{{{out_s, s_up}, {residuals.puc_s_fail, s_fail}}};
        const std::array<std::pair<std::size_t, double>, 2> idler{{{out_i, i_up}, {residuals.puc_i_fail, i_fail}}};
        for (const auto& [s_mode, s_amp] : signal) {
            for (const auto& [i_mode, i_amp] : idler) {
                emit(base.with(s_mode, 1).with(i_mode, 1), pair * (s_amp * i_amp));
            }
        }
    }
    return state.with_terms(std::move(out));
}

}  // namespace pduforge::optics
