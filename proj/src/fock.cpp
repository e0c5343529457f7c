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

#include "pduforge/fock.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "pduforge/errors.hpp"

namespace pduforge::fock {

std::string_view to_string(Band band) {
    switch (band) {
        case Band::Pump: return "pump";
        case Band::Signal: return "signal";
        case Band::Idler: return "idler";
        case Band::Residual: return "residual";
    }
    return "unknown";
}

std::optional<Band> parse_band(std::string_view text) {
    if (text == "pump") return Band::Pump;
    if (text == "signal") return Band::Signal;
    if (text == "idler") return Band::Idler;
    if (text == "residual") return Band::Residual;
    return std::nullopt;
}

std::size_t ModeRegistry::add(std::string path_label, Band band) {
    const std::size_t index = modes_.size();
    modes_.push_back(ModeDescriptor{index, std::move(path_label), band});
    return index;
}

OccupationVector::OccupationVector(std::initializer_list<unsigned> counts) {
    counts_.reserve(counts.size());
    for (unsigned c : counts) {
        if (c > 255) throw InvalidArgument("occupation count above 255");
        counts_.push_back(static_cast<std::uint8_t>(c));
    }
}

void OccupationVector::set(std::size_t mode, unsigned count) {
    if (count > 255) throw InvalidArgument("occupation count above 255");
    counts_.at(mode) = static_cast<std::uint8_t>(count);
}

unsigned OccupationVector::total() const {
    return std::accumulate(counts_.begin(), counts_.end(), 0u);
}

OccupationVector OccupationVector::with(std::size_t mode, unsigned count) const {
    OccupationVector copy = *this;
    copy.set(mode, count);
    return copy;
}

OccupationVector OccupationVector::padded(std::size_t extra_modes) const {
    OccupationVector copy = *this;
    copy.counts_.resize(counts_.size() + extra_modes, 0);
    return copy;
}

std::string OccupationVector::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(counts_[i]);
    }
    out += ')';
    return out;
}

StateVector::StateVector(RegistryPtr registry, TermMap terms, unsigned n_max, double prune_epsilon)
    : registry_(std::move(registry)), n_max_(n_max), prune_epsilon_(prune_epsilon) {
    if (!registry_) throw InvalidArgument("state requires a mode registry");
    if (n_max_ < 1 || n_max_ > kMaxOccupationLimit)
        throw InvalidArgument("n_max must lie in [1, " + std::to_string(kMaxOccupationLimit) + "]");
    if (!(prune_epsilon_ >= 0.0 && prune_epsilon_ < 1.0))
        throw InvalidArgument("prune epsilon must lie in [0, 1)");

    const std::size_t modes = registry_->size();
    for (auto it = terms.begin(); it != terms.end();) {
        const auto& [occupation, amp] = *it;
        if (occupation.size() != modes)
            throw RegistryMismatch("occupation " + occupation.to_string() + " has " +
                                   std::to_string(occupation.size()) + " modes, registry has " +
                                   std::to_string(modes));
        if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()))
            throw InvalidArgument("non-finite amplitude on " + occupation.to_string());
        if (std::abs(amp) < prune_epsilon_ || amp == Amplitude{}) {
            it = terms.erase(it);
            continue;
        }
        for (std::size_t m = 0; m < modes; ++m) {
            if (occupation[m] > n_max_)
                throw OccupancyOverflow("mode " + std::to_string(m) + " would hold " +
                                        std::to_string(occupation[m]) + " photons (n_max " +
                                        std::to_string(n_max_) + ")");
        }
        ++it;
    }
    terms_ = std::move(terms);
}

Amplitude StateVector::amplitude(const OccupationVector& occupation) const {
    auto it = terms_.find(occupation);
    return it == terms_.end() ? Amplitude{} : it->second;
}

StateVector StateVector::with_terms(TermMap terms) const {
    return StateVector(registry_, std::move(terms), n_max_, prune_epsilon_);
}

bool same_registry(const StateVector& a, const StateVector& b) {
    return a.registry_ptr() == b.registry_ptr() || a.registry() == b.registry();
}

StateVector vacuum(RegistryPtr registry, unsigned n_max, double prune_epsilon) {
    if (!registry || registry->empty()) throw InvalidArgument("vacuum requires at least one mode");
    StateVector::TermMap terms;
    terms.emplace(OccupationVector(registry->size()), Amplitude{1.0, 0.0});
    return StateVector(std::move(registry), std::move(terms), n_max, prune_epsilon);
}

StateVector create_photon(const StateVector& state, std::size_t mode) {
    if (mode >= state.mode_count())
        throw InvalidArgument("mode " + std::to_string(mode) + " not in registry");
    StateVector::TermMap out;
    for (const auto& [occupation, amp] : state.terms()) {
        const unsigned n = occupation[mode];
        if (n + 1 > state.n_max())
            throw OccupancyOverflow("create_photon on mode " + std::to_string(mode) +
                                    " exceeds n_max " + std::to_string(state.n_max()));
        out[occupation.with(mode, n + 1)] += amp * std::sqrt(static_cast<double>(n + 1));
    }
    StateVector raw = state.with_terms(std::move(out));
    const double nrm = norm(raw);
    if (nrm == 0.0) return raw;
    StateVector::TermMap scaled;
    for (const auto& [occupation, amp] : raw.terms()) scaled.emplace(occupation, amp / nrm);
    return state.with_terms(std::move(scaled));
}

Amplitude inner_product(const StateVector& a, const StateVector& b) {
    if (!same_registry(a, b)) throw RegistryMismatch("inner product across different registries");
    Amplitude sum{};
    // Walk the smaller map, look up in the larger.
    const bool a_smaller = a.size() <= b.size();
    const auto& small = a_smaller ? a.terms() : b.terms();
    const auto& large = a_smaller ? b.terms() : a.terms();
    for (const auto& [occupation, amp] : small) {
        auto it = large.find(occupation);
        if (it == large.end()) continue;
        sum += a_smaller ? std::conj(amp) * it->second : std::conj(it->second) * amp;
    }
    return sum;
}

double norm(const StateVector& state) {
    double sum = 0.0;
    for (const auto& [occupation, amp] : state.terms()) sum += std::norm(amp);
    return std::sqrt(sum);
}

StateVector prune(const StateVector& state, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon < 1.0)) throw InvalidArgument("prune epsilon must lie in [0, 1)");
    StateVector::TermMap kept;
    double sum = 0.0;
    for (const auto& [occupation, amp] : state.terms()) {
        if (std::abs(amp) < epsilon) continue;
        kept.emplace(occupation, amp);
        sum += std::norm(amp);
    }
    if (sum > 0.0) {
        const double scale = 1.0 / std::sqrt(sum);
        for (auto& [occupation, amp] : kept) amp *= scale;
    }
    return state.with_terms(std::move(kept));
}

StateVector extend_registry(const StateVector& state, const std::vector<NewMode>& new_modes) {
    auto registry = std::make_shared<ModeRegistry>(state.registry());
    for (const auto& mode : new_modes) registry->add(mode.path_label, mode.band);
    StateVector::TermMap terms;
    for (const auto& [occupation, amp] : state.terms())
        terms.emplace(occupation.padded(new_modes.size()), amp);
    return StateVector(std::move(registry), std::move(terms), state.n_max(), state.prune_epsilon());
}

void check_normalized(const StateVector& state, std::string_view context, double tolerance) {
    const double deviation = std::abs(norm(state) - 1.0);
    if (!(deviation < tolerance)) {
        std::ostringstream msg;
        msg << context << ": norm drifted by " << deviation;
        throw UnitarityViolation(msg.str());
    }
}

}  // namespace pduforge::fock
