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

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pduforge::fock {

/// Frequency band a spatial path is tagged with.
enum class Band { Pump, Signal, Idler, Residual };

std::string_view to_string(Band band);
std::optional<Band> parse_band(std::string_view text);

struct ModeDescriptor {
    std::size_t index = 0;
    std::string path_label;
    Band band = Band::Pump;

    bool operator==(const ModeDescriptor&) const = default;
};

/// Ordered set of modes. Indices are always 0..size()-1 in insertion order.
class ModeRegistry {
public:
    ModeRegistry() = default;

    /// Appends a mode and returns its index.
    std::size_t add(std::string path_label, Band band);

    std::size_t size() const { return modes_.size(); }
    bool empty() const { return modes_.empty(); }
    const ModeDescriptor& operator[](std::size_t index) const { return modes_.at(index); }
    const std::vector<ModeDescriptor>& modes() const { return modes_; }

    auto begin() const { return modes_.begin(); }
    auto end() const { return modes_.end(); }

    bool operator==(const ModeRegistry&) const = default;

private:
    std::vector<ModeDescriptor> modes_;
};

using RegistryPtr = std::shared_ptr<const ModeRegistry>;

/// Photon counts, one per registry mode, ordered by mode index.
class OccupationVector {
public:
    OccupationVector() = default;
    explicit OccupationVector(std::size_t modes) : counts_(modes, 0) {}
    OccupationVector(std::initializer_list<unsigned> counts);

    std::size_t size() const { return counts_.size(); }
    unsigned operator[](std::size_t mode) const { return counts_[mode]; }
    void set(std::size_t mode, unsigned count);
    unsigned total() const;

    /// Copy with `count` photons at `mode`.
    OccupationVector with(std::size_t mode, unsigned count) const;
    /// Copy extended with trailing empty modes.
    OccupationVector padded(std::size_t extra_modes) const;

    /// "(1,0,2)"
    std::string to_string() const;

    auto operator<=>(const OccupationVector&) const = default;
    bool operator==(const OccupationVector&) const = default;

private:
    std::vector<std::uint8_t> counts_;
};

using Amplitude = std::complex<double>;

inline constexpr unsigned kDefaultMaxOccupation = 4;
inline constexpr unsigned kMaxOccupationLimit = 64;
inline constexpr double kDefaultPruneEpsilon = 1e-14;
inline constexpr double kNormTolerance = 1e-10;

/**
 * Sparse superposition of multimode Fock basis states.
 *
 * Terms are kept in an ordered map so iteration (and every printed or
 * serialized form derived from it) is deterministic. A StateVector never
 * stores a term whose modulus is below its prune epsilon, and never stores a
 * term exceeding the per-mode occupation cap.
 */
class StateVector {
public:
    using TermMap = std::map<OccupationVector, Amplitude>;

    /// Builds a state from raw terms: sub-epsilon terms are dropped, no
    /// renormalization is applied. Throws OccupancyOverflow or InvalidArgument.
    StateVector(RegistryPtr registry, TermMap terms,
                unsigned n_max = kDefaultMaxOccupation,
                double prune_epsilon = kDefaultPruneEpsilon);

    const ModeRegistry& registry() const { return *registry_; }
    const RegistryPtr& registry_ptr() const { return registry_; }
    std::size_t mode_count() const { return registry_->size(); }
    unsigned n_max() const { return n_max_; }
    double prune_epsilon() const { return prune_epsilon_; }

    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    /// Zero for absent terms.
    Amplitude amplitude(const OccupationVector& occupation) const;

    /// Same registry and settings, different terms.
    StateVector with_terms(TermMap terms) const;

private:
    RegistryPtr registry_;
    TermMap terms_;
    unsigned n_max_;
    double prune_epsilon_;
};

bool same_registry(const StateVector& a, const StateVector& b);

StateVector vacuum(RegistryPtr registry, unsigned n_max = kDefaultMaxOccupation,
                   double prune_epsilon = kDefaultPruneEpsilon);

/// Applies a^+ on `mode` and renormalizes.
StateVector create_photon(const StateVector& state, std::size_t mode);

/// <a|b>. Throws RegistryMismatch.
Amplitude inner_product(const StateVector& a, const StateVector& b);

double norm(const StateVector& state);

/// Drops terms with |amplitude| < epsilon, then renormalizes. Requires 0 <= epsilon < 1.
StateVector prune(const StateVector& state, double epsilon);

struct NewMode {
    std::string path_label;
    Band band = Band::Residual;
};

/// Appends vacuum modes to the registry; every key gains trailing zeros.
StateVector extend_registry(const StateVector& state, const std::vector<NewMode>& new_modes);

/// Throws UnitarityViolation when |norm - 1| >= tolerance.
void check_normalized(const StateVector& state, std::string_view context,
                      double tolerance = kNormTolerance);

}  // namespace pduforge::fock
