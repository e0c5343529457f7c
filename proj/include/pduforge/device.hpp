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
#include <string>
#include <utility>
#include <vector>

#include "pduforge/config.hpp"

namespace pduforge::device {

/// 2 pi c / lambda.
double angular_frequency(double wavelength);

/// Cavity three-wave-mixing strength (rad/s) of the down-conversion ring.
double xi(const DeviceConfig& config);

/// sin^2(2 pi xi Q / omega).
double eta_pdc(double xi, double q, double omega);

/// Smallest Q giving unit down-conversion, omega / (4 xi). Throws DivisionByZero for xi = 0.
double q_required_dpdc(double xi, double omega);

/// t1 = 2 pi Q / omega, the nonlinear interaction time in seconds.
double interaction_time(double q, double omega);

/// Q above which only one signal/idler longitudinal mode pair oscillates.
/// Throws DegenerateIndices when n_s0 == n_i0.
double q_slm_min(const DeviceConfig& config, double omega_ref);

enum class SfgProcess { Sfg1, Sfg2 };

/**
 * Closed-form up-conversion strength (W^-1 m^-2) for the signal photon with
 * the SFG1 laser (Sfg1) or the idler photon with the SFG2 laser (Sfg2).
 * Cross-check against kappa_from_calibration before relying on it.
 */
double kappa(const DeviceConfig& config, SfgProcess which);

/// kappa that puts the first unit-efficiency point at (power, length).
double kappa_from_calibration(double power, double length);

/// sin^2(sqrt(kappa P) l).
double eta_puc(double kappa, double power, double length);

/// (pi / (2 l))^2 / kappa. Throws DivisionByZero for kappa = 0.
double p_required_dpuc(double kappa, double length);

/// kappa used for design: the calibration point when configured, otherwise the closed form.
double design_kappa(const DeviceConfig& config, SfgProcess which);

/// Throws OutOfValidityRange outside [lambda_min, lambda_max] or at a pole.
double sellmeier_index(const SellmeierCoefficients& coeffs, double wavelength);

enum class Spacing { Linear, Log };

struct Range {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t points = 0;
    Spacing spacing = Spacing::Linear;

    /// Sample positions; lo and hi are hit exactly.
    std::vector<double> values() const;
};

/// Dense table for plotting: axis columns followed by one value column.
struct SweepTable {
    std::vector<std::string> axes;
    std::string value_name;
    std::vector<std::vector<double>> rows;

    /// Header row, then one line per row; full round-trip precision.
    std::string to_csv() const;
};

/// Columns Q, eta.
SweepTable sweep_eta_pdc(const DeviceConfig& config, const Range& q_range, double omega);
/// Columns radius_m, q_required.
SweepTable sweep_q_required_vs_radius(const DeviceConfig& config, const Range& radius_range, double omega);
/// Columns power_w, length_m, eta; power-major.
SweepTable sweep_eta_puc(double kappa, const Range& power_range, const Range& length_range);

/// One point of the first unit-efficiency line in a (power, length) table.
struct ContourPoint {
    double power = 0.0;
    double length = 0.0;
};

/**
 * Recovers, for every power row that contains an interior local maximum of
 * eta, the length of the first eta = 1 point. Uses only the tabulated
 * values: three equally spaced samples of a sin^2 profile fix its spatial
 * frequency exactly, which places the first peak at pi / (2 a).
 */
std::vector<ContourPoint> extract_unity_contour(const SweepTable& puc_table);

/// Headline requirements of one design.
struct DesignSummary {
    double xi = 0.0;
    double omega_q = 0.0;
    double omega_slm = 0.0;
    double q_slm_min = 0.0;
    double q_required_dpdc = 0.0;
    double interaction_time = 0.0;
    double kappa_sfg1 = 0.0;
    double kappa_sfg2 = 0.0;
    double kappa_formula_sfg1 = 0.0;
    double kappa_formula_sfg2 = 0.0;
    bool kappa_calibrated = false;
    double waveguide_length = 0.0;
    double p_required_sfg1 = 0.0;
    double p_required_sfg2 = 0.0;
};

DesignSummary summarize(const DeviceConfig& config);

}  // namespace pduforge::device
