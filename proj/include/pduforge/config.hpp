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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pduforge/errors.hpp"

namespace pduforge::device {

/// n^2(lambda) = a + sum_k b_k lambda^2 / (lambda^2 - c_k), lambda in micrometres.
struct SellmeierCoefficients {
    double a = 1.0;
    std::vector<double> b;
    std::vector<double> c_um2;
    double lambda_min = 0.0;  // m
    double lambda_max = 0.0;  // m
    std::string source;
};

/// Physical parameters of one PDU design, SI units throughout.
struct DeviceConfig {
    double chi2 = 0.0;    // m/V, cavity down-conversion
    double d_eff = 0.0;   // m/V, waveguide up-conversion
    double radius = 0.0;  // m

    double lambda_p = 0.0;
    double lambda_s = 0.0;
    double lambda_i = 0.0;
    double lambda_sfg1 = 0.0;
    double lambda_sfg2 = 0.0;

    // Effective indices.
    double n_p0 = 0.0;
    double n_s0 = 0.0;
    double n_i0 = 0.0;
    double n_sfg1 = 0.0;
    double n_sfg2 = 0.0;

    // Areas, m^2.
    double a_eff = 0.0;
    double a_p = 0.0;
    double a_s = 0.0;
    double a_i = 0.0;
    double a_sfg1 = 0.0;
    double a_sfg2 = 0.0;

    std::optional<SellmeierCoefficients> sellmeier;

    /// Wavelength at which Q is quoted for the down-conversion requirement.
    double lambda_q_ref = 0.0;
    /// Wavelength used as omega in the single-longitudinal-mode threshold.
    double lambda_slm_ref = 0.0;
    /// Up-conversion waveguide length for the power requirement.
    double waveguide_length = 1e-2;
    /// Operating point (power, length) reaching unit up-conversion; when set,
    /// kappa is taken from it instead of the closed-form expression.
    std::optional<double> kappa_cal_power;
    std::optional<double> kappa_cal_length;
};

/// Parse problems, one message per offending line or missing key.
class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const { return problems_; }

private:
    std::vector<std::string> problems_;
};

struct LoadedConfig {
    DeviceConfig config;
    std::vector<std::string> warnings;
};

/**
 * Reads `key = value` lines ('#' comments). Unknown keys, malformed numbers,
 * duplicated or missing keys raise ConfigError listing every problem found.
 * Explicit indices take precedence over the Sellmeier model, which fills in
 * any index key that is absent.
 */
LoadedConfig parse_config(std::string_view text);
LoadedConfig load_config_file(const std::string& path);

/// Range checks; returns soft warnings (energy conservation), throws ConfigError on hard failures.
std::vector<std::string> check_config(const DeviceConfig& config);

/// Every key accepted by parse_config.
const std::vector<std::string>& known_config_keys();

}  // namespace pduforge::device
