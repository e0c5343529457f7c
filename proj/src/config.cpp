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

#include "pduforge/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "pduforge/device.hpp"

namespace pduforge::device {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
    std::string out;
    for (std::size_t k = 0; k < items.size(); ++k) {
        if (k) out += sep;
        out += items[k];
    }
    return out;
}

struct NumericKey {
    const char* name;
    double DeviceConfig::*field;
};

// Keys every config must provide (indices may come from the Sellmeier model instead).
const std::vector<NumericKey>& required_keys() {
    static const std::vector<NumericKey> keys{
        {"chi2", &DeviceConfig::chi2},           {"d_eff", &DeviceConfig::d_eff},
        {"radius", &DeviceConfig::radius},       {"lambda_p", &DeviceConfig::lambda_p},
        {"lambda_s", &DeviceConfig::lambda_s},   {"lambda_i", &DeviceConfig::lambda_i},
        {"lambda_sfg1", &DeviceConfig::lambda_sfg1}, {"lambda_sfg2", &DeviceConfig::lambda_sfg2},
        {"a_eff", &DeviceConfig::a_eff},         {"a_p", &DeviceConfig::a_p},
        {"a_s", &DeviceConfig::a_s},             {"a_i", &DeviceConfig::a_i},
        {"a_sfg1", &DeviceConfig::a_sfg1},       {"a_sfg2", &DeviceConfig::a_sfg2},
    };
    return keys;
}

struct IndexKey {
    const char* name;
    double DeviceConfig::*field;
    double DeviceConfig::*wavelength;
};

const std::vector<IndexKey>& index_keys() {
    static const std::vector<IndexKey> keys{
        {"n_p0", &DeviceConfig::n_p0, &DeviceConfig::lambda_p},
        {"n_s0", &DeviceConfig::n_s0, &DeviceConfig::lambda_s},
        {"n_i0", &DeviceConfig::n_i0, &DeviceConfig::lambda_i},
        {"n_sfg1", &DeviceConfig::n_sfg1, &DeviceConfig::lambda_sfg1},
        {"n_sfg2", &DeviceConfig::n_sfg2, &DeviceConfig::lambda_sfg2},
    };
    return keys;
}

const std::vector<std::string> kOptionalNumeric{
    "lambda_q_ref", "lambda_slm_ref", "waveguide_length", "kappa_cal_power", "kappa_cal_length",
    "sellmeier_a", "sellmeier_b1", "sellmeier_b2", "sellmeier_b3", "sellmeier_c1_um2", "sellmeier_c2_um2",
    "sellmeier_c3_um2", "sellmeier_lambda_min", "sellmeier_lambda_max"};

const std::vector<std::string> kStringKeys{"sellmeier_source"};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : Error("config error:\n  " + join(problems, "\n  ")), problems_(std::move(problems)) {}

const std::vector<std::string>& known_config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto& k : required_keys()) out.emplace_back(k.name);
        for (const auto& k : index_keys()) out.emplace_back(k.name);
        out.insert(out.end(), kOptionalNumeric.begin(), kOptionalNumeric.end());
        out.insert(out.end(), kStringKeys.begin(), kStringKeys.end());
        return out;
    }();
    return keys;
}

LoadedConfig parse_config(std::string_view text) {
    std::vector<std::string> problems;
    std::map<std::string, double> numbers;
    std::map<std::string, std::string> strings;
    const auto& known = known_config_keys();
    auto is_string_key = [](const std::string& key) {
        return std::find(kStringKeys.begin(), kStringKeys.end(), key) != kStringKeys.end();
    };

    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::string where = "line " + std::to_string(line_no) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            problems.push_back(where + "expected 'key = value'");
            continue;
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            problems.push_back(where + "unknown key '" + key + "'");
            continue;
        }
        if (numbers.contains(key) || strings.contains(key)) {
            problems.push_back(where + "duplicate key '" + key + "'");
            continue;
        }
        if (is_string_key(key)) {
            strings[key] = std::string(value);
            continue;
        }
        double parsed = 0.0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
        if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(parsed)) {
            problems.push_back(where + "'" + key + "' expects a real number, got '" + std::string(value) + "'");
            continue;
        }
        numbers[key] = parsed;
    }

    LoadedConfig loaded;
    DeviceConfig& cfg = loaded.config;
    std::vector<std::string> missing;
    for (const auto& k : required_keys()) {
        if (auto it = numbers.find(k.name); it != numbers.end()) cfg.*(k.field) = it->second;
        else missing.emplace_back(k.name);
    }

    const bool has_sellmeier = numbers.contains("sellmeier_a") || numbers.contains("sellmeier_b1");
    if (has_sellmeier) {
        SellmeierCoefficients s;
        s.a = numbers.contains("sellmeier_a") ? numbers["sellmeier_a"] : 1.0;
        for (int k = 1; k <= 3; ++k) {
            const std::string b = "sellmeier_b" + std::to_string(k);
            const std::string c = "sellmeier_c" + std::to_string(k) + "_um2";
            if (numbers.contains(b) != numbers.contains(c)) {
                problems.push_back("'" + b + "' and '" + c + "' must be given together");
                continue;
            }
            if (!numbers.contains(b)) continue;
            s.b.push_back(numbers[b]);
            s.c_um2.push_back(numbers[c]);
        }
        for (const char* key : {"sellmeier_lambda_min", "sellmeier_lambda_max", "sellmeier_source"}) {
            if (!numbers.contains(key) && !strings.contains(key)) missing.emplace_back(key);
        }
        s.lambda_min = numbers.contains("sellmeier_lambda_min") ? numbers["sellmeier_lambda_min"] : 0.0;
        s.lambda_max = numbers.contains("sellmeier_lambda_max") ? numbers["sellmeier_lambda_max"] : 0.0;
        s.source = strings.contains("sellmeier_source") ? strings["sellmeier_source"] : std::string{};
        cfg.sellmeier = std::move(s);
    }

    const bool have_wavelengths = missing.empty();
    for (const auto& k : index_keys()) {
        if (auto it = numbers.find(k.name); it != numbers.end()) {
            cfg.*(k.field) = it->second;
        } else if (cfg.sellmeier && have_wavelengths) {
            try {
                cfg.*(k.field) = sellmeier_index(*cfg.sellmeier, cfg.*(k.wavelength));
            } catch (const Error& e) {
                problems.push_back(std::string("'") + k.name + "' from Sellmeier model: " + e.what());
            }
        } else if (!cfg.sellmeier) {
            missing.emplace_back(k.name);
        }
    }

    cfg.lambda_q_ref = numbers.contains("lambda_q_ref") ? numbers["lambda_q_ref"] : cfg.lambda_i;
    cfg.lambda_slm_ref = numbers.contains("lambda_slm_ref") ? numbers["lambda_slm_ref"] : cfg.lambda_i;
    if (numbers.contains("waveguide_length")) cfg.waveguide_length = numbers["waveguide_length"];
    if (numbers.contains("kappa_cal_power") != numbers.contains("kappa_cal_length")) {
        problems.push_back("'kappa_cal_power' and 'kappa_cal_length' must be given together");
    } else if (numbers.contains("kappa_cal_power")) {
        cfg.kappa_cal_power = numbers["kappa_cal_power"];
        cfg.kappa_cal_length = numbers["kappa_cal_length"];
    }

    if (!missing.empty()) problems.push_back("missing keys: " + join(missing, ", "));
    if (!problems.empty()) throw ConfigError(std::move(problems));

    loaded.warnings = check_config(cfg);
    return loaded;
}

LoadedConfig load_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ConfigError({"cannot open config file '" + path + "'"});
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_config(buffer.str());
}

std::vector<std::string> check_config(const DeviceConfig& cfg) {
    std::vector<std::string> problems;
    auto positive = [&](double v, const char* name) {
        if (!(v > 0.0)) problems.push_back(std::string(name) + " must be positive");
    };
    positive(cfg.radius, "radius");
    for (double DeviceConfig::*f : {&DeviceConfig::lambda_p, &DeviceConfig::lambda_s, &DeviceConfig::lambda_i,
                                    &DeviceConfig::lambda_sfg1, &DeviceConfig::lambda_sfg2, &DeviceConfig::lambda_q_ref,
                                    &DeviceConfig::lambda_slm_ref, &DeviceConfig::waveguide_length})
        positive(cfg.*f, "wavelengths and lengths");
    for (double DeviceConfig::*f : {&DeviceConfig::a_p, &DeviceConfig::a_s, &DeviceConfig::a_i,
                                    &DeviceConfig::a_sfg1, &DeviceConfig::a_sfg2})
        positive(cfg.*f, "mode areas");
    if (!(cfg.a_eff >= 0.0)) problems.push_back("a_eff must be non-negative");
    if (!(cfg.chi2 >= 0.0)) problems.push_back("chi2 must be non-negative");
    if (!(cfg.d_eff >= 0.0)) problems.push_back("d_eff must be non-negative");
    for (const auto& k : index_keys()) {
        if (!(cfg.*(k.field) > 1.0)) problems.push_back(std::string(k.name) + " must exceed 1");
    }
    if (cfg.kappa_cal_power && !(*cfg.kappa_cal_power > 0.0)) problems.push_back("kappa_cal_power must be positive");
    if (cfg.kappa_cal_length && !(*cfg.kappa_cal_length > 0.0)) problems.push_back("kappa_cal_length must be positive");
    if (!problems.empty()) throw ConfigError(std::move(problems));

    std::vector<std::string> warnings;
    const double mismatch = std::abs(1.0 / cfg.lambda_p - (1.0 / cfg.lambda_s + 1.0 / cfg.lambda_i)) * cfg.lambda_p;
    if (mismatch > 1e-4) {
        std::ostringstream msg;
        msg << "energy conservation 1/lambda_p = 1/lambda_s + 1/lambda_i violated by " << mismatch << " (relative)";
        warnings.push_back(msg.str());
    }
    return warnings;
}

}  // namespace pduforge::device
