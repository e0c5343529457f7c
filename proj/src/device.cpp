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

#include "pduforge/device.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pduforge/constants.hpp"
#include "pduforge/errors.hpp"
#include "pduforge/netlist_io.hpp"

namespace pduforge::device {

namespace c = constants;
using std::numbers::pi;

namespace {

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw InvalidArgument(std::string(what) + " must be positive and finite");
}

void require_non_negative(double value, const char* what) {
    if (!(value >= 0.0) || !std::isfinite(value))
        throw InvalidArgument(std::string(what) + " must be non-negative and finite");
}

double square(double x) { return x * x; }

}  // namespace

double angular_frequency(double wavelength) {
    require_positive(wavelength, "wavelength");
    return 2.0 * pi * c::speed_of_light / wavelength;
}

double xi(const DeviceConfig& config) {
    const double k_p = 2.0 * pi * config.n_p0 / config.lambda_p;
    const double k_s = 2.0 * pi * config.n_s0 / config.lambda_s;
    const double k_i = 2.0 * pi * config.n_i0 / config.lambda_i;
    const double group = c::speed_of_light / (config.n_p0 * config.n_s0 * config.n_i0);
    const double overlap = config.a_eff / std::sqrt(config.a_p * config.a_s * config.a_i);
    return config.chi2 / 12.0 * std::sqrt(c::reduced_planck / (pi * c::vacuum_permittivity * config.radius)) *
           std::pow(group, 1.5) * overlap * std::sqrt(k_p * k_s * k_i);
}

double eta_pdc(double xi, double q, double omega) {
    require_non_negative(xi, "xi");
    require_non_negative(q, "Q");
    require_positive(omega, "omega");
    return square(std::sin(2.0 * pi * xi * q / omega));
}

double q_required_dpdc(double xi, double omega) {
    require_positive(omega, "omega");
    require_non_negative(xi, "xi");
    if (xi == 0.0) throw DivisionByZero("no Q reaches unit down-conversion when xi = 0");
    return omega / (4.0 * xi);
}

double interaction_time(double q, double omega) {
    require_non_negative(q, "Q");
    require_positive(omega, "omega");
    return 2.0 * pi * q / omega;
}

double q_slm_min(const DeviceConfig& config, double omega_ref) {
    require_positive(omega_ref, "omega_ref");
    const double dispersion = std::abs(1.0 / config.n_s0 - 1.0 / config.n_i0);
    if (dispersion == 0.0)
        throw DegenerateIndices("signal and idler effective indices are equal; single-mode threshold is unbounded");
    return omega_ref * config.radius / (c::speed_of_light * dispersion);
}

double kappa(const DeviceConfig& config, SfgProcess which) {
    const bool first = which == SfgProcess::Sfg1;
    const double omega_photon = angular_frequency(first ? config.lambda_s : config.lambda_i);
    const double omega_p = angular_frequency(config.lambda_p);
    const double n_photon = first ? config.n_s0 : config.n_i0;
    const double n_laser = first ? config.n_sfg1 : config.n_sfg2;
    const double a_photon = first ? config.a_s : config.a_i;
    const double a_laser = first ? config.a_sfg1 : config.a_sfg2;

    const double overlap = config.a_eff / std::sqrt(a_photon * a_laser * config.a_p);
    return 2.0 * std::sqrt(c::vacuum_permittivity) * std::pow(c::vacuum_permeability, 1.5) *
           (omega_photon * omega_p / (n_photon * n_laser * config.n_p0)) * square(config.d_eff) * square(overlap);
}

double kappa_from_calibration(double power, double length) {
    require_positive(power, "calibration power");
    require_positive(length, "calibration length");
    return square(pi / (2.0 * length)) / power;
}

double eta_puc(double kappa, double power, double length) {
    require_non_negative(kappa, "kappa");
    require_non_negative(power, "power");
    require_non_negative(length, "length");
    return square(std::sin(std::sqrt(kappa * power) * length));
}

double p_required_dpuc(double kappa, double length) {
    require_non_negative(kappa, "kappa");
    require_positive(length, "length");
    if (kappa == 0.0) throw DivisionByZero("no power reaches unit up-conversion when kappa = 0");
    return square(pi / (2.0 * length)) / kappa;
}

double design_kappa(const DeviceConfig& config, SfgProcess which) {
    if (config.kappa_cal_power && config.kappa_cal_length)
        return kappa_from_calibration(*config.kappa_cal_power, *config.kappa_cal_length);
    return kappa(config, which);
}

double sellmeier_index(const SellmeierCoefficients& coeffs, double wavelength) {
    if (!(wavelength >= coeffs.lambda_min && wavelength <= coeffs.lambda_max))
        throw OutOfValidityRange("wavelength outside the Sellmeier validity range");
    if (coeffs.b.size() != coeffs.c_um2.size()) throw InvalidArgument("Sellmeier B and C lists differ in length");
    const double l2 = square(wavelength * 1e6);
    double n2 = coeffs.a;
    for (std::size_t k = 0; k < coeffs.b.size(); ++k) {
        if (coeffs.b[k] == 0.0) continue;
        const double denom = l2 - coeffs.c_um2[k];
        if (denom == 0.0) throw OutOfValidityRange("wavelength sits on a Sellmeier pole");
        n2 += coeffs.b[k] * l2 / denom;
    }
    if (!(n2 > 0.0)) throw OutOfValidityRange("Sellmeier model gives a non-positive n^2");
    return std::sqrt(n2);
}

std::vector<double> Range::values() const {
    if (points == 0) throw InvalidArgument("sweep range needs at least one point");
    if (spacing == Spacing::Log) {
        require_positive(lo, "log range start");
        require_positive(hi, "log range end");
    } else {
        require_non_negative(lo, "range start");
        require_non_negative(hi, "range end");
    }
    if (hi < lo) throw InvalidArgument("sweep range end precedes its start");
    if (points == 1) return {lo};
    std::vector<double> out(points);
    const double n = static_cast<double>(points - 1);
    for (std::size_t k = 0; k < points; ++k) {
        const double t = static_cast<double>(k) / n;
        out[k] = spacing == Spacing::Linear ? lo + (hi - lo) * t : lo * std::pow(hi / lo, t);
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::string SweepTable::to_csv() const {
    std::ostringstream out;
    for (const auto& axis : axes) out << axis << ',';
    out << value_name << '\n';
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out << ',';
            out << circuit::format_real(row[k]);
        }
        out << '\n';
    }
    return out.str();
}

SweepTable sweep_eta_pdc(const DeviceConfig& config, const Range& q_range, double omega) {
    const double strength = xi(config);
    SweepTable table{{"q"}, "eta", {}};
    for (double q : q_range.values()) table.rows.push_back({q, eta_pdc(strength, q, omega)});
    return table;
}

SweepTable sweep_q_required_vs_radius(const DeviceConfig& config, const Range& radius_range, double omega) {
    SweepTable table{{"radius_m"}, "q_required", {}};
    DeviceConfig varied = config;
    for (double r : radius_range.values()) {
        varied.radius = r;
        table.rows.push_back({r, q_required_dpdc(xi(varied), omega)});
    }
    return table;
}

SweepTable sweep_eta_puc(double kappa, const Range& power_range, const Range& length_range) {
    SweepTable table{{"power_w", "length_m"}, "eta", {}};
    const auto lengths = length_range.values();
    for (double p : power_range.values())
        for (double l : lengths) table.rows.push_back({p, l, eta_puc(kappa, p, l)});
    return table;
}

std::vector<ContourPoint> extract_unity_contour(const SweepTable& puc_table) {
    if (puc_table.axes.size() != 2) throw InvalidArgument("contour extraction needs a (power, length) table");
    std::vector<ContourPoint> contour;
    std::size_t start = 0;
    const auto& rows = puc_table.rows;
    while (start < rows.size()) {
        std::size_t end = start;
        while (end < rows.size() && rows[end][0] == rows[start][0]) ++end;

        for (std::size_t k = start + 1; k + 1 < end; ++k) {
            const double e_prev = rows[k - 1][2], e = rows[k][2], e_next = rows[k + 1][2];
            if (!(e >= e_prev && e >= e_next && (e > e_prev || e > e_next))) continue;
            const double h = rows[k][1] - rows[k - 1][1];
            if (std::abs((rows[k + 1][1] - rows[k][1]) - h) > 1e-9 * std::abs(h)) break;  // needs uniform spacing
            // c_j = 1 - 2 eta_j = cos(theta_j), theta advancing by 2 a h per sample.
            const double c_prev = 1.0 - 2.0 * e_prev, c_mid = 1.0 - 2.0 * e, c_next = 1.0 - 2.0 * e_next;
            if (c_mid == 0.0) break;
            const double cos_step = std::clamp((c_prev + c_next) / (2.0 * c_mid), -1.0, 1.0);
            const double step = std::acos(cos_step);
            if (step == 0.0) break;
            const double sin_mid = -(c_next - c_prev) / (2.0 * std::sin(step));
            double theta = std::atan2(sin_mid, c_mid);
            if (theta < 0.0) theta += 2.0 * pi;
            const double rate = step / h;  // 2a
            contour.push_back({rows[k][0], rows[k][1] + (pi - theta) / rate});
            break;
        }
        start = end;
    }
    return contour;
}

DesignSummary summarize(const DeviceConfig& config) {
    DesignSummary s;
    s.xi = xi(config);
    s.omega_q = angular_frequency(config.lambda_q_ref);
    s.omega_slm = angular_frequency(config.lambda_slm_ref);
    s.q_slm_min = q_slm_min(config, s.omega_slm);
    s.q_required_dpdc = q_required_dpdc(s.xi, s.omega_q);
    s.interaction_time = interaction_time(s.q_required_dpdc, s.omega_q);
    s.kappa_formula_sfg1 = kappa(config, SfgProcess::Sfg1);
    s.kappa_formula_sfg2 = kappa(config, SfgProcess::Sfg2);
    s.kappa_calibrated = config.kappa_cal_power && config.kappa_cal_length;
    s.kappa_sfg1 = design_kappa(config, SfgProcess::Sfg1);
    s.kappa_sfg2 = design_kappa(config, SfgProcess::Sfg2);
    s.waveguide_length = config.waveguide_length;
    s.p_required_sfg1 = p_required_dpuc(s.kappa_sfg1, config.waveguide_length);
    s.p_required_sfg2 = p_required_dpuc(s.kappa_sfg2, config.waveguide_length);
    return s;
}

}  // namespace pduforge::device
