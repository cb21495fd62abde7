// SPDX-License-Identifier: Apache-2.0
//
// thzap - indoor terahertz access-point placement simulator
// Copyright (C) 2026 The thzap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "thzap/absorption.hpp"
#include "thzap/lambert_w.hpp"

namespace thzap
{

inline constexpr double speed_of_light = 299792458.0;

// Boundary conversions. Everything past the config layer is linear SI.
template <typename Scalar>
Scalar db_to_linear(Scalar db) { return std::pow(Scalar(10), db / Scalar(10)); }

template <typename Scalar>
Scalar linear_to_db(Scalar lin) { return Scalar(10) * std::log10(lin); }

template <typename Scalar>
Scalar dbm_to_watt(Scalar dbm) { return db_to_linear(dbm) / Scalar(1000); }

/// Radio and channel description of one THz link.
///
/// Defaults are the indoor reference scenario: 570 GHz carrier, 10 GHz channel,
/// 10 degree pencil beams at both ends, -193.85 dB/Hz noise density, 60 % humidity.
/// `tx_power_w` is the per-AP power; splitting a room budget across APs happens in
/// the simulation layer.
template <typename Scalar = double>
struct LinkBudgetParams
{
    Scalar carrier_hz = Scalar(570e9);
    Scalar bandwidth_hz = Scalar(10e9);
    Scalar tx_power_w = Scalar(1e-3);
    Scalar tx_beamwidth_deg = Scalar(10);
    Scalar rx_beamwidth_deg = Scalar(10);
    Scalar noise_psd_w_per_hz = db_to_linear(Scalar(-193.85));
    Scalar humidity = Scalar(0.6);
    Scalar temperature_c = Scalar(25);
    std::optional<Scalar> tau_override;
    std::shared_ptr<const AbsorptionTable> absorption; // null selects AbsorptionTable::builtin()

    void validate() const
    {
        auto require = [](bool ok, const char *what)
        {
            if (!ok)
                throw std::invalid_argument(std::string("LinkBudgetParams: ") + what);
        };
        require(carrier_hz > 0, "carrier_hz must be positive");
        require(bandwidth_hz > 0, "bandwidth_hz must be positive");
        require(tx_power_w > 0, "tx_power_w must be positive");
        require(noise_psd_w_per_hz > 0, "noise_psd_w_per_hz must be positive");
        require(tx_beamwidth_deg > 0 && tx_beamwidth_deg <= 360, "tx_beamwidth_deg must be in (0, 360]");
        require(rx_beamwidth_deg > 0 && rx_beamwidth_deg <= 360, "rx_beamwidth_deg must be in (0, 360]");
        require(humidity >= 0 && humidity <= 1, "humidity must be in [0, 1]");
        require(!tau_override || *tau_override >= 0, "tau_override must be non-negative");
    }
};

// Conical main lobe from a uniformly illuminated circular aperture, beamwidth in degrees.
template <typename Scalar>
Scalar antenna_gain(Scalar beamwidth_deg)
{
    if (!(beamwidth_deg > 0) || beamwidth_deg > Scalar(360))
        throw std::domain_error("antenna_gain: beamwidth must be in (0, 360] degrees");
    return Scalar(52525) / (beamwidth_deg * beamwidth_deg);
}

template <typename Scalar>
Scalar absorption_coefficient(const LinkBudgetParams<Scalar> &p)
{
    if (p.tau_override)
        return *p.tau_override;
    const AbsorptionTable &table = p.absorption ? *p.absorption : AbsorptionTable::builtin();
    return Scalar(table.tau(double(p.carrier_hz), double(p.humidity)));
}

// (4 pi d f / c)^2
template <typename Scalar>
Scalar spreading_loss(Scalar distance_m, Scalar carrier_hz)
{
    const Scalar k = Scalar(4) * std::numbers::pi_v<Scalar> * distance_m * carrier_hz / Scalar(speed_of_light);
    return k * k;
}

template <typename Scalar>
Scalar total_path_loss(Scalar distance_m, Scalar tau_per_m, Scalar carrier_hz)
{
    if (!(distance_m > 0))
        throw std::domain_error("total_path_loss: distance must be positive");
    return spreading_loss(distance_m, carrier_hz) * std::exp(tau_per_m * distance_m);
}

template <typename Scalar>
Scalar total_path_loss(Scalar distance_m, const LinkBudgetParams<Scalar> &p)
{
    return total_path_loss(distance_m, absorption_coefficient(p), p.carrier_hz);
}

// P_t G_t G_r, the numerator shared by the SNR and radius equations.
template <typename Scalar>
Scalar effective_radiated_gain(const LinkBudgetParams<Scalar> &p)
{
    return p.tx_power_w * antenna_gain(p.tx_beamwidth_deg) * antenna_gain(p.rx_beamwidth_deg);
}

/// Received power in watts with both beams perfectly aligned.
template <typename Scalar>
Scalar received_power(Scalar distance_m, Scalar tau_per_m, const LinkBudgetParams<Scalar> &p)
{
    return effective_radiated_gain(p) / total_path_loss(distance_m, tau_per_m, p.carrier_hz);
}

template <typename Scalar>
Scalar snr(Scalar distance_m, Scalar tau_per_m, const LinkBudgetParams<Scalar> &p)
{
    return received_power(distance_m, tau_per_m, p) / (p.noise_psd_w_per_hz * p.bandwidth_hz);
}

/// Shannon rate B log2(1 + SNR) in bit/s. The overload taking tau lets hot loops
/// resolve the absorption coefficient once.
template <typename Scalar>
Scalar achievable_rate(Scalar distance_m, Scalar tau_per_m, const LinkBudgetParams<Scalar> &p)
{
    return p.bandwidth_hz * std::log1p(snr(distance_m, tau_per_m, p)) / std::numbers::ln2_v<Scalar>;
}

template <typename Scalar>
Scalar achievable_rate(Scalar distance_m, const LinkBudgetParams<Scalar> &p)
{
    return achievable_rate(distance_m, absorption_coefficient(p), p);
}

// K in r^2 exp(tau r) = K: the squared free-space distance at which the SNR equals
// 2^S - 1. Bandwidth enters through the noise power N_f B.
template <typename Scalar>
Scalar radius_constant(const LinkBudgetParams<Scalar> &p, Scalar spectral_efficiency)
{
    if (!(spectral_efficiency > 0))
        throw std::domain_error("radius_constant: spectral efficiency must be positive");
    const Scalar snr_needed = std::expm1(spectral_efficiency * std::numbers::ln2_v<Scalar>);
    const Scalar free_space = spreading_loss(Scalar(1), p.carrier_hz);
    const Scalar k = effective_radiated_gain(p) / (p.noise_psd_w_per_hz * p.bandwidth_hz * free_space * snr_needed);
    if (!(k > 0))
        throw std::domain_error("radius_constant: K must be positive");
    return k;
}

// Positive root of r^2 exp(tau r) = K via the principal Lambert branch:
// r = 2 W0(tau sqrt(K) / 2) / tau, and r = sqrt(K) without absorption.
template <typename Scalar>
Scalar solve_radius(Scalar k, Scalar tau_per_m)
{
    if (!(k > 0))
        throw std::domain_error("solve_radius: K must be positive");
    if (tau_per_m < 0)
        throw std::domain_error("solve_radius: tau must be non-negative");
    const Scalar root_k = std::sqrt(k);
    if (tau_per_m == Scalar(0))
        return root_k;
    return Scalar(2) * lambert_w0(tau_per_m * root_k / Scalar(2)) / tau_per_m;
}

// Same root by bisection on log(r^2 e^{tau r}) - log K, doubling the upper bracket
// until the sign changes. Kept deliberately free of the Lambert machinery.
template <typename Scalar>
Scalar solve_radius_bisection(Scalar k, Scalar tau_per_m, Scalar width_tol_m = Scalar(1e-9))
{
    if (!(k > 0))
        throw std::domain_error("solve_radius_bisection: K must be positive");
    const Scalar log_k = std::log(k);
    auto g = [&](Scalar r) { return Scalar(2) * std::log(r) + tau_per_m * r - log_k; };
    Scalar lo = 0;
    Scalar hi = 1;
    while (g(hi) <= 0)
    {
        lo = hi;
        hi *= 2;
    }
    while (hi - lo >= width_tol_m)
    {
        const Scalar mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi)
            break;
        (g(mid) > 0 ? hi : lo) = mid;
    }
    return lo + (hi - lo) / 2;
}

/// Illumination radius of one AP: the distance at which the achievable spectral
/// efficiency drops to `spectral_efficiency` bit/s/Hz. Exact real value.
template <typename Scalar>
Scalar coverage_radius(const LinkBudgetParams<Scalar> &p, Scalar spectral_efficiency)
{
    p.validate();
    return solve_radius(radius_constant(p, spectral_efficiency), absorption_coefficient(p));
}

/// As coverage_radius, rounded up to whole meters for plotting at integer resolution.
template <typename Scalar>
Scalar coverage_radius_ceiled(const LinkBudgetParams<Scalar> &p, Scalar spectral_efficiency)
{
    return std::ceil(coverage_radius(p, spectral_efficiency));
}

template <typename Scalar>
Scalar coverage_radius_bruteforce(const LinkBudgetParams<Scalar> &p, Scalar spectral_efficiency)
{
    p.validate();
    return solve_radius_bisection(radius_constant(p, spectral_efficiency), absorption_coefficient(p));
}

} // namespace thzap
