// SPDX-License-Identifier: Apache-2.0
//
// simris: RIS-assisted physical channel simulator
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

#ifndef SIMRIS_PROPAGATION_HPP
#define SIMRIS_PROPAGATION_HPP

// Large-scale propagation: close-in (CI) free-space reference distance path loss
// with a frequency-dependent exponent, lognormal shadowing, and distance-dependent
// LOS probabilities.

#include "errors.hpp"
#include "geometry.hpp"
#include "random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace simris
{
    inline constexpr double speed_of_light = 299792458.0;

    enum class environment_kind
    {
        inh_indoor_office,
        umi_street_canyon,
    };

    inline bool is_indoor(environment_kind e) { return e == environment_kind::inh_indoor_office; }

    inline std::string to_string(environment_kind e)
    {
        return e == environment_kind::inh_indoor_office ? "InH" : "UMi";
    }

    enum class los_model
    {
        inh_office_mixed, // 38.901 InH-Office (mixed)
        umi_street_canyon,
        always,
        never,
    };

    // CI exponent: n_eff = n * (1 + b * (f - f0) / f0)
    struct ci_exponent
    {
        double n = 2.0;
        double b = 0.0;
        double f0_hz = 24.2e9;

        double at(double freq_hz) const { return n * (1.0 + b * (freq_hz - f0_hz) / f0_hz); }
    };

    // Small-scale (38.901 fast-fading) constants used by the sub-6 GHz model
    struct fast_fading_params
    {
        // lgDS = lgds_a * log10(1 + fc[GHz]) + lgds_b, DS in seconds
        double lgds_a = 0.0;
        double lgds_b = -7.5;
        double delay_scaling = 3.0;        // r_tau
        double cluster_shadowing_db = 3.0; // zeta
        int n_clusters = 12;
        int rays_per_cluster = 20;
        double cluster_asa_deg = 10.0; // c_ASA / c_ASD
        double cluster_zsa_deg = 7.0;  // c_ZSA / c_ZSD

        double delay_spread_s(double freq_hz) const
        {
            return std::pow(10.0, lgds_a * std::log10(1.0 + freq_hz * 1e-9) + lgds_b);
        }
    };

    struct environment_params
    {
        ci_exponent exponent_los;
        ci_exponent exponent_nlos;
        double sigma_los_db = 0.0;
        double sigma_nlos_db = 0.0;
        los_model los = los_model::inh_office_mixed;
        fast_fading_params fading_los;
        fast_fading_params fading_nlos;
    };

    // Built-in parameter table, version 1. CI values from the 5GCM CI/CIF fits,
    // LOS probability and fast-fading constants from 3GPP TR 38.901 Table 7.5-6.
    inline environment_params default_environment_params(environment_kind e)
    {
        environment_params p;
        if (e == environment_kind::inh_indoor_office)
        {
            p.exponent_los = {1.73, 0.0, 24.2e9};
            p.exponent_nlos = {3.19, 0.06, 24.2e9};
            p.sigma_los_db = 3.02;
            p.sigma_nlos_db = 8.29;
            p.los = los_model::inh_office_mixed;
            p.fading_los = {-0.01, -7.692, 3.6, 6.0, 15, 20, 8.0, 9.0};
            p.fading_nlos = {-0.28, -7.173, 3.0, 3.0, 19, 20, 11.0, 9.0};
        }
        else
        {
            p.exponent_los = {1.98, 0.0, 24.2e9};
            p.exponent_nlos = {3.19, 0.0, 24.2e9};
            p.sigma_los_db = 3.1;
            p.sigma_nlos_db = 8.2;
            p.los = los_model::umi_street_canyon;
            p.fading_los = {-0.24, -7.14, 3.0, 3.0, 12, 20, 17.0, 7.0};
            p.fading_nlos = {-0.24, -6.83, 2.1, 3.0, 19, 20, 22.0, 7.0};
        }
        return p;
    }

    inline constexpr int parameter_table_version = 1;

    struct path_loss_sample
    {
        double loss_db = 0.0;

        // 10^(-loss/10), in (0, 1]
        double attenuation() const { return std::pow(10.0, -loss_db / 10.0); }
    };

    inline void check_frequency(double freq_hz)
    {
        if (!(freq_hz >= 0.5e9 && freq_hz <= 100e9))
            throw config_error("frequency", "must be within [0.5, 100] GHz, got " + std::to_string(freq_hz * 1e-9) + " GHz");
    }

    // Free-space loss at the 1 m reference distance, dB
    inline double fspl_1m_db(double freq_hz)
    {
        return 20.0 * std::log10(4.0 * std::numbers::pi * freq_hz / speed_of_light);
    }

    // CI path loss. `shadow_draw` is a standard-normal sample scaled by the
    // condition's sigma; absent means no shadowing. Negative totals clamp to 0 dB.
    inline path_loss_sample path_loss_ci(double freq_hz, double d3d, const environment_params &env, bool los,
                                         std::optional<double> shadow_draw = std::nullopt)
    {
        check_frequency(freq_hz);
        if (!(d3d >= 1.0))
            throw domain_error("path_loss_ci: distance " + std::to_string(d3d) +
                               " m is below the 1 m reference distance; move the terminals apart");
        const ci_exponent &ex = los ? env.exponent_los : env.exponent_nlos;
        double loss = fspl_1m_db(freq_hz) + 10.0 * ex.at(freq_hz) * std::log10(d3d);
        if (shadow_draw)
            loss += (los ? env.sigma_los_db : env.sigma_nlos_db) * *shadow_draw;
        return {std::max(loss, 0.0)};
    }

    inline double los_probability(double d2d, const environment_params &env)
    {
        if (!(d2d >= 0.0))
            throw domain_error("los_probability: negative distance");
        switch (env.los)
        {
        case los_model::inh_office_mixed:
            if (d2d <= 1.2)
                return 1.0;
            if (d2d < 6.5)
                return std::exp(-(d2d - 1.2) / 4.7);
            return std::exp(-(d2d - 6.5) / 32.6) * 0.32;
        case los_model::umi_street_canyon:
            if (d2d <= 18.0)
                return 1.0;
            return 18.0 / d2d + std::exp(-d2d / 36.0) * (1.0 - 18.0 / d2d);
        case los_model::always:
            return 1.0;
        case los_model::never:
            return 0.0;
        }
        return 0.0;
    }

    // Consumes exactly one uniform draw
    inline bool draw_los(double d2d, const environment_params &env, random_stream &rng)
    {
        return rng.bernoulli(los_probability(d2d, env));
    }
}

#endif
