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

#ifndef SIMRIS_SCENE_HPP
#define SIMRIS_SCENE_HPP

#include "arrays.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "propagation.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace simris
{
    // Axis-aligned environment volume in which cluster centres are drawn
    struct bounding_box
    {
        point3 min{};
        point3 max{};

        bool contains(point3 p) const
        {
            return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y && p.z >= min.z && p.z <= max.z;
        }
    };

    inline bounding_box default_bounds(environment_kind e)
    {
        if (e == environment_kind::inh_indoor_office)
            return {{0.0, 0.0, 0.0}, {75.0, 50.0, 3.5}};
        return {{0.0, 0.0, 0.0}, {200.0, 100.0, 30.0}};
    }

    struct scattering_params
    {
        double lambda_c = 1.8; // Poisson mean of the cluster count
        int s_min = 1;
        int s_max = 30;
        double spread_m = 1.0; // sub-scatterer radius around the cluster centre
        int retry_cap = 1000;
        bool truncate_min_one = true;

        void validate() const
        {
            if (!(lambda_c >= 0.0 && lambda_c <= 100.0))
                throw config_error("scattering.lambda_c", "must be within [0, 100]");
            if (s_min < 1 || s_max < s_min)
                throw config_error("scattering.s_min", "require 1 <= s_min <= s_max");
            if (!(spread_m >= 0.0))
                throw config_error("scattering.spread_m", "must be >= 0");
            if (retry_cap < 1)
                throw config_error("scattering.retry_cap", "must be >= 1");
        }
    };

    inline scattering_params default_scattering(environment_kind e)
    {
        scattering_params p;
        if (is_indoor(e))
        {
            p.lambda_c = 1.8;
            p.spread_m = 1.0;
        }
        else
        {
            p.lambda_c = 1.9;
            p.spread_m = 2.0;
        }
        return p;
    }

    enum class los_mode
    {
        automatic, // Bernoulli draw on the link's 2D distance
        force_on,
        force_off,
    };

    enum class nearfield_mode
    {
        automatic,
        force_near,
        force_far,
    };

    struct sub6_params
    {
        std::optional<double> element_edge_m; // defaults to the element spacing
        nearfield_mode mode = nearfield_mode::automatic;
    };

    // Model switches. The defaults reproduce the full stochastic model; the other
    // settings isolate individual terms for verification and what-if studies.
    struct channel_options
    {
        los_mode los_tx_ris = los_mode::automatic;
        los_mode los_ris_rx = los_mode::automatic;
        los_mode los_tx_rx = los_mode::automatic;
        bool include_clusters = true;
        bool unit_gains = false;     // L = 1 and G_e = 1 on every path
        bool shadow_ris_los = false; // lognormal shadowing on the RIS LOS hops
        bool shadow_direct_los = true;
        bool direct_blocked = false; // D = 0
        std::optional<bool> share_clusters; // default: indoor only
    };

    struct ris_site
    {
        point3 position{};
        array_geometry array = array_geometry::upa(64);
        element_pattern pattern{};
        bool active = true;
    };

    enum class band_model
    {
        automatic,
        mmwave,
        sub6,
    };

    struct scene
    {
        environment_kind environment = environment_kind::inh_indoor_office;
        environment_params env = default_environment_params(environment_kind::inh_indoor_office);
        scattering_params scattering = default_scattering(environment_kind::inh_indoor_office);
        bounding_box bounds = default_bounds(environment_kind::inh_indoor_office);
        double frequency_hz = 28e9;
        band_model band = band_model::automatic;
        point3 tx{0.0, 25.0, 2.0};
        point3 rx{45.0, 45.0, 1.0};
        ris_site ris{};
        array_geometry tx_array = array_geometry::single({mounting_plane::yz, +1});
        array_geometry rx_array = array_geometry::single();
        channel_options options{};
        sub6_params sub6{};

        double wavelength() const { return speed_of_light / frequency_hz; }
        bool indoor() const { return is_indoor(environment); }
        bool shares_clusters() const { return options.share_clusters.value_or(indoor()); }
        bool is_sub6() const
        {
            if (band == band_model::automatic)
                return frequency_hz < 6e9;
            return band == band_model::sub6;
        }

        std::size_t n() const { return ris.array.size(); }
        std::size_t nt() const { return tx_array.size(); }
        std::size_t nr() const { return rx_array.size(); }

        const surface_orientation &tx_orientation() const { return tx_array.orientation; }
        const surface_orientation &ris_orientation() const { return ris.array.orientation; }

        // Resets the environment-dependent tables to the built-in defaults
        void set_environment(environment_kind e)
        {
            environment = e;
            env = default_environment_params(e);
            scattering = default_scattering(e);
            bounds = default_bounds(e);
        }

        void validate() const
        {
            check_frequency(frequency_hz);
            if (!tx.finite() || !rx.finite() || !ris.position.finite())
                throw config_error("positions", "coordinates must be finite");
            // indoor terminals and surfaces live inside the room; outdoor scenes are open
            if (indoor())
            {
                if (!bounds.contains(tx))
                    throw config_error("tx", "outside the room bounds");
                if (!bounds.contains(rx))
                    throw config_error("rx", "outside the room bounds");
                if (!bounds.contains(ris.position))
                    throw config_error("ris", "outside the room bounds");
            }
            if (distance(tx, ris.position) < 1.0)
                throw config_error("ris", "Tx-RIS distance must be >= 1 m");
            if (distance(ris.position, rx) < 1.0)
                throw config_error("rx", "RIS-Rx distance must be >= 1 m");
            if (distance(tx, rx) < 1.0)
                throw config_error("rx", "Tx-Rx distance must be >= 1 m");
            if (dot(tx - ris.position, ris_orientation().normal()) <= 0.0)
                throw config_error("ris.facing", "Tx lies behind the RIS surface");
            ris.array.validate();
            tx_array.validate();
            rx_array.validate();
            scattering.validate();
            if (is_sub6() && (nt() != 1 || nr() != 1))
                throw config_error("nt", "the sub-6 GHz model is SISO (nt = nr = 1)");
        }
    };

    // Several RISs sharing one Tx/Rx pair; `base.ris` is ignored
    struct multi_ris_scene
    {
        scene base;
        std::vector<ris_site> sites;

        scene with_ris(std::size_t k) const
        {
            scene s = base;
            s.ris = sites.at(k);
            return s;
        }

        void validate() const
        {
            if (sites.empty())
                throw config_error("ris", "at least one RIS is required");
            for (std::size_t k = 0; k < sites.size(); ++k)
                with_ris(k).validate();
        }
    };
}

#endif
