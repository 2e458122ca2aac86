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

#ifndef SIMRIS_TEST_SCENES_HPP
#define SIMRIS_TEST_SCENES_HPP

// Shared scene fixtures for the unit tests

#include <simris/scene.hpp>

namespace simris::test
{
    // Indoor office, RIS on the side wall facing the Tx
    inline scene indoor_scene(std::size_t n = 64, std::size_t nt = 1, std::size_t nr = 1)
    {
        scene sc;
        sc.set_environment(environment_kind::inh_indoor_office);
        sc.frequency_hz = 28e9;
        sc.tx = {0.0, 25.0, 2.0};
        sc.rx = {45.0, 45.0, 1.0};
        sc.ris.position = {40.0, 50.0, 2.0};
        sc.ris.array = array_geometry::upa(
            n, surface_orientation::facing_towards(mounting_plane::xz, sc.ris.position, sc.tx));
        const auto tx_o = surface_orientation::facing_towards(mounting_plane::yz, sc.tx, sc.ris.position);
        sc.tx_array = nt == 1 ? array_geometry::single(tx_o) : array_geometry::ula(nt, tx_o);
        sc.rx_array = nr == 1 ? array_geometry::single() : array_geometry::ula(nr);
        return sc;
    }

    // Street canyon, RIS on the far wall facing the Tx
    inline scene outdoor_scene(std::size_t n = 64, std::size_t nt = 1, std::size_t nr = 1)
    {
        scene sc;
        sc.set_environment(environment_kind::umi_street_canyon);
        sc.frequency_hz = 28e9;
        sc.tx = {0.0, 25.0, 20.0};
        sc.rx = {38.0, 48.0, 2.0};
        sc.ris.position = {70.0, 30.0, 10.0};
        sc.ris.array = array_geometry::upa(
            n, surface_orientation::facing_towards(mounting_plane::yz, sc.ris.position, sc.tx));
        const auto tx_o = surface_orientation::facing_towards(mounting_plane::yz, sc.tx, sc.ris.position);
        sc.tx_array = nt == 1 ? array_geometry::single(tx_o) : array_geometry::ula(nt, tx_o);
        sc.rx_array = nr == 1 ? array_geometry::single() : array_geometry::ula(nr);
        return sc;
    }

    // Sub-6 GHz indoor scene at 3.5 GHz
    inline scene sub6_scene(std::size_t n = 64)
    {
        scene sc = indoor_scene(n);
        sc.frequency_hz = 3.5e9;
        return sc;
    }
}

#endif
