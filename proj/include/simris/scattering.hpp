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

#ifndef SIMRIS_SCATTERING_HPP
#define SIMRIS_SCATTERING_HPP

// Random clusters of scatterers for the clustered links.
//
// Cluster count C ~ max(1, Poisson(lambda_c)), sub-rays per cluster S_c ~ U{s_min..s_max}.
// Cluster centres are uniform in the environment volume and sub-scatterers
// uniform in a ball around the centre; both are resampled until they lie strictly
// in front of every wall-mounted endpoint of the link (Tx and RIS; the Rx has no
// fixed orientation).

#include "errors.hpp"
#include "geometry.hpp"
#include "propagation.hpp"
#include "random.hpp"
#include "scene.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace simris
{
    enum class link_kind
    {
        tx_ris,
        ris_rx,
        tx_rx,
    };

    inline std::string to_string(link_kind l)
    {
        switch (l)
        {
        case link_kind::tx_ris:
            return "Tx-RIS";
        case link_kind::ris_rx:
            return "RIS-Rx";
        case link_kind::tx_rx:
            return "Tx-Rx";
        }
        return "?";
    }

    struct scatterer
    {
        point3 position{};
        std::complex<double> gain{}; // beta ~ CN(0, 1)
        direction_angles departure{}; // at the link's first endpoint
        direction_angles arrival{};   // at the link's second endpoint
        path_loss_sample loss{};      // whole first endpoint -> scatterer -> second endpoint path
        double excess_phase = 0.0;    // eta_e, only set on shared Tx-Rx sets
    };

    struct cluster
    {
        point3 center{};
        std::vector<scatterer> rays;
    };

    struct cluster_set
    {
        link_kind link = link_kind::tx_ris;
        std::vector<cluster> clusters;
        bool shared = false;

        std::size_t total_rays() const
        {
            std::size_t m = 0;
            for (const auto &c : clusters)
                m += c.rays.size();
            return m;
        }

        // gamma = sqrt(1 / sum S_c); 0 for an empty set
        double normalization() const
        {
            const std::size_t m = total_rays();
            return m == 0 ? 0.0 : std::sqrt(1.0 / double(m));
        }
    };

    namespace detail
    {
        struct link_endpoints
        {
            point3 a, b;
            std::optional<surface_orientation> a_surface, b_surface;
        };

        inline link_endpoints endpoints(const scene &sc, link_kind link)
        {
            switch (link)
            {
            case link_kind::tx_ris:
                return {sc.tx, sc.ris.position, sc.tx_orientation(), sc.ris_orientation()};
            case link_kind::ris_rx:
                return {sc.ris.position, sc.rx, sc.ris_orientation(), std::nullopt};
            case link_kind::tx_rx:
                return {sc.tx, sc.rx, sc.tx_orientation(), std::nullopt};
            }
            return {};
        }

        inline bool admissible(point3 p, const link_endpoints &ep, const bounding_box &box)
        {
            if (!box.contains(p) || p == ep.a || p == ep.b)
                return false;
            if (ep.a_surface && dot(p - ep.a, ep.a_surface->normal()) <= 0.0)
                return false;
            if (ep.b_surface && dot(p - ep.b, ep.b_surface->normal()) <= 0.0)
                return false;
            return true;
        }

        inline std::string describe(point3 p)
        {
            return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " + std::to_string(p.z) + ")";
        }

        inline direction_angles angles_or_rx(point3 origin, const std::optional<surface_orientation> &o, point3 target)
        {
            return angles_from(origin, o.value_or(surface_orientation{}), target);
        }

        inline void fill_path(scatterer &s, const link_endpoints &ep, const scene &sc, random_stream &rng)
        {
            s.departure = angles_or_rx(ep.a, ep.a_surface, s.position);
            s.arrival = angles_or_rx(ep.b, ep.b_surface, s.position);
            const double d = distance(ep.a, s.position) + distance(s.position, ep.b);
            s.loss = path_loss_ci(sc.frequency_hz, d, sc.env, false, rng.normal());
        }
    }

    inline cluster_set generate_clusters(const scene &sc, link_kind link, random_stream &rng)
    {
        const auto &sp = sc.scattering;
        const auto ep = detail::endpoints(sc, link);
        const auto &box = sc.bounds;

        cluster_set set;
        set.link = link;
        std::uint32_t count = rng.poisson(sp.lambda_c);
        if (sp.truncate_min_one && count < 1)
            count = 1;

        auto fail = [&](const std::string &what) {
            throw generation_error(to_string(link) + " link: " + what + " not found within " +
                                   std::to_string(sp.retry_cap) + " draws (endpoints " + detail::describe(ep.a) +
                                   " and " + detail::describe(ep.b) + ")");
        };

        for (std::uint32_t c = 0; c < count; ++c)
        {
            cluster cl;
            int tries = 0;
            do
            {
                if (++tries > sp.retry_cap)
                    fail("admissible cluster centre");
                cl.center = {rng.uniform(box.min.x, box.max.x), rng.uniform(box.min.y, box.max.y),
                             rng.uniform(box.min.z, box.max.z)};
            } while (!detail::admissible(cl.center, ep, box));

            const auto s_c = std::size_t(rng.uniform_int(sp.s_min, sp.s_max));
            cl.rays.resize(s_c);
            for (auto &ray : cl.rays)
            {
                tries = 0;
                point3 offset;
                do
                {
                    if (++tries > sp.retry_cap)
                        fail("admissible sub-scatterer around " + detail::describe(cl.center));
                    offset = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
                    ray.position = cl.center + sp.spread_m * offset;
                } while (dot(offset, offset) > 1.0 || !detail::admissible(ray.position, ep, box));

                ray.gain = rng.complex_normal();
                detail::fill_path(ray, ep, sc, rng);
            }
            set.clusters.push_back(std::move(cl));
        }
        return set;
    }

    // eta_e = 2*pi * frac((|s - rx| - |s - ris|) / lambda)
    inline double excess_phase(const scatterer &s, point3 ris, point3 rx, double wavelength)
    {
        const double cycles = (distance(s.position, rx) - distance(s.position, ris)) / wavelength;
        return 2.0 * std::numbers::pi * (cycles - std::floor(cycles));
    }

    // Tx-Rx view of a Tx-RIS cluster set: positions and beta are kept, per-path
    // angles, attenuations and excess phases are recomputed for Tx -> s -> Rx.
    inline cluster_set share_clusters(const cluster_set &tx_ris, const scene &sc, random_stream &rng)
    {
        const auto ep = detail::endpoints(sc, link_kind::tx_rx);
        cluster_set out = tx_ris;
        out.link = link_kind::tx_rx;
        out.shared = true;
        for (auto &cl : out.clusters)
            for (auto &ray : cl.rays)
            {
                detail::fill_path(ray, ep, sc, rng);
                ray.excess_phase = excess_phase(ray, sc.ris.position, sc.rx, sc.wavelength());
            }
        return out;
    }
}

#endif
