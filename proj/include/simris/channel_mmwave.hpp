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

#ifndef SIMRIS_CHANNEL_MMWAVE_HPP
#define SIMRIS_CHANNEL_MMWAVE_HPP

// Narrowband mmWave channels of an RIS-assisted link.
//
//   H (N x Nt): Tx -> RIS, clustered sum plus Bernoulli-gated LOS
//   G (Nr x N): RIS -> Rx, pure LOS indoors, clustered plus gated LOS outdoors
//   D (Nr x Nt): Tx -> Rx, clustered (shared with H indoors) plus gated LOS
//
// Every clustered or LOS term is a scaled outer product a_end(.) a_start(.)^T.
// RIS and Tx responses use geometric angles; Rx responses use uniformly drawn
// angles since the Rx orientation is random. The vector/scalar channels h, g
// and h_SISO are the same generators evaluated with single-element terminals,
// so Nt = Nr = 1 reproduces them bit for bit.
//
// Random draw order per link stream is fixed:
//   H:  LOS indicator, LOS phase, [LOS shadowing]
//   G:  per clustered path (outdoor) Rx azimuth, Rx elevation; then LOS
//       indicator (outdoor only), LOS phase, Rx azimuth, Rx elevation, [shadowing]
//   D:  per clustered path Rx azimuth, Rx elevation; then LOS indicator,
//       LOS phase, Rx azimuth, Rx elevation, [shadowing]

#include "arrays.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "propagation.hpp"
#include "random.hpp"
#include "scattering.hpp"
#include "scene.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>

namespace simris
{
    struct channel_realization
    {
        cmat H; // N x Nt
        cmat G; // Nr x N
        cmat D; // Nr x Nt
        std::array<bool, 3> los{};    // indexed by link_kind
        std::array<bool, 3> outage{}; // link identically zero
        std::uint32_t realization = 0;
        std::uint64_t seed = 0;

        bool los_of(link_kind l) const { return los[std::size_t(l)]; }
        bool outage_of(link_kind l) const { return outage[std::size_t(l)]; }
    };

    namespace detail
    {
        inline bool resolve_los(los_mode mode, double d2d, const environment_params &env, random_stream &rng)
        {
            const bool drawn = draw_los(d2d, env, rng);
            switch (mode)
            {
            case los_mode::force_on:
                return true;
            case los_mode::force_off:
                return false;
            case los_mode::automatic:
                break;
            }
            return drawn;
        }

        inline direction_angles random_rx_angles(random_stream &rng)
        {
            direction_angles a;
            a.azimuth = rng.uniform(-std::numbers::pi, std::numbers::pi);
            a.elevation = rng.uniform(0.0, std::numbers::pi);
            return a;
        }

        inline double los_attenuation(const scene &sc, double d3d, bool shadow, random_stream &rng)
        {
            if (sc.options.unit_gains)
                return 1.0;
            std::optional<double> draw;
            if (shadow)
                draw = rng.normal();
            return path_loss_ci(sc.frequency_hz, d3d, sc.env, true, draw).attenuation();
        }

        inline double ris_gain(const scene &sc, const direction_angles &a)
        {
            return sc.options.unit_gains ? 1.0 : element_gain(sc.ris.pattern, a.boresight);
        }

        inline double path_attenuation(const scene &sc, const scatterer &s)
        {
            return sc.options.unit_gains ? 1.0 : s.loss.attenuation();
        }

        // out += coef * a_end a_start^T
        inline void add_outer(cmat &out, cplx coef, const cvec &a_end, const cvec &a_start)
        {
            out.noalias() += (coef * a_end) * a_start.transpose();
        }

        struct link_result
        {
            cmat m;
            bool los = false;
        };

        inline link_result make_H(const scene &sc, const array_geometry &tx_array, const cluster_set &clusters,
                                  random_stream &rng)
        {
            const double lambda = sc.wavelength();
            link_result r{cmat::Zero(Eigen::Index(sc.n()), Eigen::Index(tx_array.size())), false};
            if (sc.options.include_clusters)
            {
                const double gamma = clusters.normalization();
                for (const auto &cl : clusters.clusters)
                    for (const auto &ray : cl.rays)
                    {
                        const double amp = std::sqrt(ris_gain(sc, ray.arrival) * path_attenuation(sc, ray));
                        add_outer(r.m, gamma * ray.gain * amp, steering_vector(sc.ris.array, ray.arrival, lambda),
                                  steering_vector(tx_array, ray.departure, lambda));
                    }
            }
            r.los = resolve_los(sc.options.los_tx_ris, distance_2d(sc.tx, sc.ris.position), sc.env, rng);
            const double eta = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const double att = los_attenuation(sc, distance(sc.tx, sc.ris.position), sc.options.shadow_ris_los, rng);
            if (r.los)
            {
                const auto at_ris = angles_from(sc.ris.position, sc.ris_orientation(), sc.tx);
                const auto at_tx = angles_from(sc.tx, tx_array.orientation, sc.ris.position);
                const double amp = std::sqrt(ris_gain(sc, at_ris) * att);
                add_outer(r.m, std::polar(amp, eta), steering_vector(sc.ris.array, at_ris, lambda),
                          steering_vector(tx_array, at_tx, lambda));
            }
            return r;
        }

        inline link_result make_G(const scene &sc, const array_geometry &rx_array, const cluster_set *clusters,
                                  random_stream &rng)
        {
            const double lambda = sc.wavelength();
            link_result r{cmat::Zero(Eigen::Index(rx_array.size()), Eigen::Index(sc.n())), false};
            if (clusters && sc.options.include_clusters)
            {
                const double gamma = clusters->normalization();
                for (const auto &cl : clusters->clusters)
                    for (const auto &ray : cl.rays)
                    {
                        const auto at_rx = random_rx_angles(rng);
                        const double amp = std::sqrt(ris_gain(sc, ray.departure) * path_attenuation(sc, ray));
                        add_outer(r.m, gamma * ray.gain * amp, steering_vector(rx_array, at_rx, lambda),
                                  steering_vector(sc.ris.array, ray.departure, lambda));
                    }
            }
            // Indoors the RIS-Rx link is LOS-dominated and not Bernoulli-gated
            if (sc.indoor())
                r.los = sc.options.los_ris_rx != los_mode::force_off;
            else
                r.los = resolve_los(sc.options.los_ris_rx, distance_2d(sc.ris.position, sc.rx), sc.env, rng);
            const double eta = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const auto at_rx = random_rx_angles(rng);
            const double att = los_attenuation(sc, distance(sc.ris.position, sc.rx), sc.options.shadow_ris_los, rng);
            if (r.los)
            {
                const auto at_ris = angles_from(sc.ris.position, sc.ris_orientation(), sc.rx);
                const double amp = std::sqrt(ris_gain(sc, at_ris) * att);
                add_outer(r.m, std::polar(amp, eta), steering_vector(rx_array, at_rx, lambda),
                          steering_vector(sc.ris.array, at_ris, lambda));
            }
            return r;
        }

        inline link_result make_D(const scene &sc, const array_geometry &tx_array, const array_geometry &rx_array,
                                  const cluster_set &clusters, random_stream &rng)
        {
            const double lambda = sc.wavelength();
            link_result r{cmat::Zero(Eigen::Index(rx_array.size()), Eigen::Index(tx_array.size())), false};
            if (sc.options.direct_blocked)
                return r;
            if (sc.options.include_clusters)
            {
                const double gamma = clusters.normalization();
                for (const auto &cl : clusters.clusters)
                    for (const auto &ray : cl.rays)
                    {
                        const auto at_rx = random_rx_angles(rng);
                        cplx coef = gamma * ray.gain * std::sqrt(path_attenuation(sc, ray));
                        if (clusters.shared)
                            coef *= std::polar(1.0, ray.excess_phase);
                        add_outer(r.m, coef, steering_vector(rx_array, at_rx, lambda),
                                  steering_vector(tx_array, ray.departure, lambda));
                    }
            }
            r.los = resolve_los(sc.options.los_tx_rx, distance_2d(sc.tx, sc.rx), sc.env, rng);
            const double eta = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const auto at_rx = random_rx_angles(rng);
            const double att = los_attenuation(sc, distance(sc.tx, sc.rx), sc.options.shadow_direct_los, rng);
            if (r.los)
            {
                const auto at_tx = angles_from(sc.tx, tx_array.orientation, sc.rx);
                add_outer(r.m, std::polar(std::sqrt(att), eta), steering_vector(rx_array, at_rx, lambda),
                          steering_vector(tx_array, at_tx, lambda));
            }
            return r;
        }

        inline array_geometry single_like(const array_geometry &g) { return array_geometry::single(g.orientation); }
    }

    // Tx-RIS vector channel h (N)
    inline cvec gen_h(const scene &sc, const cluster_set &clusters, random_stream &rng)
    {
        return detail::make_H(sc, detail::single_like(sc.tx_array), clusters, rng).m.col(0);
    }

    // Indoor RIS-Rx LOS channel g (N)
    inline cvec gen_g_indoor(const scene &sc, random_stream &rng)
    {
        if (!sc.indoor())
            throw config_error("environment", "gen_g_indoor requires an indoor scene");
        return detail::make_G(sc, detail::single_like(sc.rx_array), nullptr, rng).m.row(0).transpose();
    }

    // Outdoor RIS-Rx channel g (N) from an independent RIS-Rx cluster set
    inline cvec gen_g_outdoor(const scene &sc, const cluster_set &clusters, random_stream &rng)
    {
        if (sc.indoor())
            throw config_error("environment", "gen_g_outdoor requires an outdoor scene");
        return detail::make_G(sc, detail::single_like(sc.rx_array), &clusters, rng).m.row(0).transpose();
    }

    // Direct Tx-Rx scalar channel. Indoors `clusters` is the shared view of the
    // Tx-RIS set (see share_clusters); outdoors an independent Tx-Rx set.
    inline cplx gen_hsiso(const scene &sc, const cluster_set &clusters, random_stream &rng)
    {
        return detail::make_D(sc, detail::single_like(sc.tx_array), detail::single_like(sc.rx_array), clusters, rng)
            .m(0, 0);
    }

    // H and G of one RIS plus the Tx-RIS cluster set (needed for sharing)
    struct ris_links
    {
        cmat H, G;
        bool los_tx_ris = false, los_ris_rx = false;
        cluster_set tx_ris_clusters;
    };

    inline ris_links gen_ris_links(const scene &sc, const seed_lineage &lineage, std::uint32_t ris_index = 0)
    {
        ris_links out;
        auto rng_c = lineage.stream(stream_tag::clusters_tx_ris, ris_index);
        out.tx_ris_clusters = generate_clusters(sc, link_kind::tx_ris, rng_c);

        auto rng_h = lineage.stream(stream_tag::fading_tx_ris, ris_index);
        auto h = detail::make_H(sc, sc.tx_array, out.tx_ris_clusters, rng_h);
        out.H = std::move(h.m);
        out.los_tx_ris = h.los;

        auto rng_g = lineage.stream(stream_tag::fading_ris_rx, ris_index);
        detail::link_result g;
        if (sc.indoor())
            g = detail::make_G(sc, sc.rx_array, nullptr, rng_g);
        else
        {
            auto rng_cg = lineage.stream(stream_tag::clusters_ris_rx, ris_index);
            const auto ris_rx = generate_clusters(sc, link_kind::ris_rx, rng_cg);
            g = detail::make_G(sc, sc.rx_array, &ris_rx, rng_g);
        }
        out.G = std::move(g.m);
        out.los_ris_rx = g.los;
        return out;
    }

    // Direct link D. Shared clusters come from `tx_ris` when the scene shares them.
    inline cmat gen_direct(const scene &sc, const seed_lineage &lineage, const cluster_set &tx_ris, bool *los = nullptr)
    {
        cluster_set clusters;
        if (sc.shares_clusters())
        {
            auto rng_s = lineage.stream(stream_tag::shared_tx_rx);
            clusters = share_clusters(tx_ris, sc, rng_s);
        }
        else
        {
            auto rng_c = lineage.stream(stream_tag::clusters_tx_rx);
            clusters = generate_clusters(sc, link_kind::tx_rx, rng_c);
        }
        auto rng_d = lineage.stream(stream_tag::fading_tx_rx);
        auto d = detail::make_D(sc, sc.tx_array, sc.rx_array, clusters, rng_d);
        if (los)
            *los = d.los;
        return std::move(d.m);
    }

    // One realization of (H, G, D) for the scene's RIS
    inline channel_realization gen_mimo(const scene &sc, const seed_lineage &lineage)
    {
        channel_realization r;
        r.realization = lineage.realization;
        r.seed = lineage.master_seed;
        auto links = gen_ris_links(sc, lineage, 0);
        bool los_d = false;
        r.D = gen_direct(sc, lineage, links.tx_ris_clusters, &los_d);
        r.H = std::move(links.H);
        r.G = std::move(links.G);
        r.los = {links.los_tx_ris, links.los_ris_rx, los_d};
        r.outage = {r.H.isZero(0.0), r.G.isZero(0.0), r.D.isZero(0.0)};
        return r;
    }

    // C = G Phi H + D
    inline cmat compose_end_to_end(const cmat &H, const cmat &G, const cmat &D, const ris_phase_config &phases)
    {
        const auto n = Eigen::Index(phases.size());
        if (H.rows() != n || G.cols() != n)
            throw dimension_error("compose_end_to_end: RIS size " + std::to_string(n) + " does not match H (" +
                                  std::to_string(H.rows()) + " rows) / G (" + std::to_string(G.cols()) + " cols)");
        if (D.rows() != G.rows() || D.cols() != H.cols())
            throw dimension_error("compose_end_to_end: D must be Nr x Nt");
        return G * (reflection_coefficients(phases).asDiagonal() * H) + D;
    }

    inline cmat compose_end_to_end(const channel_realization &real, const ris_phase_config &phases)
    {
        return compose_end_to_end(real.H, real.G, real.D, phases);
    }
}

#endif
