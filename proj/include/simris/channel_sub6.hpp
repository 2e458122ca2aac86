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

#ifndef SIMRIS_CHANNEL_SUB6_HPP
#define SIMRIS_CHANNEL_SUB6_HPP

// Sub-6 GHz SISO channels with an RIS.
//
// The clustered links (Tx-RIS h, far-field RIS-Rx g, direct h_SISO) follow the
// 3GPP TR 38.901 fast-fading procedure: LOS state, path loss with shadowing,
// exponential cluster delays and powers, per-ray random initial phases, and
// cluster arrival/departure directions at the RIS with intra-cluster ray offsets.
// Each ray contributes sqrt(P_c / S) * sqrt(G_e / P_L) * exp(j Phi) * a(theta, phi).
//
// The near-field RIS-Rx channel is deterministic: per-element gain from the
// rectangular-element aperture integral and phase 2*pi*frac(|r_n - r_rx| / lambda).

#include "arrays.hpp"
#include "channel_mmwave.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "propagation.hpp"
#include "random.hpp"
#include "scene.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>
#include <vector>

namespace simris
{
    struct cluster_power_profile
    {
        std::vector<double> powers; // P_c, sums to 1
        std::size_t rays_per_cluster = 1;

        std::size_t clusters() const { return powers.size(); }
    };

    // Normalized powers from given delays (s) and per-cluster shadowing (dB)
    inline cluster_power_profile cluster_powers_from(std::span<const double> delays, std::span<const double> shadow_db,
                                                     double delay_scaling, double delay_spread, std::size_t rays)
    {
        if (delays.empty() || delays.size() != shadow_db.size())
            throw std::invalid_argument("cluster_powers_from: need one shadowing value per delay");
        cluster_power_profile p;
        p.rays_per_cluster = rays;
        p.powers.resize(delays.size());
        for (std::size_t c = 0; c < delays.size(); ++c)
            p.powers[c] = std::exp(-delays[c] * (delay_scaling - 1.0) / (delay_scaling * delay_spread)) *
                          std::pow(10.0, -shadow_db[c] / 10.0);
        const double total = std::accumulate(p.powers.begin(), p.powers.end(), 0.0);
        for (auto &v : p.powers)
            v /= total;
        return p;
    }

    // Draws C delays tau' = -r_tau DS ln(X), shifts them to start at 0, sorts them,
    // and draws per-cluster shadowing Z ~ N(0, zeta^2).
    inline cluster_power_profile gen_cluster_powers(std::size_t C, std::size_t S, const fast_fading_params &fp,
                                                    double freq_hz, random_stream &rng)
    {
        if (C < 1 || S < 1)
            throw std::invalid_argument("gen_cluster_powers: C and S must be >= 1");
        const double ds = fp.delay_spread_s(freq_hz);
        std::vector<double> delays(C), shadow(C);
        for (auto &t : delays)
            t = -fp.delay_scaling * ds * std::log(rng.uniform01_open_low());
        const double t0 = *std::min_element(delays.begin(), delays.end());
        for (auto &t : delays)
            t -= t0;
        std::sort(delays.begin(), delays.end());
        for (auto &z : shadow)
            z = fp.cluster_shadowing_db * rng.normal();
        return cluster_powers_from(delays, shadow, fp.delay_scaling, ds, S);
    }

    // Large-scale state of one sub-6 link
    struct sub6_link
    {
        bool los = false;
        double path_loss_linear = 1.0; // P_L >= 1
        cluster_power_profile profile;
        fast_fading_params fading;
    };

    inline sub6_link draw_sub6_link(const scene &sc, point3 a, point3 b, los_mode mode, random_stream &rng)
    {
        sub6_link link;
        link.los = detail::resolve_los(mode, distance_2d(a, b), sc.env, rng);
        const double loss_db = path_loss_ci(sc.frequency_hz, distance(a, b), sc.env, link.los, rng.normal()).loss_db;
        link.path_loss_linear = std::pow(10.0, loss_db / 10.0);
        link.fading = link.los ? sc.env.fading_los : sc.env.fading_nlos;
        link.profile = gen_cluster_powers(std::size_t(link.fading.n_clusters), std::size_t(link.fading.rays_per_cluster),
                                          link.fading, sc.frequency_hz, rng);
        return link;
    }

    struct sub6_ray
    {
        std::size_t cluster = 0;
        direction_angles angles;
        double phase = 0.0; // Phi_{c,s}
    };

    namespace detail
    {
        // Ray offset angles of 38.901 Table 7.5-3, cycled when S > 20
        inline constexpr std::array<double, 20> ray_offsets = {
            0.0447, -0.0447, 0.1413, -0.1413, 0.2492, -0.2492, 0.3715, -0.3715, 0.5129, -0.5129,
            0.6797, -0.6797, 0.8844, -0.8844, 1.1481, -1.1481, 1.5195, -1.5195, 2.1551, -2.1551};

        inline double reflect_polar(double theta)
        {
            while (theta < 0.0 || theta > std::numbers::pi)
                theta = theta < 0.0 ? -theta : 2.0 * std::numbers::pi - theta;
            return theta;
        }
    }

    // Cluster directions uniform over the RIS front hemisphere; rays offset by
    // c_ASA / c_ZSA scaled ray offsets with a random azimuth/elevation coupling.
    inline std::vector<sub6_ray> draw_sub6_rays(const surface_orientation &ris, const cluster_power_profile &profile,
                                                const fast_fading_params &fp, random_stream &rng)
    {
        constexpr double deg = std::numbers::pi / 180.0;
        const std::size_t S = profile.rays_per_cluster;
        const point3 n = ris.normal(), t1 = ris.horizontal_axis(), t2{0.0, 0.0, 1.0};
        std::vector<sub6_ray> rays;
        rays.reserve(profile.clusters() * S);
        std::vector<std::size_t> coupling(S);
        for (std::size_t c = 0; c < profile.clusters(); ++c)
        {
            const double cos_psi = rng.uniform01();
            const double sin_psi = std::sqrt(1.0 - cos_psi * cos_psi);
            const double alpha = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const point3 dir = cos_psi * n + (sin_psi * std::cos(alpha)) * t1 + (sin_psi * std::sin(alpha)) * t2;
            const auto centre = angles_of(dir, ris);

            std::iota(coupling.begin(), coupling.end(), std::size_t(0));
            for (std::size_t i = S; i > 1; --i)
                std::swap(coupling[i - 1], coupling[std::size_t(rng.uniform_int(0, std::int64_t(i) - 1))]);

            for (std::size_t s = 0; s < S; ++s)
            {
                const double az = centre.azimuth + fp.cluster_asa_deg * deg * detail::ray_offsets[s % 20];
                const double el = detail::reflect_polar(centre.elevation +
                                                        fp.cluster_zsa_deg * deg * detail::ray_offsets[coupling[s] % 20]);
                direction_angles a{az, el};
                sub6_ray ray;
                ray.cluster = c;
                ray.angles = angles_of(a.unit_vector(), ris);
                ray.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
                rays.push_back(ray);
            }
        }
        return rays;
    }

    inline cvec assemble_sub6_vector(const std::vector<sub6_ray> &rays, const cluster_power_profile &profile,
                                     double path_loss_linear, const ris_site &ris, double wavelength)
    {
        cvec v = cvec::Zero(Eigen::Index(ris.array.size()));
        const double S = double(profile.rays_per_cluster);
        for (const auto &ray : rays)
        {
            const double amp = std::sqrt(profile.powers[ray.cluster] / S) *
                               std::sqrt(element_gain(ris.pattern, ray.angles.boresight) / path_loss_linear);
            v += std::polar(amp, ray.phase) * steering_vector(ris.array, ray.angles, wavelength);
        }
        return v;
    }

    // Tx-RIS channel h (N)
    inline cvec gen_h_sub6(const scene &sc, const sub6_link &link, random_stream &rng)
    {
        const auto rays = draw_sub6_rays(sc.ris_orientation(), link.profile, link.fading, rng);
        return assemble_sub6_vector(rays, link.profile, link.path_loss_linear, sc.ris, sc.wavelength());
    }

    // Direct Tx-Rx channel; no angles are needed for isotropic terminals
    inline cplx gen_hsiso_sub6(const sub6_link &link, random_stream &rng)
    {
        cplx h{};
        const double S = double(link.profile.rays_per_cluster);
        for (std::size_t c = 0; c < link.profile.clusters(); ++c)
            for (std::size_t s = 0; s < link.profile.rays_per_cluster; ++s)
                h += std::polar(std::sqrt(link.profile.powers[c] / S) * std::sqrt(1.0 / link.path_loss_linear),
                                rng.uniform(0.0, 2.0 * std::numbers::pi));
        return h;
    }

    // Far-field RIS-Rx channel g (N), RIS departure directions
    inline cvec gen_g_sub6_farfield(const scene &sc, const sub6_link &link, random_stream &rng)
    {
        return gen_h_sub6(sc, link, rng);
    }

    struct ris_element_grid
    {
        std::vector<point3> positions;
        double edge_m = 0.0;
        surface_orientation orientation{};

        static ris_element_grid from_scene(const scene &sc)
        {
            const double lambda = sc.wavelength();
            ris_element_grid g;
            g.positions = element_positions(sc.ris.array, sc.ris.position, lambda);
            g.edge_m = sc.sub6.element_edge_m.value_or(sc.ris.array.spacing_m(lambda));
            g.orientation = sc.ris_orientation();
            return g;
        }
    };

    // The four (x, z) corner terms of the element gain integral, before the 1/(4 pi) factor
    inline std::array<double, 4> nearfield_gain_terms(const ris_element_grid &grid, std::size_t n, point3 rx)
    {
        const point3 e = grid.positions.at(n);
        const point3 axis = grid.orientation.horizontal_axis();
        const double lateral = dot(e - rx, axis);
        const double y = std::abs(dot(e - rx, grid.orientation.normal()));
        if (!(y > 0.0))
            throw domain_error("nearfield_gain: receiver lies in the RIS plane");
        const double half = grid.edge_m / 2.0;
        const std::array<double, 2> xs{half + lateral, half - lateral};
        const std::array<double, 2> zs{half + (e.z - rx.z), half - (e.z - rx.z)};
        const double y2 = y * y;
        std::array<double, 4> terms{};
        std::size_t i = 0;
        for (double x : xs)
            for (double z : zs)
            {
                const double a = x * z / y2;
                const double root = std::sqrt(x * x / y2 + z * z / y2 + 1.0);
                terms[i++] = a / (3.0 * (z * z / y2 + 1.0) * root) + 2.0 / 3.0 * std::atan(a / root);
            }
        return terms;
    }

    // |g_n|^2 for element n
    inline double nearfield_gain(const ris_element_grid &grid, std::size_t n, point3 rx)
    {
        const auto t = nearfield_gain_terms(grid, n, rx);
        return (t[0] + t[1] + t[2] + t[3]) / (4.0 * std::numbers::pi);
    }

    // gamma = 2*pi * frac(|r_n - r_rx| / lambda)
    inline double nearfield_phase(const ris_element_grid &grid, std::size_t n, point3 rx, double wavelength)
    {
        const double cycles = distance(grid.positions.at(n), rx) / wavelength;
        return 2.0 * std::numbers::pi * (cycles - std::floor(cycles));
    }

    // g_n = |g_n| exp(-j gamma)
    inline cvec gen_g_sub6_nearfield(const scene &sc, const ris_element_grid &grid)
    {
        cvec g(Eigen::Index(grid.positions.size()));
        for (std::size_t n = 0; n < grid.positions.size(); ++n)
            g[Eigen::Index(n)] = std::polar(std::sqrt(nearfield_gain(grid, n, sc.rx)),
                                            -nearfield_phase(grid, n, sc.rx, sc.wavelength()));
        return g;
    }

    // Largest aperture dimension (diagonal) of the RIS
    inline double ris_aperture_m(const scene &sc)
    {
        const double s = sc.ris.array.spacing_m(sc.wavelength());
        return std::hypot(double(sc.ris.array.n_h) * s, double(sc.ris.array.n_v) * s);
    }

    inline double fraunhofer_distance(const scene &sc)
    {
        const double d = ris_aperture_m(sc);
        return 2.0 * d * d / sc.wavelength();
    }

    inline bool uses_nearfield(const scene &sc)
    {
        switch (sc.sub6.mode)
        {
        case nearfield_mode::force_near:
            return true;
        case nearfield_mode::force_far:
            return false;
        case nearfield_mode::automatic:
            break;
        }
        return distance(sc.ris.position, sc.rx) < fraunhofer_distance(sc);
    }

    // One sub-6 realization as H (N x 1), G (1 x N), D (1 x 1)
    inline channel_realization gen_sub6(const scene &sc, const seed_lineage &lineage, std::uint32_t ris_index = 0)
    {
        if (sc.nt() != 1 || sc.nr() != 1)
            throw config_error("nt", "the sub-6 GHz model is SISO");
        channel_realization r;
        r.realization = lineage.realization;
        r.seed = lineage.master_seed;

        auto rng_h = lineage.stream(stream_tag::fading_tx_ris, ris_index);
        const auto link_h = draw_sub6_link(sc, sc.tx, sc.ris.position, sc.options.los_tx_ris, rng_h);
        r.H = gen_h_sub6(sc, link_h, rng_h);

        if (uses_nearfield(sc))
        {
            r.G = gen_g_sub6_nearfield(sc, ris_element_grid::from_scene(sc)).transpose();
            r.los[std::size_t(link_kind::ris_rx)] = true;
        }
        else
        {
            auto rng_g = lineage.stream(stream_tag::fading_ris_rx, ris_index);
            const auto link_g = draw_sub6_link(sc, sc.ris.position, sc.rx, sc.options.los_ris_rx, rng_g);
            r.G = gen_g_sub6_farfield(sc, link_g, rng_g).transpose();
            r.los[std::size_t(link_kind::ris_rx)] = link_g.los;
        }

        r.D = cmat::Zero(1, 1);
        if (!sc.options.direct_blocked)
        {
            auto rng_d = lineage.stream(stream_tag::fading_tx_rx);
            const auto link_d = draw_sub6_link(sc, sc.tx, sc.rx, sc.options.los_tx_rx, rng_d);
            r.D(0, 0) = gen_hsiso_sub6(link_d, rng_d);
            r.los[std::size_t(link_kind::tx_rx)] = link_d.los;
        }
        r.los[std::size_t(link_kind::tx_ris)] = link_h.los;
        r.outage = {r.H.isZero(0.0), r.G.isZero(0.0), r.D.isZero(0.0)};
        return r;
    }
}

#endif
