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

#include "scenes.hpp"

#include <simris/channel_mmwave.hpp>
#include <simris/ris_control.hpp>

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>

using namespace simris;

namespace
{
    int numeric_rank(const cmat &m, double rel = 1e-9)
    {
        Eigen::JacobiSVD<cmat> svd(m);
        const auto &s = svd.singularValues();
        int r = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            r += s[i] > rel * s[0];
        return r;
    }

    // Unit gains, no LOS anywhere: only the normalized clustered sum is left
    scene clustered_only(scene sc)
    {
        sc.options.unit_gains = true;
        sc.options.los_tx_ris = sc.options.los_ris_rx = sc.options.los_tx_rx = los_mode::force_off;
        return sc;
    }
}

TEST(MmwaveChannel, Shapes)
{
    const auto sc = test::indoor_scene(16, 2, 3);
    const auto r = gen_mimo(sc, {1, 0, 0});
    EXPECT_EQ(r.H.rows(), 16);
    EXPECT_EQ(r.H.cols(), 2);
    EXPECT_EQ(r.G.rows(), 3);
    EXPECT_EQ(r.G.cols(), 16);
    EXPECT_EQ(r.D.rows(), 3);
    EXPECT_EQ(r.D.cols(), 2);
    EXPECT_TRUE(r.H.allFinite() && r.G.allFinite() && r.D.allFinite());
}

TEST(MmwaveChannel, SameLineageSameRealization)
{
    for (const auto &sc : {test::indoor_scene(16, 2, 2), test::outdoor_scene(16, 2, 2)})
    {
        const auto a = gen_mimo(sc, {77, 5, 0});
        const auto b = gen_mimo(sc, {77, 5, 0});
        EXPECT_EQ(a.H, b.H);
        EXPECT_EQ(a.G, b.G);
        EXPECT_EQ(a.D, b.D);
        EXPECT_EQ(a.los, b.los);
        const auto c = gen_mimo(sc, {77, 6, 0});
        EXPECT_NE(a.H, c.H);
    }
}

TEST(MmwaveChannel, SisoMatricesEqualVectorGeneratorsIndoor)
{
    const auto sc = test::indoor_scene(32);
    for (std::uint32_t r = 0; r < 50; ++r)
    {
        const seed_lineage l{3, r, 0};
        const auto real = gen_mimo(sc, l);

        auto rc = l.stream(stream_tag::clusters_tx_ris);
        const auto clusters = generate_clusters(sc, link_kind::tx_ris, rc);
        auto rh = l.stream(stream_tag::fading_tx_ris);
        auto rg = l.stream(stream_tag::fading_ris_rx);
        auto rs = l.stream(stream_tag::shared_tx_rx);
        auto rd = l.stream(stream_tag::fading_tx_rx);
        const cvec h = gen_h(sc, clusters, rh);
        const cvec g = gen_g_indoor(sc, rg);
        const cplx d = gen_hsiso(sc, share_clusters(clusters, sc, rs), rd);

        EXPECT_EQ(cvec(real.H.col(0)), h);
        EXPECT_EQ(cvec(real.G.row(0).transpose()), g);
        EXPECT_EQ(real.D(0, 0), d);
    }
}

TEST(MmwaveChannel, SisoMatricesEqualVectorGeneratorsOutdoor)
{
    const auto sc = test::outdoor_scene(32);
    for (std::uint32_t r = 0; r < 50; ++r)
    {
        const seed_lineage l{4, r, 0};
        const auto real = gen_mimo(sc, l);
        auto rc = l.stream(stream_tag::clusters_tx_ris);
        auto rcg = l.stream(stream_tag::clusters_ris_rx);
        auto rcd = l.stream(stream_tag::clusters_tx_rx);
        const auto c_h = generate_clusters(sc, link_kind::tx_ris, rc);
        const auto c_g = generate_clusters(sc, link_kind::ris_rx, rcg);
        const auto c_d = generate_clusters(sc, link_kind::tx_rx, rcd);
        auto rh = l.stream(stream_tag::fading_tx_ris);
        auto rg = l.stream(stream_tag::fading_ris_rx);
        auto rd = l.stream(stream_tag::fading_tx_rx);
        EXPECT_EQ(cvec(real.H.col(0)), gen_h(sc, c_h, rh));
        EXPECT_EQ(cvec(real.G.row(0).transpose()), gen_g_outdoor(sc, c_g, rg));
        EXPECT_EQ(real.D(0, 0), gen_hsiso(sc, c_d, rd));
    }
}

TEST(MmwaveChannel, LosOnlyHasConstantMagnitude)
{
    auto sc = test::indoor_scene(64);
    sc.options.include_clusters = false;
    sc.options.los_tx_ris = los_mode::force_on;
    random_stream rng(5, {4, 0, 0});
    const cvec h = gen_h(sc, cluster_set{}, rng);
    const auto at_ris = angles_from(sc.ris.position, sc.ris_orientation(), sc.tx);
    const double expected = std::sqrt(element_gain(sc.ris.pattern, at_ris.boresight) *
                                      path_loss_ci(sc.frequency_hz, distance(sc.tx, sc.ris.position), sc.env, true)
                                          .attenuation());
    for (Eigen::Index n = 0; n < h.size(); ++n)
        EXPECT_NEAR(std::abs(h[n]), expected, 1e-12 * expected);
}

TEST(MmwaveChannel, ClusteredPowerNormalization)
{
    const auto sc = clustered_only(test::indoor_scene(16));
    const int n = 20000;
    double sum = 0.0;
    for (int r = 0; r < n; ++r)
    {
        const seed_lineage l{21, std::uint32_t(r), 0};
        auto rc = l.stream(stream_tag::clusters_tx_ris);
        auto rh = l.stream(stream_tag::fading_tx_ris);
        sum += gen_h(sc, generate_clusters(sc, link_kind::tx_ris, rc), rh).squaredNorm();
    }
    EXPECT_NEAR(sum / n / 16.0, 1.0, 0.04);
}

TEST(MmwaveChannel, IndoorGIsSingleLosRay)
{
    const auto sc = test::indoor_scene(64);
    random_stream a(1, {5, 0, 0}), b(2, {5, 0, 0});
    const cvec g = gen_g_indoor(sc, a);
    const cvec g2 = gen_g_indoor(sc, b);
    const auto at_ris = angles_from(sc.ris.position, sc.ris_orientation(), sc.rx);
    const double ge = element_gain(sc.ris.pattern, at_ris.boresight);
    const double l = path_loss_ci(sc.frequency_hz, distance(sc.ris.position, sc.rx), sc.env, true).attenuation();
    for (Eigen::Index n = 0; n < g.size(); ++n)
        EXPECT_NEAR(std::abs(g[n]), std::abs(g[0]), 1e-15);
    EXPECT_NEAR(g.squaredNorm(), 64.0 * ge * l, 1e-9 * g.squaredNorm());
    // different seeds: the same vector up to a global phase
    EXPECT_NEAR(std::abs(g2.dot(g)), g.squaredNorm(), 1e-9 * g.squaredNorm());
    EXPECT_THROW(gen_g_indoor(test::outdoor_scene(), a), config_error);
}

TEST(MmwaveChannel, OutdoorGNormalization)
{
    const auto sc = clustered_only(test::outdoor_scene(16));
    const int n = 20000;
    double sum = 0.0;
    for (int r = 0; r < n; ++r)
    {
        const seed_lineage l{22, std::uint32_t(r), 0};
        auto rc = l.stream(stream_tag::clusters_ris_rx);
        auto rg = l.stream(stream_tag::fading_ris_rx);
        sum += gen_g_outdoor(sc, generate_clusters(sc, link_kind::ris_rx, rc), rg).squaredNorm();
    }
    EXPECT_NEAR(sum / n / 16.0, 1.0, 0.04);
}

TEST(MmwaveChannel, DirectScalarPowerUnderUnitGains)
{
    // With unit gains every path has attenuation 1, so E|h_SISO|^2 = gamma^2 * M = 1
    const auto sc = clustered_only(test::indoor_scene(16));
    const int n = 20000;
    double sum = 0.0;
    for (int r = 0; r < n; ++r)
    {
        const seed_lineage l{23, std::uint32_t(r), 0};
        auto rc = l.stream(stream_tag::clusters_tx_ris);
        auto rs = l.stream(stream_tag::shared_tx_rx);
        auto rd = l.stream(stream_tag::fading_tx_rx);
        const auto c = generate_clusters(sc, link_kind::tx_ris, rc);
        sum += std::norm(gen_hsiso(sc, share_clusters(c, sc, rs), rd));
    }
    EXPECT_NEAR(sum / n, 1.0, 0.04);
}

TEST(MmwaveChannel, SharedGainsDriveBothLinks)
{
    const auto sc = test::indoor_scene(16);
    auto sc_nolos = sc;
    sc_nolos.options.los_tx_ris = sc_nolos.options.los_tx_rx = los_mode::force_off;
    random_stream rc(8, {1, 0, 0});
    auto clusters = generate_clusters(sc_nolos, link_kind::tx_ris, rc);
    auto eval = [&](const cluster_set &c) {
        random_stream rh(8, {4, 0, 0}), rs(8, {7, 0, 0}), rd(8, {6, 0, 0});
        return std::pair{gen_h(sc_nolos, c, rh), gen_hsiso(sc_nolos, share_clusters(c, sc_nolos, rs), rd)};
    };
    const auto [h1, d1] = eval(clusters);
    for (auto &cl : clusters.clusters)
        for (auto &ray : cl.rays)
            ray.gain = -ray.gain * cplx(0.0, 1.0);
    const auto [h2, d2] = eval(clusters);
    // rotating every beta by -j rotates both the RIS and the direct channel by -j
    EXPECT_LT((h2 - cplx(0, -1) * h1).norm(), 1e-12 * h1.norm());
    EXPECT_NEAR(std::abs(d2 - cplx(0, -1) * d1), 0.0, 1e-12 * std::abs(d1));
}

TEST(MmwaveChannel, BlockedLosLeavesClusteredScalar)
{
    auto sc = test::indoor_scene(16);
    sc.options.los_tx_rx = los_mode::force_off;
    auto sc_clusters_off = sc;
    sc_clusters_off.options.include_clusters = false;
    random_stream rc(9, {1, 0, 0});
    const auto c = generate_clusters(sc, link_kind::tx_ris, rc);
    random_stream rs(9, {7, 0, 0}), rd(9, {6, 0, 0});
    EXPECT_EQ(gen_hsiso(sc_clusters_off, share_clusters(c, sc, rs), rd), cplx{});
    sc.options.direct_blocked = true;
    EXPECT_TRUE(gen_mimo(sc, {1, 1, 0}).D.isZero(0.0));
}

TEST(MmwaveChannel, LosBlocksHaveRankOne)
{
    for (auto base : {test::indoor_scene(64, 4, 4), test::outdoor_scene(64, 4, 4)})
    {
        base.options.include_clusters = false;
        base.options.los_tx_ris = base.options.los_ris_rx = base.options.los_tx_rx = los_mode::force_on;
        for (std::uint32_t r = 0; r < 100; ++r)
        {
            const auto real = gen_mimo(base, {31, r, 0});
            EXPECT_EQ(numeric_rank(real.H), 1);
            EXPECT_EQ(numeric_rank(real.G), 1);
            EXPECT_EQ(numeric_rank(real.D), 1);
        }
    }
}

TEST(MmwaveChannel, LosFlagsFollowLosProbability)
{
    // Tx-RIS 2D distance ~47 m indoors: p_LOS ~ 0.09
    const auto sc = test::indoor_scene(4);
    const double p = los_probability(distance_2d(sc.tx, sc.ris.position), sc.env);
    const int n = 10000;
    int hits = 0;
    for (int r = 0; r < n; ++r)
        hits += gen_mimo(sc, {41, std::uint32_t(r), 0}).los_of(link_kind::tx_ris);
    EXPECT_NEAR(double(hits) / n, p, 3.0 * std::sqrt(p * (1 - p) / n));
}

TEST(Compose, IdentityPhasesAndNoDirect)
{
    const auto sc = test::indoor_scene(16, 2, 2);
    const auto r = gen_mimo(sc, {1, 0, 0});
    const cmat zero = cmat::Zero(2, 2);
    EXPECT_TRUE(compose_end_to_end(r.H, r.G, zero, zero_phases(16)).isApprox(r.G * r.H));
}

TEST(Compose, ScalarCase)
{
    cmat h(1, 1), g(1, 1), d(1, 1);
    h << cplx(0.3, -1.1);
    g << cplx(-0.7, 0.2);
    d << cplx(0.05, 0.4);
    ris_phase_config p;
    p.phases = {1.3};
    const cplx expected = g(0, 0) * std::polar(1.0, 1.3) * h(0, 0) + d(0, 0);
    EXPECT_NEAR(std::abs(compose_end_to_end(h, g, d, p)(0, 0) - expected), 0.0, 1e-15);
}

TEST(Compose, MatchesTripleLoop)
{
    random_stream rng(10, {1, 0, 0});
    const int N = 12, nt = 3, nr = 2;
    cmat H(N, nt), G(nr, N), D(nr, nt);
    for (auto *m : {&H, &G, &D})
        for (Eigen::Index i = 0; i < m->size(); ++i)
            m->data()[i] = rng.complex_normal();
    const auto phases = random_phases(N, rng);
    const cmat C = compose_end_to_end(H, G, D, phases);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nt; ++j)
        {
            cplx acc = D(i, j);
            for (int n = 0; n < N; ++n)
                acc += G(i, n) * std::polar(1.0, phases.phases[std::size_t(n)]) * H(n, j);
            EXPECT_NEAR(std::abs(C(i, j) - acc), 0.0, 1e-12);
        }
}

TEST(Compose, DimensionMismatchThrows)
{
    EXPECT_THROW(compose_end_to_end(cmat::Zero(4, 1), cmat::Zero(1, 4), cmat::Zero(1, 1), zero_phases(3)),
                 dimension_error);
    EXPECT_THROW(compose_end_to_end(cmat::Zero(4, 2), cmat::Zero(1, 4), cmat::Zero(1, 1), zero_phases(4)),
                 dimension_error);
}

TEST(Compose, PowerBudgetAndSisoEquality)
{
    random_stream rng(11, {1, 0, 0});
    for (int t = 0; t < 100; ++t)
    {
        const int N = 16;
        cmat H(N, 2), G(2, N);
        for (auto *m : {&H, &G})
            for (Eigen::Index i = 0; i < m->size(); ++i)
                m->data()[i] = rng.complex_normal();
        double bound = 0.0;
        for (int n = 0; n < N; ++n)
            bound += G.col(n).norm() * H.row(n).norm();
        EXPECT_LE(compose_end_to_end(H, G, cmat::Zero(2, 2), random_phases(N, rng)).norm(), bound * (1 + 1e-12));

        const cvec h = H.col(0), g = G.row(0).transpose();
        const cmat c = compose_end_to_end(cmat(h), cmat(g.transpose()), cmat::Zero(1, 1), phases_cophase_siso(h, g));
        double siso_bound = 0.0;
        for (int n = 0; n < N; ++n)
            siso_bound += std::abs(g[n]) * std::abs(h[n]);
        EXPECT_NEAR(std::abs(c(0, 0)), siso_bound, 1e-10 * siso_bound);
    }
}
