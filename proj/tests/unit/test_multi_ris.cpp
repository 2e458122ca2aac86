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

#include <simris/multi_ris.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace simris;

namespace
{
    cvec random_vector(random_stream &rng, Eigen::Index n)
    {
        cvec v(n);
        for (Eigen::Index i = 0; i < n; ++i)
            v[i] = rng.complex_normal();
        return v;
    }

    multi_ris_scene two_ris(const scene &base)
    {
        multi_ris_scene ms;
        ms.base = base;
        ms.sites.push_back(base.ris);
        ris_site second = base.ris;
        second.position = {60.0, 40.0, 2.5};
        second.array.orientation = surface_orientation::facing_towards(mounting_plane::yz, second.position, base.tx);
        ms.sites.push_back(second);
        return ms;
    }
}

TEST(ComposeMulti, SingleRisMatchesEndToEnd)
{
    random_stream rng(1, {1, 0, 0});
    const auto real = gen_mimo(test::indoor_scene(16, 2, 2), {1, 0, 0});
    const auto phases = random_phases(16, rng);
    std::vector<ris_term> terms{{real.H, real.G, true}};
    EXPECT_EQ(compose_multi(terms, {phases}, real.D), compose_end_to_end(real, phases));
}

TEST(ComposeMulti, InactiveTermIsDropped)
{
    const auto sc = test::indoor_scene(16);
    const auto ms = two_ris(sc);
    const auto real = gen_multi(ms, {2, 0, 0});
    ASSERT_EQ(real.terms.size(), 2u);
    auto terms = real.terms;
    const std::vector<ris_phase_config> phases{zero_phases(16), zero_phases(16)};
    terms[1].active = false;
    const cmat only_first = compose_multi(terms, phases, real.D);
    EXPECT_EQ(only_first, compose_end_to_end(terms[0].H, terms[0].G, real.D, phases[0]));
    terms[0].active = false;
    EXPECT_EQ(compose_multi(terms, phases, real.D), real.D);
}

TEST(ComposeMulti, CoherentBoundWithAlignedCophasing)
{
    random_stream rng(3, {1, 0, 0});
    for (int t = 0; t < 100; ++t)
    {
        std::vector<ris_term> terms;
        std::vector<ris_phase_config> phases;
        double bound = 0.0;
        for (int k = 0; k < 2; ++k)
        {
            const Eigen::Index n = 8 + 8 * k;
            const cvec h = random_vector(rng, n), g = random_vector(rng, n);
            terms.push_back({cmat(h), cmat(g.transpose()), true});
            phases.push_back(phases_cophase_siso(h, g, 0.0)); // common reference phase
            bound += (g.cwiseAbs().array() * h.cwiseAbs().array()).sum();
        }
        const cmat C = compose_multi(terms, phases, cmat::Zero(1, 1));
        EXPECT_NEAR(std::abs(C(0, 0)), bound, 1e-12 * bound);
    }
}

TEST(ComposeMulti, DimensionChecks)
{
    std::vector<ris_term> terms{{cmat::Zero(4, 1), cmat::Zero(1, 4), true}};
    EXPECT_THROW(compose_multi(terms, {}, cmat::Zero(1, 1)), dimension_error);
    EXPECT_THROW(compose_multi(terms, {zero_phases(3)}, cmat::Zero(1, 1)), dimension_error);
}

TEST(GenMulti, FirstRisEqualsSingleRisRealization)
{
    for (const auto &sc : {test::indoor_scene(16, 2, 2), test::outdoor_scene(16, 2, 2), test::sub6_scene(16)})
    {
        multi_ris_scene ms = two_ris(sc);
        if (!sc.indoor())
            ms.sites[1].position = {70.0, 60.0, 10.0};
        ms.sites[1].array.orientation =
            surface_orientation::facing_towards(mounting_plane::yz, ms.sites[1].position, sc.tx);
        ASSERT_NO_THROW(ms.validate());
        for (std::uint32_t r = 0; r < 10; ++r)
        {
            const seed_lineage l{5, r, 0};
            const auto multi = gen_multi(ms, l);
            const auto single = sc.is_sub6() ? gen_sub6(sc, l) : gen_mimo(sc, l);
            EXPECT_EQ(multi.terms[0].H, single.H);
            EXPECT_EQ(multi.terms[0].G, single.G);
            EXPECT_EQ(multi.D, single.D);
            EXPECT_EQ(multi.los_direct, single.los_of(link_kind::tx_rx));
        }
    }
}

TEST(GenMulti, RisTermsUseIndependentStreams)
{
    // two RISs at the same place still draw different fading
    const auto sc = test::indoor_scene(16);
    multi_ris_scene ms;
    ms.base = sc;
    ms.sites = {sc.ris, sc.ris};
    const auto real = gen_multi(ms, {6, 0, 0});
    EXPECT_NE(real.terms[0].H, real.terms[1].H);
}

TEST(GenMulti, ValidateRequiresAtLeastOneRis)
{
    multi_ris_scene ms;
    ms.base = test::indoor_scene();
    EXPECT_THROW(ms.validate(), config_error);
    ms.sites.push_back(ms.base.ris);
    EXPECT_NO_THROW(ms.validate());
    ms.sites.back().array.orientation.facing *= -1;
    EXPECT_THROW(ms.validate(), config_error);
}
