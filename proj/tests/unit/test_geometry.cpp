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

#include <simris/geometry.hpp>
#include <simris/random.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace simris;

namespace
{
    constexpr double pi = std::numbers::pi;

    point3 random_point(random_stream &rng, double span)
    {
        return {rng.uniform(-span, span), rng.uniform(-span, span), rng.uniform(-span, span)};
    }
}

TEST(Distance, KnownValues)
{
    // sqrt(40^2 + 25^2)
    EXPECT_NEAR(distance({0, 25, 2}, {40, 50, 2}), 47.16990566, 1e-8);
    EXPECT_EQ(distance({1, 2, 3}, {1, 2, 3}), 0.0);
    EXPECT_DOUBLE_EQ(distance({0, 0, 0}, {3, 4, 0}), 5.0);
    EXPECT_DOUBLE_EQ(distance_2d({0, 0, 7}, {3, 4, -2}), 5.0);
}

TEST(Distance, SymmetricAndTriangleInequality)
{
    random_stream rng(1, {1, 0, 0});
    for (int i = 0; i < 1000; ++i)
    {
        const auto a = random_point(rng, 50), b = random_point(rng, 50), c = random_point(rng, 50);
        EXPECT_EQ(distance(a, b), distance(b, a));
        EXPECT_LE(distance(a, c), distance(a, b) + distance(b, c) + 1e-12);
    }
}

TEST(Orientation, NormalsAreUnitAndPerpendicularToPlane)
{
    for (auto plane : {mounting_plane::xz, mounting_plane::yz})
        for (int f : {+1, -1})
        {
            const surface_orientation o{plane, f};
            EXPECT_DOUBLE_EQ(norm(o.normal()), 1.0);
            EXPECT_DOUBLE_EQ(dot(o.normal(), o.horizontal_axis()), 0.0);
            EXPECT_DOUBLE_EQ(dot(o.normal(), {0, 0, 1}), 0.0);
        }
    EXPECT_EQ((surface_orientation{mounting_plane::xz, 1}.normal()), (point3{0, 1, 0}));
    EXPECT_EQ((surface_orientation{mounting_plane::yz, 1}.normal()), (point3{1, 0, 0}));
}

TEST(Orientation, FacingTowardsPutsTargetInFront)
{
    const auto o = surface_orientation::facing_towards(mounting_plane::xz, {40, 50, 2}, {0, 25, 2});
    EXPECT_EQ(o.facing, -1);
    EXPECT_GT(dot(point3{0, 25, 2} - point3{40, 50, 2}, o.normal()), 0.0);
}

TEST(Angles, BroadsideTarget)
{
    const auto a = angles_from({40, 50, 2}, {mounting_plane::xz, 1}, {40, 60, 2});
    EXPECT_NEAR(a.boresight, 0.0, 1e-12);
    EXPECT_TRUE(a.front);
}

TEST(Angles, AtanAcosOracle)
{
    const auto a = angles_from({0, 0, 0}, {mounting_plane::xz, 1}, {1, 1, 0});
    EXPECT_NEAR(a.azimuth, pi / 4, 1e-15);
    EXPECT_NEAR(a.elevation, pi / 2, 1e-15);
    EXPECT_NEAR(a.boresight, pi / 4, 1e-15);
}

TEST(Angles, ZenithLiesInSurfacePlane)
{
    const auto a = angles_from({0, 0, 0}, {mounting_plane::xz, 1}, {0, 0, 1});
    EXPECT_NEAR(a.elevation, 0.0, 1e-15);
    EXPECT_NEAR(a.boresight, pi / 2, 1e-15);
}

TEST(Angles, CoincidentPointsThrow)
{
    EXPECT_THROW(angles_from({1, 1, 1}, {}, {1, 1, 1}), domain_error);
}

TEST(Angles, BackHalfSpaceIsFlagged)
{
    const auto a = angles_from({0, 0, 0}, {mounting_plane::xz, 1}, {0, -3, 1});
    EXPECT_FALSE(a.front);
    EXPECT_GT(a.boresight, pi / 2);
}

TEST(Angles, FrontTargetsHaveBoresightWithinQuarterTurn)
{
    random_stream rng(2, {1, 0, 0});
    for (auto plane : {mounting_plane::xz, mounting_plane::yz})
    {
        const surface_orientation o{plane, 1};
        for (int i = 0; i < 2000; ++i)
        {
            const auto t = random_point(rng, 20);
            if (dot(t, o.normal()) < 0.0)
                continue;
            const auto a = angles_from({0, 0, 0}, o, t);
            EXPECT_TRUE(a.front);
            EXPECT_GE(a.boresight, 0.0);
            EXPECT_LE(a.boresight, pi / 2);
            EXPECT_GT(a.azimuth, -pi - 1e-15);
            EXPECT_LE(a.azimuth, pi);
        }
    }
}

TEST(Angles, RotationAboutNormalKeepsBoresight)
{
    // rotate origin and target together about the +y normal of an xz surface
    random_stream rng(3, {1, 0, 0});
    const surface_orientation o{mounting_plane::xz, 1};
    for (int i = 0; i < 500; ++i)
    {
        const point3 origin = random_point(rng, 10);
        point3 target = random_point(rng, 10);
        const double t = rng.uniform(-pi, pi);
        auto rot = [t](point3 p) {
            return point3{std::cos(t) * p.x + std::sin(t) * p.z, p.y, -std::sin(t) * p.x + std::cos(t) * p.z};
        };
        if (origin == target)
            continue;
        const auto a = angles_from(origin, o, target);
        const auto b = angles_from(rot(origin), o, rot(target));
        EXPECT_NEAR(a.boresight, b.boresight, 1e-9);
    }
}

TEST(Angles, UnitVectorRoundTrip)
{
    random_stream rng(4, {1, 0, 0});
    for (int i = 0; i < 500; ++i)
    {
        const point3 d = random_point(rng, 5);
        const auto a = angles_of(d, {});
        const point3 u = a.unit_vector();
        const point3 expected = (1.0 / norm(d)) * d;
        EXPECT_NEAR(u.x, expected.x, 1e-12);
        EXPECT_NEAR(u.y, expected.y, 1e-12);
        EXPECT_NEAR(u.z, expected.z, 1e-12);
        const point3 r = a.reversed().unit_vector();
        EXPECT_NEAR(r.x, -u.x, 1e-12);
        EXPECT_NEAR(r.y, -u.y, 1e-12);
        EXPECT_NEAR(r.z, -u.z, 1e-12);
    }
}
