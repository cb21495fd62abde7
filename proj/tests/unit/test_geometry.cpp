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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <sstream>

#include "thzap/geometry.hpp"

using namespace thzap;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

bool has_node_at(const Constellation &c, double x, double y, double z)
{
    return std::any_of(c.nodes.begin(), c.nodes.end(), [&](const ApNode &n)
                       { return (n.position - Point3(x, y, z)).norm() < 1e-12; });
}

bool sampled_block(const Point3 &a, const Point3 &b, const std::vector<BodyCylinder> &blockers)
{
    const int n = 50000;
    for (int i = 0; i <= n; ++i)
    {
        const Point3 p = a + (static_cast<double>(i) / n) * (b - a);
        for (const auto &c : blockers)
            if ((p.head<2>() - c.center).norm() < c.radius_m && p.z() > 0 && p.z() < c.height_m)
                return true;
    }
    return false;
}

} // namespace

TEST_CASE("room validation")
{
    CHECK_NOTHROW(Room{}.validate());
    CHECK_THROWS_AS((Room{0.0, 10.0, 3.0}.validate()), std::invalid_argument);
    CHECK(Room{}.contains(Point2(10.0, 0.0)));
    CHECK_FALSE(Room{}.contains(Point2(10.1, 0.0)));
}

TEST_CASE("type A sits at the ceiling centre")
{
    const auto c = place_type_a(Room{}, 5e-3);
    REQUIRE(c.size() == 1);
    CHECK(c.nodes[0].position == Point3(5.0, 5.0, 3.0));
    CHECK(c.nodes[0].view_deg == 360.0);
    CHECK(c.nodes[0].alignment_time_s == 5e-3);
}

TEST_CASE("type B grids")
{
    const Room room;
    const auto b4 = place_type_b(room, 4, 5e-3);
    REQUIRE(b4.size() == 4);
    for (auto [x, y] : {std::pair{2.5, 2.5}, {2.5, 7.5}, {7.5, 2.5}, {7.5, 7.5}})
        CHECK(has_node_at(b4, x, y, 3.0));

    const auto b8 = place_type_b(room, 8, 5e-3);
    REQUIRE(b8.size() == 8);
    for (double x : {1.25, 3.75, 6.25, 8.75})
        for (double y : {2.5, 7.5})
            CHECK(has_node_at(b8, x, y, 3.0));

    CHECK(place_type_b(room, 12, 5e-3).size() == 12);
    CHECK(place_type_b(room, 16, 5e-3).size() == 16);
    CHECK_THROWS_AS(place_type_b(room, 5, 5e-3), std::invalid_argument);
}

TEST_CASE("type C perimeter")
{
    const Room room;
    const auto c4 = place_type_c(room, 4, 0.0, 5e-3);
    REQUIRE(c4.size() == 4);
    for (auto [x, y] : {std::pair{5.0, 0.0}, {10.0, 5.0}, {5.0, 10.0}, {0.0, 5.0}})
        CHECK(has_node_at(c4, x, y, 3.0));
    for (const auto &n : c4.nodes)
    {
        CHECK(n.view_deg == 180.0);
        CHECK(n.alignment_time_s == 2.5e-3);
        CHECK(n.in_view(Point2(5.0, 5.0)));
    }

    const auto lowered = place_type_c(room, 4, 1.0, 5e-3);
    CHECK(has_node_at(lowered, 5.0, 0.0, 2.0));
    CHECK(lowered.height_correction_m == 1.0);

    const auto c8 = place_type_c(room, 8, 0.0, 5e-3);
    CHECK(has_node_at(c8, 10.0 / 3.0, 0.0, 3.0));
    CHECK(has_node_at(c8, 20.0 / 3.0, 0.0, 3.0));
    CHECK(place_type_c(room, 16, 0.0, 5e-3).size() == 16);

    CHECK_THROWS(place_type_c(room, 4, 3.0, 5e-3));
    CHECK_THROWS(place_type_c(room, 4, -0.1, 5e-3));
    CHECK_THROWS(place_type_c(room, 6, 0.0, 5e-3));
}

TEST_CASE("180 degree view is a half plane facing the room")
{
    const auto c4 = place_type_c(Room{}, 4, 0.0, 5e-3);
    const ApNode *south = nullptr;
    for (const auto &n : c4.nodes)
        if (n.position.y() == 0.0)
            south = &n;
    REQUIRE(south != nullptr);
    CHECK(south->in_view(Point2(5.0, 0.5)));
    CHECK(south->in_view(Point2(0.0, 0.01)));
    CHECK_FALSE(south->in_view(Point2(5.0, -0.5)));
}

TEST_CASE("other placement types")
{
    const Room room;
    for (const auto &c : {place_type_d(room, 8, 2.0, 5e-3), place_type_e(room, 8, 1.2, 5e-3),
                          place_type_f(room, 8, 0.5, 5e-3)})
    {
        CHECK(c.size() == 8);
        for (const auto &n : c.nodes)
            CHECK(room.contains(n.position));
    }
    CHECK(place_type_d(room, 4, 2.0, 5e-3).nodes[0].position.z() == 2.0);
    CHECK(place_type_e(room, 4, 1.2, 5e-3).nodes[0].position.z() == 1.2);
}

TEST_CASE("height correction")
{
    CHECK(height_correction(1.5, 3.0, 3.0, 0.1) == 0.0);
    CHECK(height_correction(1.5, 3.0, 7.0, 0.0) == 0.0);
    CHECK_THAT(height_correction(1.5, 3.0, 7.0, 0.1), WithinRel(0.271903870383027212, 1e-14));
    CHECK_THROWS_AS(height_correction(1.5, 7.0, 3.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(height_correction(0.0, 3.0, 7.0, 0.1), std::domain_error);

    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i)
    {
        const double h = 0.5 + 6.5 * u(g), db = 0.5 + 9.5 * u(g), dc = db + 3.0 * u(g), tau = 2.0 * u(g);
        const double hc = height_correction(h, db, dc, tau);
        CHECK(hc >= 0.0);
        CHECK(hc < h);
        CHECK_THAT(h / (h - hc), WithinRel(std::exp(tau * (dc - db) / 2), 1e-12));
    }
}

TEST_CASE("reference distances against the grid oracle")
{
    const Room room;
    const auto r50 = reference_distances(room, 4, 1.5, 50);
    CHECK_THAT(r50.d_b_m, WithinRel(2.4771459032540695, 1e-12));
    CHECK_THAT(r50.d_c_m, WithinRel(3.145454571649024, 1e-12));
    const auto r100 = reference_distances(room, 4, 1.5, 100);
    CHECK_THAT(r100.d_b_m, WithinRel(2.4779230086798463, 1e-12));
    CHECK_THAT(r100.d_c_m, WithinRel(3.144871699795111, 1e-12));
    CHECK_THAT(r100.d_b_m, WithinRel(r50.d_b_m, 0.01));

    for (int n : {4, 8, 12, 16})
    {
        const auto r = reference_distances(room, n, 1.5, 50);
        CHECK(r.d_b_m <= r.d_c_m);
    }
}

TEST_CASE("a grid beats the single centre AP on worst-case distance")
{
    const Room room;
    const auto a = place_type_a(room, 5e-3);
    const double worst_a = nearest_node_distance(room, a.nodes, 1.5, 50, DistanceStatistic::Worst);
    for (int n : {4, 8, 12, 16})
    {
        const auto b = place_type_b(room, n, 5e-3);
        CHECK(nearest_node_distance(room, b.nodes, 1.5, 50, DistanceStatistic::Worst) < worst_a);
    }
    // identical constellations give identical statistics
    CHECK(nearest_node_distance(room, a.nodes, 1.5) == nearest_node_distance(room, a.nodes, 1.5));
}

TEST_CASE("segment against cylinder")
{
    const Point3 ap(5.0, 5.0, 3.0);
    const Point3 ue(5.0, 2.0, 1.5);
    CHECK(segment_hits_cylinder<double>(ap, ue, Point2(5.0, 2.2), 0.1, 1.7));
    CHECK_FALSE(segment_hits_cylinder<double>(ap, ue, Point2(5.0, 2.2), 0.1, 1.5));
    CHECK_FALSE(segment_hits_cylinder<double>(ap, ue, Point2(5.5, 2.2), 0.1, 2.0));
    CHECK_FALSE(segment_hits_cylinder<double>(ap, ue, Point2(5.0, 6.0), 0.1, 3.0));
    // passes over a 1.8 m body at z = 2.25
    CHECK_FALSE(segment_hits_cylinder<double>(ap, Point3(5, 9, 1.5), Point2(5.0, 7.0), 0.1, 1.8));
    CHECK(segment_hits_cylinder<double>(ap, Point3(5, 9, 1.5), Point2(5.0, 7.0), 0.1, 2.3));
    // vertical segment through the cylinder axis
    CHECK(segment_hits_cylinder<double>(Point3(1, 1, 3), Point3(1, 1, 1), Point2(1, 1), 0.1, 1.5));
    // grazing the surface is not a hit
    CHECK_FALSE(segment_hits_cylinder<double>(Point3(0, 1, 1), Point3(2, 1, 1), Point2(1, 0.9), 0.1, 2.0));
}

TEST_CASE("los_blocked excludes the user's own body")
{
    std::vector<BodyCylinder> bodies = {{7, Point2(5.0, 2.0), 0.1, 1.8}};
    const Point3 ap(5.0, 5.0, 3.0);
    const Point3 ue(5.0, 2.0, 1.5);
    CHECK(los_blocked(ap, ue, bodies));
    CHECK_FALSE(los_blocked(ap, ue, bodies, 7));
    CHECK_FALSE(los_blocked(ap, ue, {}));
}

TEST_CASE("los_blocked agrees with dense sampling")
{
    std::mt19937_64 g(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> jitter(0.0, 0.3);
    int blocked = 0;
    for (int scene = 0; scene < 200; ++scene)
    {
        const Point3 a(10 * u(g), 10 * u(g), 2.0 + u(g));
        const Point3 b(10 * u(g), 10 * u(g), 1.0 + u(g));
        std::vector<BodyCylinder> cyl;
        for (int k = 0; k < 3; ++k)
        {
            const Point3 on = a + u(g) * (b - a);
            cyl.push_back({k, Point2(on.x() + jitter(g), on.y() + jitter(g)), 0.05 + 0.2 * u(g), 1.0 + u(g)});
        }
        const bool exact = los_blocked(a, b, cyl);
        blocked += exact;
        CHECK(exact == sampled_block(a, b, cyl));
    }
    CHECK(blocked > 20);
}

TEST_CASE("blockage is symmetric in the segment endpoints")
{
    std::mt19937_64 g(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i)
    {
        const Point3 a(10 * u(g), 10 * u(g), 3 * u(g));
        const Point3 b(10 * u(g), 10 * u(g), 3 * u(g));
        const Point2 c(10 * u(g), 10 * u(g));
        const double r = 0.1 + u(g), h = 2 * u(g);
        CHECK(segment_hits_cylinder<double>(a, b, c, r, h) == segment_hits_cylinder<double>(b, a, c, r, h));
    }
}

TEST_CASE("constellation CSV round trip")
{
    const auto c = place_type_c(Room{}, 8, 0.25, 5e-3);
    std::stringstream ss;
    write_constellation(ss, c);
    const auto back = read_constellation(ss, PlacementType::C);
    REQUIRE(back.size() == c.size());
    for (int i = 0; i < c.size(); ++i)
    {
        CHECK(back.nodes[i].position == c.nodes[i].position);
        CHECK(back.nodes[i].facing_deg == c.nodes[i].facing_deg);
        CHECK(back.nodes[i].alignment_time_s == c.nodes[i].alignment_time_s);
    }

    std::stringstream bad("id,x_m,y_m,z_m,view_deg,alignment_time_s\n0,1,1,3,90,0.005\n");
    CHECK_THROWS(read_constellation(bad));
}
