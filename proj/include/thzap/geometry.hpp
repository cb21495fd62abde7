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

#pragma once

#include <cmath>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace thzap
{

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

using Point2 = Vec2<double>;
using Point3 = Vec3<double>;

/// Rectangular room; the floor spans [0, length] x [0, width] and the ceiling is at height.
struct Room
{
    double length_m = 10.0;
    double width_m = 10.0;
    double height_m = 3.0;

    void validate() const;
    bool contains(const Point3 &p, double tol = 1e-9) const;
    bool contains(const Point2 &p, double tol = 1e-9) const;
};

enum class PlacementType
{
    A, // single ceiling-centre AP
    B, // ceiling grid
    C, // wall perimeter
    D, // perimeter, hanging close to users
    E, // perimeter, below head height
    F, // dense ceiling cluster
};

char to_char(PlacementType t);
PlacementType placement_from_char(char c);

struct ApNode
{
    int id = 0;
    Point3 position = Point3::Zero();
    double view_deg = 360.0;   // azimuth sector the AP can steer into
    double facing_deg = 0.0;   // sector boresight, counter-clockwise from +x
    double alignment_time_s = 5e-3;

    // True when `target` lies in the AP's azimuth sector (boundary inclusive).
    bool in_view(const Point2 &target) const;
};

struct Constellation
{
    PlacementType type = PlacementType::A;
    std::vector<ApNode> nodes;
    double height_correction_m = 0.0;

    int size() const { return static_cast<int>(nodes.size()); }
};

/// Vertical body of a person, standing on the floor.
struct BodyCylinder
{
    int id = -1;
    Point2 center = Point2::Zero();
    double radius_m = 0.1;
    double height_m = 1.5;
};

bool is_supported_ap_count(int n);

Constellation place_type_a(const Room &room, double t_align_s);
Constellation place_type_b(const Room &room, int n, double t_align_s);
Constellation place_type_c(const Room &room, int n, double height_correction_m, double t_align_s);

// Geometric variants that are generated but not part of the evaluated set.
Constellation place_type_d(const Room &room, int n, double mount_height_m, double t_align_s);
Constellation place_type_e(const Room &room, int n, double mount_height_m, double t_align_s);
Constellation place_type_f(const Room &room, int n, double spacing_m, double t_align_s);

// Perimeter APs lowered by h_c so their illumination matches a ceiling grid:
// H / (H - h_c) = exp(tau (d_C - d_B) / 2).
template <typename Scalar>
Scalar height_correction(Scalar effective_height_m, Scalar d_b_m, Scalar d_c_m, Scalar tau_per_m)
{
    if (!(effective_height_m > 0) || !(d_b_m > 0) || tau_per_m < 0)
        throw std::domain_error("height_correction: requires H > 0, d_B > 0, tau >= 0");
    if (d_c_m < d_b_m)
        throw std::domain_error("height_correction: d_C must not be smaller than d_B");
    return -effective_height_m * std::expm1(tau_per_m * (d_b_m - d_c_m) / Scalar(2));
}

enum class DistanceStatistic
{
    Mean,
    Worst,
};

/// Mean (or maximum) over an n x n grid of floor-cell centres at `height_m` of the
/// 3-D distance to the nearest node.
double nearest_node_distance(const Room &room, std::span<const ApNode> nodes, double height_m,
                             int grid = 50, DistanceStatistic stat = DistanceStatistic::Mean);

struct ReferenceDistances
{
    double d_b_m;
    double d_c_m;
};

// Type B and uncorrected Type C constellations, both mounted at the ceiling.
ReferenceDistances reference_distances(const Room &room, int n, double user_height_m, int grid = 50,
                                       DistanceStatistic stat = DistanceStatistic::Mean);

// Whether the open segment a + t (b - a), t in (0, 1), passes through the solid vertical
// cylinder standing on the floor. Intersects the xy-projection with the disc, then checks
// the segment's z-range over that parameter interval. Grazing contact does not count.
template <typename Scalar>
bool segment_hits_cylinder(const Vec3<Scalar> &a, const Vec3<Scalar> &b, const Vec2<Scalar> &center,
                           Scalar radius, Scalar height)
{
    const Vec2<Scalar> d = (b - a).template head<2>();
    const Vec2<Scalar> m = a.template head<2>() - center;
    const Scalar aa = d.squaredNorm();
    const Scalar cc = m.squaredNorm() - radius * radius;

    Scalar t0;
    Scalar t1;
    if (aa == Scalar(0))
    {
        if (cc > 0)
            return false;
        t0 = 0;
        t1 = 1;
    }
    else
    {
        const Scalar bb = m.dot(d);
        const Scalar disc = bb * bb - aa * cc;
        if (disc <= 0)
            return false;
        const Scalar s = std::sqrt(disc);
        t0 = std::max(Scalar(0), (-bb - s) / aa);
        t1 = std::min(Scalar(1), (-bb + s) / aa);
    }
    if (t0 >= t1)
        return false;

    const Scalar z0 = a.z() + t0 * (b.z() - a.z());
    const Scalar z1 = a.z() + t1 * (b.z() - a.z());
    return std::min(z0, z1) < height && std::max(z0, z1) > Scalar(0);
}

/// Whether the open segment between `a` and `b` passes through any body other than
/// the one with id `exclude_id`.
bool los_blocked(const Point3 &a, const Point3 &b, std::span<const BodyCylinder> blockers,
                 int exclude_id = -1);

// One record per AP: id,x_m,y_m,z_m,view_deg,alignment_time_s,facing_deg.
void write_constellation(std::ostream &os, const Constellation &c);
Constellation read_constellation(std::istream &is, PlacementType type = PlacementType::C);

} // namespace thzap
