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

#include "thzap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "thzap/format.hpp"

namespace thzap
{

namespace
{

constexpr double deg_to_rad = std::numbers::pi / 180.0;

std::pair<int, int> grid_shape(int n)
{
    switch (n)
    {
    case 4: return {2, 2};
    case 8: return {4, 2};
    case 12: return {4, 3};
    case 16: return {4, 4};
    default: throw std::invalid_argument("unsupported AP count " + std::to_string(n) + " (expected 4, 8, 12 or 16)");
    }
}

ApNode make_node(int id, double x, double y, double z, double view, double facing, double t_align)
{
    ApNode node;
    node.id = id;
    node.position = Point3(x, y, z);
    node.view_deg = view;
    node.facing_deg = facing;
    node.alignment_time_s = t_align;
    return node;
}

void require_t_align(double t_align_s)
{
    if (!(t_align_s > 0))
        throw std::invalid_argument("alignment time must be positive");
}

// n/4 nodes per wall at equal spacing, walked counter-clockwise from the y = 0 wall.
std::vector<ApNode> perimeter_nodes(const Room &room, int n, double z, double t_align_s)
{
    grid_shape(n);
    const int per_wall = n / 4;
    const double L = room.length_m;
    const double W = room.width_m;
    std::vector<ApNode> nodes;
    nodes.reserve(static_cast<std::size_t>(n));
    int id = 0;
    for (int k = 1; k <= per_wall; ++k)
        nodes.push_back(make_node(id++, L * k / (per_wall + 1), 0.0, z, 180.0, 90.0, t_align_s));
    for (int k = 1; k <= per_wall; ++k)
        nodes.push_back(make_node(id++, L, W * k / (per_wall + 1), z, 180.0, 180.0, t_align_s));
    for (int k = 1; k <= per_wall; ++k)
        nodes.push_back(make_node(id++, L - L * k / (per_wall + 1), W, z, 180.0, 270.0, t_align_s));
    for (int k = 1; k <= per_wall; ++k)
        nodes.push_back(make_node(id++, 0.0, W - W * k / (per_wall + 1), z, 180.0, 0.0, t_align_s));
    return nodes;
}

} // namespace

void Room::validate() const
{
    if (!(length_m > 0) || !(width_m > 0) || !(height_m > 0))
        throw std::invalid_argument("room dimensions must be positive");
}

bool Room::contains(const Point3 &p, double tol) const
{
    return p.x() >= -tol && p.x() <= length_m + tol && p.y() >= -tol && p.y() <= width_m + tol && p.z() >= -tol &&
           p.z() <= height_m + tol;
}

bool Room::contains(const Point2 &p, double tol) const
{
    return p.x() >= -tol && p.x() <= length_m + tol && p.y() >= -tol && p.y() <= width_m + tol;
}

char to_char(PlacementType t) { return static_cast<char>('A' + static_cast<int>(t)); }

PlacementType placement_from_char(char c)
{
    if (c >= 'a' && c <= 'f')
        c = static_cast<char>(c - 'a' + 'A');
    if (c < 'A' || c > 'F')
        throw std::invalid_argument(std::string("unknown placement type '") + c + "'");
    return static_cast<PlacementType>(c - 'A');
}

bool ApNode::in_view(const Point2 &target) const
{
    if (view_deg >= 360.0)
        return true;
    const Point2 dir = target - position.head<2>();
    const double len = dir.norm();
    if (len == 0.0)
        return true;
    const Point2 boresight(std::cos(facing_deg * deg_to_rad), std::sin(facing_deg * deg_to_rad));
    return dir.dot(boresight) >= len * (std::cos(0.5 * view_deg * deg_to_rad) - 1e-12);
}

bool is_supported_ap_count(int n) { return n == 4 || n == 8 || n == 12 || n == 16; }

Constellation place_type_a(const Room &room, double t_align_s)
{
    room.validate();
    require_t_align(t_align_s);
    Constellation c;
    c.type = PlacementType::A;
    c.nodes.push_back(make_node(0, room.length_m / 2, room.width_m / 2, room.height_m, 360.0, 0.0, t_align_s));
    return c;
}

Constellation place_type_b(const Room &room, int n, double t_align_s)
{
    room.validate();
    require_t_align(t_align_s);
    const auto [nx, ny] = grid_shape(n);
    Constellation c;
    c.type = PlacementType::B;
    int id = 0;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            c.nodes.push_back(make_node(id++, room.length_m * (i + 0.5) / nx, room.width_m * (j + 0.5) / ny,
                                        room.height_m, 360.0, 0.0, t_align_s));
    return c;
}

Constellation place_type_c(const Room &room, int n, double height_correction_m, double t_align_s)
{
    room.validate();
    require_t_align(t_align_s);
    if (!(height_correction_m >= 0) || !(height_correction_m < room.height_m))
        throw std::invalid_argument("height correction must be in [0, room height)");
    Constellation c;
    c.type = PlacementType::C;
    c.height_correction_m = height_correction_m;
    c.nodes = perimeter_nodes(room, n, room.height_m - height_correction_m, t_align_s / 2);
    return c;
}

Constellation place_type_d(const Room &room, int n, double mount_height_m, double t_align_s)
{
    room.validate();
    require_t_align(t_align_s);
    if (!(mount_height_m > 0) || mount_height_m > room.height_m)
        throw std::invalid_argument("Type D mount height must be in (0, room height]");
    Constellation c;
    c.type = PlacementType::D;
    c.height_correction_m = room.height_m - mount_height_m;
    c.nodes = perimeter_nodes(room, n, mount_height_m, t_align_s / 2);
    return c;
}

Constellation place_type_e(const Room &room, int n, double mount_height_m, double t_align_s)
{
    Constellation c = place_type_d(room, n, mount_height_m, t_align_s);
    c.type = PlacementType::E;
    return c;
}

Constellation place_type_f(const Room &room, int n, double spacing_m, double t_align_s)
{
    room.validate();
    require_t_align(t_align_s);
    const auto [nx, ny] = grid_shape(n);
    if (!(spacing_m > 0) || spacing_m * (nx - 1) > room.length_m || spacing_m * (ny - 1) > room.width_m)
        throw std::invalid_argument("Type F spacing must be positive and fit the room");
    Constellation c;
    c.type = PlacementType::F;
    const double x0 = room.length_m / 2 - spacing_m * (nx - 1) / 2;
    const double y0 = room.width_m / 2 - spacing_m * (ny - 1) / 2;
    int id = 0;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            c.nodes.push_back(make_node(id++, x0 + spacing_m * i, y0 + spacing_m * j, room.height_m, 360.0, 0.0,
                                        t_align_s));
    return c;
}

double nearest_node_distance(const Room &room, std::span<const ApNode> nodes, double height_m, int grid,
                             DistanceStatistic stat)
{
    if (nodes.empty())
        throw std::invalid_argument("nearest_node_distance: no nodes");
    if (grid < 1)
        throw std::invalid_argument("nearest_node_distance: grid must be positive");
    double acc = 0.0;
    for (int i = 0; i < grid; ++i)
    {
        for (int j = 0; j < grid; ++j)
        {
            const Point3 p(room.length_m * (i + 0.5) / grid, room.width_m * (j + 0.5) / grid, height_m);
            double best = std::numeric_limits<double>::infinity();
            for (const ApNode &n : nodes)
                best = std::min(best, (n.position - p).norm());
            acc = stat == DistanceStatistic::Mean ? acc + best : std::max(acc, best);
        }
    }
    return stat == DistanceStatistic::Mean ? acc / (double(grid) * grid) : acc;
}

ReferenceDistances reference_distances(const Room &room, int n, double user_height_m, int grid, DistanceStatistic stat)
{
    const Constellation b = place_type_b(room, n, 1.0);
    const Constellation c = place_type_c(room, n, 0.0, 1.0);
    return {nearest_node_distance(room, b.nodes, user_height_m, grid, stat),
            nearest_node_distance(room, c.nodes, user_height_m, grid, stat)};
}

bool los_blocked(const Point3 &a, const Point3 &b, std::span<const BodyCylinder> blockers, int exclude_id)
{
    for (const BodyCylinder &body : blockers)
    {
        if (body.id == exclude_id && exclude_id >= 0)
            continue;
        if (segment_hits_cylinder<double>(a, b, body.center, body.radius_m, body.height_m))
            return true;
    }
    return false;
}

void write_constellation(std::ostream &os, const Constellation &c)
{
    os << "id,x_m,y_m,z_m,view_deg,alignment_time_s,facing_deg\n";
    for (const ApNode &n : c.nodes)
    {
        os << n.id << ',' << format_number(n.position.x()) << ',' << format_number(n.position.y()) << ','
           << format_number(n.position.z()) << ',' << format_number(n.view_deg) << ','
           << format_number(n.alignment_time_s) << ',' << format_number(n.facing_deg) << '\n';
    }
}

Constellation read_constellation(std::istream &is, PlacementType type)
{
    Constellation c;
    c.type = type;
    std::string line;
    int line_no = 0;
    bool header = true;
    while (std::getline(is, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.front() == '#')
            continue;
        if (header)
        {
            header = false;
            if (line.rfind("id,", 0) == 0)
                continue;
        }
        std::vector<std::string> cols;
        std::stringstream ss(line);
        for (std::string col; std::getline(ss, col, ',');)
            cols.push_back(col);
        if (cols.size() != 6 && cols.size() != 7)
            throw std::invalid_argument("constellation line " + std::to_string(line_no) + ": expected 6 or 7 columns");
        ApNode node;
        node.id = static_cast<int>(parse_number(cols[0]));
        node.position = Point3(parse_number(cols[1]), parse_number(cols[2]), parse_number(cols[3]));
        node.view_deg = parse_number(cols[4]);
        node.alignment_time_s = parse_number(cols[5]);
        node.facing_deg = cols.size() == 7 ? parse_number(cols[6]) : 0.0;
        if (node.view_deg != 180.0 && node.view_deg != 360.0)
            throw std::invalid_argument("constellation line " + std::to_string(line_no) + ": view must be 180 or 360");
        if (node.view_deg == 180.0 && cols.size() != 7)
            throw std::invalid_argument("constellation line " + std::to_string(line_no) +
                                        ": sector APs need a facing_deg column");
        if (!(node.alignment_time_s > 0))
            throw std::invalid_argument("constellation line " + std::to_string(line_no) +
                                        ": alignment time must be positive");
        c.nodes.push_back(node);
    }
    return c;
}

} // namespace thzap
