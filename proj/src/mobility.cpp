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

#include "thzap/mobility.hpp"

#include <algorithm>
#include <stdexcept>

namespace thzap
{

namespace
{

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Point2 draw_point(const Room &room, RngStream &rng)
{
    const double x = rng.uniform(0.0, room.length_m);
    const double y = rng.uniform(0.0, room.width_m);
    return {x, y};
}

double draw_velocity(const MobilityParams &p, RngStream &rng)
{
    return rng.uniform(p.velocity_mean_mps - p.velocity_span_mps, p.velocity_mean_mps + p.velocity_span_mps);
}

} // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

RngStream RngStream::substream(std::uint64_t master_seed, std::uint64_t id)
{
    return RngStream(splitmix64(splitmix64(master_seed) ^ splitmix64(id + 0x632be59bd9b4e019ULL)));
}

double RngStream::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

void MobilityParams::validate() const
{
    if (!(velocity_mean_mps - velocity_span_mps > 0) || velocity_span_mps < 0)
        throw std::invalid_argument("user velocity range must stay positive");
    if (pause_s < 0)
        throw std::invalid_argument("pause time must be non-negative");
    if (!(rate_min_bps > 0) || rate_max_bps < rate_min_bps)
        throw std::invalid_argument("demanded rate range must be positive and ordered");
    if (rate_constant_bps && !(*rate_constant_bps > 0))
        throw std::invalid_argument("constant demanded rate must be positive");
    if (!(user_height_m > 0) || user_height_span_m < 0 || user_height_span_m >= user_height_m)
        throw std::invalid_argument("user height must be positive with span below it");
    if (!(user_width_m > 0))
        throw std::invalid_argument("user width must be positive");
}

std::vector<RngStream> make_user_streams(std::uint64_t seed, int count)
{
    std::vector<RngStream> streams;
    streams.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i)
        streams.push_back(RngStream::substream(seed, static_cast<std::uint64_t>(i)));
    return streams;
}

std::vector<UserState> init_users(const Room &room, const MobilityParams &params, std::vector<RngStream> &streams)
{
    room.validate();
    params.validate();
    std::vector<UserState> users;
    users.reserve(streams.size());
    for (std::size_t i = 0; i < streams.size(); ++i)
    {
        RngStream &rng = streams[i];
        UserState u;
        u.id = static_cast<int>(i);
        u.position = draw_point(room, rng);
        u.waypoint = draw_point(room, rng);
        u.velocity_mps = draw_velocity(params, rng);
        const double demand = rng.uniform(params.rate_min_bps, params.rate_max_bps);
        u.demand_bps = params.rate_constant_bps ? *params.rate_constant_bps : demand;
        u.body.id = u.id;
        u.body.center = u.position;
        u.body.radius_m = params.user_width_m / 2;
        u.body.height_m = rng.uniform(params.user_height_m - params.user_height_span_m,
                                      params.user_height_m + params.user_height_span_m);
        users.push_back(u);
    }
    return users;
}

std::vector<UserState> init_users(const Room &room, int count, std::uint64_t seed, const MobilityParams &params)
{
    if (count < 0)
        throw std::invalid_argument("user count must be non-negative");
    auto streams = make_user_streams(seed, count);
    return init_users(room, params, streams);
}

UserState step_user(const UserState &user, double dt_s, RngStream &rng, const Room &room, const MobilityParams &params)
{
    if (!(dt_s > 0))
        throw std::invalid_argument("step_user: dt must be positive");
    UserState u = user;
    if (params.stationary)
        return u;
    if (u.pause_left_s > 0)
    {
        u.pause_left_s = std::max(0.0, u.pause_left_s - dt_s);
        if (u.pause_left_s == 0.0)
        {
            u.waypoint = draw_point(room, rng);
            u.velocity_mps = draw_velocity(params, rng);
        }
        return u;
    }

    const Point2 to_go = u.waypoint - u.position;
    const double dist = to_go.norm();
    const double travel = u.velocity_mps * dt_s;
    if (dist <= travel)
    {
        u.position = u.waypoint;
        if (params.pause_s > 0)
        {
            u.pause_left_s = params.pause_s;
        }
        else
        {
            u.waypoint = draw_point(room, rng);
            u.velocity_mps = draw_velocity(params, rng);
        }
    }
    else
    {
        u.position += to_go * (travel / dist);
    }
    // Straight moves between interior points stay inside the convex room; clamp rounding.
    u.position.x() = std::clamp(u.position.x(), 0.0, room.length_m);
    u.position.y() = std::clamp(u.position.y(), 0.0, room.width_m);
    u.body.center = u.position;
    return u;
}

} // namespace thzap
