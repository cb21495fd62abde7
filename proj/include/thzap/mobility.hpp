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

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "thzap/geometry.hpp"

namespace thzap
{

/// Seeded 64-bit stream. Draws are produced from std::mt19937_64 output bits directly, so
/// sequences are identical on every conforming standard library.
class RngStream
{
public:
    explicit RngStream(std::uint64_t seed);

    // Independent stream for entity `id` under a master seed (splitmix64 of both).
    static RngStream substream(std::uint64_t master_seed, std::uint64_t id);

    double uniform01(); // [0, 1), 53 random bits
    double uniform(double lo, double hi);
    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

struct MobilityParams
{
    double velocity_mean_mps = 1.0;
    double velocity_span_mps = 0.5;
    double pause_s = 0.0;
    double rate_min_bps = 1e9;
    double rate_max_bps = 10e9;
    std::optional<double> rate_constant_bps; // overrides the uniform demand draw
    double user_height_m = 1.5;              // device height and mean body height
    double user_height_span_m = 0.2;         // body heights uniform in mean +/- span
    double user_width_m = 0.2;               // body diameter
    bool stationary = false;                 // users keep their initial position

    void validate() const;
};

struct UserState
{
    int id = 0;
    Point2 position = Point2::Zero();
    double velocity_mps = 1.0;
    Point2 waypoint = Point2::Zero();
    BodyCylinder body;
    double demand_bps = 1e9;
    double pause_left_s = 0.0;

    Point3 device(double device_height_m) const { return {position.x(), position.y(), device_height_m}; }
};

std::vector<RngStream> make_user_streams(std::uint64_t seed, int count);

// Draws every user from its own stream; the streams continue to drive step_user.
std::vector<UserState> init_users(const Room &room, const MobilityParams &params, std::vector<RngStream> &streams);
std::vector<UserState> init_users(const Room &room, int count, std::uint64_t seed, const MobilityParams &params);

/// Random-waypoint move over dt. On arrival the user stops exactly at the waypoint and
/// draws a fresh waypoint and speed (after the configured pause, if any).
UserState step_user(const UserState &user, double dt_s, RngStream &rng, const Room &room,
                    const MobilityParams &params);

} // namespace thzap
