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
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "thzap/geometry.hpp"
#include "thzap/linkbudget.hpp"
#include "thzap/mobility.hpp"

namespace thzap
{

enum class Multiplexing
{
    TimeShare,     // AP time split equally across its assigned users
    StrongestOnly, // only the strongest assigned user is served
};

/// Complete, reproducible description of one experiment.
struct SimConfig
{
    Room room;
    PlacementType placement = PlacementType::B;
    int n_aps = 4;                 // ignored for Type A (always one AP)
    double total_power_w = 1e-3;   // room budget, split evenly across APs
    LinkBudgetParams<double> link; // tx_power_w is overwritten by the per-AP share
    int n_users = 30;
    std::uint64_t seed = 1;
    MobilityParams mobility;
    double duration_s = 60.0;
    double dt_s = 0.01;
    bool blockage_enabled = false;
    double t_align_s = 5e-3;
    std::optional<double> effective_height_m; // replaces room height - user height
    Multiplexing multiplexing = Multiplexing::TimeShare;
    DistanceStatistic reference_statistic = DistanceStatistic::Mean;
    int reference_grid = 50;
    double realign_interval_s = 0.0; // > 0 forces every link to realign periodically
    double hanging_height_m = 2.0;   // Type D mount height
    double lamp_height_m = 1.2;      // Type E mount height
    double cluster_spacing_m = 0.5;  // Type F AP spacing

    void validate() const;

    int ap_count() const;
    double per_ap_power_w() const;
    Room effective_room() const;
    double effective_height() const;
    LinkBudgetParams<double> per_ap_link() const;
};

// Room, placement and (for Type C) the height correction derived from reference distances.
Constellation build_constellation(const SimConfig &config);

struct LinkAssignment
{
    std::vector<int> ap_of_user;          // -1: unassigned
    std::vector<double> alignment_left_s; // 0 once aligned

    bool aligned(std::size_t user) const { return alignment_left_s[user] <= 0.0; }
};

struct Candidate
{
    int ap = -1; // -1: none
    double power_w = 0.0;
};

struct BestLinks
{
    Candidate feasible;   // strongest AP in view with clear line of sight
    Candidate geometric;  // strongest AP in view, ignoring blockers
};

/// Strongest AP for a receiver at `device`. Ties go to the lowest AP id.
BestLinks best_links(const Point3 &device, const Constellation &constellation, const LinkBudgetParams<double> &link,
                     double tau_per_m, std::span<const BodyCylinder> blockers, int exclude_id);

/// Assigns each user to its strongest feasible AP; with blockage, other users' bodies
/// can obstruct the line of sight.
LinkAssignment associate(std::span<const UserState> users, const Constellation &constellation,
                         const LinkBudgetParams<double> &link, double device_height_m, bool blockage);

enum class EventKind
{
    Handoff,
    BlockageStart,
    BlockageEnd,
    AlignmentDone,
};

const char *to_string(EventKind kind);

struct Event
{
    double t_s;
    EventKind kind;
    int user;
    int ap;
};

struct TrajectorySample
{
    double t_s;
    int user;
    double x_m;
    double y_m;
};

struct MetricsReport
{
    double user_coverage = 0.0;       // share of (user, step) pairs meeting the user's demand
    double mean_throughput_bps = 0.0; // delivered rate averaged over users and steps
    double ap_idle_fraction = 1.0;    // share of (AP, step) pairs with no assigned user
    std::int64_t handoff_count = 0;
    std::int64_t alignment_events = 0;
    double alignment_overhead_s = 0.0; // summed dead time spent aligning
    std::int64_t blockage_events = 0;
    std::int64_t steps = 0;
    double per_ap_power_w = 0.0;
    double effective_height_m = 0.0;
    double height_correction_m = 0.0;
    Eigen::VectorXd ap_idle;           // per AP
    Eigen::VectorXd user_coverage_each;
    Eigen::VectorXd user_throughput_each;
};

/// Fixed-step engine. Each step moves users, re-associates, advances beam alignment and
/// accumulates metrics.
class Simulator
{
public:
    explicit Simulator(const SimConfig &config);
    // Explicit scene; users keep their given state and get per-id random streams.
    Simulator(const SimConfig &config, Constellation constellation, std::vector<UserState> users);

    void step(std::vector<Event> *events = nullptr);

    double time_s() const { return time_s_; }
    const SimConfig &config() const { return config_; }
    const Constellation &constellation() const { return constellation_; }
    const std::vector<UserState> &users() const { return users_; }
    const LinkAssignment &assignment() const { return assignment_; }
    std::span<const double> delivered_rates() const { return delivered_; }
    std::span<const double> achievable_rates() const { return achievable_; }

    MetricsReport report() const;

private:
    void start_alignment(std::size_t user);

    SimConfig config_;
    LinkBudgetParams<double> link_;
    double tau_per_m_;
    Constellation constellation_;
    std::vector<UserState> users_;
    std::vector<RngStream> streams_;
    LinkAssignment assignment_;
    std::vector<char> shadowed_;
    std::vector<char> held_;
    std::vector<double> delivered_;
    std::vector<double> achievable_;
    std::vector<BodyCylinder> bodies_;
    double time_s_ = 0.0;
    std::int64_t realign_epoch_ = 0;

    std::int64_t steps_ = 0;
    std::int64_t handoffs_ = 0;
    std::int64_t alignment_events_ = 0;
    std::int64_t blockage_events_ = 0;
    double alignment_overhead_s_ = 0.0;
    Eigen::VectorXd ap_idle_steps_;
    Eigen::VectorXd user_covered_steps_;
    Eigen::VectorXd user_rate_sum_;
};

struct RunTrace
{
    bool record_events = false;
    bool record_trajectory = false;
    std::vector<Event> events;
    std::vector<TrajectorySample> trajectory;
};

/// Runs round(duration / dt) steps. Deterministic in the config (seed included).
MetricsReport run(const SimConfig &config, RunTrace *trace = nullptr);

enum class Region : std::uint8_t
{
    Darkness = 0,
    Illumination = 1,
    Shadow = 2,
};

char to_char(Region r);

/// Peak rate field at device height with region labels. Indexed (ix, iy), cell centres at
/// ((ix + 0.5) / resolution, (iy + 0.5) / resolution), clamped into the room.
struct HeatmapGrid
{
    double resolution_per_m = 1.0;
    double length_m = 0.0;
    double width_m = 0.0;
    double device_height_m = 1.5;
    double probe_bps = 0.0;
    Eigen::ArrayXXd rate_bps;
    Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> region;

    Point2 cell_center(Eigen::Index ix, Eigen::Index iy) const;
    Region label(Eigen::Index ix, Eigen::Index iy) const { return static_cast<Region>(region(ix, iy)); }
};

HeatmapGrid heatmap(const Constellation &constellation, const Room &room, const LinkBudgetParams<double> &link,
                    double device_height_m, double resolution_per_m, double probe_bps,
                    std::span<const BodyCylinder> blockers = {});
HeatmapGrid heatmap(const SimConfig &config, double resolution_per_m, double probe_bps,
                    std::span<const BodyCylinder> blockers = {});

struct Scenario
{
    PlacementType type = PlacementType::B;
    int n_aps = 4;

    std::string label() const; // "A", "B4", "C16"
    static Scenario parse(std::string_view label);
    void apply(SimConfig &config) const;
};

enum class SweepAxis
{
    EffectiveHeight,
    ApCount,
    Placement,
};

SweepAxis sweep_axis_from_string(std::string_view name);

struct SweepRow
{
    Scenario scenario;
    double effective_height_m = 0.0;
    std::uint64_t seed = 0;
    MetricsReport metrics;
};

// Independent runs with the base seed, one per value, ordered by value. `jobs` > 1 runs
// them on worker threads. Run errors are rethrown naming the offending value.
std::vector<SweepRow> sweep(const SimConfig &base, SweepAxis axis, std::span<const double> values, int jobs = 1);
std::vector<SweepRow> sweep(const SimConfig &base, std::span<const Scenario> scenarios, int jobs = 1);

// Scenario-major grid: every scenario at every effective height.
std::vector<SweepRow> sweep_grid(const SimConfig &base, std::span<const Scenario> scenarios,
                                 std::span<const double> heights_m, int jobs = 1);

} // namespace thzap
