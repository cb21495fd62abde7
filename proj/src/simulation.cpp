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

#include "thzap/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "thzap/format.hpp"

namespace thzap
{

// ---------- configuration ----------

void SimConfig::validate() const
{
    room.validate();
    if (placement != PlacementType::A && !is_supported_ap_count(n_aps))
        throw std::invalid_argument("n_aps must be one of 4, 8, 12, 16");
    if (!(total_power_w > 0))
        throw std::invalid_argument("total power must be positive");
    per_ap_link().validate();
    if (n_users < 0)
        throw std::invalid_argument("n_users must be non-negative");
    mobility.validate();
    if (!(dt_s > 0))
        throw std::invalid_argument("dt must be positive");
    if (!(duration_s >= dt_s))
        throw std::invalid_argument("duration must be at least one time step");
    if (!(t_align_s > 0))
        throw std::invalid_argument("t_align must be positive");
    if (effective_height_m && !(*effective_height_m > 0))
        throw std::invalid_argument("effective height must be positive");
    if (!(room.height_m > mobility.user_height_m) && !effective_height_m)
        throw std::invalid_argument("room height must exceed the user height");
    if (reference_grid < 1)
        throw std::invalid_argument("reference grid must be positive");
    if (realign_interval_s < 0)
        throw std::invalid_argument("realign interval must be non-negative");
}

int SimConfig::ap_count() const { return placement == PlacementType::A ? 1 : n_aps; }

double SimConfig::per_ap_power_w() const { return total_power_w / ap_count(); }

Room SimConfig::effective_room() const
{
    Room r = room;
    if (effective_height_m)
        r.height_m = *effective_height_m + mobility.user_height_m;
    return r;
}

double SimConfig::effective_height() const { return effective_room().height_m - mobility.user_height_m; }

LinkBudgetParams<double> SimConfig::per_ap_link() const
{
    LinkBudgetParams<double> l = link;
    l.tx_power_w = per_ap_power_w();
    return l;
}

Constellation build_constellation(const SimConfig &config)
{
    const Room room = config.effective_room();
    switch (config.placement)
    {
    case PlacementType::A: return place_type_a(room, config.t_align_s);
    case PlacementType::B: return place_type_b(room, config.n_aps, config.t_align_s);
    case PlacementType::C:
    {
        const ReferenceDistances ref = reference_distances(room, config.n_aps, config.mobility.user_height_m,
                                                           config.reference_grid, config.reference_statistic);
        const double tau = absorption_coefficient(config.link);
        const double h = room.height_m - config.mobility.user_height_m;
        // A perimeter layout that is already no farther than the grid needs no lowering.
        const double h_c = ref.d_c_m > ref.d_b_m ? height_correction(h, ref.d_b_m, ref.d_c_m, tau) : 0.0;
        return place_type_c(room, config.n_aps, h_c, config.t_align_s);
    }
    case PlacementType::D: return place_type_d(room, config.n_aps, config.hanging_height_m, config.t_align_s);
    case PlacementType::E: return place_type_e(room, config.n_aps, config.lamp_height_m, config.t_align_s);
    case PlacementType::F: return place_type_f(room, config.n_aps, config.cluster_spacing_m, config.t_align_s);
    }
    throw std::invalid_argument("unknown placement type");
}

// ---------- association ----------

BestLinks best_links(const Point3 &device, const Constellation &constellation, const LinkBudgetParams<double> &link,
                     double tau_per_m, std::span<const BodyCylinder> blockers, int exclude_id)
{
    BestLinks out;
    const Point2 xy = device.head<2>();
    auto better = [&](const Candidate &a, const Candidate &b)
    {
        if (b.ap < 0)
            return true;
        if (a.power_w != b.power_w)
            return a.power_w > b.power_w;
        return constellation.nodes[a.ap].id < constellation.nodes[b.ap].id;
    };

    std::vector<Candidate> in_view;
    in_view.reserve(constellation.nodes.size());
    for (std::size_t k = 0; k < constellation.nodes.size(); ++k)
    {
        const ApNode &node = constellation.nodes[k];
        if (!node.in_view(xy))
            continue;
        const double d = std::max((node.position - device).norm(), 1e-9);
        const Candidate c{static_cast<int>(k), received_power(d, tau_per_m, link)};
        in_view.push_back(c);
        if (better(c, out.geometric))
            out.geometric = c;
    }
    if (out.geometric.ap < 0)
        return out;

    auto clear = [&](const Candidate &c)
    { return !los_blocked(constellation.nodes[c.ap].position, device, blockers, exclude_id); };

    if (blockers.empty() || clear(out.geometric))
    {
        out.feasible = out.geometric;
        return out;
    }
    std::sort(in_view.begin(), in_view.end(), better);
    for (const Candidate &c : in_view)
    {
        if (c.ap != out.geometric.ap && clear(c))
        {
            out.feasible = c;
            break;
        }
    }
    return out;
}

LinkAssignment associate(std::span<const UserState> users, const Constellation &constellation,
                         const LinkBudgetParams<double> &link, double device_height_m, bool blockage)
{
    std::vector<BodyCylinder> bodies;
    if (blockage)
        for (const UserState &u : users)
            bodies.push_back(u.body);
    const double tau = absorption_coefficient(link);

    LinkAssignment a;
    a.ap_of_user.assign(users.size(), -1);
    a.alignment_left_s.assign(users.size(), 0.0);
    for (std::size_t i = 0; i < users.size(); ++i)
    {
        const BestLinks best = best_links(users[i].device(device_height_m), constellation, link, tau, bodies, users[i].id);
        a.ap_of_user[i] = best.feasible.ap;
        if (best.feasible.ap >= 0)
            a.alignment_left_s[i] = constellation.nodes[best.feasible.ap].alignment_time_s;
    }
    return a;
}

const char *to_string(EventKind kind)
{
    switch (kind)
    {
    case EventKind::Handoff: return "handoff";
    case EventKind::BlockageStart: return "blockage_start";
    case EventKind::BlockageEnd: return "blockage_end";
    case EventKind::AlignmentDone: return "alignment_done";
    }
    return "unknown";
}

// ---------- engine ----------

Simulator::Simulator(const SimConfig &config) : config_(config)
{
    config_.validate();
    streams_ = make_user_streams(config_.seed, config_.n_users);
    users_ = init_users(config_.effective_room(), config_.mobility, streams_);
    link_ = config_.per_ap_link();
    tau_per_m_ = absorption_coefficient(link_);
    constellation_ = build_constellation(config_);
    assignment_.ap_of_user.assign(users_.size(), -1);
    assignment_.alignment_left_s.assign(users_.size(), 0.0);
    shadowed_.assign(users_.size(), 0);
    held_.assign(users_.size(), 0);
    delivered_.assign(users_.size(), 0.0);
    achievable_.assign(users_.size(), 0.0);
    ap_idle_steps_ = Eigen::VectorXd::Zero(constellation_.size());
    user_covered_steps_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(users_.size()));
    user_rate_sum_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(users_.size()));
}

Simulator::Simulator(const SimConfig &config, Constellation constellation, std::vector<UserState> users)
    : config_(config), constellation_(std::move(constellation)), users_(std::move(users))
{
    config_.validate();
    config_.n_users = static_cast<int>(users_.size());
    for (const UserState &u : users_)
        streams_.push_back(RngStream::substream(config_.seed, static_cast<std::uint64_t>(u.id)));
    link_ = config_.per_ap_link();
    link_.tx_power_w = config_.total_power_w / std::max(1, constellation_.size());
    tau_per_m_ = absorption_coefficient(link_);
    assignment_.ap_of_user.assign(users_.size(), -1);
    assignment_.alignment_left_s.assign(users_.size(), 0.0);
    shadowed_.assign(users_.size(), 0);
    held_.assign(users_.size(), 0);
    delivered_.assign(users_.size(), 0.0);
    achievable_.assign(users_.size(), 0.0);
    ap_idle_steps_ = Eigen::VectorXd::Zero(constellation_.size());
    user_covered_steps_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(users_.size()));
    user_rate_sum_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(users_.size()));
}

void Simulator::start_alignment(std::size_t user)
{
    const int ap = assignment_.ap_of_user[user];
    assignment_.alignment_left_s[user] = constellation_.nodes[static_cast<std::size_t>(ap)].alignment_time_s;
    ++alignment_events_;
}

void Simulator::step(std::vector<Event> *events)
{
    const double dt = config_.dt_s;
    const Room room = config_.effective_room();
    const double device_h = config_.mobility.user_height_m;
    const std::size_t n_users = users_.size();
    const std::size_t n_aps = constellation_.nodes.size();
    time_s_ = static_cast<double>(steps_ + 1) * dt;

    auto emit = [&](EventKind kind, std::size_t user, int ap_index)
    {
        if (events)
            events->push_back({time_s_, kind, users_[user].id,
                               ap_index >= 0 ? constellation_.nodes[static_cast<std::size_t>(ap_index)].id : -1});
    };

    // (1) mobility
    bodies_.clear();
    for (std::size_t i = 0; i < n_users; ++i)
    {
        users_[i] = step_user(users_[i], dt, streams_[i], room, config_.mobility);
        bodies_.push_back(users_[i].body);
    }

    bool realign_all = false;
    if (config_.realign_interval_s > 0)
    {
        const auto epoch = static_cast<std::int64_t>(std::floor(time_s_ / config_.realign_interval_s + 1e-9));
        realign_all = epoch != realign_epoch_;
        realign_epoch_ = epoch;
    }

    // (2) association, handoffs and blockage transitions
    const std::span<const BodyCylinder> blockers =
        config_.blockage_enabled ? std::span<const BodyCylinder>(bodies_) : std::span<const BodyCylinder>();
    std::vector<int> load(n_aps, 0);
    for (std::size_t i = 0; i < n_users; ++i)
    {
        const BestLinks best = best_links(users_[i].device(device_h), constellation_, link_, tau_per_m_, blockers,
                                          users_[i].id);
        const bool shadowed = best.geometric.ap >= 0 && best.feasible.ap != best.geometric.ap;
        if (shadowed && !shadowed_[i])
        {
            ++blockage_events_;
            emit(EventKind::BlockageStart, i, best.geometric.ap);
        }
        else if (!shadowed && shadowed_[i])
        {
            emit(EventKind::BlockageEnd, i, best.geometric.ap);
        }
        shadowed_[i] = shadowed;

        const int previous = assignment_.ap_of_user[i];
        int next = best.feasible.ap;
        // A link that loses LOS with nowhere else to go stays on its AP, carrying nothing, until it recovers.
        const bool hold = next < 0 && shadowed && previous >= 0;
        if (hold)
        {
            next = previous;
            held_[i] = 1;
        }
        else if (held_[i])
        {
            held_[i] = 0;
            if (next == previous)
                start_alignment(i);
        }
        if (next != previous)
        {
            if (previous >= 0 && next >= 0)
            {
                ++handoffs_;
                emit(EventKind::Handoff, i, next);
            }
            assignment_.ap_of_user[i] = next;
            assignment_.alignment_left_s[i] = 0.0;
            if (next >= 0)
                start_alignment(i);
        }
        else if (realign_all && next >= 0)
        {
            start_alignment(i);
        }

        achievable_[i] = next >= 0 && !hold ? link_.bandwidth_hz *
                                         std::log1p(best.feasible.power_w / (link_.noise_psd_w_per_hz * link_.bandwidth_hz)) /
                                         std::numbers::ln2
                                   : 0.0;
        if (next >= 0)
            ++load[static_cast<std::size_t>(next)];
        // The blocked AP keeps the shadowed user's slot reserved while it is served elsewhere.
        if (shadowed && !hold && next >= 0)
            ++load[static_cast<std::size_t>(best.geometric.ap)];
    }

    std::vector<int> served(n_aps, -1);
    if (config_.multiplexing == Multiplexing::StrongestOnly)
    {
        for (std::size_t i = 0; i < n_users; ++i)
        {
            const int ap = assignment_.ap_of_user[i];
            if (ap >= 0 && (served[ap] < 0 || achievable_[i] > achievable_[static_cast<std::size_t>(served[ap])]))
                served[static_cast<std::size_t>(ap)] = static_cast<int>(i);
        }
    }

    // (3) alignment countdown and delivered rate
    for (std::size_t i = 0; i < n_users; ++i)
    {
        const int ap = assignment_.ap_of_user[i];
        double rate = 0.0;
        if (ap >= 0)
        {
            double &left = assignment_.alignment_left_s[i];
            if (left > 0.0)
            {
                alignment_overhead_s_ += std::min(left, dt);
                left -= dt;
                if (left <= 1e-9 * dt)
                {
                    left = 0.0;
                    emit(EventKind::AlignmentDone, i, ap);
                }
            }
            else if (config_.multiplexing == Multiplexing::TimeShare)
            {
                rate = achievable_[i] / load[static_cast<std::size_t>(ap)];
            }
            else if (served[static_cast<std::size_t>(ap)] == static_cast<int>(i))
            {
                rate = achievable_[i];
            }
        }
        delivered_[i] = rate;
        user_rate_sum_[static_cast<Eigen::Index>(i)] += rate;
        if (rate >= users_[i].demand_bps)
            user_covered_steps_[static_cast<Eigen::Index>(i)] += 1.0;
    }
    for (std::size_t k = 0; k < n_aps; ++k)
        if (load[k] == 0)
            ap_idle_steps_[static_cast<Eigen::Index>(k)] += 1.0;
    ++steps_;
}

MetricsReport Simulator::report() const
{
    MetricsReport r;
    r.steps = steps_;
    r.handoff_count = handoffs_;
    r.alignment_events = alignment_events_;
    r.alignment_overhead_s = alignment_overhead_s_;
    r.blockage_events = blockage_events_;
    r.per_ap_power_w = link_.tx_power_w;
    r.effective_height_m = config_.effective_height();
    r.height_correction_m = constellation_.height_correction_m;

    const double steps = static_cast<double>(steps_);
    const auto n_users = static_cast<double>(users_.size());
    if (steps_ > 0)
    {
        r.ap_idle = ap_idle_steps_ / steps;
        r.user_coverage_each = user_covered_steps_ / steps;
        r.user_throughput_each = user_rate_sum_ / steps;
        r.ap_idle_fraction = r.ap_idle.size() > 0 ? r.ap_idle.mean() : 1.0;
        if (n_users > 0)
        {
            r.user_coverage = r.user_coverage_each.mean();
            r.mean_throughput_bps = r.user_throughput_each.mean();
        }
    }
    else
    {
        r.ap_idle = Eigen::VectorXd::Ones(ap_idle_steps_.size());
        r.user_coverage_each = Eigen::VectorXd::Zero(user_covered_steps_.size());
        r.user_throughput_each = Eigen::VectorXd::Zero(user_rate_sum_.size());
    }
    return r;
}

MetricsReport run(const SimConfig &config, RunTrace *trace)
{
    Simulator sim(config);
    const auto n_steps = static_cast<std::int64_t>(std::llround(config.duration_s / config.dt_s));
    std::vector<Event> *events = trace && trace->record_events ? &trace->events : nullptr;
    for (std::int64_t k = 0; k < n_steps; ++k)
    {
        sim.step(events);
        if (trace && trace->record_trajectory)
            for (const UserState &u : sim.users())
                trace->trajectory.push_back({sim.time_s(), u.id, u.position.x(), u.position.y()});
    }
    return sim.report();
}

// ---------- heat map ----------

char to_char(Region r)
{
    switch (r)
    {
    case Region::Darkness: return 'D';
    case Region::Illumination: return 'I';
    case Region::Shadow: return 'S';
    }
    return '?';
}

Point2 HeatmapGrid::cell_center(Eigen::Index ix, Eigen::Index iy) const
{
    return {std::min((static_cast<double>(ix) + 0.5) / resolution_per_m, length_m),
            std::min((static_cast<double>(iy) + 0.5) / resolution_per_m, width_m)};
}

HeatmapGrid heatmap(const Constellation &constellation, const Room &room, const LinkBudgetParams<double> &link,
                    double device_height_m, double resolution_per_m, double probe_bps,
                    std::span<const BodyCylinder> blockers)
{
    if (!(resolution_per_m > 0))
        throw std::invalid_argument("heat map resolution must be positive");
    room.validate();
    HeatmapGrid g;
    g.resolution_per_m = resolution_per_m;
    g.length_m = room.length_m;
    g.width_m = room.width_m;
    g.device_height_m = device_height_m;
    g.probe_bps = probe_bps;
    const auto nx = static_cast<Eigen::Index>(std::ceil(room.length_m * resolution_per_m - 1e-9));
    const auto ny = static_cast<Eigen::Index>(std::ceil(room.width_m * resolution_per_m - 1e-9));
    g.rate_bps.resize(nx, ny);
    g.region.resize(nx, ny);

    const double tau = absorption_coefficient(link);
    const double noise = link.noise_psd_w_per_hz * link.bandwidth_hz;
    auto rate_of = [&](const Candidate &c)
    { return c.ap < 0 ? 0.0 : link.bandwidth_hz * std::log1p(c.power_w / noise) / std::numbers::ln2; };

    for (Eigen::Index ix = 0; ix < nx; ++ix)
    {
        for (Eigen::Index iy = 0; iy < ny; ++iy)
        {
            const Point2 c = g.cell_center(ix, iy);
            const BestLinks best = best_links(Point3(c.x(), c.y(), device_height_m), constellation, link, tau, blockers, -1);
            const double rate = rate_of(best.feasible);
            g.rate_bps(ix, iy) = rate;
            Region region = Region::Illumination;
            if (rate < probe_bps)
                region = rate_of(best.geometric) >= probe_bps ? Region::Shadow : Region::Darkness;
            g.region(ix, iy) = static_cast<std::uint8_t>(region);
        }
    }
    return g;
}

HeatmapGrid heatmap(const SimConfig &config, double resolution_per_m, double probe_bps,
                    std::span<const BodyCylinder> blockers)
{
    config.validate();
    return heatmap(build_constellation(config), config.effective_room(), config.per_ap_link(),
                   config.mobility.user_height_m, resolution_per_m, probe_bps, blockers);
}

// ---------- sweeps ----------

std::string Scenario::label() const
{
    std::string s(1, to_char(type));
    if (type != PlacementType::A)
        s += std::to_string(n_aps);
    return s;
}

Scenario Scenario::parse(std::string_view label)
{
    if (label.empty())
        throw std::invalid_argument("empty scenario label");
    Scenario s;
    s.type = placement_from_char(label.front());
    const std::string_view digits = label.substr(1);
    if (s.type == PlacementType::A)
    {
        if (!digits.empty() && digits != "1")
            throw std::invalid_argument("Type A has exactly one AP: '" + std::string(label) + "'");
        s.n_aps = 1;
        return s;
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos)
        throw std::invalid_argument("scenario '" + std::string(label) + "' needs an AP count, e.g. B4");
    s.n_aps = std::stoi(std::string(digits));
    if (!is_supported_ap_count(s.n_aps))
        throw std::invalid_argument("scenario '" + std::string(label) + "': AP count must be 4, 8, 12 or 16");
    return s;
}

void Scenario::apply(SimConfig &config) const
{
    config.placement = type;
    if (type != PlacementType::A)
        config.n_aps = n_aps;
}

SweepAxis sweep_axis_from_string(std::string_view name)
{
    if (name == "H" || name == "h" || name == "height")
        return SweepAxis::EffectiveHeight;
    if (name == "N" || name == "n")
        return SweepAxis::ApCount;
    if (name == "type" || name == "placement" || name == "placement_type")
        return SweepAxis::Placement;
    throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "' (expected H, N or type)");
}

namespace
{

struct Job
{
    SimConfig config;
    std::string axis_value; // for error messages
};

[[noreturn]] void rethrow_with_context(const std::exception_ptr &ep, const std::string &context)
{
    try
    {
        std::rethrow_exception(ep);
    }
    catch (const std::invalid_argument &e)
    {
        throw std::invalid_argument(context + ": " + e.what());
    }
    catch (const std::domain_error &e)
    {
        throw std::domain_error(context + ": " + e.what());
    }
    catch (const std::exception &e)
    {
        throw std::runtime_error(context + ": " + e.what());
    }
}

std::vector<SweepRow> run_jobs(const std::vector<Job> &jobs, int n_workers)
{
    std::vector<SweepRow> rows(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&]
    {
        for (std::size_t k = next++; k < jobs.size(); k = next++)
        {
            try
            {
                const SimConfig &cfg = jobs[k].config;
                SweepRow &row = rows[k];
                row.scenario = Scenario{cfg.placement, cfg.ap_count()};
                row.effective_height_m = cfg.effective_height();
                row.seed = cfg.seed;
                row.metrics = run(cfg);
            }
            catch (...)
            {
                errors[k] = std::current_exception();
            }
        }
    };

    const int threads = std::clamp(n_workers, 1, static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
    if (threads == 1)
    {
        worker();
    }
    else
    {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    for (std::size_t k = 0; k < jobs.size(); ++k)
        if (errors[k])
            rethrow_with_context(errors[k], jobs[k].axis_value);
    return rows;
}

} // namespace

std::vector<SweepRow> sweep(const SimConfig &base, SweepAxis axis, std::span<const double> values, int jobs)
{
    if (values.empty())
        throw std::invalid_argument("sweep needs at least one value");
    if (axis == SweepAxis::Placement)
        throw std::invalid_argument("placement sweeps take scenario labels, not numbers");
    std::vector<double> sorted(values.begin(), values.end());
    std::stable_sort(sorted.begin(), sorted.end());

    std::vector<Job> work;
    for (double v : sorted)
    {
        Job job{base, {}};
        if (axis == SweepAxis::EffectiveHeight)
        {
            job.config.effective_height_m = v;
            job.axis_value = "H=" + format_number(v);
        }
        else
        {
            if (v != std::floor(v))
                throw std::invalid_argument("N=" + format_number(v) + ": AP count must be an integer");
            job.config.n_aps = static_cast<int>(v);
            job.axis_value = "N=" + format_number(v);
        }
        work.push_back(std::move(job));
    }
    return run_jobs(work, jobs);
}

std::vector<SweepRow> sweep(const SimConfig &base, std::span<const Scenario> scenarios, int jobs)
{
    if (scenarios.empty())
        throw std::invalid_argument("sweep needs at least one value");
    std::vector<Job> work;
    for (const Scenario &s : scenarios)
    {
        Job job{base, "type=" + s.label()};
        s.apply(job.config);
        work.push_back(std::move(job));
    }
    return run_jobs(work, jobs);
}

std::vector<SweepRow> sweep_grid(const SimConfig &base, std::span<const Scenario> scenarios,
                                 std::span<const double> heights_m, int jobs)
{
    if (scenarios.empty() || heights_m.empty())
        throw std::invalid_argument("sweep needs at least one value");
    std::vector<double> sorted(heights_m.begin(), heights_m.end());
    std::stable_sort(sorted.begin(), sorted.end());
    std::vector<Job> work;
    for (const Scenario &s : scenarios)
    {
        for (double h : sorted)
        {
            Job job{base, "type=" + s.label() + " H=" + format_number(h)};
            s.apply(job.config);
            job.config.effective_height_m = h;
            work.push_back(std::move(job));
        }
    }
    return run_jobs(work, jobs);
}

} // namespace thzap
