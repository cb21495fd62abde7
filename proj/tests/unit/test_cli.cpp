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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "thzap/config.hpp"
#include "thzap/reporting.hpp"

using namespace thzap;
namespace fs = std::filesystem;

namespace
{

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result cli_run(const std::vector<std::string> &args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path workdir()
{
    const fs::path dir = fs::temp_directory_path() / "thzap_cli_test";
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const std::string &name, const std::string &text)
{
    const fs::path p = workdir() / name;
    std::ofstream(p) << text;
    return p;
}

std::vector<std::string> csv_lines(const std::string &text)
{
    std::vector<std::string> lines;
    std::stringstream ss(text);
    for (std::string line; std::getline(ss, line);)
        lines.push_back(line);
    return lines;
}

} // namespace

TEST_CASE("value lists")
{
    CHECK(cli::parse_value_list("2:7:0.5").size() == 11);
    CHECK(cli::parse_value_list("2:7:0.5").back() == 7.0);
    CHECK(cli::parse_value_list("4, 8,16") == std::vector<double>{4, 8, 16});
    CHECK_THROWS(cli::parse_value_list("7:2:1"));
    CHECK_THROWS(cli::parse_value_list("1:2"));
    CHECK_THROWS(cli::parse_value_list("a,b"));
}

TEST_CASE("radius with a contrived K = 25 and no absorption")
{
    // Pick P_o so that K = 25 for one AP at S = 0.1, then step down until r <= 5 in floating point.
    ExperimentConfig c;
    c.placement_type = "A";
    c.tau_per_m = 0.0;
    const LinkBudgetParams<double> base = to_sim_config(c).per_ap_link();
    const double k_per_watt = radius_constant(base, 0.1) / base.tx_power_w;
    c.p_o_dbm = 10.0 * std::log10(25.0 / k_per_watt * 1000.0);
    for (int i = 0; i < 1000 && coverage_radius(to_sim_config(parse_config(to_config_text(c))).per_ap_link(), 0.1) > 5.0; ++i)
        c.p_o_dbm = std::nextafter(c.p_o_dbm, -1e9);
    const auto path = write_config("k25.ini", to_config_text(c));

    const auto plain = cli_run({"radius", "--config", path.string(), "-S", "0.1"});
    CHECK(plain.code == 0);
    CHECK(plain.out == "5.000000\n");
    const auto ceiled = cli_run({"radius", "--config", path.string(), "-S", "0.1", "--ceil"});
    CHECK(ceiled.code == 0);
    CHECK(ceiled.out == "5\n");
}

TEST_CASE("radius at defaults matches the library")
{
    const auto r = cli_run({"radius"});
    REQUIRE(r.code == 0);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f\n", coverage_radius(to_sim_config(ExperimentConfig{}).per_ap_link(), 0.1));
    CHECK(r.out == buf);
    CHECK(cli_run({"radius", "-S", "0"}).code == 2);
}

TEST_CASE("coverage sweep")
{
    const auto r = cli_run({"coverage-sweep", "--freqs-ghz", "570", "--beamwidths-deg", "5,10,20"});
    REQUIRE(r.code == 0);
    const auto lines = csv_lines(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "frequency_ghz,beamwidth_deg,spectral_efficiency,tau_per_m,radius_m");
    std::vector<double> radii;
    for (std::size_t i = 1; i < lines.size(); ++i)
        radii.push_back(std::stod(lines[i].substr(lines[i].rfind(',') + 1)));
    CHECK(radii[0] > radii[1]);
    CHECK(radii[1] > radii[2]);

    const auto one = cli_run({"coverage-sweep", "--freqs-ghz", "570", "--beamwidths-deg", "10"});
    REQUIRE(csv_lines(one.out).size() == 2);
    // the single-AP radius is on the scale of the room diagonal
    ExperimentConfig a;
    a.placement_type = "A";
    const auto single = cli_run({"coverage-sweep", "--config", write_config("a.ini", to_config_text(a)).string(),
                                 "--freqs-ghz", "570", "--beamwidths-deg", "10"});
    const auto row = csv_lines(single.out).at(1);
    const double r10 = std::stod(row.substr(row.rfind(',') + 1));
    CHECK(r10 > 5.0);
    CHECK(r10 < 30.0);

    CHECK(cli_run({"coverage-sweep", "--freqs-ghz", "50"}).code == 2);
    CHECK(cli_run({"coverage-sweep", "--beamwidths-deg", "0"}).code == 2);
}

TEST_CASE("validate")
{
    const auto ok = cli_run({"validate"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("f_c_ghz = 570") != std::string::npos);

    const auto bad = cli_run({"validate", "--config", write_config("bad.ini", "[placement]\nn_aps = 6\n").string()});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("n_aps") != std::string::npos);

    CHECK(cli_run({"validate", "--config", "/no/such/file.ini"}).code == 2);
    CHECK(cli_run({"frobnicate"}).code == 2);
    CHECK(cli_run({"simulate", "--blockage", "sometimes"}).code == 2);
    CHECK(cli_run({"--help"}).code == 0);
}

TEST_CASE("simulate is deterministic and writes a manifest")
{
    const auto cfg = write_config("short.ini", "[simulation]\nduration_s = 2\n");
    const auto a = workdir() / "sim_a";
    const auto b = workdir() / "sim_b";
    const auto c = workdir() / "sim_c";
    REQUIRE(cli_run({"simulate", "--config", cfg.string(), "--seed", "7", "--out", a.string(), "--events"}).code == 0);
    REQUIRE(cli_run({"simulate", "--config", cfg.string(), "--seed", "7", "--out", b.string(), "--events"}).code == 0);
    REQUIRE(cli_run({"simulate", "--config", cfg.string(), "--seed", "8", "--out", c.string()}).code == 0);
    for (const char *f : {"results.csv", "summary.json", "manifest.ini", "events.csv"})
        CHECK(read_file(a / f) == read_file(b / f));
    CHECK(read_file(a / "results.csv") != read_file(c / "results.csv"));

    // the manifest reproduces the run
    const auto d = workdir() / "sim_d";
    REQUIRE(cli_run({"simulate", "--config", (a / "manifest.ini").string(), "--out", d.string()}).code == 0);
    CHECK(read_file(d / "results.csv") == read_file(a / "results.csv"));
    CHECK(parse_config(read_file(a / "manifest.ini")).seed == 7);

    // the CLI reports what the library computes
    ExperimentConfig ec = load_config(cfg);
    ec.seed = 7;
    SweepRow row;
    row.scenario = {PlacementType::B, 4};
    row.effective_height_m = 1.5;
    row.seed = 7;
    row.metrics = run(to_sim_config(ec));
    CHECK(read_file(a / "results.csv") == results_csv(std::span<const SweepRow>(&row, 1)));
}

TEST_CASE("sweep cardinality")
{
    const auto cfg = write_config("tiny.ini", "[simulation]\nduration_s = 0.2\n");
    const auto out = workdir() / "sweep_h";
    const auto r = cli_run({"sweep", "--config", cfg.string(), "--axis", "H", "--values", "2:7:0.5", "--types",
                            "B4,C4", "--out", out.string(), "--jobs", "4"});
    REQUIRE(r.code == 0);
    CHECK(read_results(out / "sweep.csv").size() == 22);

    const auto out_n = workdir() / "sweep_n";
    REQUIRE(cli_run({"sweep", "--config", cfg.string(), "--axis", "N", "--values", "4,8,12,16", "--types", "B,C",
                     "--out", out_n.string()})
                .code == 0);
    CHECK(read_results(out_n / "sweep.csv").size() == 8);

    const auto out_t = workdir() / "sweep_t";
    REQUIRE(cli_run({"sweep", "--config", cfg.string(), "--axis", "type", "--values", "A,B4,C16", "--out",
                     out_t.string()})
                .code == 0);
    CHECK(read_results(out_t / "sweep.csv").size() == 3);

    CHECK(cli_run({"sweep", "--axis", "N", "--values", "4,5", "--out", (workdir() / "bad").string()}).code == 2);
    CHECK(cli_run({"sweep", "--axis", "Z", "--values", "1"}).code == 2);
}

TEST_CASE("heat map of a single centre AP is a disc")
{
    const auto out = workdir() / "heat_a";
    REQUIRE(cli_run({"heatmap", "--type", "A", "--probe-gbps", "20", "--resolution", "10", "--out", out.string()})
                .code == 0);
    const auto grid = read_heatmap(out / "heatmap");
    ExperimentConfig c;
    c.placement_type = "A";
    const double r = coverage_radius(to_sim_config(c).per_ap_link(), 2.0);
    const double rho = std::sqrt(r * r - 1.5 * 1.5);
    for (Eigen::Index ix = 0; ix < grid.rate_bps.rows(); ++ix)
    {
        for (Eigen::Index iy = 0; iy < grid.rate_bps.cols(); ++iy)
        {
            const double d = (grid.cell_center(ix, iy) - Point2(5.0, 5.0)).norm();
            if (std::abs(d - rho) > 0.1)
                CHECK((grid.label(ix, iy) == Region::Illumination) == (d < rho));
        }
    }
    CHECK(fs::exists(out / "manifest.ini"));
}

TEST_CASE("runtime failures exit with 3")
{
    const auto blocker = workdir() / "not_a_dir";
    std::ofstream(blocker) << "x";
    const auto r = cli_run({"simulate", "--out", (blocker / "sub").string()});
    CHECK(r.code == 3);
    CHECK_FALSE(r.err.empty());
}
