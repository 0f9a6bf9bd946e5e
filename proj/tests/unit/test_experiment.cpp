// SPDX-License-Identifier: Apache-2.0
//
// mafd: movable-antenna full-duplex secrecy simulator
// Copyright (C) 2026 The mafd authors
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

#include "mafd/channel_model.hpp"
#include "mafd/experiment.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

using namespace mafd;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

SystemConfig quick_config()
{
    SystemConfig cfg;
    cfg.particles = 8;
    cfg.pso_iterations = 5;
    cfg.sca_iterations = 5;
    cfg.ao_iterations = 3;
    return cfg;
}

std::string to_csv(const std::vector<ExperimentRecord> &r)
{
    std::ostringstream out;
    write_records(r, out);
    return out.str();
}

} // namespace

TEST_CASE("sweep - one point, one scheme, one trial")
{
    const auto recs = sweep_region_size(quick_config(), {2.0}, {Scheme::ma_fd_pso}, 1);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].scheme == "MA-FD-PSO");
    CHECK(recs[0].sweep_name == "A_over_lambda");
    CHECK(recs[0].sweep_value == 2.0);
    CHECK(recs[0].seed == trial_seed(1, 0));
    CHECK(recs[0].ms == 0.0);
    CHECK(recs[0].ssr >= 0.0);
}

TEST_CASE("sweep - paired scenarios across schemes and sweep points")
{
    const SystemConfig cfg = quick_config();
    const auto recs = sweep_region_size(cfg, {1.0, 3.0}, {Scheme::fpa_fd, Scheme::ma_fd_pso}, 3);
    REQUIRE(recs.size() == 12);
    for (int t = 0; t < 3; ++t)
    {
        std::set<std::uint64_t> seeds, prints;
        for (const auto &r : recs)
            if (r.seed == trial_seed(cfg.seed, t))
            {
                seeds.insert(r.seed);
                SystemConfig c = cfg;
                c.region_wavelengths = r.sweep_value;
                prints.insert(scenario_fingerprint(sample_scenario(c, r.seed)));
            }
        CHECK(seeds.size() == 1);
        CHECK(prints.size() == 1);
    }
    // Row order is (point, scheme, trial).
    CHECK(recs[0].scheme == "FPA-FD");
    CHECK(recs[3].scheme == "MA-FD-PSO");
    CHECK(recs[6].sweep_value == 3.0);
    CHECK(trial_seed(1, 0) != trial_seed(1, 1));
    CHECK(trial_seed(1, 0) != trial_seed(2, 0));
}

TEST_CASE("sweep_sic and sweep_antennas - names and values")
{
    const SystemConfig cfg = quick_config();
    const auto sic = sweep_sic(cfg, {-100.0}, {}, {Scheme::fpa_fd}, 1);
    REQUIRE(sic.size() == 1);
    CHECK(sic[0].sweep_name == "rho_db");
    const auto sic_pb = sweep_sic(cfg, {-100.0, -80.0}, {20.0, 30.0}, {Scheme::fpa_fd}, 1);
    REQUIRE(sic_pb.size() == 4);
    CHECK(sic_pb[0].sweep_name == "rho_db@P_B=20dBm");
    CHECK(sic_pb[3].sweep_name == "rho_db@P_B=30dBm");
    CHECK(sic_pb[3].sweep_value == -80.0);

    const auto ant = sweep_antennas(cfg, {1, 2}, {Scheme::ma_fd_pso}, 1);
    REQUIRE(ant.size() == 2);
    CHECK(ant[0].sweep_name == "N");
    CHECK(ant[0].sweep_value == 1.0);
    CHECK(ant[0].feasible);
}

TEST_CASE("sweep - rho = 0 removes self-interference")
{
    SystemConfig cfg = quick_config();
    cfg.sic = 0.0;
    const auto fd = sweep_region_size(cfg, {2.0}, {Scheme::fpa_fd}, 1);
    cfg.sic = 1e-12;
    const auto weak = sweep_region_size(cfg, {2.0}, {Scheme::fpa_fd}, 1);
    CHECK(fd[0].ssr > 0.0);
    CHECK(fd[0].ssr >= weak[0].ssr - 1e-9);
}

TEST_CASE("sweep - invalid sweep values are rejected before any work")
{
    CHECK_THROWS_AS(sweep_sic(quick_config(), {10.0}, {}, {Scheme::fpa_fd}, 1), ConfigError);
}

TEST_CASE("write_records - header only for no records")
{
    CHECK(to_csv({}) == std::string(csv_header) + "\n");
}

TEST_CASE("write_records - deterministic and thread-count independent")
{
    const SystemConfig cfg = quick_config();
    const std::vector<Scheme> schemes{Scheme::ma_fd_pso, Scheme::ma_fd_rp};
    RunOptions serial;
    serial.threads = 1;
    RunOptions parallel;
    parallel.threads = 3;
    const std::string a = to_csv(sweep_antennas(cfg, {2, 3}, schemes, 2, serial));
    const std::string b = to_csv(sweep_antennas(cfg, {2, 3}, schemes, 2, serial));
    const std::string c = to_csv(sweep_antennas(cfg, {2, 3}, schemes, 2, parallel));
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("read_records - round trip to printed precision")
{
    const auto recs = sweep_antennas(quick_config(), {2}, {Scheme::ma_fd_pso, Scheme::fpa_fd}, 2);
    std::istringstream in(to_csv(recs));
    const auto back = read_records(in);
    REQUIRE(back.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i)
    {
        CHECK(back[i].scheme == recs[i].scheme);
        CHECK(back[i].sweep_name == recs[i].sweep_name);
        CHECK(back[i].sweep_value == recs[i].sweep_value);
        CHECK(back[i].seed == recs[i].seed);
        CHECK_THAT(back[i].ssr, WithinRel(recs[i].ssr, 1e-11));
        CHECK_THAT(back[i].r_u, WithinRel(recs[i].r_u, 1e-11));
        CHECK_THAT(back[i].r_d, WithinRel(recs[i].r_d, 1e-11));
        CHECK(back[i].iters == recs[i].iters);
        CHECK_THAT(back[i].tightness, WithinAbs(recs[i].tightness, 1e-11 * std::max(1.0, recs[i].tightness)));
        CHECK(back[i].feasible == recs[i].feasible);
    }

    std::istringstream bad_header("a,b,c\n");
    CHECK_THROWS(read_records(bad_header));
    std::istringstream bad_row(std::string(csv_header) + "\nMA-FD-PSO,N,2\n");
    CHECK_THROWS(read_records(bad_row));
}

TEST_CASE("write_records - file output")
{
    const std::string path = "test_experiment_records.csv";
    write_records({}, path);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == csv_header);
    in.close();
    std::remove(path.c_str());
    CHECK_THROWS(write_records({}, "/nonexistent-dir/x.csv"));
}

TEST_CASE("trace and scenario JSON")
{
    const SystemConfig cfg = quick_config();
    std::ostringstream trace;
    RunOptions opts;
    opts.trace = &trace;
    const auto recs = sweep_region_size(cfg, {2.0}, {Scheme::ma_fd_pso}, 1, opts);
    std::istringstream lines(trace.str());
    std::string line;
    int count = 0;
    while (std::getline(lines, line))
    {
        const auto j = nlohmann::json::parse(line);
        CHECK(j.contains("c"));
        CHECK(j.contains("ssr"));
        CHECK(j["scheme"] == "MA-FD-PSO");
        ++count;
    }
    CHECK(count == recs[0].iters);

    const Scenario s = sample_scenario(cfg, 4);
    const auto j = nlohmann::json::parse(scenario_to_json(s));
    CHECK(j.is_object());
    CHECK(scenario_fingerprint(s) == scenario_fingerprint(sample_scenario(cfg, 4)));
    CHECK(scenario_fingerprint(s) != scenario_fingerprint(sample_scenario(cfg, 5)));
}
