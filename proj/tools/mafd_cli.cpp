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

#include "mafd/channel_model.hpp"
#include "mafd/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace
{

struct CommonArgs
{
    std::string config_path;
    std::vector<std::string> overrides;
    int trials = -1;
    long long seed = -1;
    std::string out;
    std::string schemes;
    bool full_budget = false;
    bool trace = false;
    bool timing = false;
    unsigned threads = 0;
};

void add_common(CLI::App *cmd, CommonArgs &a)
{
    cmd->add_option("--config", a.config_path, "Plain-text key = value config file");
    cmd->add_option("--set", a.overrides, "Override one setting, e.g. --set rho=-90dB (repeatable)");
    cmd->add_option("--trials", a.trials, "Monte Carlo trials per sweep point");
    cmd->add_option("--seed", a.seed, "Base seed");
    cmd->add_option("--out", a.out, "Output CSV path (stdout when omitted)");
    cmd->add_option("--scheme", a.schemes, "Comma-separated scheme ids (default: all five)");
    cmd->add_flag("--full-budget", a.full_budget, "Use I = K = M = C = 100");
    cmd->add_flag("--trace", a.trace, "Write JSON-lines AO traces next to the CSV (<out>.trace.jsonl)");
    cmd->add_flag("--timing", a.timing, "Record wall-clock ms per trial (output is then not byte-reproducible)");
    cmd->add_option("--threads", a.threads, "Worker threads (0: all cores)");
}

mafd::SystemConfig resolve_config(const CommonArgs &a)
{
    mafd::SystemConfig cfg;
    if (!a.config_path.empty())
        cfg = mafd::parse_config_file(a.config_path, cfg);
    if (a.full_budget)
        cfg.full_budget();
    cfg = mafd::apply_overrides(cfg, a.overrides);
    if (a.trials > 0)
        cfg.trials = a.trials;
    if (a.seed >= 0)
        cfg.seed = static_cast<std::uint64_t>(a.seed);
    cfg.validate();
    return cfg;
}

std::vector<mafd::Scheme> resolve_schemes(const std::string &list)
{
    if (list.empty())
        return {mafd::all_schemes.begin(), mafd::all_schemes.end()};
    std::vector<mafd::Scheme> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(mafd::parse_scheme(item));
    return out;
}

class Outputs
{
public:
    explicit Outputs(const CommonArgs &a)
    {
        if (a.trace)
        {
            if (a.out.empty())
                trace_ = &std::cerr;
            else
            {
                trace_file_ = std::make_unique<std::ofstream>(a.out + ".trace.jsonl", std::ios::binary);
                if (!*trace_file_)
                    throw std::runtime_error("cannot open trace file next to '" + a.out + "'");
                trace_ = trace_file_.get();
            }
        }
        opts_.trace = trace_;
        opts_.record_timing = a.timing;
        opts_.threads = a.threads;
    }

    const mafd::RunOptions &options() const { return opts_; }

    static void emit(const std::vector<mafd::ExperimentRecord> &records, const std::string &out)
    {
        if (out.empty())
            mafd::write_records(records, std::cout);
        else
            mafd::write_records(records, out);
    }

private:
    std::unique_ptr<std::ofstream> trace_file_;
    std::ostream *trace_ = nullptr;
    mafd::RunOptions opts_;
};

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Movable-antenna full-duplex secrecy simulator"};
    app.require_subcommand(1);

    CommonArgs region_args, sic_args, ant_args, single_args;
    std::vector<double> region_values{1.0, 1.5, 2.0, 2.5, 3.0};
    std::vector<double> rho_values{-110.0, -100.0, -90.0, -80.0, -70.0};
    std::vector<double> pb_values;
    std::vector<int> antenna_values{1, 2, 3, 4, 5, 6};

    auto *region = app.add_subcommand("sweep-region", "Sum secrecy rate versus normalized region size A/lambda");
    add_common(region, region_args);
    region->add_option("--values", region_values, "A/lambda grid")->delimiter(',');

    auto *sic = app.add_subcommand("sweep-sic", "Sum secrecy rate versus the SIC coefficient");
    add_common(sic, sic_args);
    sic->add_option("--rho-db", rho_values, "rho grid in dB")->delimiter(',');
    sic->add_option("--pb-dbm", pb_values, "One curve per BS power in dBm")->delimiter(',');

    auto *ant = app.add_subcommand("sweep-antennas", "Sum secrecy rate versus N_t = N_r = N");
    add_common(ant, ant_args);
    ant->add_option("--values", antenna_values, "N grid")->delimiter(',');

    auto *single = app.add_subcommand("single-run", "One scenario, every selected scheme");
    add_common(single, single_args);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (region->parsed())
        {
            const auto cfg = resolve_config(region_args);
            Outputs io(region_args);
            Outputs::emit(mafd::sweep_region_size(cfg, region_values, resolve_schemes(region_args.schemes), cfg.trials,
                                                  io.options()),
                          region_args.out);
        }
        else if (sic->parsed())
        {
            const auto cfg = resolve_config(sic_args);
            Outputs io(sic_args);
            Outputs::emit(mafd::sweep_sic(cfg, rho_values, pb_values, resolve_schemes(sic_args.schemes), cfg.trials,
                                          io.options()),
                          sic_args.out);
        }
        else if (ant->parsed())
        {
            const auto cfg = resolve_config(ant_args);
            Outputs io(ant_args);
            Outputs::emit(mafd::sweep_antennas(cfg, antenna_values, resolve_schemes(ant_args.schemes), cfg.trials,
                                               io.options()),
                          ant_args.out);
        }
        else if (single->parsed())
        {
            const auto cfg = resolve_config(single_args);
            Outputs io(single_args);
            if (io.options().trace)
                *io.options().trace << mafd::scenario_to_json(mafd::sample_scenario(cfg, mafd::trial_seed(cfg.seed, 0)))
                                    << '\n';
            mafd::SweepSpec spec{"single", {0.0}, [](mafd::SystemConfig &, double) {}};
            Outputs::emit(mafd::run_sweep(cfg, spec, resolve_schemes(single_args.schemes), 1, io.options()),
                          single_args.out);
        }
    }
    catch (const mafd::ConfigError &e)
    {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
