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

#include "mafd/experiment.hpp"
#include "mafd/channel_model.hpp"
#include "mafd/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mafd
{

namespace
{

std::string fmt12(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

struct Job
{
    std::size_t point;
    std::size_t scheme;
    int trial;
};

} // namespace

std::uint64_t trial_seed(std::uint64_t base_seed, int trial)
{
    return derive_seed(base_seed, {static_cast<std::uint64_t>(trial)}) >> 1; // keep it printable as int64
}

std::vector<ExperimentRecord> run_sweep(const SystemConfig &base, const SweepSpec &sweep,
                                        const std::vector<Scheme> &schemes, int trials, const RunOptions &opts)
{
    std::vector<SystemConfig> configs;
    for (double v : sweep.values)
    {
        SystemConfig cfg = base;
        sweep.apply(cfg, v);
        cfg.validate();
        configs.push_back(cfg);
    }

    std::vector<Job> jobs;
    for (std::size_t p = 0; p < sweep.values.size(); ++p)
        for (std::size_t s = 0; s < schemes.size(); ++s)
            for (int t = 0; t < trials; ++t)
                jobs.push_back({p, s, t});

    std::vector<ExperimentRecord> records(jobs.size());
    std::vector<std::string> traces(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;

    auto worker = [&]
    {
        for (std::size_t j = next++; j < jobs.size(); j = next++)
        {
            const Job &job = jobs[j];
            const SystemConfig &cfg = configs[job.point];
            const std::uint64_t seed = trial_seed(base.seed, job.trial);
            ExperimentRecord rec;
            try
            {
                const Scenario scenario = sample_scenario(cfg, seed);
                SchemeRun run = run_scheme_detailed(schemes[job.scheme], scenario, cfg, seed);
                rec = std::move(run.record);
                if (opts.trace)
                {
                    rec.sweep_name = sweep.name;
                    rec.sweep_value = sweep.values[job.point];
                    traces[j] = trace_to_jsonl(rec, run.result.trace);
                }
            }
            catch (const std::exception &e)
            {
                // Failed trial: kept as an infeasible zero-rate row.
                rec = ExperimentRecord{};
                rec.scheme = std::string(scheme_name(schemes[job.scheme]));
                rec.seed = seed;
                rec.feasible = false;
                std::lock_guard lock(err_mutex);
                std::cerr << "trial " << job.trial << " (" << rec.scheme << ", " << sweep.name << "="
                          << sweep.values[job.point] << ") failed: " << e.what() << '\n';
            }
            rec.sweep_name = sweep.name;
            rec.sweep_value = sweep.values[job.point];
            if (!opts.record_timing)
                rec.ms = 0.0;
            records[j] = std::move(rec);
        }
    };

    unsigned n_threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
    if (n_threads <= 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < n_threads; ++i)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }

    // Jobs were generated in (point, scheme, trial) order, so `records` is already sorted.
    if (opts.trace)
        for (const auto &t : traces)
            *opts.trace << t;
    return records;
}

std::vector<ExperimentRecord> sweep_region_size(const SystemConfig &base, const std::vector<double> &region_wavelengths,
                                                const std::vector<Scheme> &schemes, int trials, const RunOptions &opts)
{
    SweepSpec spec{"A_over_lambda", region_wavelengths, [](SystemConfig &c, double v) { c.region_wavelengths = v; }};
    return run_sweep(base, spec, schemes, trials, opts);
}

std::vector<ExperimentRecord> sweep_sic(const SystemConfig &base, const std::vector<double> &rho_db,
                                        const std::vector<double> &power_bs_dbm, const std::vector<Scheme> &schemes,
                                        int trials, const RunOptions &opts)
{
    SweepSpec spec{"rho_db", rho_db, [](SystemConfig &c, double v) { c.sic = db_to_linear(v); }};
    if (power_bs_dbm.empty())
        return run_sweep(base, spec, schemes, trials, opts);

    std::vector<ExperimentRecord> all;
    for (double pb : power_bs_dbm)
    {
        SystemConfig cfg = base;
        cfg.power_bs = dbm_to_watts(pb);
        spec.name = "rho_db@P_B=" + fmt12(pb) + "dBm";
        auto part = run_sweep(cfg, spec, schemes, trials, opts);
        all.insert(all.end(), part.begin(), part.end());
    }
    return all;
}

std::vector<ExperimentRecord> sweep_antennas(const SystemConfig &base, const std::vector<int> &antennas,
                                             const std::vector<Scheme> &schemes, int trials, const RunOptions &opts)
{
    std::vector<double> values(antennas.begin(), antennas.end());
    SweepSpec spec{"N", values, [](SystemConfig &c, double v) { c.n_tx = c.n_rx = static_cast<int>(v); }};
    return run_sweep(base, spec, schemes, trials, opts);
}

void write_records(const std::vector<ExperimentRecord> &records, std::ostream &out)
{
    out << csv_header << '\n';
    for (const auto &r : records)
        out << r.scheme << ',' << r.sweep_name << ',' << fmt12(r.sweep_value) << ',' << r.seed << ',' << fmt12(r.ssr)
            << ',' << fmt12(r.r_u) << ',' << fmt12(r.r_d) << ',' << r.iters << ',' << fmt12(r.tightness) << ','
            << (r.feasible ? 1 : 0) << ',' << fmt12(r.ms) << '\n';
}

void write_records(const std::vector<ExperimentRecord> &records, const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    write_records(records, out);
    if (!out)
        throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<ExperimentRecord> read_records(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line) || line != csv_header)
        throw std::runtime_error("unexpected CSV header");
    std::vector<ExperimentRecord> out;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            f.push_back(cell);
        if (f.size() != 11)
            throw std::runtime_error("malformed CSV row: " + line);
        ExperimentRecord r;
        r.scheme = f[0];
        r.sweep_name = f[1];
        r.sweep_value = std::stod(f[2]);
        r.seed = std::stoull(f[3]);
        r.ssr = std::stod(f[4]);
        r.r_u = std::stod(f[5]);
        r.r_d = std::stod(f[6]);
        r.iters = std::stoi(f[7]);
        r.tightness = std::stod(f[8]);
        r.feasible = f[9] == "1";
        r.ms = std::stod(f[10]);
        out.push_back(std::move(r));
    }
    return out;
}

std::uint64_t scenario_fingerprint(const Scenario &s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto eat = [&h](double x) { h = mix64(h ^ std::bit_cast<std::uint64_t>(x)); };
    auto eat_c = [&](cplx z)
    {
        eat(z.real());
        eat(z.imag());
    };
    for (const PathAngles *a : {&s.si_tx, &s.si_rx, &s.ub_rx, &s.bd_tx, &s.be_tx})
    {
        for (double v : a->elevation)
            eat(v);
        for (double v : a->azimuth)
            eat(v);
    }
    for (Eigen::Index i = 0; i < s.gains.sigma.size(); ++i)
        eat_c(s.gains.sigma.data()[i]);
    for (const CVec *v : {&s.gains.g_ub, &s.gains.f_bd, &s.gains.f_be})
        for (Eigen::Index i = 0; i < v->size(); ++i)
            eat_c((*v)(i));
    eat_c(s.gains.h_ud);
    eat_c(s.gains.h_ue);
    for (double d : {s.d_bd, s.d_be, s.d_ub, s.d_ud, s.d_ue, s.wavelength})
        eat(d);
    return h;
}

namespace
{

nlohmann::json angles_json(const PathAngles &a) { return {{"elevation", a.elevation}, {"azimuth", a.azimuth}}; }

nlohmann::json cvec_json(const CVec &v)
{
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        arr.push_back({v(i).real(), v(i).imag()});
    return arr;
}

} // namespace

std::string scenario_to_json(const Scenario &s)
{
    nlohmann::json j;
    j["wavelength"] = s.wavelength;
    j["distances"] = {{"d_bd", s.d_bd}, {"d_be", s.d_be}, {"d_ub", s.d_ub}, {"d_ud", s.d_ud}, {"d_ue", s.d_ue}};
    j["angles"] = {{"si_tx", angles_json(s.si_tx)},
                   {"si_rx", angles_json(s.si_rx)},
                   {"ub_rx", angles_json(s.ub_rx)},
                   {"bd_tx", angles_json(s.bd_tx)},
                   {"be_tx", angles_json(s.be_tx)}};
    j["sigma_diag"] = cvec_json(s.gains.sigma.diagonal());
    j["g_ub"] = cvec_json(s.gains.g_ub);
    j["f_bd"] = cvec_json(s.gains.f_bd);
    j["f_be"] = cvec_json(s.gains.f_be);
    j["h_ud"] = {s.gains.h_ud.real(), s.gains.h_ud.imag()};
    j["h_ue"] = {s.gains.h_ue.real(), s.gains.h_ue.imag()};
    j["fingerprint"] = scenario_fingerprint(s);
    return j.dump();
}

std::string trace_to_jsonl(const ExperimentRecord &rec, const AoTrace &trace)
{
    std::string out;
    for (const auto &it : trace.iterations)
    {
        nlohmann::json j;
        j["scheme"] = rec.scheme;
        j["sweep_name"] = rec.sweep_name;
        j["sweep_value"] = rec.sweep_value;
        j["seed"] = rec.seed;
        j["c"] = it.index;
        j["ssr"] = it.ssr;
        j["sca_iterations"] = it.sca_iterations;
        j["tightness"] = it.tightness;
        j["relaxed_objective"] = it.relaxed_objective;
        j["extracted_objective"] = it.extracted_objective;
        j["stage_ms"] = {{"positions", it.positions_ms}, {"transmit", it.transmit_ms}, {"receive", it.receive_ms}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

} // namespace mafd
