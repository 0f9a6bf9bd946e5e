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

#include "mafd/config.hpp"
#include "mafd/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace mafd
{

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }
double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

namespace
{

enum class Unit
{
    plain,
    power,
    ratio,
    length,
    wavelengths
};

std::string trim(const std::string &s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

double parse_number(const std::string &key, const std::string &value, Unit unit, double wavelength)
{
    const std::string v = trim(value);
    const char *begin = v.c_str();
    char *end = nullptr;
    double x = std::strtod(begin, &end);
    if (end == begin)
        throw ConfigError(key, "expected a number, got '" + value + "'");
    if (!std::isfinite(x))
        throw ConfigError(key, "value must be finite");
    const std::string suffix = lower(trim(std::string(end)));
    if (suffix.empty())
        return x;

    switch (unit)
    {
    case Unit::power:
        if (suffix == "dbm")
            return dbm_to_watts(x);
        if (suffix == "dbw" || suffix == "db")
            return db_to_linear(x);
        if (suffix == "w")
            return x;
        break;
    case Unit::ratio:
        if (suffix == "db")
            return db_to_linear(x);
        break;
    case Unit::length:
        if (suffix == "lambda")
            return x * wavelength;
        if (suffix == "m")
            return x;
        break;
    case Unit::wavelengths:
        if (suffix == "lambda")
            return x;
        break;
    case Unit::plain:
        break;
    }
    throw ConfigError(key, "unsupported unit suffix '" + suffix + "'");
}

int parse_int(const std::string &key, const std::string &value)
{
    double x = parse_number(key, value, Unit::plain, 1.0);
    if (x != std::floor(x) || std::fabs(x) > std::numeric_limits<int>::max())
        throw ConfigError(key, "expected an integer, got '" + value + "'");
    return static_cast<int>(x);
}

} // namespace

void apply_setting(SystemConfig &cfg, const std::string &raw_key, const std::string &value)
{
    const std::string key = trim(raw_key);
    auto num = [&](Unit u) { return parse_number(key, value, u, cfg.wavelength); };

    if (key == "N")
        cfg.n_tx = cfg.n_rx = parse_int(key, value);
    else if (key == "N_t")
        cfg.n_tx = parse_int(key, value);
    else if (key == "N_r")
        cfg.n_rx = parse_int(key, value);
    else if (key == "A")
        cfg.region_wavelengths = num(Unit::wavelengths);
    else if (key == "L")
        cfg.paths = parse_int(key, value);
    else if (key == "D")
        cfg.min_distance = num(Unit::length);
    else if (key == "lambda")
        cfg.wavelength = num(Unit::length);
    else if (key == "beta")
        cfg.path_loss_1m = num(Unit::ratio);
    else if (key == "alpha")
        cfg.path_loss_exponent = num(Unit::plain);
    else if (key == "sigma2_B")
        cfg.noise_bs = num(Unit::power);
    else if (key == "sigma2_D")
        cfg.noise_dl = num(Unit::power);
    else if (key == "sigma2_E")
        cfg.noise_eve = num(Unit::power);
    else if (key == "noise")
        cfg.noise_bs = cfg.noise_dl = cfg.noise_eve = num(Unit::power);
    else if (key == "rho")
        cfg.sic = num(Unit::ratio);
    else if (key == "P_B")
        cfg.power_bs = num(Unit::power);
    else if (key == "P_U")
        cfg.power_ul = num(Unit::power);
    else if (key == "eps1")
        cfg.sca_tolerance = num(Unit::plain);
    else if (key == "eps2")
        cfg.ao_tolerance = num(Unit::plain);
    else if (key == "I")
        cfg.particles = parse_int(key, value);
    else if (key == "M")
        cfg.sca_iterations = parse_int(key, value);
    else if (key == "K")
        cfg.pso_iterations = parse_int(key, value);
    else if (key == "C")
        cfg.ao_iterations = parse_int(key, value);
    else if (key == "eta")
        cfg.penalty = num(Unit::plain);
    else if (key == "omega_min")
        cfg.omega_min = num(Unit::plain);
    else if (key == "omega_max")
        cfg.omega_max = num(Unit::plain);
    else if (key == "c1")
        cfg.c1 = num(Unit::plain);
    else if (key == "c2")
        cfg.c2 = num(Unit::plain);
    else if (key == "cell_radius")
        cfg.cell_radius = num(Unit::length);
    else if (key == "min_node_distance")
        cfg.min_node_distance = num(Unit::length);
    else if (key == "trials")
        cfg.trials = parse_int(key, value);
    else if (key == "seed")
    {
        const std::string v = trim(value);
        char *end = nullptr;
        unsigned long long s = std::strtoull(v.c_str(), &end, 10);
        if (v.empty() || v[0] == '-' || *end != '\0')
            throw ConfigError(key, "expected a non-negative integer, got '" + value + "'");
        cfg.seed = s;
    }
    else
        throw ConfigError(key, "unknown configuration key");
}

void SystemConfig::validate() const
{
    auto require = [](bool ok, const char *key, const char *what)
    {
        if (!ok)
            throw ConfigError(key, what);
    };
    require(n_tx >= 1, "N_t", "must be >= 1");
    require(n_rx >= 1, "N_r", "must be >= 1");
    require(region_wavelengths >= 0.0, "A", "must be >= 0");
    require(paths >= 1, "L", "must be >= 1");
    require(wavelength > 0.0, "lambda", "must be > 0");
    require(min_distance >= 0.0, "D", "must be >= 0");
    require(path_loss_1m > 0.0, "beta", "must be > 0");
    require(path_loss_exponent >= 0.0, "alpha", "must be >= 0");
    require(noise_bs > 0.0, "sigma2_B", "must be > 0");
    require(noise_dl > 0.0, "sigma2_D", "must be > 0");
    require(noise_eve > 0.0, "sigma2_E", "must be > 0");
    require(sic >= 0.0 && sic <= 1.0, "rho", "must lie in [0, 1]");
    require(power_bs >= 0.0, "P_B", "must be >= 0");
    require(power_ul >= 0.0, "P_U", "must be >= 0");
    require(sca_tolerance > 0.0, "eps1", "must be > 0");
    require(ao_tolerance > 0.0, "eps2", "must be > 0");
    require(particles >= 1, "I", "must be >= 1");
    require(sca_iterations >= 1, "M", "must be >= 1");
    require(pso_iterations >= 0, "K", "must be >= 0");
    require(ao_iterations >= 1, "C", "must be >= 1");
    require(penalty > 0.0, "eta", "must be > 0");
    require(omega_min > 0.0 && omega_min <= omega_max, "omega_min", "need 0 < omega_min <= omega_max");
    require(c1 > 0.0, "c1", "must be > 0");
    require(c2 > 0.0, "c2", "must be > 0");
    require(cell_radius > 0.0, "cell_radius", "must be > 0");
    require(min_node_distance > 0.0, "min_node_distance", "must be > 0");
    require(trials >= 1, "trials", "must be >= 1");
}

void SystemConfig::full_budget()
{
    particles = 100;
    sca_iterations = 100;
    pso_iterations = 100;
    ao_iterations = 100;
}

SystemConfig parse_config(std::istream &in, SystemConfig base)
{
    std::vector<std::pair<std::string, std::string>> settings;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        settings.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }

    // Wavelength first so that `lambda`-relative lengths resolve regardless of line order.
    std::stable_partition(settings.begin(), settings.end(), [](const auto &kv) { return kv.first == "lambda"; });
    for (const auto &[k, v] : settings)
        apply_setting(base, k, v);
    base.validate();
    return base;
}

SystemConfig parse_config_file(const std::string &path, SystemConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, base);
}

SystemConfig apply_overrides(SystemConfig cfg, const std::vector<std::string> &assignments)
{
    std::ostringstream joined;
    for (const auto &a : assignments)
        joined << a << '\n';
    std::istringstream in(joined.str());
    return parse_config(in, cfg);
}

} // namespace mafd
