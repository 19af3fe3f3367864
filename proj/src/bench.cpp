// SPDX-License-Identifier: Apache-2.0
//
// mawi - simulation and optimization toolkit for movable-antenna wireless systems
// Copyright (C) 2026 the mawi authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file
// except in compliance with the License. You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the
// License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND,
// either express or implied. See the License for the specific language governing permissions
// and limitations under the License.

#include "mawi/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <thread>

#include "mawi/chanest.hpp"
#include "mawi/errors.hpp"
#include "mawi/field_channel.hpp"
#include "mawi/placement.hpp"
#include "mawi/rng.hpp"
#include "mawi/sensing.hpp"
#include "mawi/serialize.hpp"
#include "mawi/version.hpp"

namespace mawi
{

namespace
{

using nlohmann::json;

// Seed-stream tags: scenario draws are independent of the method under test so
// that all methods see identical channels at a sweep point.
constexpr std::uint64_t stream_scenario = 0x5A1;
constexpr std::uint64_t stream_positions = 0x5B0;
constexpr std::uint64_t stream_noise = 0x5C0;
constexpr std::uint64_t stream_eval = 0x77;
constexpr std::uint64_t stream_method = 200;

int method_id(const std::string &name)
{
    if (name == "fpa")
        return 0;
    if (name == "gradient")
        return 1;
    if (name == "pso")
        return 2;
    if (name == "discrete")
        return 3;
    if (name == "cs")
        return 4;
    if (name == "zo")
        return 5;
    throw config_error("bench: unknown method '" + name +
                       "'; valid methods: cs, discrete, fpa, gradient, pso, zo");
}

// Runs `count` independent tasks, each writing only its own output slot;
// failures are rethrown in task order so error behavior is thread-independent.
void run_tasks(std::size_t count, std::size_t threads,
               const std::function<void(std::size_t)> &task)
{
    if (threads <= 1 || count <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    const std::size_t workers = std::min(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back(
            [&]
            {
                for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                {
                    try
                    {
                        task(i);
                    }
                    catch (...)
                    {
                        errors[i] = std::current_exception();
                    }
                }
            });
    for (auto &t : pool)
        t.join();
    for (const auto &e : errors)
        if (e)
            std::rethrow_exception(e);
}

void sort_rows(std::vector<SweepRow> &rows)
{
    std::sort(rows.begin(), rows.end(),
              [](const SweepRow &a, const SweepRow &b)
              {
                  if (a.sweep_value != b.sweep_value)
                      return a.sweep_value < b.sweep_value;
                  return a.method < b.method;
              });
}

SweepRow aggregate(double sweep_value, const std::string &method,
                   const std::vector<double> &samples)
{
    SweepRow row;
    row.sweep_value = sweep_value;
    row.method = method;
    row.repetitions = samples.size();
    double sum = 0.0;
    for (double v : samples)
        sum += v;
    row.mean = sum / static_cast<double>(samples.size());
    if (samples.size() >= 2)
    {
        double ss = 0.0;
        for (double v : samples)
            ss += (v - row.mean) * (v - row.mean);
        row.std_error = std::sqrt(ss / static_cast<double>(samples.size() - 1)) /
                        std::sqrt(static_cast<double>(samples.size()));
    }
    return row;
}

// ----------------------------------------------------------------- wsr sweep

PlacementProblem make_wsr_problem(const WsrSweepConfig &cfg, double size_wl,
                                  std::uint64_t rep_seed)
{
    RandomPathSetSpec spec;
    spec.l_tx = cfg.paths_per_user;
    spec.l_rx = cfg.paths_per_user;
    spec.prm_style = PrmStyle::Diagonal;
    spec.gain_variance = cfg.gain_variance;
    spec.wavelength = cfg.wavelength;
    std::vector<PathSet> users;
    users.reserve(cfg.users);
    for (std::size_t k = 0; k < cfg.users; ++k)
        users.push_back(random_pathset(spec, derive_seed(rep_seed, stream_scenario + k)));
    MultiuserWsrObjective obj{std::move(users), std::vector<double>(cfg.users, 1.0),
                              std::pow(10.0, cfg.snr_db / 10.0)};
    const double a = size_wl * cfg.wavelength;
    MovingRegion region({0.0, 0.0, 0.0}, {a, a, 0.0}, cfg.min_spacing_wl * cfg.wavelength,
                        cfg.n_antennas);
    return PlacementProblem(std::move(obj), std::move(region), cfg.n_antennas, cfg.wavelength);
}

double run_method(const PlacementProblem &problem, const std::string &name, std::uint64_t seed,
                  std::size_t zo_budget)
{
    switch (method_id(name))
    {
    case 0:
        return fpa_baseline(problem).objective_value;
    case 1:
        // Default configuration: the multistart pattern is a deterministic
        // function of the problem, so paired comparisons stay exact.
        return grad_ascent_placement(problem, {}).objective_value;
    case 2:
    {
        PsoConfig c;
        c.seed = seed;
        return pso_placement(problem, c).objective_value;
    }
    case 3:
    {
        DiscreteConfig c;
        c.mode = DiscreteMode::Greedy;
        return discrete_placement(problem, c).objective_value;
    }
    case 4:
        return cs_placement(problem, {}).objective_value;
    default:
    {
        MeasurementOracle oracle{
            [&problem](const std::vector<Position3D> &pos)
            { return objective_value(problem, pos); },
            zo_budget};
        ZoConfig c;
        c.seed = seed;
        return zo_placement(oracle, problem.region(), problem.n_antennas(), c).objective_value;
    }
    }
}

// ---------------------------------------------------------------- nmse sweep

PathSet planted_pathset(const AngularDictionary &dict, std::size_t paths, double wavelength,
                        std::uint64_t seed)
{
    // Only atoms inside the direction-cosine unit disk correspond to physical angles.
    std::vector<std::size_t> physical;
    for (std::size_t s = 0; s < dict.frv_length(); ++s)
    {
        const VirtualAngles v = decode_side_index(dict, s);
        if (std::hypot(v.elevation_cos, v.azimuth_cos) <= 1.0)
            physical.push_back(s);
    }
    if (paths > physical.size())
        throw config_error("bench: more planted paths than physical dictionary atoms");
    RngEngine rng = make_engine(seed);
    std::uniform_int_distribution<std::size_t> pick(0, physical.size() - 1);
    const auto draw_distinct = [&]
    {
        std::vector<std::size_t> atoms;
        std::vector<char> used(physical.size(), 0);
        while (atoms.size() < paths)
        {
            const std::size_t idx = pick(rng);
            if (!used[idx])
            {
                used[idx] = 1;
                atoms.push_back(physical[idx]);
            }
        }
        return atoms;
    };
    const std::vector<std::size_t> tx_atoms = draw_distinct();
    const std::vector<std::size_t> rx_atoms = draw_distinct();
    std::vector<PathAngles> tx, rx;
    for (std::size_t a : tx_atoms)
        tx.push_back(angles_from_virtual(decode_side_index(dict, a)));
    for (std::size_t a : rx_atoms)
        rx.push_back(angles_from_virtual(decode_side_index(dict, a)));
    arma::cx_mat prm(paths, paths, arma::fill::zeros);
    for (std::size_t k = 0; k < paths; ++k)
        prm(k, k) = draw_cscg(rng, 1.0);
    return PathSet(std::move(tx), std::move(rx), std::move(prm), wavelength);
}

std::vector<Position3D> random_positions(const MovingRegion &region, std::size_t count,
                                         RngEngine &rng)
{
    std::vector<Position3D> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(random_position(region, rng));
    return out;
}

struct NmseOutcome
{
    double nmse = 1.0;
    SparseEstimate estimate;
    std::vector<MeasurementCampaign> campaigns;
};

// Shared scenario for one (measurement count, repetition) cell; both
// estimators read the same truth and evaluation set.
NmseOutcome run_estimator(const NmseSweepConfig &cfg, const std::string &estimator,
                          std::size_t m, std::uint64_t rep_seed)
{
    const AngularDictionary dict = build_dictionary(cfg.grid);
    const double a = cfg.region_size_wl * cfg.wavelength;
    const MovingRegion region({0.0, 0.0, 0.0}, {a, a, 0.0});
    const PathSet truth =
        planted_pathset(dict, cfg.paths, cfg.wavelength, derive_seed(rep_seed, stream_scenario));

    RngEngine eval_rng = make_engine(derive_seed(rep_seed, stream_eval));
    std::vector<std::pair<Position3D, Position3D>> eval_pairs;
    eval_pairs.reserve(cfg.eval_points);
    for (std::size_t e = 0; e < cfg.eval_points; ++e)
    {
        const Position3D t = random_position(region, eval_rng);
        const Position3D r = random_position(region, eval_rng);
        eval_pairs.emplace_back(t, r);
    }
    const ChannelField field(truth, region, region);

    NmseOutcome out;
    if (estimator == "joint")
    {
        RngEngine pos_rng = make_engine(derive_seed(rep_seed, stream_positions));
        std::vector<Position3D> tx = random_positions(region, m, pos_rng);
        std::vector<Position3D> rx = random_positions(region, m, pos_rng);
        const MeasurementCampaign campaign =
            simulate_pilots(truth, std::move(tx), std::move(rx), cfg.power, cfg.noise_var,
                            derive_seed(rep_seed, stream_noise));
        out.estimate = joint_cs_estimate(dict, campaign);
        out.nmse = nmse(field, out.estimate, dict, eval_pairs);
        out.campaigns = {campaign};
        return out;
    }
    if (estimator != "strcs")
        throw config_error("bench: unknown estimator '" + estimator +
                           "'; valid estimators: joint, strcs");
    if (m < 3)
        return out; // cannot split into three campaigns; scored as full error
    const std::size_t m_tx = std::max<std::size_t>(1, m / 4);
    const std::size_t m_rx = std::max<std::size_t>(1, m / 4);
    const std::size_t m_joint = m - m_tx - m_rx;
    RngEngine pos_rng = make_engine(derive_seed(rep_seed, stream_positions));
    std::vector<Position3D> tx1 = random_positions(region, m_tx, pos_rng);
    std::vector<Position3D> rx2 = random_positions(region, m_rx, pos_rng);
    std::vector<Position3D> tx3 = random_positions(region, m_joint, pos_rng);
    std::vector<Position3D> rx3 = random_positions(region, m_joint, pos_rng);
    const Position3D origin{0.0, 0.0, 0.0};
    const MeasurementCampaign tx_campaign =
        simulate_pilots(truth, std::move(tx1), std::vector<Position3D>(m_tx, origin), cfg.power,
                        cfg.noise_var, derive_seed(rep_seed, stream_noise, 1));
    const MeasurementCampaign rx_campaign =
        simulate_pilots(truth, std::vector<Position3D>(m_rx, origin), std::move(rx2), cfg.power,
                        cfg.noise_var, derive_seed(rep_seed, stream_noise, 2));
    const MeasurementCampaign joint_campaign =
        simulate_pilots(truth, std::move(tx3), std::move(rx3), cfg.power, cfg.noise_var,
                        derive_seed(rep_seed, stream_noise, 3));
    try
    {
        const StrcsEstimate est = strcs_estimate(dict, tx_campaign, rx_campaign, joint_campaign);
        out.estimate = est.combined;
        out.nmse = nmse(field, out.estimate, dict, eval_pairs);
    }
    catch (const numerical_error &)
    {
        // unidentifiable stage; full error already recorded
    }
    out.campaigns = {tx_campaign, rx_campaign, joint_campaign};
    return out;
}

// ----------------------------------------------------------------- crb sweep

ArrayGeometry uniform_segment(double length, std::size_t n, double wavelength)
{
    std::vector<Position3D> pos;
    pos.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        pos.push_back({length * static_cast<double>(i) / static_cast<double>(n - 1), 0.0, 0.0});
    return ArrayGeometry(std::move(pos), wavelength);
}

} // namespace

std::string format_number(double value)
{
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(const std::string &text)
{
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : text)
    {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

std::vector<SweepRow> run_wsr_sweep(const WsrSweepConfig &config, std::size_t threads)
{
    if (config.methods.size() < 2)
        throw config_error("wsr sweep: need at least two methods");
    if (std::find(config.methods.begin(), config.methods.end(), "fpa") == config.methods.end())
        throw config_error("wsr sweep: the method list must include the fpa baseline");
    for (const auto &m : config.methods)
        method_id(m);
    if (config.reps == 0 || config.region_sizes_wl.empty())
        throw config_error("wsr sweep: need at least one repetition and one region size");

    const std::size_t n_sizes = config.region_sizes_wl.size();
    const std::size_t n_methods = config.methods.size();
    std::vector<std::vector<double>> results(n_sizes * config.reps,
                                             std::vector<double>(n_methods, 0.0));
    run_tasks(n_sizes * config.reps, threads,
              [&](std::size_t task)
              {
                  const std::size_t size_idx = task / config.reps;
                  const std::size_t rep = task % config.reps;
                  // Seeds pair repetitions across sweep points: every region
                  // size sees the same channel draws, so curves compare the
                  // methods rather than the noise.
                  const std::uint64_t rep_seed = derive_seed(config.master_seed, rep);
                  const PlacementProblem problem =
                      make_wsr_problem(config, config.region_sizes_wl[size_idx], rep_seed);
                  for (std::size_t mi = 0; mi < n_methods; ++mi)
                  {
                      const std::uint64_t opt_seed = derive_seed(
                          rep_seed, stream_method + method_id(config.methods[mi]));
                      results[task][mi] =
                          run_method(problem, config.methods[mi], opt_seed, config.zo_budget);
                  }
              });

    std::vector<SweepRow> rows;
    rows.reserve(n_sizes * n_methods);
    for (std::size_t s = 0; s < n_sizes; ++s)
        for (std::size_t mi = 0; mi < n_methods; ++mi)
        {
            std::vector<double> samples;
            samples.reserve(config.reps);
            for (std::size_t rep = 0; rep < config.reps; ++rep)
                samples.push_back(results[s * config.reps + rep][mi]);
            rows.push_back(
                aggregate(config.region_sizes_wl[s], config.methods[mi], samples));
        }
    sort_rows(rows);
    return rows;
}

std::vector<SweepRow> run_nmse_sweep(const NmseSweepConfig &config, std::size_t threads)
{
    if (config.estimators.empty() || config.measurements.empty() || config.reps == 0)
        throw config_error("nmse sweep: need estimators, measurement counts and repetitions");
    for (const auto &e : config.estimators)
        if (e != "joint" && e != "strcs")
            throw config_error("nmse sweep: unknown estimator '" + e +
                               "'; valid estimators: joint, strcs");
    if (config.grid < 2 || config.paths == 0 || config.eval_points == 0)
        throw config_error("nmse sweep: grid >= 2, paths >= 1 and eval_points >= 1 required");

    const std::size_t n_m = config.measurements.size();
    const std::size_t n_est = config.estimators.size();
    std::vector<std::vector<double>> results(n_m * config.reps,
                                             std::vector<double>(n_est, 1.0));
    run_tasks(n_m * config.reps, threads,
              [&](std::size_t task)
              {
                  const std::size_t m_idx = task / config.reps;
                  const std::size_t rep = task % config.reps;
                  // Paired repetitions: every measurement count reuses the same
                  // planted channel and a nested position stream.
                  const std::uint64_t rep_seed = derive_seed(config.master_seed, rep);
                  for (std::size_t ei = 0; ei < n_est; ++ei)
                      results[task][ei] = run_estimator(config, config.estimators[ei],
                                                        config.measurements[m_idx], rep_seed)
                                              .nmse;
              });

    std::vector<SweepRow> rows;
    rows.reserve(n_m * n_est);
    for (std::size_t s = 0; s < n_m; ++s)
        for (std::size_t ei = 0; ei < n_est; ++ei)
        {
            std::vector<double> samples;
            samples.reserve(config.reps);
            for (std::size_t rep = 0; rep < config.reps; ++rep)
                samples.push_back(results[s * config.reps + rep][ei]);
            rows.push_back(aggregate(static_cast<double>(config.measurements[s]),
                                     config.estimators[ei], samples));
        }
    sort_rows(rows);
    return rows;
}

std::vector<SweepRow> run_crb_sweep(const CrbSweepConfig &config, std::size_t threads)
{
    (void)threads; // cheap and deterministic; computed sequentially
    if (config.lengths_wl.empty() || config.geometries.empty())
        throw config_error("crb sweep: need lengths and geometries");
    for (const auto &g : config.geometries)
        if (g != "edge" && g != "uniform")
            throw config_error("crb sweep: unknown geometry '" + g +
                               "'; valid geometries: edge, uniform");
    if (config.n_elements < 2 || !(config.spacing_wl > 0.0))
        throw config_error("crb sweep: n_elements >= 2 and positive spacing required");

    const double wl = config.wavelength;
    const double snr = std::pow(10.0, config.snr_db / 10.0);
    const PathAngles broadside(0.0, std::numbers::pi / 2.0);
    std::vector<SweepRow> rows;
    for (double len_wl : config.lengths_wl)
    {
        const double len = len_wl * wl;
        const MovingRegion segment({0.0, 0.0, 0.0}, {len, 0.0, 0.0}, config.spacing_wl * wl,
                                   config.n_elements);
        for (const auto &geom_name : config.geometries)
        {
            ArrayGeometry geom =
                geom_name == "edge"
                    ? crb_optimal_placement(segment, config.n_elements, wl, broadside, snr,
                                            config.snapshots)
                    : uniform_segment(len, config.n_elements, wl);
            const CrbReport rep =
                single_target_crb(geom, broadside, snr, config.snapshots, Axis::X);
            SweepRow row;
            row.sweep_value = len_wl;
            row.method = geom_name;
            row.mean = rep.crb_spatial(0);
            row.std_error = 0.0;
            row.repetitions = 1;
            rows.push_back(row);
        }
    }
    sort_rows(rows);

    // Embedded sanity checks: longer segments must help, and the edge-packed
    // layout must dominate the uniform one.
    for (const auto &geom_name : config.geometries)
    {
        double prev = std::numeric_limits<double>::infinity();
        double prev_len = -1.0;
        for (const auto &row : rows)
        {
            if (row.method != geom_name)
                continue;
            if (prev_len >= 0.0 && !(row.mean < prev))
                throw numerical_error("crb sweep: bound failed to decrease with segment length");
            prev = row.mean;
            prev_len = row.sweep_value;
        }
    }
    if (std::find(config.geometries.begin(), config.geometries.end(), "edge") !=
            config.geometries.end() &&
        std::find(config.geometries.begin(), config.geometries.end(), "uniform") !=
            config.geometries.end())
        for (const auto &row : rows)
            if (row.method == "edge")
                for (const auto &other : rows)
                    if (other.method == "uniform" && other.sweep_value == row.sweep_value &&
                        !(row.mean <= other.mean))
                        throw numerical_error(
                            "crb sweep: uniform layout beat the edge-packed layout");
    return rows;
}

// ------------------------------------------------------------- config schema

namespace
{

const std::set<std::string> &allowed_keys(const std::string &kind)
{
    static const std::set<std::string> common = {"version", "kind", "master_seed", "reps", "out"};
    static const std::map<std::string, std::set<std::string>> per_kind = {
        {"channel-demo",
         {"wavelength", "l_tx", "l_rx", "prm_style", "gain_variance", "region_size_wl",
          "grid_points"}},
        {"estimate",
         {"wavelength", "grid", "paths", "noise_var", "power", "measurements", "region_size_wl",
          "estimator", "eval_points"}},
        {"optimize",
         {"objective", "method", "n_antennas", "users", "paths_per_user", "paths", "rx_antennas",
          "gain_variance", "snr_db", "wavelength", "min_spacing_wl", "region_size_wl",
          "zo_budget"}},
        {"wsr-sweep",
         {"n_antennas", "users", "paths_per_user", "gain_variance", "snr_db", "wavelength",
          "min_spacing_wl", "region_sizes_wl", "methods", "zo_budget"}},
        {"nmse-sweep",
         {"grid", "paths", "noise_var", "power", "wavelength", "region_size_wl", "measurements",
          "estimators", "eval_points"}},
        {"crb-sweep",
         {"n_elements", "spacing_wl", "snr_db", "snapshots", "wavelength", "lengths_wl",
          "geometries"}}};
    const auto it = per_kind.find(kind);
    if (it == per_kind.end())
        throw config_error("bench: unknown experiment kind '" + kind +
                           "'; valid kinds: channel-demo, estimate, optimize, wsr-sweep, "
                           "nmse-sweep, crb-sweep");
    static std::map<std::string, std::set<std::string>> merged_cache;
    auto cached = merged_cache.find(kind);
    if (cached == merged_cache.end())
    {
        std::set<std::string> merged = common;
        merged.insert(it->second.begin(), it->second.end());
        cached = merged_cache.emplace(kind, std::move(merged)).first;
    }
    return cached->second;
}

double get_double(const json &cfg, const std::string &key)
{
    const auto &v = cfg.at(key);
    if (!v.is_number())
        throw config_error("bench: key '" + key + "' must be a number");
    return v.get<double>();
}

std::size_t get_size(const json &cfg, const std::string &key)
{
    const auto &v = cfg.at(key);
    if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0)))
        throw config_error("bench: key '" + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

std::uint64_t get_u64(const json &cfg, const std::string &key)
{
    const auto &v = cfg.at(key);
    if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0)))
        throw config_error("bench: key '" + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

std::string get_string(const json &cfg, const std::string &key)
{
    const auto &v = cfg.at(key);
    if (!v.is_string())
        throw config_error("bench: key '" + key + "' must be a string");
    return v.get<std::string>();
}

std::vector<double> get_double_array(const json &cfg, const std::string &key)
{
    const auto &v = cfg.at(key);
    if (!v.is_array() || v.empty())
        throw config_error("bench: key '" + key + "' must be a non-empty array of numbers");
    std::vector<double> out;
    for (const auto &e : v)
    {
        if (!e.is_number())
            throw config_error("bench: key '" + key + "' must contain numbers only");
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<std::size_t> get_size_array(const json &cfg, const std::string &key)
{
    const auto &v = cfg.at(key);
    if (!v.is_array() || v.empty())
        throw config_error("bench: key '" + key + "' must be a non-empty array of integers");
    std::vector<std::size_t> out;
    for (const auto &e : v)
    {
        if (!(e.is_number_unsigned() || (e.is_number_integer() && e.get<std::int64_t>() >= 0)))
            throw config_error("bench: key '" + key + "' must contain non-negative integers");
        out.push_back(e.get<std::size_t>());
    }
    return out;
}

std::vector<std::string> get_string_array(const json &cfg, const std::string &key)
{
    const auto &v = cfg.at(key);
    if (!v.is_array() || v.empty())
        throw config_error("bench: key '" + key + "' must be a non-empty array of strings");
    std::vector<std::string> out;
    for (const auto &e : v)
    {
        if (!e.is_string())
            throw config_error("bench: key '" + key + "' must contain strings only");
        out.push_back(e.get<std::string>());
    }
    return out;
}

void require_positive(double v, const std::string &key)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw config_error("bench: key '" + key + "' must be positive and finite");
}

WsrSweepConfig wsr_config(const json &cfg)
{
    WsrSweepConfig c;
    c.n_antennas = get_size(cfg, "n_antennas");
    c.users = get_size(cfg, "users");
    c.paths_per_user = get_size(cfg, "paths_per_user");
    c.gain_variance = get_double(cfg, "gain_variance");
    c.snr_db = get_double(cfg, "snr_db");
    c.wavelength = get_double(cfg, "wavelength");
    c.min_spacing_wl = get_double(cfg, "min_spacing_wl");
    c.region_sizes_wl = get_double_array(cfg, "region_sizes_wl");
    c.methods = get_string_array(cfg, "methods");
    c.zo_budget = get_size(cfg, "zo_budget");
    c.reps = get_size(cfg, "reps");
    c.master_seed = get_u64(cfg, "master_seed");
    require_positive(c.gain_variance, "gain_variance");
    require_positive(c.wavelength, "wavelength");
    if (!std::isfinite(c.snr_db))
        throw config_error("bench: key 'snr_db' must be finite");
    if (c.min_spacing_wl < 0.0)
        throw config_error("bench: key 'min_spacing_wl' must be non-negative");
    if (c.n_antennas == 0 || c.users == 0 || c.paths_per_user == 0 || c.reps == 0)
        throw config_error("bench: antenna, user, path and repetition counts must be >= 1");
    if (c.n_antennas < c.users)
        throw config_error("bench: zero-forcing needs n_antennas >= users");
    for (double s : c.region_sizes_wl)
        require_positive(s, "region_sizes_wl");
    if (c.methods.size() < 2)
        throw config_error("bench: wsr-sweep needs at least two methods");
    if (std::find(c.methods.begin(), c.methods.end(), "fpa") == c.methods.end())
        throw config_error("bench: wsr-sweep methods must include the fpa baseline");
    for (const auto &m : c.methods)
        method_id(m);
    if (c.zo_budget < 2)
        throw config_error("bench: key 'zo_budget' must be >= 2");
    return c;
}

NmseSweepConfig nmse_config(const json &cfg)
{
    NmseSweepConfig c;
    c.grid = get_size(cfg, "grid");
    c.paths = get_size(cfg, "paths");
    c.noise_var = get_double(cfg, "noise_var");
    c.power = get_double(cfg, "power");
    c.wavelength = get_double(cfg, "wavelength");
    c.region_size_wl = get_double(cfg, "region_size_wl");
    c.measurements = get_size_array(cfg, "measurements");
    c.estimators = get_string_array(cfg, "estimators");
    c.eval_points = get_size(cfg, "eval_points");
    c.reps = get_size(cfg, "reps");
    c.master_seed = get_u64(cfg, "master_seed");
    if (c.grid < 2)
        throw config_error("bench: key 'grid' must be >= 2");
    if (c.paths == 0 || c.eval_points == 0 || c.reps == 0)
        throw config_error("bench: paths, eval_points and reps must be >= 1");
    if (c.noise_var < 0.0 || !std::isfinite(c.noise_var))
        throw config_error("bench: key 'noise_var' must be non-negative and finite");
    require_positive(c.power, "power");
    require_positive(c.wavelength, "wavelength");
    require_positive(c.region_size_wl, "region_size_wl");
    for (std::size_t m : c.measurements)
        if (m == 0)
            throw config_error("bench: measurement counts must be >= 1");
    for (const auto &e : c.estimators)
        if (e != "joint" && e != "strcs")
            throw config_error("bench: unknown estimator '" + e +
                               "'; valid estimators: joint, strcs");
    return c;
}

CrbSweepConfig crb_config(const json &cfg)
{
    CrbSweepConfig c;
    c.n_elements = get_size(cfg, "n_elements");
    c.spacing_wl = get_double(cfg, "spacing_wl");
    c.snr_db = get_double(cfg, "snr_db");
    c.snapshots = get_size(cfg, "snapshots");
    c.wavelength = get_double(cfg, "wavelength");
    c.lengths_wl = get_double_array(cfg, "lengths_wl");
    c.geometries = get_string_array(cfg, "geometries");
    c.master_seed = get_u64(cfg, "master_seed");
    if (c.n_elements < 2)
        throw config_error("bench: key 'n_elements' must be >= 2");
    require_positive(c.spacing_wl, "spacing_wl");
    require_positive(c.wavelength, "wavelength");
    if (!std::isfinite(c.snr_db))
        throw config_error("bench: key 'snr_db' must be finite");
    if (c.snapshots == 0)
        throw config_error("bench: key 'snapshots' must be >= 1");
    for (const auto &g : c.geometries)
        if (g != "edge" && g != "uniform")
            throw config_error("bench: unknown geometry '" + g +
                               "'; valid geometries: edge, uniform");
    const double needed = static_cast<double>(c.n_elements - 1) * c.spacing_wl;
    for (double len : c.lengths_wl)
    {
        require_positive(len, "lengths_wl");
        if (len < needed - 1e-12)
            throw config_error("bench: segment length " + format_number(len) +
                               " wavelengths cannot hold " + std::to_string(c.n_elements) +
                               " elements at the requested spacing");
    }
    return c;
}

PrmStyle style_from_name(const std::string &name)
{
    if (name == "full")
        return PrmStyle::Full;
    if (name == "diagonal")
        return PrmStyle::Diagonal;
    if (name == "los")
        return PrmStyle::Los;
    throw config_error("bench: unknown prm_style '" + name +
                       "'; valid styles: full, diagonal, los");
}

void validate_single_kind(const std::string &kind, const json &cfg)
{
    if (kind == "channel-demo")
    {
        require_positive(get_double(cfg, "wavelength"), "wavelength");
        require_positive(get_double(cfg, "gain_variance"), "gain_variance");
        require_positive(get_double(cfg, "region_size_wl"), "region_size_wl");
        const std::size_t lt = get_size(cfg, "l_tx"), lr = get_size(cfg, "l_rx");
        if (lt == 0 || lr == 0)
            throw config_error("bench: path counts must be >= 1");
        const PrmStyle style = style_from_name(get_string(cfg, "prm_style"));
        if (style == PrmStyle::Diagonal && lt != lr)
            throw config_error("bench: diagonal prm_style needs l_tx == l_rx");
        if (style == PrmStyle::Los && (lt != 1 || lr != 1))
            throw config_error("bench: los prm_style needs a single path on each side");
        if (get_size(cfg, "grid_points") < 2)
            throw config_error("bench: key 'grid_points' must be >= 2");
    }
    else if (kind == "estimate")
    {
        if (get_size(cfg, "grid") < 2)
            throw config_error("bench: key 'grid' must be >= 2");
        if (get_size(cfg, "paths") == 0 || get_size(cfg, "eval_points") == 0)
            throw config_error("bench: paths and eval_points must be >= 1");
        if (get_size(cfg, "measurements") == 0)
            throw config_error("bench: key 'measurements' must be >= 1");
        require_positive(get_double(cfg, "power"), "power");
        require_positive(get_double(cfg, "wavelength"), "wavelength");
        require_positive(get_double(cfg, "region_size_wl"), "region_size_wl");
        if (get_double(cfg, "noise_var") < 0.0)
            throw config_error("bench: key 'noise_var' must be non-negative");
        const std::string est = get_string(cfg, "estimator");
        if (est != "joint" && est != "strcs")
            throw config_error("bench: unknown estimator '" + est +
                               "'; valid estimators: joint, strcs");
    }
    else if (kind == "optimize")
    {
        const std::string obj = get_string(cfg, "objective");
        if (obj != "wsr" && obj != "single_link" && obj != "mimo")
            throw config_error("bench: unknown objective '" + obj +
                               "'; valid objectives: mimo, single_link, wsr");
        method_id(get_string(cfg, "method"));
        if (get_size(cfg, "n_antennas") == 0 || get_size(cfg, "users") == 0 ||
            get_size(cfg, "paths_per_user") == 0 || get_size(cfg, "paths") == 0 ||
            get_size(cfg, "rx_antennas") == 0)
            throw config_error("bench: counts must be >= 1");
        if (obj == "wsr" && get_size(cfg, "n_antennas") < get_size(cfg, "users"))
            throw config_error("bench: zero-forcing needs n_antennas >= users");
        require_positive(get_double(cfg, "gain_variance"), "gain_variance");
        require_positive(get_double(cfg, "wavelength"), "wavelength");
        require_positive(get_double(cfg, "region_size_wl"), "region_size_wl");
        if (get_double(cfg, "min_spacing_wl") < 0.0)
            throw config_error("bench: key 'min_spacing_wl' must be non-negative");
        if (get_size(cfg, "zo_budget") < 2)
            throw config_error("bench: key 'zo_budget' must be >= 2");
    }
}

} // namespace

// ------------------------------------------------------------------ Experiment

json Experiment::default_config(const std::string &kind)
{
    allowed_keys(kind); // validates the kind name
    json cfg{{"version", 1},
             {"kind", kind},
             {"master_seed", 1},
             {"reps", 1},
             {"out", kind + ".csv"}};
    if (kind == "channel-demo")
    {
        cfg["wavelength"] = 0.05;
        cfg["l_tx"] = 4;
        cfg["l_rx"] = 4;
        cfg["prm_style"] = "full";
        cfg["gain_variance"] = 1.0;
        cfg["region_size_wl"] = 2.0;
        cfg["grid_points"] = 25;
    }
    else if (kind == "estimate")
    {
        cfg["wavelength"] = 0.05;
        cfg["grid"] = 16;
        cfg["paths"] = 3;
        cfg["noise_var"] = 0.0;
        cfg["power"] = 1.0;
        cfg["measurements"] = 60;
        cfg["region_size_wl"] = 8.0;
        cfg["estimator"] = "joint";
        cfg["eval_points"] = 32;
    }
    else if (kind == "optimize")
    {
        cfg["objective"] = "wsr";
        cfg["method"] = "gradient";
        cfg["n_antennas"] = 4;
        cfg["users"] = 4;
        cfg["paths_per_user"] = 6;
        cfg["paths"] = 2;
        cfg["rx_antennas"] = 4;
        cfg["gain_variance"] = 1.0;
        cfg["snr_db"] = 10.0;
        cfg["wavelength"] = 0.05;
        cfg["min_spacing_wl"] = 0.5;
        cfg["region_size_wl"] = 2.0;
        cfg["zo_budget"] = 2000;
    }
    else if (kind == "wsr-sweep")
    {
        const WsrSweepConfig d;
        cfg["reps"] = d.reps;
        cfg["n_antennas"] = d.n_antennas;
        cfg["users"] = d.users;
        cfg["paths_per_user"] = d.paths_per_user;
        cfg["gain_variance"] = d.gain_variance;
        cfg["snr_db"] = d.snr_db;
        cfg["wavelength"] = d.wavelength;
        cfg["min_spacing_wl"] = d.min_spacing_wl;
        cfg["region_sizes_wl"] = d.region_sizes_wl;
        cfg["methods"] = d.methods;
        cfg["zo_budget"] = d.zo_budget;
    }
    else if (kind == "nmse-sweep")
    {
        const NmseSweepConfig d;
        cfg["reps"] = d.reps;
        cfg["grid"] = d.grid;
        cfg["paths"] = d.paths;
        cfg["noise_var"] = d.noise_var;
        cfg["power"] = d.power;
        cfg["wavelength"] = d.wavelength;
        cfg["region_size_wl"] = d.region_size_wl;
        cfg["measurements"] = d.measurements;
        cfg["estimators"] = d.estimators;
        cfg["eval_points"] = d.eval_points;
    }
    else if (kind == "crb-sweep")
    {
        const CrbSweepConfig d;
        cfg["n_elements"] = d.n_elements;
        cfg["spacing_wl"] = d.spacing_wl;
        cfg["snr_db"] = d.snr_db;
        cfg["snapshots"] = d.snapshots;
        cfg["wavelength"] = d.wavelength;
        cfg["lengths_wl"] = d.lengths_wl;
        cfg["geometries"] = d.geometries;
    }
    return cfg;
}

Experiment Experiment::from_json(const json &config)
{
    if (!config.is_object())
        throw config_error("bench: experiment config must be a JSON object");
    if (!config.contains("kind"))
        throw config_error("bench: experiment config needs a 'kind' key");
    const std::string kind = get_string(config, "kind");
    const auto &allowed = allowed_keys(kind);
    for (const auto &item : config.items())
        if (allowed.find(item.key()) == allowed.end())
            throw config_error("bench: unknown key '" + item.key() + "' for kind '" + kind +
                               "'");
    if (!config.contains("version"))
        throw config_error("bench: experiment config needs a 'version' key");
    if (!config.at("version").is_number_integer() || config.at("version").get<int>() != 1)
        throw config_error("bench: unsupported config version; this toolkit reads version 1");

    Experiment e;
    e.kind_ = kind;
    e.config_ = default_config(kind);
    for (const auto &item : config.items())
        e.config_[item.key()] = item.value();

    // Eager validation: every parameter checked against its module's rules.
    get_u64(e.config_, "master_seed");
    if (get_size(e.config_, "reps") == 0)
        throw config_error("bench: key 'reps' must be >= 1");
    get_string(e.config_, "out");
    if (kind == "wsr-sweep")
        wsr_config(e.config_);
    else if (kind == "nmse-sweep")
        nmse_config(e.config_);
    else if (kind == "crb-sweep")
        crb_config(e.config_);
    else
        validate_single_kind(kind, e.config_);
    return e;
}

Experiment Experiment::from_file(const std::string &path)
{
    return from_json(load_json(path));
}

void Experiment::override_seed(std::uint64_t seed)
{
    config_["master_seed"] = seed;
}

void Experiment::override_reps(std::size_t reps)
{
    if (reps == 0)
        throw config_error("bench: key 'reps' must be >= 1");
    config_["reps"] = reps;
}

void Experiment::override_out(const std::string &path)
{
    config_["out"] = path;
}

void Experiment::set_threads(std::size_t threads)
{
    threads_ = threads == 0 ? 1 : threads;
}

void Experiment::set_quiet(bool quiet)
{
    quiet_ = quiet;
}

std::uint64_t Experiment::config_digest() const
{
    json canon = config_;
    canon.erase("out"); // where the data lands does not change what it is
    return fnv1a64(canon.dump());
}

namespace
{

std::string hex16(std::uint64_t v)
{
    static const char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i)
    {
        out[static_cast<std::size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

void write_csv(const std::string &path, const std::string &digest, std::uint64_t master_seed,
               const std::string &header, const std::vector<std::string> &lines)
{
    std::ofstream out(path);
    if (!out)
        throw io_error("bench: cannot open '" + path + "' for writing");
    out << "# mawi_version=" << toolkit_version << "\n";
    out << "# config_digest=" << digest << "\n";
    out << "# master_seed=" << master_seed << "\n";
    out << header << "\n";
    for (const auto &line : lines)
        out << line << "\n";
    if (!out)
        throw io_error("bench: write to '" + path + "' failed");
}

std::vector<std::string> sweep_lines(const std::vector<SweepRow> &rows)
{
    std::vector<std::string> lines;
    lines.reserve(rows.size());
    for (const auto &r : rows)
        lines.push_back(format_number(r.sweep_value) + "," + r.method + "," +
                        format_number(r.mean) + "," + format_number(r.std_error) + "," +
                        std::to_string(r.repetitions));
    return lines;
}

} // namespace

json Experiment::run() const
{
    const std::string out_path = config_.at("out").get<std::string>();
    if (out_path.empty())
        throw config_error("bench: output path is empty; set 'out' or pass --out");
    const std::string digest = hex16(config_digest());
    const std::uint64_t master = config_.at("master_seed").get<std::uint64_t>();
    std::vector<std::string> outputs{out_path};
    std::size_t row_count = 0;

    if (kind_ == "wsr-sweep" || kind_ == "nmse-sweep" || kind_ == "crb-sweep")
    {
        std::vector<SweepRow> rows;
        if (kind_ == "wsr-sweep")
        {
            WsrSweepConfig c = wsr_config(config_);
            c.reps = config_.at("reps").get<std::size_t>();
            rows = run_wsr_sweep(c, threads_);
        }
        else if (kind_ == "nmse-sweep")
        {
            NmseSweepConfig c = nmse_config(config_);
            c.reps = config_.at("reps").get<std::size_t>();
            rows = run_nmse_sweep(c, threads_);
        }
        else
        {
            rows = run_crb_sweep(crb_config(config_), threads_);
        }
        row_count = rows.size();
        write_csv(out_path, digest, master, "sweep_value,method,mean,std_error,repetitions",
                  sweep_lines(rows));
    }
    else if (kind_ == "channel-demo")
    {
        RandomPathSetSpec spec;
        spec.l_tx = config_.at("l_tx").get<std::size_t>();
        spec.l_rx = config_.at("l_rx").get<std::size_t>();
        spec.prm_style = style_from_name(config_.at("prm_style").get<std::string>());
        spec.gain_variance = config_.at("gain_variance").get<double>();
        spec.wavelength = config_.at("wavelength").get<double>();
        const PathSet ps = random_pathset(spec, derive_seed(master, 0, 0));
        const double a = config_.at("region_size_wl").get<double>() * spec.wavelength;
        const std::size_t gp = config_.at("grid_points").get<std::size_t>();
        const Position3D origin{0.0, 0.0, 0.0};
        std::vector<std::string> lines;
        lines.reserve(gp * gp);
        for (std::size_t iy = 0; iy < gp; ++iy)
            for (std::size_t ix = 0; ix < gp; ++ix)
            {
                const double x = a * static_cast<double>(ix) / static_cast<double>(gp - 1);
                const double y = a * static_cast<double>(iy) / static_cast<double>(gp - 1);
                const cxd h = channel_response(ps, {x, y, 0.0}, origin);
                lines.push_back(format_number(x / spec.wavelength) + "," +
                                format_number(y / spec.wavelength) + "," +
                                format_number(h.real()) + "," + format_number(h.imag()) + "," +
                                format_number(std::abs(h)));
            }
        row_count = lines.size();
        write_csv(out_path, digest, master, "x_wl,y_wl,re,im,magnitude", lines);
        const std::string ps_path = out_path + ".pathset.json";
        save_json(to_json(ps), ps_path);
        outputs.push_back(ps_path);
    }
    else if (kind_ == "estimate")
    {
        NmseSweepConfig c;
        c.grid = config_.at("grid").get<std::size_t>();
        c.paths = config_.at("paths").get<std::size_t>();
        c.noise_var = config_.at("noise_var").get<double>();
        c.power = config_.at("power").get<double>();
        c.wavelength = config_.at("wavelength").get<double>();
        c.region_size_wl = config_.at("region_size_wl").get<double>();
        c.eval_points = config_.at("eval_points").get<std::size_t>();
        const std::string estimator = config_.at("estimator").get<std::string>();
        const std::size_t m = config_.at("measurements").get<std::size_t>();
        const NmseOutcome outcome = run_estimator(c, estimator, m, derive_seed(master, 0, 0));
        std::vector<std::string> lines;
        lines.push_back("nmse,0," + format_number(outcome.nmse));
        for (std::size_t i = 0; i < outcome.estimate.residual_history.size(); ++i)
            lines.push_back("residual," + std::to_string(i) + "," +
                            format_number(outcome.estimate.residual_history[i]));
        for (std::size_t i = 0; i < outcome.estimate.support.size(); ++i)
            lines.push_back("support," + std::to_string(i) + "," +
                            std::to_string(outcome.estimate.support[i]));
        row_count = lines.size();
        write_csv(out_path, digest, master, "name,index,value", lines);
        const std::string est_path = out_path + ".estimate.json";
        save_json(to_json(outcome.estimate), est_path);
        outputs.push_back(est_path);
        for (std::size_t i = 0; i < outcome.campaigns.size(); ++i)
        {
            const std::string cp = out_path + ".campaign" +
                                   (outcome.campaigns.size() > 1 ? std::to_string(i) : "") +
                                   ".json";
            save_json(to_json(outcome.campaigns[i]), cp);
            outputs.push_back(cp);
        }
    }
    else // optimize
    {
        const std::string objective = config_.at("objective").get<std::string>();
        const std::string method = config_.at("method").get<std::string>();
        const double wl = config_.at("wavelength").get<double>();
        const double a = config_.at("region_size_wl").get<double>() * wl;
        const std::size_t n = config_.at("n_antennas").get<std::size_t>();
        const double snr = std::pow(10.0, config_.at("snr_db").get<double>() / 10.0);
        const std::uint64_t rep_seed = derive_seed(master, 0, 0);
        MovingRegion region({0.0, 0.0, 0.0}, {a, a, 0.0},
                            config_.at("min_spacing_wl").get<double>() * wl, n);
        const PlacementProblem problem = [&]() -> PlacementProblem
        {
            if (objective == "wsr")
            {
                RandomPathSetSpec spec;
                spec.l_tx = config_.at("paths_per_user").get<std::size_t>();
                spec.l_rx = spec.l_tx;
                spec.prm_style = PrmStyle::Diagonal;
                spec.gain_variance = config_.at("gain_variance").get<double>();
                spec.wavelength = wl;
                const std::size_t users = config_.at("users").get<std::size_t>();
                std::vector<PathSet> sets;
                for (std::size_t k = 0; k < users; ++k)
                    sets.push_back(
                        random_pathset(spec, derive_seed(rep_seed, stream_scenario + k)));
                return PlacementProblem(
                    MultiuserWsrObjective{std::move(sets), std::vector<double>(users, 1.0), snr},
                    region, n, wl);
            }
            RandomPathSetSpec spec;
            spec.l_tx = config_.at("paths").get<std::size_t>();
            spec.l_rx = spec.l_tx;
            spec.prm_style = objective == "single_link" ? PrmStyle::Diagonal : PrmStyle::Full;
            spec.gain_variance = config_.at("gain_variance").get<double>();
            spec.wavelength = wl;
            PathSet ps = random_pathset(spec, derive_seed(rep_seed, stream_scenario));
            if (objective == "single_link")
                return PlacementProblem(
                    SingleLinkGainObjective{std::move(ps), Position3D{0.0, 0.0, 0.0}}, region, n,
                    wl);
            const std::size_t nr = config_.at("rx_antennas").get<std::size_t>();
            std::vector<Position3D> rx;
            for (std::size_t i = 0; i < nr; ++i)
                rx.push_back({static_cast<double>(i) * wl / 2.0, 0.0, 0.0});
            return PlacementProblem(MimoCapacityObjective{std::move(ps), std::move(rx), snr},
                                    region, n, wl);
        }();
        const std::uint64_t opt_seed = derive_seed(rep_seed, stream_method + method_id(method));
        PlacementResult result;
        switch (method_id(method))
        {
        case 0:
            result = fpa_baseline(problem);
            break;
        case 1:
            result = grad_ascent_placement(problem, {});
            break;
        case 2:
        {
            PsoConfig c;
            c.seed = opt_seed;
            result = pso_placement(problem, c);
            break;
        }
        case 3:
        {
            DiscreteConfig c;
            c.mode = DiscreteMode::Greedy;
            result = discrete_placement(problem, c);
            break;
        }
        case 4:
            result = cs_placement(problem, {});
            break;
        default:
        {
            MeasurementOracle oracle{[&problem](const std::vector<Position3D> &pos)
                                     { return objective_value(problem, pos); },
                                     config_.at("zo_budget").get<std::size_t>()};
            ZoConfig c;
            c.seed = opt_seed;
            result = zo_placement(oracle, problem.region(), n, c);
            break;
        }
        }
        std::vector<std::string> lines;
        lines.push_back("objective,0," + format_number(result.objective_value));
        lines.push_back("evaluations,0," + std::to_string(result.evaluations));
        lines.push_back(std::string("converged,0,") + (result.converged ? "1" : "0"));
        for (std::size_t i = 0; i < result.trace.size(); ++i)
            lines.push_back("trace," + std::to_string(i) + "," + format_number(result.trace[i]));
        for (std::size_t i = 0; i < result.positions.size(); ++i)
        {
            lines.push_back("position_x," + std::to_string(i) + "," +
                            format_number(result.positions[i].x));
            lines.push_back("position_y," + std::to_string(i) + "," +
                            format_number(result.positions[i].y));
            lines.push_back("position_z," + std::to_string(i) + "," +
                            format_number(result.positions[i].z));
        }
        row_count = lines.size();
        write_csv(out_path, digest, master, "name,index,value", lines);
        json res{{"objective_value", result.objective_value},
                 {"evaluations", result.evaluations},
                 {"converged", result.converged},
                 {"budget_exhausted", result.budget_exhausted},
                 {"trace", result.trace}};
        json pos = json::array();
        for (const auto &p : result.positions)
            pos.push_back(json::array({p.x, p.y, p.z}));
        res["positions"] = pos;
        const std::string res_path = out_path + ".result.json";
        save_json(res, res_path);
        outputs.push_back(res_path);
    }

    json meta{{"kind", kind_},
              {"toolkit_version", toolkit_version},
              {"config_digest", digest},
              {"master_seed", master},
              {"rows", row_count},
              {"outputs", outputs},
              {"config", config_}};
    save_json(meta, out_path + ".meta.json");
    return meta;
}

} // namespace mawi
