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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace mawi
{

// One aggregated sweep point. Rows are sorted by (sweep_value, method); the
// standard error is 0 when fewer than two repetitions contribute.
struct SweepRow
{
    double sweep_value = 0.0;
    std::string method;
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t repetitions = 0;
};

// Weighted sum-rate of placement methods versus normalized region size.
struct WsrSweepConfig
{
    std::size_t n_antennas = 4;
    std::size_t users = 4;
    std::size_t paths_per_user = 6;
    double gain_variance = 1.0;
    double snr_db = 10.0;
    double wavelength = 0.05;
    double min_spacing_wl = 0.5;
    std::vector<double> region_sizes_wl = {1.0, 2.0, 3.0, 4.0};
    std::vector<std::string> methods = {"fpa", "gradient", "discrete", "cs", "pso"};
    std::size_t zo_budget = 2000;
    std::size_t reps = 24;
    std::uint64_t master_seed = 1;
};
std::vector<SweepRow> run_wsr_sweep(const WsrSweepConfig &config, std::size_t threads = 1);

// Channel-reconstruction error of the sparse estimators versus pilot count.
struct NmseSweepConfig
{
    std::size_t grid = 16;
    std::size_t paths = 3;
    double noise_var = 0.0;
    double power = 1.0;
    double wavelength = 0.05;
    double region_size_wl = 8.0;
    std::vector<std::size_t> measurements = {8, 16, 24, 40, 60};
    std::vector<std::string> estimators = {"joint", "strcs"};
    std::size_t eval_points = 32;
    std::size_t reps = 10;
    std::uint64_t master_seed = 1;
};
std::vector<SweepRow> run_nmse_sweep(const NmseSweepConfig &config, std::size_t threads = 1);

// Direction-finding bound versus segment length for edge-packed and uniform
// element layouts; embedded post-run checks enforce the expected orderings.
struct CrbSweepConfig
{
    std::size_t n_elements = 8;
    double spacing_wl = 0.5;
    double snr_db = 10.0;
    std::size_t snapshots = 16;
    double wavelength = 0.05;
    std::vector<double> lengths_wl = {4.0, 8.0, 16.0, 32.0};
    std::vector<std::string> geometries = {"edge", "uniform"};
    std::uint64_t master_seed = 1;
};
std::vector<SweepRow> run_crb_sweep(const CrbSweepConfig &config, std::size_t threads = 1);

// A fully validated experiment: a versioned key-value config (unknown keys are
// rejected at load time), a kind, a master seed, and an output path. Running
// writes a CSV whose header carries the toolkit version, a canonical config
// digest and the master seed, plus a deterministic metadata JSON; identical
// config and seed give byte-identical files at any thread count.
class Experiment
{
  public:
    static Experiment from_json(const nlohmann::json &config);
    static Experiment from_file(const std::string &path);

    // Fully populated config for one experiment kind, ready to edit.
    static nlohmann::json default_config(const std::string &kind);

    void override_seed(std::uint64_t seed);
    void override_reps(std::size_t reps);
    void override_out(const std::string &path);
    void set_threads(std::size_t threads);
    void set_quiet(bool quiet);

    const std::string &kind() const { return kind_; }
    bool quiet() const { return quiet_; }
    std::size_t threads() const { return threads_; }
    const nlohmann::json &effective_config() const { return config_; }

    // FNV-1a 64 of the canonical config dump (output path excluded).
    std::uint64_t config_digest() const;

    // Executes the experiment, writes the output files, and returns the run
    // metadata (also written next to the CSV).
    nlohmann::json run() const;

  private:
    Experiment() = default;
    nlohmann::json config_;
    std::string kind_;
    std::size_t threads_ = 1;
    bool quiet_ = false;
};

// 12-significant-digit, locale-independent number formatting used in CSVs.
std::string format_number(double value);

std::uint64_t fnv1a64(const std::string &text);

} // namespace mawi
