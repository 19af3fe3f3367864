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

#include "mawi.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "mawi/bench.hpp"
#include "mawi/errors.hpp"
#include "mawi/field_channel.hpp"
#include "mawi/sensing.hpp"
#include "mawi/serialize.hpp"
#include "mawi/version.hpp"

namespace
{

thread_local std::string g_last_error;

// Runs `fn`, translating the toolkit exception hierarchy onto status codes.
template <typename Fn> mawi_status guarded(Fn &&fn)
{
    try
    {
        fn();
        g_last_error.clear();
        return MAWI_OK;
    }
    catch (const mawi::config_error &e)
    {
        g_last_error = e.what();
        return MAWI_ERR_CONFIG;
    }
    catch (const mawi::io_error &e)
    {
        g_last_error = e.what();
        return MAWI_ERR_IO;
    }
    catch (const mawi::numerical_error &e)
    {
        g_last_error = e.what();
        return MAWI_ERR_NUMERICAL;
    }
    catch (const std::exception &e)
    {
        g_last_error = e.what();
        return MAWI_ERR_INTERNAL;
    }
    catch (...)
    {
        g_last_error = "unknown error";
        return MAWI_ERR_INTERNAL;
    }
}

char *copy_string(const std::string &s)
{
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(bool ok, const char *message)
{
    if (!ok)
        throw mawi::config_error(message);
}

} // namespace

struct mawi_experiment
{
    mawi::Experiment impl;
    std::string kind; // stable storage for mawi_experiment_kind
};

struct mawi_pathset
{
    mawi::PathSet impl;
};

extern "C"
{

const char *mawi_version(void)
{
    return mawi::toolkit_version;
}

const char *mawi_last_error(void)
{
    return g_last_error.c_str();
}

void mawi_string_free(char *text)
{
    std::free(text);
}

mawi_status mawi_experiment_default_config(const char *kind, char **json_out)
{
    return guarded(
        [&]
        {
            require(kind != nullptr && json_out != nullptr,
                    "mawi_experiment_default_config: kind and json_out must not be NULL");
            *json_out = copy_string(mawi::Experiment::default_config(kind).dump(2) + "\n");
        });
}

mawi_status mawi_experiment_create(const char *kind, mawi_experiment **out)
{
    return guarded(
        [&]
        {
            require(kind != nullptr && out != nullptr,
                    "mawi_experiment_create: kind and out must not be NULL");
            auto e = mawi::Experiment::from_json(mawi::Experiment::default_config(kind));
            *out = new mawi_experiment{std::move(e), kind};
        });
}

mawi_status mawi_experiment_load(const char *path, mawi_experiment **out)
{
    return guarded(
        [&]
        {
            require(path != nullptr && out != nullptr,
                    "mawi_experiment_load: path and out must not be NULL");
            auto e = mawi::Experiment::from_file(path);
            std::string kind = e.kind();
            *out = new mawi_experiment{std::move(e), std::move(kind)};
        });
}

mawi_status mawi_experiment_from_json(const char *json_text, mawi_experiment **out)
{
    return guarded(
        [&]
        {
            require(json_text != nullptr && out != nullptr,
                    "mawi_experiment_from_json: json_text and out must not be NULL");
            nlohmann::json parsed;
            try
            {
                parsed = nlohmann::json::parse(json_text);
            }
            catch (const nlohmann::json::exception &e)
            {
                throw mawi::config_error(std::string("malformed experiment JSON: ") + e.what());
            }
            auto e = mawi::Experiment::from_json(parsed);
            std::string kind = e.kind();
            *out = new mawi_experiment{std::move(e), std::move(kind)};
        });
}

mawi_status mawi_experiment_set_seed(mawi_experiment *experiment, uint64_t seed)
{
    return guarded(
        [&]
        {
            require(experiment != nullptr, "mawi_experiment_set_seed: experiment is NULL");
            experiment->impl.override_seed(seed);
        });
}

mawi_status mawi_experiment_set_reps(mawi_experiment *experiment, size_t reps)
{
    return guarded(
        [&]
        {
            require(experiment != nullptr, "mawi_experiment_set_reps: experiment is NULL");
            experiment->impl.override_reps(reps);
        });
}

mawi_status mawi_experiment_set_out(mawi_experiment *experiment, const char *path)
{
    return guarded(
        [&]
        {
            require(experiment != nullptr && path != nullptr,
                    "mawi_experiment_set_out: experiment and path must not be NULL");
            experiment->impl.override_out(path);
        });
}

mawi_status mawi_experiment_set_threads(mawi_experiment *experiment, size_t threads)
{
    return guarded(
        [&]
        {
            require(experiment != nullptr, "mawi_experiment_set_threads: experiment is NULL");
            experiment->impl.set_threads(threads);
        });
}

mawi_status mawi_experiment_set_quiet(mawi_experiment *experiment, int quiet)
{
    return guarded(
        [&]
        {
            require(experiment != nullptr, "mawi_experiment_set_quiet: experiment is NULL");
            experiment->impl.set_quiet(quiet != 0);
        });
}

const char *mawi_experiment_kind(const mawi_experiment *experiment)
{
    return experiment ? experiment->kind.c_str() : nullptr;
}

mawi_status mawi_experiment_config(const mawi_experiment *experiment, char **json_out)
{
    return guarded(
        [&]
        {
            require(experiment != nullptr && json_out != nullptr,
                    "mawi_experiment_config: experiment and json_out must not be NULL");
            *json_out = copy_string(experiment->impl.effective_config().dump(2) + "\n");
        });
}

mawi_status mawi_experiment_run(const mawi_experiment *experiment, char **metadata_json_out)
{
    return guarded(
        [&]
        {
            require(experiment != nullptr, "mawi_experiment_run: experiment is NULL");
            const nlohmann::json meta = experiment->impl.run();
            if (metadata_json_out != nullptr)
                *metadata_json_out = copy_string(meta.dump(2) + "\n");
        });
}

void mawi_experiment_free(mawi_experiment *experiment)
{
    delete experiment;
}

mawi_status mawi_pathset_random(size_t l_tx, size_t l_rx, int prm_style, double gain_variance,
                                double wavelength, uint64_t seed, mawi_pathset **out)
{
    return guarded(
        [&]
        {
            require(out != nullptr, "mawi_pathset_random: out must not be NULL");
            mawi::RandomPathSetSpec spec;
            spec.l_tx = l_tx;
            spec.l_rx = l_rx;
            switch (prm_style)
            {
            case MAWI_PRM_FULL:
                spec.prm_style = mawi::PrmStyle::Full;
                break;
            case MAWI_PRM_DIAGONAL:
                spec.prm_style = mawi::PrmStyle::Diagonal;
                break;
            case MAWI_PRM_LOS:
                spec.prm_style = mawi::PrmStyle::Los;
                break;
            default:
                throw mawi::config_error("mawi_pathset_random: unknown prm_style code");
            }
            spec.gain_variance = gain_variance;
            spec.wavelength = wavelength;
            *out = new mawi_pathset{mawi::random_pathset(spec, seed)};
        });
}

mawi_status mawi_pathset_load(const char *path, mawi_pathset **out)
{
    return guarded(
        [&]
        {
            require(path != nullptr && out != nullptr,
                    "mawi_pathset_load: path and out must not be NULL");
            *out = new mawi_pathset{mawi::pathset_from_json(mawi::load_json(path))};
        });
}

mawi_status mawi_pathset_save(const mawi_pathset *pathset, const char *path)
{
    return guarded(
        [&]
        {
            require(pathset != nullptr && path != nullptr,
                    "mawi_pathset_save: pathset and path must not be NULL");
            mawi::save_json(mawi::to_json(pathset->impl), path);
        });
}

mawi_status mawi_pathset_response(const mawi_pathset *pathset, const double tx_xyz[3],
                                  const double rx_xyz[3], double *re, double *im)
{
    return guarded(
        [&]
        {
            require(pathset != nullptr && tx_xyz != nullptr && rx_xyz != nullptr &&
                        re != nullptr && im != nullptr,
                    "mawi_pathset_response: all arguments must be non-NULL");
            const mawi::cxd h =
                mawi::channel_response(pathset->impl, {tx_xyz[0], tx_xyz[1], tx_xyz[2]},
                                       {rx_xyz[0], rx_xyz[1], rx_xyz[2]});
            *re = h.real();
            *im = h.imag();
        });
}

void mawi_pathset_free(mawi_pathset *pathset)
{
    delete pathset;
}

mawi_status mawi_crb_single_target(const double *positions_xyz, size_t n_elements,
                                   double wavelength, double elevation_rad, double azimuth_rad,
                                   double snr, size_t snapshots, int axis, double *crb_spatial,
                                   double *crb_angle)
{
    return guarded(
        [&]
        {
            require(positions_xyz != nullptr || n_elements == 0,
                    "mawi_crb_single_target: positions_xyz is NULL");
            mawi::Axis ax;
            switch (axis)
            {
            case MAWI_AXIS_X:
                ax = mawi::Axis::X;
                break;
            case MAWI_AXIS_Y:
                ax = mawi::Axis::Y;
                break;
            case MAWI_AXIS_Z:
                ax = mawi::Axis::Z;
                break;
            default:
                throw mawi::config_error("mawi_crb_single_target: unknown axis code");
            }
            std::vector<mawi::Position3D> positions;
            positions.reserve(n_elements);
            for (size_t i = 0; i < n_elements; ++i)
                positions.push_back({positions_xyz[3 * i], positions_xyz[3 * i + 1],
                                     positions_xyz[3 * i + 2]});
            const mawi::ArrayGeometry geometry(std::move(positions), wavelength);
            const mawi::CrbReport report = mawi::single_target_crb(
                geometry, mawi::PathAngles(elevation_rad, azimuth_rad), snr, snapshots, ax);
            if (crb_spatial != nullptr)
                *crb_spatial = report.crb_spatial(0);
            if (crb_angle != nullptr)
                *crb_angle = report.crb_angle(0);
        });
}

} // extern "C"
