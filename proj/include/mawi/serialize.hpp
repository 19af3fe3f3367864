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

#include <complex>
#include <string>

#include <json.hpp>

#include "mawi/chanest.hpp"
#include "mawi/field_channel.hpp"
#include "mawi/geometry.hpp"
#include "mawi/sensing.hpp"

namespace mawi
{

// Complex values travel as "re,im" strings with shortest round-trip decimals,
// so that a load(save(x)) cycle reproduces x bit for bit.
std::string format_complex(std::complex<double> value);
std::complex<double> parse_complex(const std::string &text);

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);

nlohmann::json to_json(const Position3D &p);
nlohmann::json to_json(const PathAngles &a);
nlohmann::json to_json(const MovingRegion &region);
nlohmann::json to_json(const PathSet &pathset);
nlohmann::json to_json(const ArrayGeometry &geometry);
nlohmann::json to_json(const MeasurementCampaign &campaign);
nlohmann::json to_json(const SparseEstimate &estimate);
nlohmann::json to_json(const StrcsEstimate &estimate);

Position3D position_from_json(const nlohmann::json &j);
PathAngles angles_from_json(const nlohmann::json &j);
MovingRegion region_from_json(const nlohmann::json &j);
PathSet pathset_from_json(const nlohmann::json &j);
ArrayGeometry geometry_from_json(const nlohmann::json &j);
MeasurementCampaign campaign_from_json(const nlohmann::json &j);
SparseEstimate estimate_from_json(const nlohmann::json &j);

// File helpers: a missing/unwritable file raises io_error, malformed content
// raises config_error naming the path.
void save_json(const nlohmann::json &j, const std::string &path);
nlohmann::json load_json(const std::string &path);

} // namespace mawi
