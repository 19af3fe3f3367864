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

#include "mawi/serialize.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "mawi/errors.hpp"

namespace mawi
{

namespace
{

using nlohmann::json;

double parse_double(const std::string &text)
{
    double v = 0.0;
    const char *first = text.data();
    const char *last = text.data() + text.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw config_error("serialize: cannot parse number '" + text + "'");
    return v;
}

// Rethrows nlohmann access/type errors as configuration errors.
template <typename Fn> auto guarded(const char *what, Fn &&fn)
{
    try
    {
        return fn();
    }
    catch (const json::exception &e)
    {
        throw config_error(std::string("serialize: malformed ") + what + ": " + e.what());
    }
}

json complex_array(const arma::cx_vec &v)
{
    json out = json::array();
    for (arma::uword i = 0; i < v.n_elem; ++i)
        out.push_back(format_complex(v(i)));
    return out;
}

arma::cx_vec complex_vector(const json &j)
{
    arma::cx_vec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v(i) = parse_complex(j.at(i).get<std::string>());
    return v;
}

} // namespace

std::string format_double(double value)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string format_complex(std::complex<double> value)
{
    return format_double(value.real()) + "," + format_double(value.imag());
}

std::complex<double> parse_complex(const std::string &text)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw config_error("serialize: complex value must be 're,im', got '" + text + "'");
    return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

json to_json(const Position3D &p)
{
    return json::array({p.x, p.y, p.z});
}

json to_json(const PathAngles &a)
{
    return json{{"elevation", a.elevation}, {"azimuth", a.azimuth}};
}

json to_json(const MovingRegion &region)
{
    return json{{"lower", to_json(region.lower())},
                {"upper", to_json(region.upper())},
                {"min_spacing", region.min_spacing()}};
}

json to_json(const PathSet &pathset)
{
    json tx = json::array(), rx = json::array();
    for (const auto &a : pathset.tx_paths())
        tx.push_back(to_json(a));
    for (const auto &a : pathset.rx_paths())
        rx.push_back(to_json(a));
    return json{{"wavelength", pathset.wavelength()},
                {"tx_angles", tx},
                {"rx_angles", rx},
                {"prm", complex_array(arma::vectorise(pathset.prm()))}};
}

json to_json(const ArrayGeometry &geometry)
{
    json pos = json::array();
    for (const auto &p : geometry.positions())
        pos.push_back(to_json(p));
    return json{{"wavelength", geometry.wavelength()}, {"positions", pos}};
}

json to_json(const MeasurementCampaign &campaign)
{
    json tx = json::array(), rx = json::array();
    for (const auto &p : campaign.tx_positions)
        tx.push_back(to_json(p));
    for (const auto &p : campaign.rx_positions)
        rx.push_back(to_json(p));
    return json{{"tx_positions", tx},          {"rx_positions", rx},
                {"pilots", complex_array(campaign.pilots)},
                {"power", campaign.power},     {"noise_var", campaign.noise_var},
                {"wavelength", campaign.wavelength}};
}

json to_json(const SparseEstimate &estimate)
{
    json angles = json::array();
    for (const auto &a : estimate.angles)
        angles.push_back(json{{"tx_elevation_cos", a.tx_elevation_cos},
                              {"tx_azimuth_cos", a.tx_azimuth_cos},
                              {"rx_elevation_cos", a.rx_elevation_cos},
                              {"rx_azimuth_cos", a.rx_azimuth_cos}});
    return json{{"grid_count", estimate.grid_count},
                {"wavelength", estimate.wavelength},
                {"support", estimate.support},
                {"gains", complex_array(estimate.gains)},
                {"angles", angles},
                {"status", estimate.status == RecoveryStatus::Converged ? "converged"
                                                                        : "support_budget"},
                {"residual_norm", estimate.residual_norm},
                {"residual_history", estimate.residual_history}};
}

json to_json(const StrcsEstimate &estimate)
{
    return json{{"tx_support", estimate.tx_support},
                {"rx_support", estimate.rx_support},
                {"combined", to_json(estimate.combined)},
                {"gain_residual", estimate.gain_residual}};
}

Position3D position_from_json(const json &j)
{
    return guarded("position",
                   [&]
                   {
                       if (!j.is_array() || j.size() != 3)
                           throw config_error("serialize: position must be [x, y, z]");
                       return Position3D{j.at(0).get<double>(), j.at(1).get<double>(),
                                         j.at(2).get<double>()};
                   });
}

PathAngles angles_from_json(const json &j)
{
    return guarded("angles",
                   [&] {
                       return PathAngles(j.at("elevation").get<double>(),
                                         j.at("azimuth").get<double>());
                   });
}

MovingRegion region_from_json(const json &j)
{
    return guarded("region",
                   [&]
                   {
                       return MovingRegion(position_from_json(j.at("lower")),
                                           position_from_json(j.at("upper")),
                                           j.at("min_spacing").get<double>());
                   });
}

PathSet pathset_from_json(const json &j)
{
    return guarded("pathset",
                   [&]
                   {
                       std::vector<PathAngles> tx, rx;
                       for (const auto &a : j.at("tx_angles"))
                           tx.push_back(angles_from_json(a));
                       for (const auto &a : j.at("rx_angles"))
                           rx.push_back(angles_from_json(a));
                       const arma::cx_vec flat = complex_vector(j.at("prm"));
                       if (flat.n_elem != tx.size() * rx.size())
                           throw config_error("serialize: path-response entries do not match "
                                              "the path counts");
                       arma::cx_mat prm(rx.size(), tx.size());
                       for (arma::uword i = 0; i < flat.n_elem; ++i)
                           prm(i) = flat(i);
                       return PathSet(tx, rx, prm, j.at("wavelength").get<double>());
                   });
}

ArrayGeometry geometry_from_json(const json &j)
{
    return guarded("geometry",
                   [&]
                   {
                       std::vector<Position3D> pos;
                       for (const auto &p : j.at("positions"))
                           pos.push_back(position_from_json(p));
                       return ArrayGeometry(std::move(pos), j.at("wavelength").get<double>());
                   });
}

MeasurementCampaign campaign_from_json(const json &j)
{
    return guarded("campaign",
                   [&]
                   {
                       MeasurementCampaign c;
                       for (const auto &p : j.at("tx_positions"))
                           c.tx_positions.push_back(position_from_json(p));
                       for (const auto &p : j.at("rx_positions"))
                           c.rx_positions.push_back(position_from_json(p));
                       c.pilots = complex_vector(j.at("pilots"));
                       c.power = j.at("power").get<double>();
                       c.noise_var = j.at("noise_var").get<double>();
                       c.wavelength = j.at("wavelength").get<double>();
                       c.validate();
                       return c;
                   });
}

SparseEstimate estimate_from_json(const json &j)
{
    return guarded("estimate",
                   [&]
                   {
                       SparseEstimate e;
                       e.grid_count = j.at("grid_count").get<std::size_t>();
                       e.wavelength = j.at("wavelength").get<double>();
                       e.support = j.at("support").get<std::vector<std::size_t>>();
                       e.gains = complex_vector(j.at("gains"));
                       for (const auto &a : j.at("angles"))
                       {
                           DecodedAngles da;
                           da.tx_elevation_cos = a.at("tx_elevation_cos").get<double>();
                           da.tx_azimuth_cos = a.at("tx_azimuth_cos").get<double>();
                           da.rx_elevation_cos = a.at("rx_elevation_cos").get<double>();
                           da.rx_azimuth_cos = a.at("rx_azimuth_cos").get<double>();
                           e.angles.push_back(da);
                       }
                       const std::string status = j.at("status").get<std::string>();
                       if (status == "converged")
                           e.status = RecoveryStatus::Converged;
                       else if (status == "support_budget")
                           e.status = RecoveryStatus::SupportBudget;
                       else
                           throw config_error("serialize: unknown recovery status '" + status +
                                              "'");
                       e.residual_norm = j.at("residual_norm").get<double>();
                       e.residual_history = j.at("residual_history").get<std::vector<double>>();
                       return e;
                   });
}

void save_json(const json &j, const std::string &path)
{
    std::ofstream out(path);
    if (!out)
        throw io_error("serialize: cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
    if (!out)
        throw io_error("serialize: write to '" + path + "' failed");
}

json load_json(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw io_error("serialize: cannot open '" + path + "'");
    try
    {
        return json::parse(in);
    }
    catch (const json::exception &e)
    {
        throw config_error("serialize: malformed JSON in '" + path + "': " + e.what());
    }
}

} // namespace mawi
