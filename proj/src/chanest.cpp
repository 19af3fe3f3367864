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

#include "mawi/chanest.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mawi/rng.hpp"

namespace mawi
{

AngularDictionary::AngularDictionary(std::size_t grid_count)
{
    if (grid_count < 2)
        throw config_error("angular dictionary needs at least 2 grid values per axis");
    values_.resize(grid_count);
    for (std::size_t g = 0; g < grid_count; ++g)
        values_[g] = -1.0 + (2.0 * double(g + 1) - 1.0) / double(grid_count);
}

AngularDictionary build_dictionary(std::size_t grid_count)
{
    return AngularDictionary(grid_count);
}

arma::cx_vec discrete_frv(const AngularDictionary &dict, const Position3D &p, Side side,
                          double wavelength)
{
    (void)side; // Tx and Rx share the same grid; the side only documents the call site
    if (!(wavelength > 0.0))
        throw config_error("wavelength must be positive");
    if (!is_finite(p))
        throw domain_error("position must be finite");
    if (p.z != 0.0)
        throw domain_error("discrete FRVs are defined over 2D regions; z must be 0");
    const std::size_t g_count = dict.grid_count();
    const double scale = 2.0 * pi / wavelength;
    arma::cx_vec xph(g_count), yph(g_count);
    for (std::size_t g = 0; g < g_count; ++g)
    {
        xph[g] = std::polar(1.0, scale * p.x * dict.values()[g]);
        yph[g] = std::polar(1.0, scale * p.y * dict.values()[g]);
    }
    arma::cx_vec v(g_count * g_count);
    for (std::size_t gy = 0; gy < g_count; ++gy)
        for (std::size_t gx = 0; gx < g_count; ++gx)
            v[gy * g_count + gx] = yph[gy] * xph[gx];
    return v;
}

void MeasurementCampaign::validate() const
{
    if (tx_positions.size() != rx_positions.size() || tx_positions.size() != pilots.n_elem)
        throw dimension_error("campaign positions and pilots must have equal length");
    if (pilots.n_elem == 0)
        throw config_error("campaign must contain at least one measurement");
    if (!(power > 0.0))
        throw config_error("transmit power must be positive");
    if (!(noise_var >= 0.0))
        throw config_error("noise variance must be non-negative");
    if (!(wavelength > 0.0))
        throw config_error("campaign wavelength must be positive");
}

arma::cx_mat measurement_matrix(const AngularDictionary &dict, const MeasurementCampaign &campaign,
                                std::size_t column_cap)
{
    campaign.validate();
    if (dict.joint_length() > column_cap)
        throw config_error("joint dictionary with G^4 = " + std::to_string(dict.joint_length()) +
                           " columns exceeds the cap of " + std::to_string(column_cap) +
                           "; reduce G or raise the cap");
    const std::size_t m_count = campaign.size();
    const std::size_t g2 = dict.frv_length();
    arma::cx_mat psi(m_count, dict.joint_length());
    for (std::size_t m = 0; m < m_count; ++m)
    {
        const arma::cx_vec gt = discrete_frv(dict, campaign.tx_positions[m], Side::Tx,
                                             campaign.wavelength);
        const arma::cx_vec fr = discrete_frv(dict, campaign.rx_positions[m], Side::Rx,
                                             campaign.wavelength);
        for (std::size_t j = 0; j < g2; ++j)
        {
            const cxd s = gt[j];
            for (std::size_t i = 0; i < g2; ++i)
                psi(m, j * g2 + i) = s * std::conj(fr[i]);
        }
    }
    return psi;
}

MeasurementCampaign simulate_pilots(const PathSet &ps, std::vector<Position3D> tx_positions,
                                    std::vector<Position3D> rx_positions, double power,
                                    double noise_var, std::uint64_t seed)
{
    MeasurementCampaign c;
    c.tx_positions = std::move(tx_positions);
    c.rx_positions = std::move(rx_positions);
    c.power = power;
    c.noise_var = noise_var;
    c.wavelength = ps.wavelength();
    c.pilots.set_size(c.tx_positions.size());
    if (c.tx_positions.size() != c.rx_positions.size() || c.tx_positions.empty())
        throw dimension_error("pilot simulation needs equally many Tx and Rx positions (>= 1)");
    if (!(power > 0.0))
        throw config_error("transmit power must be positive");
    if (!(noise_var >= 0.0))
        throw config_error("noise variance must be non-negative");
    RngEngine rng = make_engine(seed);
    const double amp = std::sqrt(power);
    for (std::size_t m = 0; m < c.tx_positions.size(); ++m)
    {
        cxd y = amp * channel_response(ps, c.tx_positions[m], c.rx_positions[m]);
        if (noise_var > 0.0)
            y += draw_cscg(rng, noise_var);
        c.pilots[m] = y;
    }
    return c;
}

SparseEstimate omp_recover(const arma::cx_mat &psi, const arma::cx_vec &y, double power,
                           double epsilon0, std::size_t max_support)
{
    if (psi.n_rows != y.n_elem)
        throw dimension_error("measurement matrix has " + std::to_string(psi.n_rows) +
                              " rows but the pilot vector has " + std::to_string(y.n_elem));
    if (!(power > 0.0))
        throw config_error("transmit power must be positive");
    if (!(epsilon0 >= 0.0) || epsilon0 >= 1.0)
        throw config_error("epsilon0 must lie in [0, 1)");
    if (max_support > psi.n_rows)
        throw config_error("max_support cannot exceed the measurement count");

    SparseEstimate est;
    const double y_norm = arma::norm(y);
    const double target = epsilon0 * y_norm;
    const double amp = std::sqrt(power);

    arma::cx_vec residual = y;
    double res_norm = y_norm;
    std::vector<std::size_t> support;
    arma::cx_vec gains;

    while (res_norm > target && support.size() < max_support)
    {
        // Correlations Psi^H r, evaluated as a row-vector product to avoid
        // materializing the conjugate transpose of a large matrix.
        const arma::cx_rowvec corr = residual.t() * psi;
        std::size_t best = 0;
        double best_abs = -1.0;
        for (std::size_t c = 0; c < corr.n_elem; ++c)
        {
            const double a = std::abs(corr[c]);
            if (a > best_abs) // strict: ties keep the lowest column index
            {
                best_abs = a;
                best = c;
            }
        }
        // Residual numerically orthogonal to every atom: nothing left to explain.
        if (best_abs <= 1e-12 * res_norm * std::sqrt(double(psi.n_rows)))
            break;
        if (std::find(support.begin(), support.end(), best) != support.end())
            break; // re-selection would loop; the LS fit already absorbed this atom
        support.push_back(best);

        arma::uvec cols(support.size());
        for (std::size_t s = 0; s < support.size(); ++s)
            cols[s] = arma::uword(support[s]);
        const arma::cx_mat sub = amp * psi.cols(cols);
        if (!arma::solve(gains, sub, y))
            throw numerical_error("least-squares refit failed in sparse recovery");
        residual = y - sub * gains;
        const double next = arma::norm(residual);
        if (next > res_norm * (1.0 + 1e-9) + 1e-12)
            throw numerical_error("sparse-recovery residual increased; ill-conditioned support");
        res_norm = next;
        est.residual_history.push_back(res_norm);
    }

    est.status = (res_norm > target && support.size() >= max_support)
                     ? RecoveryStatus::SupportBudget
                     : RecoveryStatus::Converged;
    est.residual_norm = res_norm;

    // Canonical ascending support with aligned gains.
    std::vector<std::size_t> order(support.size());
    for (std::size_t s = 0; s < order.size(); ++s)
        order[s] = s;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
    est.support.resize(support.size());
    est.gains.set_size(support.size());
    for (std::size_t s = 0; s < order.size(); ++s)
    {
        est.support[s] = support[order[s]];
        est.gains[s] = gains.n_elem ? gains[order[s]] : cxd(0.0, 0.0);
    }
    return est;
}

DecodedAngles decode_joint_index(const AngularDictionary &dict, std::size_t idx)
{
    const std::size_t g2 = dict.frv_length();
    if (idx >= dict.joint_length())
        throw domain_error("joint dictionary index out of range");
    const VirtualAngles tx = decode_side_index(dict, idx / g2);
    const VirtualAngles rx = decode_side_index(dict, idx % g2);
    return {tx.elevation_cos, tx.azimuth_cos, rx.elevation_cos, rx.azimuth_cos};
}

VirtualAngles decode_side_index(const AngularDictionary &dict, std::size_t idx)
{
    const std::size_t g_count = dict.grid_count();
    if (idx >= dict.frv_length())
        throw domain_error("side dictionary index out of range");
    // Inner (x-paired) grid value is the elevation direction cosine cos(el)cos(az);
    // outer (y-paired) value is cos(el)sin(az). See discrete_frv's Kronecker layout.
    return {dict.values()[idx % g_count], dict.values()[idx / g_count]};
}

double default_epsilon0(const MeasurementCampaign &campaign)
{
    campaign.validate();
    if (campaign.noise_var == 0.0)
        return 1e-3;
    const double energy = std::pow(arma::norm(campaign.pilots), 2);
    if (energy <= 0.0)
        return 0.999;
    const double fraction = double(campaign.size()) * campaign.noise_var / energy;
    return std::clamp(2.0 * std::sqrt(fraction), 1e-3, 0.999);
}

static void fill_joint_angles(SparseEstimate &est, const AngularDictionary &dict)
{
    est.grid_count = dict.grid_count();
    est.angles.clear();
    est.angles.reserve(est.support.size());
    for (std::size_t idx : est.support)
        est.angles.push_back(decode_joint_index(dict, idx));
}

SparseEstimate joint_cs_estimate(const AngularDictionary &dict, const MeasurementCampaign &campaign,
                                 double epsilon0, std::size_t max_support, std::size_t column_cap)
{
    campaign.validate();
    if (epsilon0 < 0.0)
        epsilon0 = default_epsilon0(campaign);
    if (max_support == 0)
        max_support = std::min<std::size_t>(campaign.size(), 32);
    const arma::cx_mat psi = measurement_matrix(dict, campaign, column_cap);
    SparseEstimate est = omp_recover(psi, campaign.pilots, campaign.power, epsilon0, max_support);
    est.wavelength = campaign.wavelength;
    fill_joint_angles(est, dict);
    return est;
}

// Side dictionary for one STRCS stage: per measurement the discrete FRV of the
// moving end (conjugated on the Rx side so the model stays y = sqrt(P) A b).
static arma::cx_mat side_matrix(const AngularDictionary &dict, const MeasurementCampaign &c,
                                Side side)
{
    const std::size_t g2 = dict.frv_length();
    arma::cx_mat a(c.size(), g2);
    for (std::size_t m = 0; m < c.size(); ++m)
    {
        const Position3D &p = (side == Side::Tx) ? c.tx_positions[m] : c.rx_positions[m];
        arma::cx_vec v = discrete_frv(dict, p, side, c.wavelength);
        if (side == Side::Tx)
            a.row(m) = v.st();
        else
            a.row(m) = arma::conj(v).st();
    }
    return a;
}

static void require_fixed(const std::vector<Position3D> &positions, const char *what)
{
    for (const auto &p : positions)
        if (distance(p, positions.front()) > 1e-12)
            throw config_error(std::string("STRCS ") + what +
                               " campaign must keep the non-moving antenna fixed");
}

StrcsEstimate strcs_estimate(const AngularDictionary &dict, const MeasurementCampaign &tx_campaign,
                             const MeasurementCampaign &rx_campaign,
                             const MeasurementCampaign &joint_campaign, double epsilon0,
                             std::size_t max_support)
{
    tx_campaign.validate();
    rx_campaign.validate();
    joint_campaign.validate();
    if (tx_campaign.power != rx_campaign.power || tx_campaign.power != joint_campaign.power)
        throw config_error("STRCS campaigns must share the transmit power");
    if (tx_campaign.wavelength != rx_campaign.wavelength ||
        tx_campaign.wavelength != joint_campaign.wavelength)
        throw config_error("STRCS campaigns must share the wavelength");
    require_fixed(tx_campaign.rx_positions, "Tx-side");
    require_fixed(rx_campaign.tx_positions, "Rx-side");

    // Stage 1: Tx moves, Rx fixed -> AoD atoms over G^2 columns.
    const double eps_tx = epsilon0 >= 0.0 ? epsilon0 : default_epsilon0(tx_campaign);
    const std::size_t cap_tx =
        max_support ? std::min(max_support, tx_campaign.size()) : std::min<std::size_t>(tx_campaign.size(), 16);
    SparseEstimate aod = omp_recover(side_matrix(dict, tx_campaign, Side::Tx), tx_campaign.pilots,
                                     tx_campaign.power, eps_tx, cap_tx);

    // Stage 2: Rx moves, Tx fixed -> AoA atoms.
    const double eps_rx = epsilon0 >= 0.0 ? epsilon0 : default_epsilon0(rx_campaign);
    const std::size_t cap_rx =
        max_support ? std::min(max_support, rx_campaign.size()) : std::min<std::size_t>(rx_campaign.size(), 16);
    SparseEstimate aoa = omp_recover(side_matrix(dict, rx_campaign, Side::Rx), rx_campaign.pilots,
                                     rx_campaign.power, eps_rx, cap_rx);

    StrcsEstimate out;
    out.tx_support = aod.support;
    out.rx_support = aoa.support;

    // Stage 3: least-squares gains over the support product, fed by all campaigns.
    const std::size_t n_t = out.tx_support.size();
    const std::size_t n_r = out.rx_support.size();
    const double wavelength = joint_campaign.wavelength;
    const double amp = std::sqrt(joint_campaign.power);
    SparseEstimate &combined = out.combined;
    combined.grid_count = dict.grid_count();
    combined.wavelength = wavelength;
    combined.status = (aod.status == RecoveryStatus::Converged &&
                       aoa.status == RecoveryStatus::Converged)
                          ? RecoveryStatus::Converged
                          : RecoveryStatus::SupportBudget;
    if (n_t == 0 || n_r == 0)
        return out; // nothing recovered; combined estimate stays empty

    const std::size_t rows = tx_campaign.size() + rx_campaign.size() + joint_campaign.size();
    arma::cx_mat a(rows, n_t * n_r);
    arma::cx_vec y(rows);
    std::size_t row = 0;
    auto add_campaign = [&](const MeasurementCampaign &c) {
        for (std::size_t m = 0; m < c.size(); ++m, ++row)
        {
            const arma::cx_vec gt = discrete_frv(dict, c.tx_positions[m], Side::Tx, wavelength);
            const arma::cx_vec fr = discrete_frv(dict, c.rx_positions[m], Side::Rx, wavelength);
            for (std::size_t at = 0; at < n_t; ++at)
                for (std::size_t ar = 0; ar < n_r; ++ar)
                    a(row, at * n_r + ar) =
                        amp * gt[out.tx_support[at]] * std::conj(fr[out.rx_support[ar]]);
            y[row] = c.pilots[m];
        }
    };
    add_campaign(tx_campaign);
    add_campaign(rx_campaign);
    add_campaign(joint_campaign);

    if (arma::rank(a) < a.n_cols)
        throw feasibility_error(
            "STRCS gain system is rank-deficient for the recovered support (" +
            std::to_string(n_t) + " AoD x " + std::to_string(n_r) +
            " AoA atoms); add joint measurements where both antennas move");
    arma::cx_vec gains;
    if (!arma::solve(gains, a, y))
        throw numerical_error("STRCS gain least-squares solve failed");
    out.gain_residual = arma::norm(y - a * gains);

    const std::size_t g2 = dict.frv_length();
    combined.support.reserve(n_t * n_r);
    combined.gains.set_size(n_t * n_r);
    std::size_t s = 0;
    for (std::size_t at = 0; at < n_t; ++at) // ascending joint indices: tx-major
        for (std::size_t ar = 0; ar < n_r; ++ar, ++s)
        {
            combined.support.push_back(out.tx_support[at] * g2 + out.rx_support[ar]);
            combined.gains[s] = gains[at * n_r + ar];
        }
    combined.residual_norm = out.gain_residual;
    fill_joint_angles(combined, dict);
    return out;
}

cxd reconstruct_channel(const SparseEstimate &est, const AngularDictionary &dict,
                        const Position3D &t, const Position3D &r, double wavelength)
{
    if (est.grid_count != 0 && est.grid_count != dict.grid_count())
        throw dimension_error("estimate was produced with a different dictionary size");
    if (est.support.size() != est.gains.n_elem)
        throw dimension_error("estimate support and gains differ in length");
    if (!(wavelength > 0.0))
        throw config_error("wavelength must be positive");
    const std::size_t g_count = dict.grid_count();
    const std::size_t g2 = dict.frv_length();
    const double scale = 2.0 * pi / wavelength;
    cxd h(0.0, 0.0);
    for (std::size_t s = 0; s < est.support.size(); ++s)
    {
        const std::size_t idx = est.support[s];
        if (idx >= dict.joint_length())
            throw domain_error("estimate support index out of dictionary range");
        const std::size_t j = idx / g2; // Tx atom
        const std::size_t i = idx % g2; // Rx atom
        const double tx_phase =
            scale * (t.y * dict.values()[j / g_count] + t.x * dict.values()[j % g_count]);
        const double rx_phase =
            scale * (r.y * dict.values()[i / g_count] + r.x * dict.values()[i % g_count]);
        h += est.gains[s] * std::polar(1.0, tx_phase - rx_phase);
    }
    return h;
}

double nmse(const ChannelField &true_field, const SparseEstimate &est,
            const AngularDictionary &dict,
            const std::vector<std::pair<Position3D, Position3D>> &eval_positions)
{
    if (eval_positions.empty())
        throw config_error("NMSE needs at least one evaluation position pair");
    double num = 0.0, den = 0.0;
    const double wavelength = true_field.pathset.wavelength();
    for (const auto &[t, r] : eval_positions)
    {
        const cxd h_true = channel_response(true_field.pathset, t, r);
        const cxd h_est = reconstruct_channel(est, dict, t, r, wavelength);
        num += std::norm(h_true - h_est);
        den += std::norm(h_true);
    }
    if (den <= 0.0)
        throw numerical_error("NMSE undefined: the true field is zero on the evaluation set");
    return num / den;
}

} // namespace mawi
