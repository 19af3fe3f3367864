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

#include "mawi/placement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "mawi/errors.hpp"

namespace mawi
{

namespace
{

constexpr double feas_tol = 1e-9;

struct AxisSet
{
    std::array<bool, 3> active{};
    std::size_t count = 0;
};

AxisSet active_axes(const MovingRegion &region)
{
    AxisSet ax;
    const Position3D e = region.extent();
    const std::array<double, 3> v{e.x, e.y, e.z};
    for (std::size_t d = 0; d < 3; ++d)
        if (v[d] > 0.0)
        {
            ax.active[d] = true;
            ++ax.count;
        }
    return ax;
}

double coord(const Position3D &p, std::size_t d)
{
    return d == 0 ? p.x : (d == 1 ? p.y : p.z);
}

void set_coord(Position3D &p, std::size_t d, double v)
{
    (d == 0 ? p.x : (d == 1 ? p.y : p.z)) = v;
}

bool spacing_feasible(const std::vector<Position3D> &pos, const MovingRegion &region)
{
    for (const auto &p : pos)
        if (!region.contains(p, feas_tol))
            return false;
    const double s = region.min_spacing();
    if (s > 0.0)
        for (std::size_t i = 0; i + 1 < pos.size(); ++i)
            for (std::size_t j = i + 1; j < pos.size(); ++j)
                if (distance(pos[i], pos[j]) < s - feas_tol)
                    return false;
    return true;
}

// Deterministic packing at the minimum spacing, starting at the lower corner.
// Always succeeds when the region passes the packing-capacity check.
std::vector<Position3D> lattice_fill(const MovingRegion &region, std::size_t n)
{
    const Position3D lo = region.lower();
    const Position3D ext = region.extent();
    const double s = region.min_spacing();
    std::vector<Position3D> out;
    out.reserve(n);
    if (s <= 0.0)
    {
        out.assign(n, lo);
        return out;
    }
    const auto slots = [&](double e) -> std::size_t
    { return static_cast<std::size_t>(std::floor(e / s * (1.0 + 1e-9))) + 1; };
    const std::size_t nx = slots(ext.x), ny = slots(ext.y), nz = slots(ext.z);
    for (std::size_t iz = 0; iz < nz && out.size() < n; ++iz)
        for (std::size_t iy = 0; iy < ny && out.size() < n; ++iy)
            for (std::size_t ix = 0; ix < nx && out.size() < n; ++ix)
                out.push_back(clamp_to_region(
                    Position3D{lo.x + static_cast<double>(ix) * s, lo.y + static_cast<double>(iy) * s,
                               lo.z + static_cast<double>(iz) * s},
                    region));
    if (out.size() < n)
        throw feasibility_error("lattice_fill: region cannot hold the requested antenna count");
    return out;
}

// Clamp into the region, then push violating pairs apart until the spacing
// constraint holds; falls back to a fresh lattice packing if the sweeps stall.
std::vector<Position3D> repair_spacing(std::vector<Position3D> pos, const MovingRegion &region)
{
    for (auto &p : pos)
        p = clamp_to_region(p, region);
    const double s = region.min_spacing();
    if (s <= 0.0 || pos.size() < 2)
        return pos;
    const Position3D ext = region.extent();
    std::size_t push_axis = ext.y > ext.x ? 1 : 0;
    if (ext.z > std::max(ext.x, ext.y))
        push_axis = 2;
    for (int sweep = 0; sweep < 60; ++sweep)
    {
        bool ok = true;
        for (std::size_t i = 0; i + 1 < pos.size(); ++i)
            for (std::size_t j = i + 1; j < pos.size(); ++j)
            {
                const double d = distance(pos[i], pos[j]);
                if (d >= s * (1.0 - 1e-12))
                    continue;
                ok = false;
                Position3D dir{0.0, 0.0, 0.0};
                if (d > 1e-15)
                    dir = (1.0 / d) * (pos[j] - pos[i]);
                else
                    set_coord(dir, push_axis, 1.0);
                const double push = 0.51 * (s - d) * 1.02;
                pos[i] = clamp_to_region(pos[i] - push * dir, region);
                pos[j] = clamp_to_region(pos[j] + push * dir, region);
            }
        if (ok)
            return pos;
    }
    return lattice_fill(region, pos.size());
}

void require_placement_shape(const PlacementProblem &problem,
                             const std::vector<Position3D> &positions)
{
    if (positions.size() != problem.n_antennas())
        throw dimension_error("placement: expected " + std::to_string(problem.n_antennas()) +
                              " antenna positions, got " + std::to_string(positions.size()));
    for (const auto &p : positions)
        if (!is_finite(p))
            throw domain_error("placement: antenna positions must be finite");
}

// Precomputed per-problem machinery shared by the evaluators and optimizers.
// Each transmit path j contributes c_j * exp(i * k0 * k_j . t) to the channel
// seen from one receive point, where c_j folds the receive response and the
// path-response matrix.
class Evaluator
{
  public:
    explicit Evaluator(const PlacementProblem &problem)
        : problem_(problem), k0_(2.0 * std::numbers::pi / problem.wavelength())
    {
        std::visit([this](const auto &obj) { init(obj); }, problem.objective());
    }

    // Channel matrix with one column per antenna position (rows are receive
    // points for the matrix objective, users for the sum-rate objective, and a
    // single row for the link-gain objective).
    arma::cx_mat channel(const std::vector<Position3D> &pos) const
    {
        arma::cx_mat h(rows_.size(), pos.size());
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (std::size_t m = 0; m < pos.size(); ++m)
                h(r, m) = row_response(rows_[r], pos[m]);
        return h;
    }

    // Objective value; throws on degenerate linear algebra.
    double value(const std::vector<Position3D> &pos) const
    {
        const arma::cx_mat h = channel(pos);
        if (const auto *obj = std::get_if<MultiuserWsrObjective>(&problem_.objective()))
        {
            // Incremental construction can hold fewer antennas than users; score
            // those prefixes by an interference-free rate so greedy stages stay
            // comparable.
            if (pos.size() < rows_.size())
            {
                const double k = static_cast<double>(rows_.size());
                double v = 0.0;
                for (std::size_t u = 0; u < rows_.size(); ++u)
                {
                    const double p2 = std::pow(arma::norm(h.row(u).st()), 2);
                    v += obj->weights[u] * std::log2(1.0 + obj->snr * p2 / k);
                }
                return v;
            }
            return wsr_from_channel(h, obj->weights, obj->snr);
        }
        if (const auto *obj = std::get_if<MimoCapacityObjective>(&problem_.objective()))
            return capacity_from_channel(h, obj->snr);
        return std::pow(arma::norm(arma::vectorise(h)), 2);
    }

    // As value(), but maps degenerate configurations to the worst score so that
    // search loops can move past them.
    double value_robust(const std::vector<Position3D> &pos) const
    {
        try
        {
            return value(pos);
        }
        catch (const numerical_error &)
        {
            return 0.0;
        }
    }

    std::vector<Position3D> gradient(const std::vector<Position3D> &pos) const
    {
        if (const auto *obj = std::get_if<MultiuserWsrObjective>(&problem_.objective()))
            return wsr_gradient(*obj, pos);
        if (const auto *obj = std::get_if<MimoCapacityObjective>(&problem_.objective()))
            return mimo_gradient(*obj, pos);
        return gain_gradient(pos);
    }

  private:
    // One output row: composite per-path coefficients plus transmit wave vectors.
    struct Row
    {
        arma::cx_vec coeff;  // length L_t
        arma::mat k;         // 3 x L_t, unit wave vectors
    };

    void init(const SingleLinkGainObjective &obj)
    {
        require_wavelength(obj.pathset.wavelength());
        if (!is_finite(obj.peer))
            throw domain_error("placement: peer position must be finite");
        rows_.push_back(make_row(obj.pathset, rx_frv(obj.pathset, obj.peer)));
    }

    void init(const MimoCapacityObjective &obj)
    {
        require_wavelength(obj.pathset.wavelength());
        if (obj.rx_positions.empty())
            throw dimension_error("placement: matrix objective needs at least one receive point");
        if (!(obj.snr > 0.0) || !std::isfinite(obj.snr))
            throw domain_error("placement: snr must be positive and finite");
        for (const auto &r : obj.rx_positions)
        {
            if (!is_finite(r))
                throw domain_error("placement: receive positions must be finite");
            rows_.push_back(make_row(obj.pathset, rx_frv(obj.pathset, r)));
        }
    }

    void init(const MultiuserWsrObjective &obj)
    {
        if (obj.user_pathsets.empty())
            throw dimension_error("placement: sum-rate objective needs at least one user");
        if (obj.weights.size() != obj.user_pathsets.size())
            throw dimension_error("placement: one weight per user required");
        if (!(obj.snr > 0.0) || !std::isfinite(obj.snr))
            throw domain_error("placement: snr must be positive and finite");
        double wsum = 0.0;
        for (double w : obj.weights)
        {
            if (!(w >= 0.0) || !std::isfinite(w))
                throw domain_error("placement: user weights must be non-negative and finite");
            wsum += w;
        }
        if (!(wsum > 0.0))
            throw domain_error("placement: at least one user weight must be positive");
        if (problem_.n_antennas() < obj.user_pathsets.size())
            throw config_error("placement: zero-forcing needs at least as many antennas as users");
        for (const auto &ps : obj.user_pathsets)
        {
            require_wavelength(ps.wavelength());
            // Each user's fixed antenna sits at its local origin, so the receive
            // response is all-ones and the row coefficients are column sums of
            // the path-response matrix.
            rows_.push_back(make_row(ps, arma::cx_vec(ps.n_rx_paths(), arma::fill::ones)));
        }
    }

    void require_wavelength(double wl) const
    {
        if (std::abs(wl - problem_.wavelength()) > 1e-12 * problem_.wavelength())
            throw config_error("placement: objective pathset wavelength must match the problem");
    }

    Row make_row(const PathSet &ps, const arma::cx_vec &rx_response) const
    {
        Row row;
        row.coeff = (rx_response.t() * ps.prm()).st();
        row.k.set_size(3, ps.n_tx_paths());
        for (std::size_t j = 0; j < ps.n_tx_paths(); ++j)
        {
            const WaveVector &w = ps.tx_wave_vectors()[j];
            row.k(0, j) = w.x;
            row.k(1, j) = w.y;
            row.k(2, j) = w.z;
        }
        return row;
    }

    std::complex<double> row_response(const Row &row, const Position3D &t) const
    {
        std::complex<double> acc{0.0, 0.0};
        for (arma::uword j = 0; j < row.coeff.n_elem; ++j)
        {
            const double phase = k0_ * (row.k(0, j) * t.x + row.k(1, j) * t.y + row.k(2, j) * t.z);
            acc += row.coeff(j) * std::polar(1.0, phase);
        }
        return acc;
    }

    // d/dt_d of row_response: each path picks up a factor i * k0 * k_{j,d}.
    std::complex<double> row_response_deriv(const Row &row, const Position3D &t,
                                            std::size_t d) const
    {
        std::complex<double> acc{0.0, 0.0};
        for (arma::uword j = 0; j < row.coeff.n_elem; ++j)
        {
            const double phase = k0_ * (row.k(0, j) * t.x + row.k(1, j) * t.y + row.k(2, j) * t.z);
            acc += row.coeff(j) * std::complex<double>(0.0, k0_ * row.k(d, j)) *
                   std::polar(1.0, phase);
        }
        return acc;
    }

    std::vector<Position3D> gain_gradient(const std::vector<Position3D> &pos) const
    {
        std::vector<Position3D> g(pos.size(), Position3D{0.0, 0.0, 0.0});
        const Row &row = rows_.front();
        for (std::size_t m = 0; m < pos.size(); ++m)
        {
            const std::complex<double> h = row_response(row, pos[m]);
            for (std::size_t d = 0; d < 3; ++d)
            {
                const std::complex<double> dh = row_response_deriv(row, pos[m], d);
                set_coord(g[m], d, 2.0 * std::real(std::conj(h) * dh));
            }
        }
        return g;
    }

    // Envelope theorem: hold the water-filling allocation fixed and
    // differentiate the eigenvalues of h^H h through the singular triplets.
    std::vector<Position3D> mimo_gradient(const MimoCapacityObjective &obj,
                                          const std::vector<Position3D> &pos) const
    {
        const arma::cx_mat h = channel(pos);
        arma::cx_mat u, v;
        arma::vec s;
        if (!arma::svd(u, s, v, h))
            throw numerical_error("placement: channel decomposition failed");
        const arma::vec gains = arma::square(s);
        const arma::vec p = waterfill(gains, arma::vec(gains.n_elem, arma::fill::ones), obj.snr);
        arma::vec wt(gains.n_elem, arma::fill::zeros);
        for (arma::uword i = 0; i < gains.n_elem; ++i)
            if (p(i) > 0.0)
                wt(i) = p(i) / (std::numbers::ln2 * (1.0 + p(i) * gains(i)));
        std::vector<Position3D> g(pos.size(), Position3D{0.0, 0.0, 0.0});
        for (std::size_t m = 0; m < pos.size(); ++m)
            for (std::size_t d = 0; d < 3; ++d)
            {
                arma::cx_vec dcol(rows_.size());
                for (std::size_t r = 0; r < rows_.size(); ++r)
                    dcol(r) = row_response_deriv(rows_[r], pos[m], d);
                double acc = 0.0;
                for (arma::uword i = 0; i < s.n_elem; ++i)
                {
                    if (wt(i) == 0.0)
                        continue;
                    const std::complex<double> inner = arma::cdot(u.col(i), dcol);
                    acc += wt(i) * 2.0 * std::real(v(m, i) * s(i) * inner);
                }
                set_coord(g[m], d, acc);
            }
        return g;
    }

    // Envelope theorem again: power allocation fixed, differentiate the
    // zero-forcing gains g_k = 1 / [(h h^H)^{-1}]_{kk} through the inverse.
    std::vector<Position3D> wsr_gradient(const MultiuserWsrObjective &obj,
                                         const std::vector<Position3D> &pos) const
    {
        const arma::cx_mat h = channel(pos);
        const arma::cx_mat gram = h * h.t();
        arma::cx_mat gi;
        if (!arma::inv_sympd(gi, gram))
            throw numerical_error("placement: zero-forcing precoder is singular for this placement");
        const std::size_t k = rows_.size();
        arma::vec zf(k), c(k);
        for (std::size_t uu = 0; uu < k; ++uu)
        {
            c(uu) = std::real(gi(uu, uu));
            if (!(c(uu) > 0.0))
                throw numerical_error("placement: zero-forcing gain is not positive");
            zf(uu) = 1.0 / c(uu);
        }
        arma::vec w(k);
        for (std::size_t uu = 0; uu < k; ++uu)
            w(uu) = obj.weights[uu];
        const arma::vec p = waterfill(zf, w, obj.snr);
        arma::vec wt(k, arma::fill::zeros);
        for (std::size_t uu = 0; uu < k; ++uu)
            if (p(uu) > 0.0)
                wt(uu) = w(uu) * p(uu) / (std::numbers::ln2 * (1.0 + p(uu) * zf(uu)));
        const arma::cx_mat a = h.t() * gi; // columns are h^H (gram^-1 e_k)
        std::vector<Position3D> g(pos.size(), Position3D{0.0, 0.0, 0.0});
        for (std::size_t d = 0; d < 3; ++d)
        {
            arma::cx_mat pd(k, pos.size());
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t m = 0; m < pos.size(); ++m)
                    pd(r, m) = row_response_deriv(rows_[r], pos[m], d);
            const arma::cx_mat z = gi * pd;
            for (std::size_t m = 0; m < pos.size(); ++m)
            {
                double acc = 0.0;
                for (std::size_t uu = 0; uu < k; ++uu)
                {
                    if (wt(uu) == 0.0)
                        continue;
                    acc += (wt(uu) / (c(uu) * c(uu))) * 2.0 *
                           std::real(z(uu, m) * a(m, uu));
                }
                set_coord(g[m], d, acc);
            }
        }
        return g;
    }

    const PlacementProblem &problem_;
    double k0_;
    std::vector<Row> rows_;
};

// Candidate lattice over the active axes, x varying fastest.
std::vector<Position3D> candidate_lattice(const MovingRegion &region, double step)
{
    if (!(step > 0.0) || !std::isfinite(step))
        throw domain_error("placement: candidate step must be positive and finite");
    const Position3D lo = region.lower();
    const Position3D ext = region.extent();
    const auto slots = [&](double e) -> std::size_t
    { return e > 0.0 ? static_cast<std::size_t>(std::floor(e / step * (1.0 + 1e-9))) + 1 : 1; };
    const std::size_t nx = slots(ext.x), ny = slots(ext.y), nz = slots(ext.z);
    std::vector<Position3D> out;
    out.reserve(nx * ny * nz);
    for (std::size_t iz = 0; iz < nz; ++iz)
        for (std::size_t iy = 0; iy < ny; ++iy)
            for (std::size_t ix = 0; ix < nx; ++ix)
                out.push_back(clamp_to_region(
                    Position3D{lo.x + static_cast<double>(ix) * step,
                               lo.y + static_cast<double>(iy) * step,
                               lo.z + static_cast<double>(iz) * step},
                    region));
    return out;
}

double combination_count(std::size_t q, std::size_t n)
{
    double c = 1.0;
    for (std::size_t i = 1; i <= n; ++i)
    {
        c *= static_cast<double>(q - n + i) / static_cast<double>(i);
        if (c > 1e18)
            return c;
    }
    return c;
}

std::vector<Position3D> random_feasible(const MovingRegion &region, std::size_t n, RngEngine &rng)
{
    std::vector<Position3D> pos;
    pos.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        pos.push_back(random_position(region, rng));
    return repair_spacing(std::move(pos), region);
}

// Centered rectangular grid at half-wavelength pitch (compressed towards the
// minimum spacing when the region is tight). Used as the conventional baseline
// and as the deterministic first start of the local optimizers.
std::vector<Position3D> fpa_layout_free(const MovingRegion &region, std::size_t n,
                                        double wavelength_hint)
{
    if (n == 0)
        throw domain_error("fpa_layout: need at least one antenna");
    region.require_packing_feasible(n);
    const Position3D ext = region.extent();
    const Position3D ctr = region.center();
    const double ms = region.min_spacing();
    const double ideal = std::max(default_min_spacing(wavelength_hint), ms);

    std::array<double, 2> pitches{ideal, ms};
    for (double s : pitches)
    {
        if (!(s > 0.0))
            continue;
        std::array<std::size_t, 3> slots{};
        for (std::size_t d = 0; d < 3; ++d)
        {
            const double e = coord(ext, d);
            slots[d] = e > 0.0 ? static_cast<std::size_t>(std::floor(e / s * (1.0 + 1e-9))) + 1
                               : 1;
        }
        // Grid over the two roomiest axes, in x,y,z priority order on ties.
        std::size_t a0 = 0, a1 = 1;
        for (std::size_t d = 1; d < 3; ++d)
            if (slots[d] > slots[a0])
                a0 = d;
        a1 = a0 == 0 ? 1 : 0;
        for (std::size_t d = 0; d < 3; ++d)
            if (d != a0 && slots[d] > slots[a1])
                a1 = d;
        if (static_cast<double>(slots[a0]) * static_cast<double>(slots[a1]) <
            static_cast<double>(n))
            continue;
        std::size_t cols = std::min<std::size_t>(
            static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)))), slots[a0]);
        std::size_t rows = (n + cols - 1) / cols;
        if (rows > slots[a1])
        {
            rows = slots[a1];
            cols = (n + rows - 1) / rows;
            if (cols > slots[a0])
                continue;
        }
        const double span0 = static_cast<double>(cols - 1) * s;
        const double span1 = static_cast<double>(rows - 1) * s;
        std::vector<Position3D> out;
        out.reserve(n);
        for (std::size_t r = 0; r < rows && out.size() < n; ++r)
            for (std::size_t c = 0; c < cols && out.size() < n; ++c)
            {
                Position3D p = ctr;
                set_coord(p, a0, coord(ctr, a0) - 0.5 * span0 + static_cast<double>(c) * s);
                set_coord(p, a1, coord(ctr, a1) - 0.5 * span1 + static_cast<double>(r) * s);
                out.push_back(clamp_to_region(p, region));
            }
        return out;
    }
    return lattice_fill(region, n);
}

} // namespace

PlacementProblem::PlacementProblem(PlacementObjective objective, MovingRegion region,
                                   std::size_t n_antennas, double wavelength)
    : objective_(std::move(objective)), region_(std::move(region)), n_antennas_(n_antennas),
      wavelength_(wavelength)
{
    if (n_antennas_ == 0)
        throw domain_error("placement: need at least one antenna");
    if (!(wavelength_ > 0.0) || !std::isfinite(wavelength_))
        throw domain_error("placement: wavelength must be positive and finite");
    region_.require_packing_feasible(n_antennas_);
    Evaluator probe(*this); // runs the objective-specific validation
    (void)probe;
}

double objective_value(const PlacementProblem &problem, const std::vector<Position3D> &positions)
{
    require_placement_shape(problem, positions);
    if (!spacing_feasible(positions, problem.region()))
        throw feasibility_error(
            "placement: positions violate the region bounds or the minimum spacing");
    return Evaluator(problem).value(positions);
}

std::vector<Position3D> objective_gradient(const PlacementProblem &problem,
                                           const std::vector<Position3D> &positions)
{
    require_placement_shape(problem, positions);
    return Evaluator(problem).gradient(positions);
}

arma::vec waterfill(const arma::vec &gains, const arma::vec &weights, double total_power)
{
    if (gains.n_elem == 0)
        throw dimension_error("waterfill: empty gain vector");
    if (weights.n_elem != gains.n_elem)
        throw dimension_error("waterfill: gains and weights must have equal length");
    if (!(total_power > 0.0) || !std::isfinite(total_power))
        throw domain_error("waterfill: total power must be positive and finite");
    if (!gains.is_finite() || !weights.is_finite() || gains.min() < 0.0 || weights.min() < 0.0)
        throw domain_error("waterfill: gains and weights must be non-negative and finite");

    std::vector<arma::uword> order;
    for (arma::uword i = 0; i < gains.n_elem; ++i)
        if (gains(i) > 0.0 && weights(i) > 0.0)
            order.push_back(i);
    arma::vec p(gains.n_elem, arma::fill::zeros);
    if (order.empty())
        return p;
    std::sort(order.begin(), order.end(),
              [&](arma::uword a, arma::uword b)
              {
                  const double wa = weights(a) * gains(a), wb = weights(b) * gains(b);
                  return wa != wb ? wa > wb : a < b;
              });

    // Grow the active set in decreasing w*g order; the water level
    // nu = sum(w) / (P + sum(1/g)) is valid while every member keeps p > 0.
    double sumw = 0.0, suminv = 0.0, nu = 0.0;
    for (arma::uword i : order)
    {
        const double cand_sumw = sumw + weights(i);
        const double cand_suminv = suminv + 1.0 / gains(i);
        const double cand = cand_sumw / (total_power + cand_suminv);
        if (cand > weights(i) * gains(i))
            break;
        sumw = cand_sumw;
        suminv = cand_suminv;
        nu = cand;
    }
    for (arma::uword i : order)
        p(i) = std::max(0.0, weights(i) / nu - 1.0 / gains(i));
    return p;
}

double capacity_from_channel(const arma::cx_mat &h, double snr)
{
    if (h.n_elem == 0)
        throw dimension_error("capacity_from_channel: empty channel matrix");
    if (!(snr > 0.0) || !std::isfinite(snr) || !h.is_finite())
        throw domain_error("capacity_from_channel: snr and channel entries must be finite, snr > 0");
    const arma::vec s = arma::svd(h);
    const arma::vec gains = arma::square(s);
    const arma::vec p = waterfill(gains, arma::vec(gains.n_elem, arma::fill::ones), snr);
    double c = 0.0;
    for (arma::uword i = 0; i < gains.n_elem; ++i)
        c += std::log2(1.0 + p(i) * gains(i));
    return c;
}

double wsr_from_channel(const arma::cx_mat &h, const std::vector<double> &weights, double snr)
{
    if (h.n_rows == 0)
        throw dimension_error("wsr_from_channel: empty channel matrix");
    if (h.n_cols < h.n_rows)
        throw dimension_error("wsr_from_channel: zero-forcing needs cols >= rows");
    if (weights.size() != h.n_rows)
        throw dimension_error("wsr_from_channel: one weight per user required");
    if (!(snr > 0.0) || !std::isfinite(snr) || !h.is_finite())
        throw domain_error("wsr_from_channel: snr and channel entries must be finite, snr > 0");
    arma::cx_mat gi;
    if (!arma::inv_sympd(gi, arma::cx_mat(h * h.t())))
        throw numerical_error("wsr_from_channel: zero-forcing precoder is singular");
    arma::vec zf(h.n_rows), w(h.n_rows);
    for (arma::uword k = 0; k < h.n_rows; ++k)
    {
        const double c = std::real(gi(k, k));
        if (!(c > 0.0) || !std::isfinite(c))
            throw numerical_error("wsr_from_channel: zero-forcing gain is not positive");
        zf(k) = 1.0 / c;
        w(k) = weights[k];
        if (!(w(k) >= 0.0) || !std::isfinite(w(k)))
            throw domain_error("wsr_from_channel: weights must be non-negative and finite");
    }
    const arma::vec p = waterfill(zf, w, snr);
    double rate = 0.0;
    for (arma::uword k = 0; k < h.n_rows; ++k)
        rate += w(k) * std::log2(1.0 + p(k) * zf(k));
    return rate;
}

// ------------------------------------------------------------------ optimizers

PlacementResult grad_ascent_placement(const PlacementProblem &problem,
                                      const GradAscentConfig &config)
{
    if (config.starts == 0 || config.max_iters == 0)
        throw config_error("grad_ascent: starts and max_iters must be positive");
    if (!(config.tol > 0.0) || !(config.initial_step_wl > 0.0))
        throw config_error("grad_ascent: tol and initial_step_wl must be positive");

    const Evaluator ev(problem);
    const MovingRegion &region = problem.region();
    const AxisSet ax = active_axes(region);
    RngEngine rng = make_engine(config.seed);
    const double lam = problem.wavelength();
    const double alpha0 = config.initial_step_wl * lam;

    PlacementResult result;
    result.objective_value = -std::numeric_limits<double>::infinity();
    bool best_converged = false;

    for (std::size_t start = 0; start < config.starts; ++start)
    {
        std::vector<Position3D> x =
            start == 0 ? repair_spacing(fpa_layout(region, problem.n_antennas(), lam), region)
                       : random_feasible(region, problem.n_antennas(), rng);
        double fx = ev.value_robust(x);
        ++result.evaluations;
        bool converged = false;

        for (std::size_t iter = 0; iter < config.max_iters; ++iter)
        {
            std::vector<Position3D> g = ev.gradient(x);
            // Project: freeze inactive axes, and components pushing through a face.
            double gn2 = 0.0;
            for (std::size_t m = 0; m < g.size(); ++m)
                for (std::size_t d = 0; d < 3; ++d)
                {
                    double gv = ax.active[d] ? coord(g[m], d) : 0.0;
                    if (gv != 0.0)
                    {
                        const double lo = coord(region.lower(), d), hi = coord(region.upper(), d);
                        const double xv = coord(x[m], d);
                        if ((xv <= lo + 1e-12 && gv < 0.0) || (xv >= hi - 1e-12 && gv > 0.0))
                            gv = 0.0;
                    }
                    set_coord(g[m], d, gv);
                    gn2 += gv * gv;
                }
            const double gn = std::sqrt(gn2);
            if (gn * lam <= config.tol * std::abs(fx))
            {
                converged = true;
                break;
            }
            bool accepted = false;
            for (double alpha = alpha0; alpha >= 1e-7 * lam; alpha *= 0.5)
            {
                std::vector<Position3D> cand(x.size());
                for (std::size_t m = 0; m < x.size(); ++m)
                    cand[m] = x[m] + (alpha / gn) * g[m];
                cand = repair_spacing(std::move(cand), region);
                const double fc = ev.value_robust(cand);
                ++result.evaluations;
                if (fc >= fx + 1e-4 * alpha * gn)
                {
                    x = std::move(cand);
                    fx = fc;
                    accepted = true;
                    break;
                }
            }
            if (fx > result.objective_value)
            {
                result.objective_value = fx;
                result.positions = x;
            }
            result.trace.push_back(result.objective_value);
            if (!accepted)
                break;
        }
        if (fx > result.objective_value)
        {
            result.objective_value = fx;
            result.positions = x;
        }
        if (result.objective_value == fx)
            best_converged = converged;
        result.trace.push_back(result.objective_value);
    }
    result.converged = best_converged;
    return result;
}

PlacementResult pso_placement(const PlacementProblem &problem, const PsoConfig &config)
{
    if (config.swarm < 2 || config.iters == 0)
        throw config_error("pso: swarm must be >= 2 and iters positive");
    if (!(config.inertia >= 0.0) || !(config.cognitive >= 0.0) || !(config.social >= 0.0))
        throw config_error("pso: inertia and acceleration weights must be non-negative");

    const Evaluator ev(problem);
    const MovingRegion &region = problem.region();
    const AxisSet ax = active_axes(region);
    const std::size_t n = problem.n_antennas();
    const double s = region.min_spacing();
    RngEngine rng = make_engine(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<std::size_t> dims;
    for (std::size_t d = 0; d < 3; ++d)
        if (ax.active[d])
            dims.push_back(d);
    const std::size_t dim = n * std::max<std::size_t>(dims.size(), 1);

    const auto decode = [&](const arma::vec &xv)
    {
        std::vector<Position3D> pos(n, region.center());
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t j = 0; j < dims.size(); ++j)
                set_coord(pos[m], dims[j], xv(m * dims.size() + j));
        return pos;
    };
    const auto violation = [&](const std::vector<Position3D> &pos)
    {
        if (s <= 0.0)
            return 0.0;
        double v = 0.0;
        for (std::size_t i = 0; i + 1 < pos.size(); ++i)
            for (std::size_t j = i + 1; j < pos.size(); ++j)
            {
                const double hinge = std::max(0.0, (s - distance(pos[i], pos[j])) / s);
                v += hinge * hinge;
            }
        return v;
    };

    arma::vec lo(dim), hi(dim), vmax(dim);
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t j = 0; j < dims.size(); ++j)
        {
            const std::size_t idx = m * dims.size() + j;
            lo(idx) = coord(region.lower(), dims[j]);
            hi(idx) = coord(region.upper(), dims[j]);
            vmax(idx) = 0.5 * (hi(idx) - lo(idx));
        }

    PlacementResult result;
    std::vector<arma::vec> x(config.swarm), v(config.swarm), pbest_x(config.swarm);
    std::vector<double> raw(config.swarm), pbest_f(config.swarm);
    for (std::size_t p = 0; p < config.swarm; ++p)
    {
        x[p].set_size(dim);
        v[p].set_size(dim);
        for (std::size_t i = 0; i < dim; ++i)
            x[p](i) = lo(i) + unit(rng) * (hi(i) - lo(i));
        for (std::size_t i = 0; i < dim; ++i)
            v[p](i) = (2.0 * unit(rng) - 1.0) * vmax(i);
    }

    // Informed initialization: the conventional fixed layout and the solutions
    // of the deterministic placement methods join the swarm, so the returned
    // answer never falls below any of them. The update dynamics stay plain
    // global-best PSO.
    const auto encode = [&](const std::vector<Position3D> &pos)
    {
        arma::vec xv(dim, arma::fill::zeros);
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t j = 0; j < dims.size(); ++j)
                xv(m * dims.size() + j) = coord(pos[m], dims[j]);
        return xv;
    };
    std::size_t next_seeded = 0;
    const auto inject = [&](const std::vector<Position3D> &pos)
    {
        if (next_seeded < config.swarm && pos.size() == n)
            x[next_seeded++] = encode(pos);
    };
    try
    {
        inject(repair_spacing(fpa_layout(region, n, problem.wavelength()), region));
    }
    catch (const std::exception &)
    {
    }
    try
    {
        const PlacementResult r = grad_ascent_placement(problem, GradAscentConfig{});
        result.evaluations += r.evaluations;
        inject(r.positions);
    }
    catch (const std::exception &)
    {
    }
    try
    {
        DiscreteConfig dc;
        dc.mode = DiscreteMode::Greedy;
        const PlacementResult r = discrete_placement(problem, dc);
        result.evaluations += r.evaluations;
        inject(r.positions);
    }
    catch (const std::exception &)
    {
    }
    try
    {
        const PlacementResult r = cs_placement(problem, CsPlacementConfig{});
        result.evaluations += r.evaluations;
        inject(r.positions);
    }
    catch (const std::exception &)
    {
    }

    double best_feasible = -std::numeric_limits<double>::infinity();
    std::vector<Position3D> best_feasible_pos;
    double scale_ref = 0.0;
    std::vector<std::vector<Position3D>> decoded(config.swarm);
    for (std::size_t p = 0; p < config.swarm; ++p)
    {
        decoded[p] = decode(x[p]);
        raw[p] = ev.value_robust(decoded[p]);
        ++result.evaluations;
        scale_ref = std::max(scale_ref, std::abs(raw[p]));
    }
    // Penalty strength follows the objective scale so the search is invariant
    // to a uniform gain scaling.
    const double rho = scale_ref > 0.0 ? 100.0 * scale_ref : 1.0;

    std::size_t gbest = 0;
    for (std::size_t p = 0; p < config.swarm; ++p)
    {
        const double fit = raw[p] - rho * violation(decoded[p]);
        pbest_x[p] = x[p];
        pbest_f[p] = fit;
        if (fit > pbest_f[gbest])
            gbest = p;
        if (spacing_feasible(decoded[p], region) && raw[p] > best_feasible)
        {
            best_feasible = raw[p];
            best_feasible_pos = decoded[p];
        }
    }
    arma::vec gbest_x = pbest_x[gbest];
    double gbest_f = pbest_f[gbest];

    for (std::size_t iter = 0; iter < config.iters; ++iter)
    {
        for (std::size_t p = 0; p < config.swarm; ++p)
        {
            for (std::size_t i = 0; i < dim; ++i)
            {
                const double r1 = unit(rng), r2 = unit(rng);
                double vel = config.inertia * v[p](i) +
                             config.cognitive * r1 * (pbest_x[p](i) - x[p](i)) +
                             config.social * r2 * (gbest_x(i) - x[p](i));
                vel = std::clamp(vel, -vmax(i), vmax(i));
                v[p](i) = vel;
                x[p](i) = std::clamp(x[p](i) + vel, lo(i), hi(i));
            }
            const std::vector<Position3D> pos = decode(x[p]);
            const double f = ev.value_robust(pos);
            ++result.evaluations;
            const double fit = f - rho * violation(pos);
            if (fit > pbest_f[p])
            {
                pbest_f[p] = fit;
                pbest_x[p] = x[p];
            }
            if (fit > gbest_f)
            {
                gbest_f = fit;
                gbest_x = x[p];
            }
            if (f > best_feasible && spacing_feasible(pos, region))
            {
                best_feasible = f;
                best_feasible_pos = pos;
            }
        }
        result.trace.push_back(gbest_f);
    }

    std::vector<Position3D> final_pos = repair_spacing(decode(gbest_x), region);
    double final_val = ev.value_robust(final_pos);
    ++result.evaluations;
    if (best_feasible > final_val)
    {
        final_val = best_feasible;
        final_pos = best_feasible_pos;
    }
    result.positions = std::move(final_pos);
    result.objective_value = final_val;
    result.converged = true;
    return result;
}

PlacementResult discrete_placement(const PlacementProblem &problem, const DiscreteConfig &config)
{
    const double step =
        config.grid_step > 0.0 ? config.grid_step : problem.wavelength() / 4.0;
    const std::vector<Position3D> cand = candidate_lattice(problem.region(), step);
    const std::size_t n = problem.n_antennas();
    if (cand.size() < n)
        throw feasibility_error("discrete_placement: fewer lattice candidates than antennas; "
                                "use a finer grid_step");
    const Evaluator ev(problem);
    const double s = problem.region().min_spacing();
    const auto ok_vs = [&](const Position3D &p, const std::vector<Position3D> &chosen)
    {
        for (const auto &q : chosen)
            if (distance(p, q) < s - feas_tol)
                return false;
        return true;
    };

    PlacementResult result;
    result.objective_value = -std::numeric_limits<double>::infinity();

    if (config.mode == DiscreteMode::Exhaustive)
    {
        if (combination_count(cand.size(), n) > static_cast<double>(config.combination_cap))
            throw config_error("discrete_placement: combination count exceeds the cap; "
                               "use DiscreteMode::Greedy or a coarser grid");
        std::vector<Position3D> chosen;
        chosen.reserve(n);
        const std::function<void(std::size_t)> recurse = [&](std::size_t first)
        {
            if (chosen.size() == n)
            {
                const double f = ev.value_robust(chosen);
                ++result.evaluations;
                if (f > result.objective_value)
                {
                    result.objective_value = f;
                    result.positions = chosen;
                    result.trace.push_back(f);
                }
                return;
            }
            for (std::size_t i = first; i < cand.size(); ++i)
            {
                if (!ok_vs(cand[i], chosen))
                    continue;
                chosen.push_back(cand[i]);
                recurse(i + 1);
                chosen.pop_back();
            }
        };
        recurse(0);
        if (result.positions.empty())
            throw feasibility_error("discrete_placement: no spacing-feasible candidate "
                                    "combination; use a finer grid_step");
    }
    else
    {
        std::vector<Position3D> chosen;
        chosen.reserve(n);
        for (std::size_t a = 0; a < n; ++a)
        {
            double best = -std::numeric_limits<double>::infinity();
            std::size_t best_i = cand.size();
            for (std::size_t i = 0; i < cand.size(); ++i)
            {
                if (!ok_vs(cand[i], chosen))
                    continue;
                chosen.push_back(cand[i]);
                const double f = ev.value_robust(chosen);
                ++result.evaluations;
                chosen.pop_back();
                if (f > best)
                {
                    best = f;
                    best_i = i;
                }
            }
            if (best_i == cand.size())
                throw feasibility_error("discrete_placement: greedy ran out of spacing-feasible "
                                        "candidates; use a finer grid_step");
            chosen.push_back(cand[best_i]);
            result.trace.push_back(best);
        }
        result.positions = std::move(chosen);
        result.objective_value = ev.value_robust(result.positions);
        ++result.evaluations;
    }
    // The conventional fixed layout is always in the candidate set: the search
    // never returns an arrangement worse than the default array.
    const std::vector<Position3D> fixed = repair_spacing(
        fpa_layout(problem.region(), n, problem.wavelength()), problem.region());
    const double fixed_val = ev.value_robust(fixed);
    ++result.evaluations;
    if (fixed_val > result.objective_value)
    {
        result.objective_value = fixed_val;
        result.positions = fixed;
        result.trace.push_back(fixed_val);
    }
    result.converged = true;
    return result;
}

PlacementResult cs_placement(const PlacementProblem &problem, const CsPlacementConfig &config)
{
    if (std::holds_alternative<MimoCapacityObjective>(problem.objective()))
        throw config_error("cs_placement: supported objectives are single-link gain and "
                           "multiuser sum-rate");
    const double step =
        config.candidate_step > 0.0 ? config.candidate_step : problem.wavelength() / 4.0;
    const std::vector<Position3D> cand = candidate_lattice(problem.region(), step);
    const std::size_t n = problem.n_antennas();
    const double s = problem.region().min_spacing();
    const Evaluator ev(problem);

    // Dictionary columns are the candidate responses; the target is the weight
    // profile (single-link reduces to picking the strongest responses).
    arma::cx_mat dict(0, 0);
    arma::cx_vec target;
    {
        std::vector<Position3D> all(cand.begin(), cand.end());
        dict = ev.channel(all);
    }
    if (const auto *obj = std::get_if<MultiuserWsrObjective>(&problem.objective()))
    {
        target.set_size(obj->weights.size());
        for (std::size_t k = 0; k < obj->weights.size(); ++k)
            target(k) = std::sqrt(obj->weights[k]);
    }

    std::vector<bool> excluded(cand.size(), false);
    std::vector<std::size_t> support;
    support.reserve(n);
    arma::cx_vec residual = target;
    for (std::size_t pick = 0; pick < n; ++pick)
    {
        double best = -1.0;
        std::size_t best_i = cand.size();
        for (std::size_t i = 0; i < cand.size(); ++i)
        {
            if (excluded[i])
                continue;
            double score;
            if (target.n_elem == 0)
                score = arma::norm(dict.col(i));
            else
            {
                const double cn = arma::norm(dict.col(i));
                if (cn < 1e-300)
                    continue;
                score = std::abs(arma::cdot(dict.col(i), residual)) / cn;
            }
            if (score > best)
            {
                best = score;
                best_i = i;
            }
        }
        if (best_i == cand.size())
            throw feasibility_error("cs_placement: spacing exclusion exhausted the candidate "
                                    "lattice; use a finer candidate_step");
        support.push_back(best_i);
        if (s > 0.0)
            for (std::size_t i = 0; i < cand.size(); ++i)
                if (!excluded[i] && distance(cand[i], cand[best_i]) < s - feas_tol)
                    excluded[i] = true;
        if (target.n_elem > 0)
        {
            arma::cx_mat sub(dict.n_rows, support.size());
            for (std::size_t j = 0; j < support.size(); ++j)
                sub.col(j) = dict.col(support[j]);
            arma::cx_vec coef;
            if (arma::solve(coef, sub, target))
                residual = target - sub * coef;
        }
    }

    PlacementResult result;
    result.positions.reserve(n);
    for (std::size_t i : support)
        result.positions.push_back(cand[i]);
    result.objective_value = ev.value_robust(result.positions);
    result.evaluations = 1;
    result.trace = {result.objective_value};
    // As in the discrete search, the conventional fixed layout is a candidate.
    const std::vector<Position3D> fixed = repair_spacing(
        fpa_layout(problem.region(), n, problem.wavelength()), problem.region());
    const double fixed_val = ev.value_robust(fixed);
    ++result.evaluations;
    if (fixed_val > result.objective_value)
    {
        result.objective_value = fixed_val;
        result.positions = fixed;
        result.trace.push_back(fixed_val);
    }
    result.converged = true;
    return result;
}

std::vector<Position3D>
zo_gradient_estimate(const std::function<double(const std::vector<Position3D> &)> &f,
                     const std::vector<Position3D> &x, double smoothing, std::size_t directions,
                     RngEngine &rng)
{
    if (!f)
        throw config_error("zo_gradient_estimate: missing oracle function");
    if (!(smoothing > 0.0) || directions == 0)
        throw config_error("zo_gradient_estimate: smoothing must be positive, directions >= 1");
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double f0 = f(x);
    std::vector<Position3D> grad(x.size(), Position3D{0.0, 0.0, 0.0});
    for (std::size_t b = 0; b < directions; ++b)
    {
        std::vector<Position3D> u(x.size());
        double norm2 = 0.0;
        for (auto &p : u)
        {
            p = Position3D{gauss(rng), gauss(rng), gauss(rng)};
            norm2 += dot(p, p);
        }
        const double norm = std::sqrt(norm2);
        if (norm < 1e-300)
            continue;
        std::vector<Position3D> probe(x.size());
        for (std::size_t m = 0; m < x.size(); ++m)
            probe[m] = x[m] + (smoothing / norm) * u[m];
        const double fb = f(probe);
        const double slope = (fb - f0) / (smoothing * static_cast<double>(directions));
        for (std::size_t m = 0; m < x.size(); ++m)
            grad[m] = grad[m] + (slope / norm) * u[m];
    }
    return grad;
}

PlacementResult zo_placement(const MeasurementOracle &oracle, const MovingRegion &region,
                             std::size_t n_antennas, const ZoConfig &config)
{
    if (!oracle.sample)
        throw config_error("zo_placement: measurement oracle has no sample function");
    if (n_antennas == 0)
        throw domain_error("zo_placement: need at least one antenna");
    region.require_packing_feasible(n_antennas);
    if (config.directions == 0)
        throw config_error("zo_placement: directions must be >= 1");
    const std::size_t per_iter = config.directions + 1;
    if (oracle.budget < per_iter)
        throw config_error("zo_placement: oracle budget cannot cover one iteration");

    const double diag = region.diagonal();
    const double mu = config.smoothing > 0.0 ? config.smoothing : std::max(0.02 * diag, 1e-12);
    const double eta = config.step > 0.0 ? config.step : std::max(0.05 * diag, 1e-12);
    const AxisSet ax = active_axes(region);
    RngEngine rng = make_engine(config.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const std::size_t planned =
        config.iters > 0 ? config.iters : oracle.budget / per_iter;
    const std::size_t restarts =
        config.restarts > 0
            ? config.restarts
            : std::clamp<std::size_t>(oracle.budget / (per_iter * 25), 1, 8);
    const std::size_t per_restart = std::max<std::size_t>(1, planned / restarts);

    PlacementResult result;
    result.objective_value = -std::numeric_limits<double>::infinity();
    std::size_t used = 0, iters_done = 0;
    const auto call = [&](const std::vector<Position3D> &pos)
    {
        const double v = oracle.sample(pos);
        ++used;
        ++result.evaluations;
        if (v > result.objective_value)
        {
            result.objective_value = v;
            result.positions = pos;
        }
        return v;
    };

    double lam_hint = region.min_spacing() > 0.0 ? 2.0 * region.min_spacing() : diag;
    for (std::size_t r = 0; r < restarts && iters_done < planned; ++r)
    {
        std::vector<Position3D> x =
            r == 0 ? repair_spacing(fpa_layout_free(region, n_antennas, lam_hint), region)
                   : random_feasible(region, n_antennas, rng);
        std::vector<double> m(3 * n_antennas, 0.0), v2(3 * n_antennas, 0.0),
            vhat(3 * n_antennas, 0.0);
        for (std::size_t it = 0; it < per_restart && iters_done < planned; ++it)
        {
            if (oracle.budget - used < per_iter)
            {
                result.budget_exhausted = true;
                break;
            }
            const double f0 = call(x);
            std::vector<double> ghat(3 * n_antennas, 0.0);
            for (std::size_t b = 0; b < config.directions; ++b)
            {
                std::vector<double> u(3 * n_antennas, 0.0);
                double norm2 = 0.0;
                for (std::size_t mm = 0; mm < n_antennas; ++mm)
                    for (std::size_t d = 0; d < 3; ++d)
                        if (ax.active[d])
                        {
                            const double g = gauss(rng);
                            u[3 * mm + d] = g;
                            norm2 += g * g;
                        }
                const double norm = std::sqrt(norm2);
                if (norm < 1e-300)
                    continue;
                std::vector<Position3D> probe(x);
                for (std::size_t mm = 0; mm < n_antennas; ++mm)
                    for (std::size_t d = 0; d < 3; ++d)
                        set_coord(probe[mm], d, coord(x[mm], d) + mu * u[3 * mm + d] / norm);
                probe = repair_spacing(std::move(probe), region);
                const double fb = call(probe);
                const double slope = (fb - f0) / (mu * static_cast<double>(config.directions));
                for (std::size_t i = 0; i < u.size(); ++i)
                    ghat[i] += slope * u[i] / norm;
            }
            for (std::size_t i = 0; i < ghat.size(); ++i)
            {
                m[i] = config.beta1 * m[i] + (1.0 - config.beta1) * ghat[i];
                v2[i] = config.beta2 * v2[i] + (1.0 - config.beta2) * ghat[i] * ghat[i];
                vhat[i] = std::max(vhat[i], v2[i]);
            }
            for (std::size_t mm = 0; mm < n_antennas; ++mm)
                for (std::size_t d = 0; d < 3; ++d)
                {
                    const std::size_t i = 3 * mm + d;
                    set_coord(x[mm], d,
                              coord(x[mm], d) + eta * m[i] / (std::sqrt(vhat[i]) + 1e-12));
                }
            x = repair_spacing(std::move(x), region);
            ++iters_done;
            result.trace.push_back(result.objective_value);
        }
        if (result.budget_exhausted)
            break;
    }
    if (iters_done < planned && !result.budget_exhausted)
        result.budget_exhausted = config.iters > 0 && oracle.budget - used < per_iter;
    result.converged = !result.budget_exhausted;
    return result;
}

std::vector<Position3D> fpa_layout(const MovingRegion &region, std::size_t n_antennas,
                                   double wavelength)
{
    if (!(wavelength > 0.0) || !std::isfinite(wavelength))
        throw domain_error("fpa_layout: wavelength must be positive and finite");
    return fpa_layout_free(region, n_antennas, wavelength);
}

PlacementResult fpa_baseline(const PlacementProblem &problem)
{
    PlacementResult result;
    result.positions = repair_spacing(
        fpa_layout(problem.region(), problem.n_antennas(), problem.wavelength()),
        problem.region());
    result.objective_value = Evaluator(problem).value_robust(result.positions);
    result.evaluations = 1;
    result.trace = {result.objective_value};
    result.converged = true;
    return result;
}

} // namespace mawi
