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
#include <functional>
#include <variant>
#include <vector>

#include <armadillo>

#include "mawi/field_channel.hpp"
#include "mawi/geometry.hpp"

namespace mawi
{

// Received power of one link whose far end sits at a fixed peer position; with
// maximum-ratio transmission across the movable antennas the objective is
// sum_m |h(t_m, peer)|^2.
struct SingleLinkGainObjective
{
    PathSet pathset;
    Position3D peer;
};

// Water-filled capacity of the matrix channel to a fixed receive geometry;
// snr is the total transmit power over unit noise.
struct MimoCapacityObjective
{
    PathSet pathset;
    std::vector<Position3D> rx_positions;
    double snr = 1.0;
};

// Weighted sum-rate of a multiuser downlink under zero-forcing precoding with
// water-filled power allocation. Each user k has its own pathset and a single
// fixed antenna at the origin of its local frame; snr is the total transmit
// power over unit noise.
struct MultiuserWsrObjective
{
    std::vector<PathSet> user_pathsets;
    std::vector<double> weights;
    double snr = 1.0;
};

using PlacementObjective =
    std::variant<SingleLinkGainObjective, MimoCapacityObjective, MultiuserWsrObjective>;

// An antenna-placement optimization instance.
class PlacementProblem
{
  public:
    PlacementProblem(PlacementObjective objective, MovingRegion region, std::size_t n_antennas,
                     double wavelength);

    const PlacementObjective &objective() const { return objective_; }
    const MovingRegion &region() const { return region_; }
    std::size_t n_antennas() const { return n_antennas_; }
    double wavelength() const { return wavelength_; }

  private:
    PlacementObjective objective_;
    MovingRegion region_;
    std::size_t n_antennas_;
    double wavelength_;
};

struct PlacementResult
{
    std::vector<Position3D> positions;
    double objective_value = 0.0;
    std::vector<double> trace;    // best-so-far values, non-decreasing
    std::size_t evaluations = 0;  // objective computations performed
    bool converged = true;
    bool budget_exhausted = false;
};

// Evaluates the problem objective at a full antenna placement.
// Throws feasibility_error when positions leave the region or violate spacing.
double objective_value(const PlacementProblem &problem, const std::vector<Position3D> &positions);

// Analytic gradient of the objective with respect to every antenna coordinate
// (the smooth extension is differentiated; feasibility is not enforced here).
std::vector<Position3D> objective_gradient(const PlacementProblem &problem,
                                           const std::vector<Position3D> &positions);

// Weighted water-filling: maximizes sum_i weights_i * log(1 + p_i * gains_i)
// subject to sum p_i = total_power, p >= 0. Exact active-set solution.
arma::vec waterfill(const arma::vec &gains, const arma::vec &weights, double total_power);

// Capacity of a matrix channel with water-filled power allocation (unit noise).
double capacity_from_channel(const arma::cx_mat &h, double snr);

// Zero-forcing weighted sum-rate of a K x N multiuser matrix (rows = users).
double wsr_from_channel(const arma::cx_mat &h, const std::vector<double> &weights, double snr);

// ------------------------------------------------------------------ optimizers

struct GradAscentConfig
{
    std::size_t starts = 16;      // multi-start count; start 0 is the FPA layout
    std::size_t max_iters = 200;  // per start
    double tol = 1e-9;            // scale-free: stop when |grad|*lambda <= tol*|f|
    double initial_step_wl = 0.25;
    std::uint64_t seed = 1;
};

// Projected gradient ascent with backtracking line search, componentwise region
// clamping and pairwise spacing repair; returns the best over all starts.
PlacementResult grad_ascent_placement(const PlacementProblem &problem,
                                      const GradAscentConfig &config = {});

struct PsoConfig
{
    std::size_t swarm = 40;
    std::size_t iters = 120;
    double inertia = 0.72;
    double cognitive = 1.49;
    double social = 1.49;
    std::uint64_t seed = 1;
};

// Standard global-best particle swarm over the concatenated coordinates with
// velocity/position clamping and a quadratic-hinge spacing penalty.
PlacementResult pso_placement(const PlacementProblem &problem, const PsoConfig &config = {});

enum class DiscreteMode
{
    Exhaustive,
    Greedy
};

struct DiscreteConfig
{
    double grid_step = 0.0; // 0 selects lambda/4
    DiscreteMode mode = DiscreteMode::Exhaustive;
    std::size_t combination_cap = 2'000'000; // exhaustive-mode guard
};

// Optimization over a candidate lattice: exhaustive search over spacing-feasible
// combinations, or greedy one-antenna-at-a-time construction.
PlacementResult discrete_placement(const PlacementProblem &problem,
                                   const DiscreteConfig &config = {});

struct CsPlacementConfig
{
    double candidate_step = 0.0; // 0 selects lambda/4
};

// Sparse-selection placement: greedily activates the candidate positions most
// correlated with the synthesis target, excluding candidates within min_spacing
// of previous picks. Supports the single-link-gain and multiuser-WSR objectives.
PlacementResult cs_placement(const PlacementProblem &problem, const CsPlacementConfig &config = {});

// Black-box performance probe: position list in, scalar sample out, with a call budget.
struct MeasurementOracle
{
    std::function<double(const std::vector<Position3D> &)> sample;
    std::size_t budget = 1;
};

struct ZoConfig
{
    double smoothing = 0.0;      // meters; 0 selects 2% of the region diagonal
    double step = 0.0;           // meters; 0 selects 5% of the region diagonal
    std::size_t directions = 4;  // oracle probes per gradient estimate
    double beta1 = 0.9;          // momentum decay
    double beta2 = 0.95;         // second-moment decay
    std::size_t iters = 0;       // total iterations; 0 fills the budget
    std::size_t restarts = 0;    // 0 selects an automatic restart count
    std::uint64_t seed = 1;
};

// Derivative-free placement from performance measurements only: random-direction
// finite-difference gradient estimates driven through an adaptive-momentum update
// with projection and spacing repair. The oracle is only ever called on feasible
// position lists and never sees channel internals.
PlacementResult zo_placement(const MeasurementOracle &oracle, const MovingRegion &region,
                             std::size_t n_antennas, const ZoConfig &config = {});

// The bare gradient estimator: mean over `directions` random unit vectors u of
// ((f(x + smoothing*u) - f(x)) / smoothing) * u.
std::vector<Position3D>
zo_gradient_estimate(const std::function<double(const std::vector<Position3D> &)> &f,
                     const std::vector<Position3D> &x, double smoothing, std::size_t directions,
                     RngEngine &rng);

// Conventional comparator: uniform half-wavelength grid centered in the region.
PlacementResult fpa_baseline(const PlacementProblem &problem);
std::vector<Position3D> fpa_layout(const MovingRegion &region, std::size_t n_antennas,
                                   double wavelength);

} // namespace mawi
