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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "mawi/errors.hpp"
#include "mawi/field_channel.hpp"
#include "mawi/placement.hpp"
#include "oracle_utils.hpp"

using namespace mawi;
using Catch::Approx;

namespace
{

constexpr double lam = 0.05;

PathSet test_pathset(std::uint64_t seed, std::size_t l_tx = 4, std::size_t l_rx = 3)
{
    RandomPathSetSpec spec;
    spec.l_tx = l_tx;
    spec.l_rx = l_rx;
    spec.wavelength = lam;
    return random_pathset(spec, seed);
}

PlacementProblem single_link_problem(std::size_t n_antennas, double side_wl,
                                     double min_spacing = 0.5 * lam, std::uint64_t seed = 1)
{
    const MovingRegion region({0, 0, 0}, {side_wl * lam, side_wl * lam, 0.0}, min_spacing,
                              n_antennas);
    return PlacementProblem(SingleLinkGainObjective{test_pathset(seed), {0.0, 0.0, 0.0}}, region,
                            n_antennas, lam);
}

PlacementProblem wsr_problem(std::size_t n_antennas, std::size_t users, double side_wl,
                             std::uint64_t seed = 1)
{
    MultiuserWsrObjective obj;
    for (std::size_t k = 0; k < users; ++k)
    {
        RandomPathSetSpec spec;
        spec.l_tx = 4;
        spec.l_rx = 4;
        spec.prm_style = PrmStyle::Diagonal;
        spec.wavelength = lam;
        obj.user_pathsets.push_back(random_pathset(spec, derive_seed(seed, 0x5A1 + k)));
        obj.weights.push_back(1.0);
    }
    obj.snr = 10.0;
    const MovingRegion region({0, 0, 0}, {side_wl * lam, side_wl * lam, 0.0}, 0.5 * lam,
                              n_antennas);
    return PlacementProblem(obj, region, n_antennas, lam);
}

void check_feasible(const PlacementProblem &problem, const std::vector<Position3D> &pos)
{
    REQUIRE(pos.size() == problem.n_antennas());
    for (const auto &p : pos)
        CHECK(problem.region().contains(p, 1e-9));
    for (std::size_t i = 0; i < pos.size(); ++i)
        for (std::size_t j = i + 1; j < pos.size(); ++j)
            CHECK(distance(pos[i], pos[j]) >= problem.region().min_spacing() - 1e-9);
}

} // namespace

TEST_CASE("water-filling satisfies the optimality conditions", "[placement]")
{
    RngEngine rng = make_engine(3);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int trial = 0; trial < 20; ++trial)
    {
        const std::size_t k = 1 + trial % 6;
        arma::vec gains(k), weights(k);
        for (std::size_t i = 0; i < k; ++i)
        {
            gains(i) = u(rng);
            // Mix in a zero weight while keeping at least one positive one.
            weights(i) = (trial % 3 == 0 && i == 0 && k >= 2) ? 0.0 : u(rng);
        }
        const double total = u(rng);
        const arma::vec p = waterfill(gains, weights, total);

        REQUIRE(p.n_elem == k);
        CHECK(arma::sum(p) == Approx(total).epsilon(1e-10));
        CHECK(p.min() >= 0.0);

        // Shared marginal utility on the active set, lower off it.
        double mu = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            if (p(i) > 1e-12)
                mu = std::max(mu, weights(i) * gains(i) / (1.0 + p(i) * gains(i)));
        for (std::size_t i = 0; i < k; ++i)
        {
            if (p(i) > 1e-12)
                CHECK(weights(i) * gains(i) / (1.0 + p(i) * gains(i)) ==
                      Approx(mu).epsilon(1e-8));
            else
                CHECK(weights(i) * gains(i) <= mu * (1.0 + 1e-8) + 1e-12);
            if (weights(i) == 0.0)
                CHECK(p(i) <= 1e-12);
        }

        // No random feasible allocation does better.
        auto objective = [&](const arma::vec &q) {
            double v = 0.0;
            for (std::size_t i = 0; i < k; ++i)
                v += weights(i) * std::log(1.0 + q(i) * gains(i));
            return v;
        };
        const double best = objective(p);
        std::uniform_real_distribution<double> e(0.0, 1.0);
        for (int probe = 0; probe < 100; ++probe)
        {
            arma::vec q(k);
            for (std::size_t i = 0; i < k; ++i)
                q(i) = e(rng);
            q *= total / arma::sum(q);
            CHECK(objective(q) <= best + 1e-10);
        }
    }

    CHECK_THROWS_AS(waterfill(arma::vec{}, arma::vec{}, 1.0), dimension_error);
    CHECK_THROWS_AS(waterfill(arma::vec{1.0}, arma::vec{1.0, 2.0}, 1.0), dimension_error);
    CHECK_THROWS_AS(waterfill(arma::vec{1.0}, arma::vec{1.0}, 0.0), domain_error);
    CHECK_THROWS_AS(waterfill(arma::vec{-1.0}, arma::vec{1.0}, 1.0), domain_error);
}

TEST_CASE("channel capacity matches closed forms", "[placement]")
{
    // SISO: capacity = log2(1 + snr |h|^2).
    arma::cx_mat h1(1, 1);
    h1(0, 0) = std::complex<double>(0.6, -0.8);
    CHECK(capacity_from_channel(h1, 3.0) == Approx(std::log2(1.0 + 3.0)).epsilon(1e-12));

    // Diagonal 2x2: water-filling over the two eigenmodes.
    arma::cx_mat h2(2, 2, arma::fill::zeros);
    h2(0, 0) = 2.0;
    h2(1, 1) = 1.0;
    const double snr = 5.0;
    const arma::vec p = waterfill(arma::vec{4.0, 1.0}, arma::vec{1.0, 1.0}, snr);
    const double expected = std::log2(1.0 + p(0) * 4.0) + std::log2(1.0 + p(1) * 1.0);
    CHECK(capacity_from_channel(h2, snr) == Approx(expected).epsilon(1e-12));

    CHECK_THROWS_AS(capacity_from_channel(arma::cx_mat(), 1.0), dimension_error);
    CHECK_THROWS_AS(capacity_from_channel(h1, 0.0), domain_error);
}

TEST_CASE("zero-forcing sum rate matches a manual computation", "[placement]")
{
    // One user: all power on the single effective gain ||h||^2.
    arma::cx_mat h1(1, 3);
    h1(0, 0) = std::complex<double>(0.3, 0.4);
    h1(0, 1) = std::complex<double>(-0.2, 0.1);
    h1(0, 2) = std::complex<double>(0.0, 0.5);
    const double g1 = std::pow(arma::norm(h1.row(0).st()), 2);
    CHECK(wsr_from_channel(h1, {2.0}, 4.0) == Approx(2.0 * std::log2(1.0 + 4.0 * g1)).epsilon(1e-12));

    // Two orthogonal users: gains decouple into the row norms.
    arma::cx_mat h2(2, 2, arma::fill::zeros);
    h2(0, 0) = std::complex<double>(1.2, 0.0);
    h2(1, 1) = std::complex<double>(0.0, 0.7);
    const double ga = 1.44, gb = 0.49, total = 6.0;
    double pa = 0.5 * (total + 1.0 / ga + 1.0 / gb) - 1.0 / ga;
    double pb = total - pa;
    if (pb < 0.0)
    {
        pa = total;
        pb = 0.0;
    }
    const double expected = std::log2(1.0 + pa * ga) + std::log2(1.0 + pb * gb);
    CHECK(wsr_from_channel(h2, {1.0, 1.0}, total) == Approx(expected).epsilon(1e-10));

    // A silent user row makes the zero-forcing Gram matrix singular.
    arma::cx_mat sing(2, 2, arma::fill::ones);
    sing.row(1).zeros();
    CHECK_THROWS_AS(wsr_from_channel(sing, {1.0, 1.0}, 1.0), numerical_error);
    CHECK_THROWS_AS(wsr_from_channel(arma::cx_mat(3, 2, arma::fill::ones), {1.0, 1.0, 1.0}, 1.0),
                    dimension_error);
}

TEST_CASE("objective values follow the documented conventions", "[placement]")
{
    const PathSet ps = test_pathset(8);
    const MovingRegion region({0, 0, 0}, {4.0 * lam, 4.0 * lam, 0.0}, 0.5 * lam, 2);
    const std::vector<Position3D> pos{{0.01, 0.02, 0.0}, {0.12, 0.05, 0.0}};
    const Position3D peer{0.03, -0.02, 0.01};

    // Link gain: sum of squared response magnitudes.
    const PlacementProblem link(SingleLinkGainObjective{ps, peer}, region, 2, lam);
    double expected = 0.0;
    for (const auto &t : pos)
        expected += std::norm(channel_response(ps, t, peer));
    CHECK(objective_value(link, pos) == Approx(expected).epsilon(1e-12));

    // Matrix objective: water-filled capacity of the stacked channel.
    const std::vector<Position3D> rx_pts{{0.0, 0.0, 0.0}, {0.0, 0.1, 0.0}};
    const PlacementProblem mimo(MimoCapacityObjective{ps, rx_pts, 7.0}, region, 2, lam);
    CHECK(objective_value(mimo, pos) ==
          Approx(capacity_from_channel(mimo_channel(ps, pos, rx_pts), 7.0)).epsilon(1e-12));

    // Sum-rate objective: rows are users with their antenna at the local origin.
    const PlacementProblem wsr = wsr_problem(2, 2, 4.0);
    const auto &obj = std::get<MultiuserWsrObjective>(wsr.objective());
    arma::cx_mat h(2, 2);
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t m = 0; m < 2; ++m)
            h(k, m) = channel_response(obj.user_pathsets[k], pos[m], {0.0, 0.0, 0.0});
    CHECK(objective_value(wsr, pos) ==
          Approx(wsr_from_channel(h, obj.weights, obj.snr)).epsilon(1e-12));
}

TEST_CASE("objective evaluation enforces feasibility", "[placement]")
{
    const PlacementProblem problem = single_link_problem(2, 4.0);
    CHECK_THROWS_AS(objective_value(problem, {{-0.01, 0.0, 0.0}, {0.1, 0.1, 0.0}}),
                    feasibility_error);
    // Spacing violation: closer than lambda/2.
    CHECK_THROWS_AS(objective_value(problem, {{0.1, 0.1, 0.0}, {0.1, 0.11, 0.0}}),
                    feasibility_error);
    CHECK_THROWS_AS(objective_value(problem, {{0.1, 0.1, 0.0}}), dimension_error);

    // Antenna count below the user count cannot be zero-forced.
    CHECK_THROWS_AS(wsr_problem(1, 2, 4.0), config_error);

    // Objective wavelength must match the problem wavelength.
    const MovingRegion region({0, 0, 0}, {0.2, 0.2, 0.0}, 0.0, 1);
    RandomPathSetSpec other;
    other.wavelength = 0.06;
    CHECK_THROWS_AS(PlacementProblem(SingleLinkGainObjective{random_pathset(other, 1), {}},
                                     region, 1, lam),
                    config_error);
}

TEST_CASE("analytic gradients agree with central differences", "[placement]")
{
    const MovingRegion region({0, 0, 0}, {0.2, 0.2, 0.2}, 0.0, 2);
    const std::vector<Position3D> x{{0.08, 0.05, 0.11}, {0.15, 0.12, 0.04}};
    const double h_step = 1e-6;

    std::vector<PlacementProblem> problems;
    problems.push_back(
        PlacementProblem(SingleLinkGainObjective{test_pathset(31), {0.02, 0.0, 0.0}}, region, 2,
                         lam));
    problems.push_back(PlacementProblem(
        MimoCapacityObjective{test_pathset(32), {{0.0, 0.0, 0.0}, {0.0, 0.09, 0.0}}, 5.0}, region,
        2, lam));
    {
        MultiuserWsrObjective obj;
        for (std::size_t k = 0; k < 2; ++k)
        {
            RandomPathSetSpec spec;
            spec.l_tx = 3;
            spec.l_rx = 3;
            spec.prm_style = PrmStyle::Diagonal;
            spec.wavelength = lam;
            obj.user_pathsets.push_back(random_pathset(spec, 33 + k));
            obj.weights.push_back(k == 0 ? 2.0 : 1.0);
        }
        obj.snr = 10.0;
        problems.push_back(PlacementProblem(obj, region, 2, lam));
    }

    for (const PlacementProblem &problem : problems)
    {
        const std::vector<Position3D> g = objective_gradient(problem, x);
        const std::vector<Position3D> fd = oracle::finite_diff_gradient(
            [&](const std::vector<Position3D> &p) { return objective_value(problem, p); }, x,
            h_step);
        const double scale = std::max(1.0, oracle::grad_norm(g));
        CHECK(oracle::grad_distance(g, fd) / scale < 1e-5);
    }
}

TEST_CASE("projected gradient ascent improves on the fixed layout", "[placement]")
{
    const PlacementProblem problem = single_link_problem(2, 3.0);
    GradAscentConfig config;
    config.starts = 4;
    config.max_iters = 60;

    const PlacementResult result = grad_ascent_placement(problem, config);
    check_feasible(problem, result.positions);
    CHECK(result.objective_value ==
          Approx(objective_value(problem, result.positions)).epsilon(1e-9));
    CHECK(result.objective_value >= fpa_baseline(problem).objective_value - 1e-12);
    CHECK(result.evaluations > 0);
    for (std::size_t i = 1; i < result.trace.size(); ++i)
        CHECK(result.trace[i] >= result.trace[i - 1]);

    // Deterministic for a fixed config.
    const PlacementResult again = grad_ascent_placement(problem, config);
    REQUIRE(again.positions.size() == result.positions.size());
    for (std::size_t i = 0; i < result.positions.size(); ++i)
        CHECK(distance(again.positions[i], result.positions[i]) == 0.0);

    CHECK_THROWS_AS(grad_ascent_placement(problem, GradAscentConfig{0, 10, 1e-9, 0.25, 1}),
                    config_error);
}

TEST_CASE("swarm search dominates the deterministic baselines", "[placement]")
{
    const PlacementProblem problem = wsr_problem(3, 2, 3.0);
    PsoConfig config;
    config.swarm = 20;
    config.iters = 40;

    const PlacementResult pso = pso_placement(problem, config);
    check_feasible(problem, pso.positions);
    CHECK(pso.objective_value == Approx(objective_value(problem, pso.positions)).epsilon(1e-9));
    for (std::size_t i = 1; i < pso.trace.size(); ++i)
        CHECK(pso.trace[i] >= pso.trace[i - 1]);

    // The swarm is seeded with the strongest deterministic candidates, so it
    // can never fall below them.
    CHECK(pso.objective_value >= fpa_baseline(problem).objective_value - 1e-12);
    CHECK(pso.objective_value >= grad_ascent_placement(problem, {}).objective_value - 1e-12);
    DiscreteConfig greedy;
    greedy.mode = DiscreteMode::Greedy;
    CHECK(pso.objective_value >= discrete_placement(problem, greedy).objective_value - 1e-12);

    const PlacementResult again = pso_placement(problem, config);
    for (std::size_t i = 0; i < pso.positions.size(); ++i)
        CHECK(distance(again.positions[i], pso.positions[i]) == 0.0);

    CHECK_THROWS_AS(pso_placement(problem, PsoConfig{1, 10, 0.7, 1.5, 1.5, 1}), config_error);
}

TEST_CASE("exhaustive lattice search equals an independent brute force", "[placement]")
{
    // Segment [0, lambda], two antennas, lambda/4 lattice, lambda/2 spacing.
    const MovingRegion region({0, 0, 0}, {lam, 0.0, 0.0}, 0.5 * lam, 2);
    const PlacementProblem problem(SingleLinkGainObjective{test_pathset(55), {0.0, 0.01, 0.0}},
                                   region, 2, lam);

    DiscreteConfig config;
    config.grid_step = 0.25 * lam;
    const PlacementResult result = discrete_placement(problem, config);
    check_feasible(problem, result.positions);

    // Independent enumeration of the same lattice.
    std::vector<double> xs;
    for (int i = 0; i <= 4; ++i)
        xs.push_back(0.25 * lam * i);
    double best = -1.0;
    for (std::size_t a = 0; a < xs.size(); ++a)
        for (std::size_t b = a + 1; b < xs.size(); ++b)
        {
            if (xs[b] - xs[a] < 0.5 * lam - 1e-12)
                continue;
            const double v = objective_value(
                problem, {{xs[a], 0.0, 0.0}, {xs[b], 0.0, 0.0}});
            best = std::max(best, v);
        }
    CHECK(result.objective_value == Approx(best).epsilon(1e-12));

    // The cap guards the worst-case enumeration size.
    DiscreteConfig capped = config;
    capped.combination_cap = 2;
    CHECK_THROWS_AS(discrete_placement(problem, capped), config_error);

    // Greedy mode stays feasible and never loses to the fixed layout.
    DiscreteConfig greedy;
    greedy.mode = DiscreteMode::Greedy;
    const PlacementResult g = discrete_placement(wsr_problem(3, 2, 3.0), greedy);
    check_feasible(wsr_problem(3, 2, 3.0), g.positions);
    CHECK(g.objective_value >= fpa_baseline(wsr_problem(3, 2, 3.0)).objective_value - 1e-12);
}

TEST_CASE("sparse-selection placement handles its supported objectives", "[placement]")
{
    const PlacementProblem link = single_link_problem(2, 3.0);
    const PlacementResult r1 = cs_placement(link);
    check_feasible(link, r1.positions);
    CHECK(r1.objective_value >= fpa_baseline(link).objective_value - 1e-12);

    const PlacementProblem wsr = wsr_problem(3, 2, 3.0);
    const PlacementResult r2 = cs_placement(wsr);
    check_feasible(wsr, r2.positions);
    CHECK(r2.objective_value >= fpa_baseline(wsr).objective_value - 1e-12);

    const MovingRegion region({0, 0, 0}, {3.0 * lam, 3.0 * lam, 0.0}, 0.5 * lam, 2);
    const PlacementProblem mimo(
        MimoCapacityObjective{test_pathset(77), {{0.0, 0.0, 0.0}}, 1.0}, region, 2, lam);
    CHECK_THROWS_AS(cs_placement(mimo), config_error);
}

TEST_CASE("measurement-only search respects its budget", "[placement]")
{
    const PlacementProblem problem = single_link_problem(2, 3.0);
    std::size_t calls = 0;
    MeasurementOracle oracle;
    oracle.sample = [&](const std::vector<Position3D> &pos) {
        ++calls;
        return objective_value(problem, pos);
    };
    oracle.budget = 400;

    const PlacementResult result =
        zo_placement(oracle, problem.region(), problem.n_antennas(), {});
    CHECK(calls <= oracle.budget);
    CHECK(result.evaluations == calls);
    check_feasible(problem, result.positions);
    // The first probe is the fixed layout, and the best probe is kept.
    CHECK(result.objective_value >= fpa_baseline(problem).objective_value - 1e-12);

    std::size_t calls2 = 0;
    MeasurementOracle oracle2;
    oracle2.sample = [&](const std::vector<Position3D> &pos) {
        ++calls2;
        return objective_value(problem, pos);
    };
    oracle2.budget = 400;
    const PlacementResult again =
        zo_placement(oracle2, problem.region(), problem.n_antennas(), {});
    for (std::size_t i = 0; i < result.positions.size(); ++i)
        CHECK(distance(again.positions[i], result.positions[i]) == 0.0);

    MeasurementOracle tiny;
    tiny.sample = oracle.sample;
    tiny.budget = 2;
    CHECK_THROWS_AS(zo_placement(tiny, problem.region(), problem.n_antennas(), {}), config_error);
}

TEST_CASE("random-direction gradient estimates align with the truth", "[placement]")
{
    // Linear field: the estimator is unbiased up to the 1/dim projection factor.
    const Position3D truth{2.0, -3.0, 1.0};
    auto f = [&](const std::vector<Position3D> &p) { return dot(truth, p[0]); };

    RngEngine rng = make_engine(5);
    const std::vector<Position3D> x{{0.1, 0.2, 0.3}};
    const std::vector<Position3D> est = zo_gradient_estimate(f, x, 0.05, 6000, rng);
    CHECK(est[0].x * 3.0 == Approx(truth.x).epsilon(0.1));
    CHECK(est[0].y * 3.0 == Approx(truth.y).epsilon(0.1));
    CHECK(est[0].z * 3.0 == Approx(truth.z).epsilon(0.1));

    RngEngine r2 = make_engine(9);
    CHECK_THROWS_AS(zo_gradient_estimate(f, x, 0.0, 4, r2), config_error);
    CHECK_THROWS_AS(zo_gradient_estimate(f, x, 0.05, 0, r2), config_error);
}

TEST_CASE("optimized placements are invariant to objective scaling", "[placement]")
{
    const PathSet ps = test_pathset(91);
    const arma::cx_mat scaled_prm = 4.0 * ps.prm();
    const PathSet ps_scaled(ps.tx_paths(), ps.rx_paths(), scaled_prm, ps.wavelength());

    const MovingRegion region({0, 0, 0}, {3.0 * lam, 3.0 * lam, 0.0}, 0.5 * lam, 2);
    const PlacementProblem base(SingleLinkGainObjective{ps, {0.0, 0.0, 0.0}}, region, 2, lam);
    const PlacementProblem scaled(SingleLinkGainObjective{ps_scaled, {0.0, 0.0, 0.0}}, region, 2,
                                  lam);

    GradAscentConfig gconf;
    gconf.starts = 3;
    gconf.max_iters = 40;
    const PlacementResult g1 = grad_ascent_placement(base, gconf);
    const PlacementResult g2 = grad_ascent_placement(scaled, gconf);
    for (std::size_t i = 0; i < g1.positions.size(); ++i)
        CHECK(distance(g1.positions[i], g2.positions[i]) == 0.0);
    CHECK(g2.objective_value == Approx(16.0 * g1.objective_value).epsilon(1e-12));

    PsoConfig pconf;
    pconf.swarm = 12;
    pconf.iters = 25;
    const PlacementResult p1 = pso_placement(base, pconf);
    const PlacementResult p2 = pso_placement(scaled, pconf);
    for (std::size_t i = 0; i < p1.positions.size(); ++i)
        CHECK(distance(p1.positions[i], p2.positions[i]) == 0.0);
}

TEST_CASE("fixed layout is centered, spaced and deterministic", "[placement]")
{
    const MovingRegion region({0, 0, 0}, {4.0 * lam, 4.0 * lam, 0.0}, 0.5 * lam, 4);
    const std::vector<Position3D> layout = fpa_layout(region, 4, lam);
    REQUIRE(layout.size() == 4);

    Position3D mean{0, 0, 0};
    for (const auto &p : layout)
    {
        CHECK(region.contains(p, 1e-12));
        mean = mean + (1.0 / 4.0) * p;
    }
    // A 2x2 grid at lambda/2 pitch sits symmetrically around the region center.
    CHECK(mean.x == Approx(region.center().x).margin(1e-12));
    CHECK(mean.y == Approx(region.center().y).margin(1e-12));

    for (std::size_t i = 0; i < layout.size(); ++i)
        for (std::size_t j = i + 1; j < layout.size(); ++j)
            CHECK(distance(layout[i], layout[j]) >= 0.5 * lam - 1e-12);

    const PlacementProblem problem = single_link_problem(4, 4.0);
    const PlacementResult baseline = fpa_baseline(problem);
    CHECK(baseline.evaluations == 1);
    CHECK(baseline.objective_value ==
          Approx(objective_value(problem, baseline.positions)).epsilon(1e-12));
}
