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

#include <catch_amalgamated.hpp>

#include "mafd/link_metrics.hpp"
#include "mafd/transmit_beamformer.hpp"
#include "test_support.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace mafd;
using namespace mafd::testing;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

LinkParams reference_params(DuplexMode mode = DuplexMode::full)
{
    LinkParams p;
    p.power_ul = 0.1;
    p.sic = 1e-10;
    p.noise_bs = p.noise_dl = p.noise_eve = 1e-12;
    p.mode = mode;
    return p;
}

ChannelSet random_channels(std::mt19937_64 &rng, int nt, int nr)
{
    ChannelSet ch;
    ch.si = random_cmat(rng, nr, nt);
    ch.ub = random_cvec(rng, nr, 3e-5);
    ch.bd = random_cvec(rng, nt, 3e-5);
    ch.be = random_cvec(rng, nt, 1.5e-5);
    ch.ud = random_cplx(rng, 3e-6);
    ch.ue = random_cplx(rng, 1e-5);
    return ch;
}

struct Instance
{
    ChannelSet ch;
    CVec receive;
    SecrecyObjective obj;
};

Instance random_instance(std::mt19937_64 &rng, int nt, int nr, const LinkParams &p, bool an = true)
{
    Instance in;
    in.ch = random_channels(rng, nt, nr);
    in.receive = random_unit(rng, nr);
    in.obj = secrecy_objective(effective_channels(in.ch, in.receive, p.sic), p, an);
    return in;
}

CovariancePair random_pair(std::mt19937_64 &rng, int nt, double budget)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double share = u(rng);
    const double used = budget * u(rng);
    return {random_psd(rng, nt, share * used), random_psd(rng, nt, (1 - share) * used)};
}

double pq(const SecrecyObjective &obj, const CovariancePair &x) { return objective_p(obj, x) - objective_q(obj, x); }

CovariancePair scalar_pair(double w, double v)
{
    return {CMat::Constant(1, 1, w), CMat::Constant(1, 1, v)};
}

// Hermitian basis: E_ii, E_ij + E_ji, i(E_ij - E_ji).
std::vector<CMat> hermitian_basis(int n)
{
    std::vector<CMat> basis;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
        {
            CMat e = CMat::Zero(n, n);
            if (i == j)
            {
                e(i, i) = 1.0;
                basis.push_back(e);
                continue;
            }
            e(i, j) = e(j, i) = 1.0;
            basis.push_back(e);
            e(i, j) = cplx(0.0, 1.0);
            e(j, i) = cplx(0.0, -1.0);
            basis.push_back(e);
        }
    return basis;
}

struct GridOptimum
{
    double value = -1e300;
    double w = 0.0;
    double v = 0.0;
};

template <class F>
GridOptimum grid_search(double budget, int steps, F &&f)
{
    GridOptimum best;
    const double h = budget / steps;
    for (int i = 0; i <= steps; ++i)
        for (int j = 0; i + j <= steps; ++j)
        {
            const double val = f(i * h, j * h);
            if (val > best.value)
                best = {val, i * h, j * h};
        }
    return best;
}

bool feasible(const CovariancePair &x, double budget)
{
    const double tr = (x.info + x.noise).trace().real();
    Eigen::SelfAdjointEigenSolver<CMat> ew(x.info), ev(x.noise);
    return tr <= budget * (1 + 1e-9) && ew.eigenvalues().minCoeff() >= -1e-9 * budget &&
           ev.eigenvalues().minCoeff() >= -1e-9 * budget;
}

} // namespace

TEST_CASE("objective_p and objective_q at zero covariances")
{
    std::mt19937_64 rng(41);
    const LinkParams p = reference_params();
    const Instance in = random_instance(rng, 3, 2, p);
    const CovariancePair zero{CMat::Zero(3, 3), CMat::Zero(3, 3)};
    const cplx h1 = in.receive.dot(in.ch.ub);
    const double pu = p.power_ul;

    const double expected_p = std::log2(pu * std::norm(h1) + p.noise_bs) +
                              std::log2(pu * std::norm(in.ch.ud) + p.noise_dl) + std::log2(p.noise_eve) +
                              std::log2(pu * std::norm(in.ch.ue) + p.noise_eve);
    const double expected_q = std::log2(p.noise_bs) + std::log2(pu * std::norm(in.ch.ud) + p.noise_dl) +
                              2.0 * std::log2(pu * std::norm(in.ch.ue) + p.noise_eve);
    CHECK_THAT(objective_p(in.obj, zero), WithinAbs(expected_p, 1e-12));
    CHECK_THAT(objective_q(in.obj, zero), WithinAbs(expected_q, 1e-12));

    // Unclamped rate with no downlink power.
    const BeamformingState bf{in.receive, zero.info, zero.noise};
    CHECK_THAT(pq(in.obj, zero), WithinAbs(secrecy_report(in.ch, bf, p).unclamped, 1e-10));

    LinkParams louder = p;
    louder.noise_eve *= 2.0;
    const SecrecyObjective obj2 = secrecy_objective(effective_channels(in.ch, in.receive, p.sic), louder);
    CHECK(objective_p(obj2, zero) > objective_p(in.obj, zero));
}

TEST_CASE("objective_p - scalar expansion")
{
    std::mt19937_64 rng(42);
    const LinkParams p = reference_params();
    for (int trial = 0; trial < 10; ++trial)
    {
        const Instance in = random_instance(rng, 1, 2, p);
        const double w = 0.03, v = 0.02, pu = p.power_ul;
        const double a2 = std::norm(std::sqrt(p.sic) * (in.ch.si.adjoint() * in.receive)(0));
        const double bd = std::norm(in.ch.bd(0)), be = std::norm(in.ch.be(0));
        const double h1 = std::norm(in.receive.dot(in.ch.ub));
        const double expected = std::log2((w + v) * a2 + pu * h1 + p.noise_bs) +
                                std::log2((w + v) * bd + pu * std::norm(in.ch.ud) + p.noise_dl) +
                                std::log2((w + v) * be + p.noise_eve) +
                                std::log2(v * be + pu * std::norm(in.ch.ue) + p.noise_eve);
        CHECK_THAT(objective_p(in.obj, scalar_pair(w, v)), WithinAbs(expected, 1e-11));
    }
}

TEST_CASE("P - Q equals the unclamped secrecy rate")
{
    std::mt19937_64 rng(43);
    for (const DuplexMode mode : {DuplexMode::full, DuplexMode::half})
    {
        const LinkParams p = reference_params(mode);
        for (int trial = 0; trial < 30; ++trial)
        {
            const Instance in = random_instance(rng, 3, 3, p);
            const CovariancePair x = random_pair(rng, 3, 0.1);
            const BeamformingState bf{in.receive, x.info, x.noise};
            CHECK_THAT(pq(in.obj, x), WithinAbs(secrecy_report(in.ch, bf, p).unclamped, 1e-9));
        }
    }
}

TEST_CASE("objective_q - concavity probe")
{
    std::mt19937_64 rng(44);
    const LinkParams p = reference_params();
    for (int trial = 0; trial < 200; ++trial)
    {
        const Instance in = random_instance(rng, 3, 2, p);
        const CovariancePair a = random_pair(rng, 3, 0.1), b = random_pair(rng, 3, 0.1);
        const CovariancePair mid{0.5 * (a.info + b.info), 0.5 * (a.noise + b.noise)};
        CHECK(objective_q(in.obj, mid) >= 0.5 * objective_q(in.obj, a) + 0.5 * objective_q(in.obj, b) - 1e-12);
        CHECK(objective_p(in.obj, mid) >= 0.5 * objective_p(in.obj, a) + 0.5 * objective_p(in.obj, b) - 1e-12);
    }
}

TEST_CASE("grad_q - zero channels and scalar derivative")
{
    const LinkParams p = reference_params();
    ChannelSet ch;
    ch.si = CMat::Zero(2, 2);
    ch.ub = CVec::Ones(2) * 1e-5;
    ch.bd = ch.be = CVec::Zero(2);
    ch.ud = ch.ue = 1e-6;
    const SecrecyObjective zero_obj = secrecy_objective(effective_channels(ch, CVec::Unit(2, 0), p.sic), p);
    std::mt19937_64 rng(45);
    const CovariancePair x = random_pair(rng, 2, 0.1);
    const CovariancePair g = grad_q(zero_obj, x);
    CHECK(g.info.norm() == 0.0);
    CHECK(g.noise.norm() == 0.0);

    const Instance in = random_instance(rng, 1, 2, p);
    const double w = 0.04, v = 0.01, pu = p.power_ul;
    const double a2 = std::norm(std::sqrt(p.sic) * (in.ch.si.adjoint() * in.receive)(0));
    const double bd = std::norm(in.ch.bd(0)), be = std::norm(in.ch.be(0));
    const double l2 = std::log(2.0);
    const double d_first = a2 / ((w + v) * a2 + p.noise_bs) / l2;
    const double d_eve = 2.0 * be / ((w + v) * be + pu * std::norm(in.ch.ue) + p.noise_eve) / l2;
    const double d_dl = bd / (v * bd + pu * std::norm(in.ch.ud) + p.noise_dl) / l2;
    const CovariancePair gs = grad_q(in.obj, scalar_pair(w, v));
    CHECK_THAT(gs.info(0, 0).real(), WithinRel(d_first + d_eve, 1e-12));
    CHECK_THAT(gs.noise(0, 0).real(), WithinRel(d_first + d_eve + d_dl, 1e-12));
}

TEST_CASE("grad_q and grad_p - central finite differences")
{
    std::mt19937_64 rng(46);
    const LinkParams p = reference_params();
    const double h = 1e-6;
    for (int trial = 0; trial < 100; ++trial)
    {
        const int nt = 1 + trial % 4;
        const Instance in = random_instance(rng, nt, 2, p);
        const CovariancePair x = random_pair(rng, nt, 0.1);
        const CovariancePair gq = grad_q(in.obj, x), gp = grad_p(in.obj, x);

        std::vector<double> analytic_q, numeric_q, analytic_p, numeric_p;
        for (const CMat &e : hermitian_basis(nt))
            for (int block = 0; block < 2; ++block)
            {
                const CMat zero = CMat::Zero(nt, nt);
                const CovariancePair dir = block == 0 ? CovariancePair{e, zero} : CovariancePair{zero, e};
                const CovariancePair plus{x.info + h * dir.info, x.noise + h * dir.noise};
                const CovariancePair minus{x.info - h * dir.info, x.noise - h * dir.noise};
                analytic_q.push_back(inner_product(gq, dir));
                numeric_q.push_back((objective_q(in.obj, plus) - objective_q(in.obj, minus)) / (2 * h));
                analytic_p.push_back(inner_product(gp, dir));
                numeric_p.push_back((objective_p(in.obj, plus) - objective_p(in.obj, minus)) / (2 * h));
            }
        const Eigen::Map<Eigen::VectorXd> aq(analytic_q.data(), analytic_q.size());
        const Eigen::Map<Eigen::VectorXd> nq(numeric_q.data(), numeric_q.size());
        const Eigen::Map<Eigen::VectorXd> ap(analytic_p.data(), analytic_p.size());
        const Eigen::Map<Eigen::VectorXd> np(numeric_p.data(), numeric_p.size());
        CHECK((aq - nq).norm() <= 1e-5 * aq.norm());
        CHECK((ap - np).norm() <= 1e-5 * ap.norm());
        CHECK((gq.info - gq.info.adjoint()).norm() == 0.0);
    }
}

TEST_CASE("linearized_objective - exact at the anchor, lower bound elsewhere")
{
    std::mt19937_64 rng(47);
    const LinkParams p = reference_params();
    for (int trial = 0; trial < 1000; ++trial)
    {
        const int nt = 1 + trial % 4;
        const Instance in = random_instance(rng, nt, 2, p);
        const CovariancePair anchor = random_pair(rng, nt, 0.1), x = random_pair(rng, nt, 0.1);
        const CovariancePair step{x.info - anchor.info, x.noise - anchor.noise};
        const double q_lin = objective_q(in.obj, anchor) + inner_product(grad_q(in.obj, anchor), step);
        CHECK(q_lin >= objective_q(in.obj, x) - 1e-9);
        CHECK(linearized_objective(in.obj, x, anchor) <= pq(in.obj, x) + 1e-9);
        if (trial % 50 == 0)
            CHECK_THAT(linearized_objective(in.obj, anchor, anchor), WithinAbs(pq(in.obj, anchor), 1e-12));
    }
    const Instance in = random_instance(rng, 2, 2, p);
    const CovariancePair zero{CMat::Zero(2, 2), CMat::Zero(2, 2)};
    CHECK(linearized_objective(in.obj, zero, zero) == pq(in.obj, zero));
}

TEST_CASE("project_feasible - feasibility, idempotence and AN pinning")
{
    std::mt19937_64 rng(48);
    for (int trial = 0; trial < 50; ++trial)
    {
        const CovariancePair x{random_cmat(rng, 3, 3), random_cmat(rng, 3, 3)};
        const CovariancePair y = project_feasible(x, 0.1);
        CHECK(feasible(y, 0.1));
        const CovariancePair z = project_feasible(y, 0.1);
        CHECK(rel_err(y.info, z.info) <= 1e-12);
        CHECK(project_feasible(x, 0.1, false).noise.norm() == 0.0);

        // Projection optimality: <x - y, u - y> <= 0 for feasible u.
        const CovariancePair u = random_pair(rng, 3, 0.1);
        const CovariancePair hx{0.5 * (x.info + x.info.adjoint()), 0.5 * (x.noise + x.noise.adjoint())};
        const CovariancePair r{hx.info - y.info, hx.noise - y.noise};
        const CovariancePair d{u.info - y.info, u.noise - y.noise};
        CHECK(inner_product(r, d) <= 1e-12);
    }
    const CovariancePair inside = random_pair(rng, 2, 0.05);
    CHECK(rel_err(project_feasible(inside, 0.1).info, inside.info) <= 1e-12);
}

TEST_CASE("solve_inner_convex - zero budget")
{
    std::mt19937_64 rng(49);
    const LinkParams p = reference_params();
    const Instance in = random_instance(rng, 2, 2, p);
    const CovariancePair zero{CMat::Zero(2, 2), CMat::Zero(2, 2)};
    const CovariancePair out = solve_inner_convex(in.obj, zero, 0.0);
    CHECK(out.info.norm() == 0.0);
    CHECK(out.noise.norm() == 0.0);
}

TEST_CASE("solve_inner_convex - scalar grid oracle and feasibility")
{
    std::mt19937_64 rng(50);
    const LinkParams p = reference_params();
    const double budget = 0.1;
    for (int trial = 0; trial < 10; ++trial)
    {
        const Instance in = random_instance(rng, 1, 2, p);
        const CovariancePair anchor = random_pair(rng, 1, budget);
        const CovariancePair out = solve_inner_convex(in.obj, anchor, budget);
        CHECK(feasible(out, budget));
        const GridOptimum grid = grid_search(budget, 2000, [&](double w, double v)
                                             { return linearized_objective(in.obj, scalar_pair(w, v), anchor); });
        CHECK(linearized_objective(in.obj, out, anchor) >= grid.value - 1e-3);
    }
    for (int trial = 0; trial < 20; ++trial)
    {
        const int nt = 2 + trial % 3;
        const Instance in = random_instance(rng, nt, 3, p, trial % 2 == 0);
        const CovariancePair anchor = random_pair(rng, nt, budget);
        const CovariancePair out = solve_inner_convex(in.obj, anchor, budget);
        CHECK(feasible(out, budget));
        CHECK(linearized_objective(in.obj, out, anchor) >= pq(in.obj, anchor) - 1e-9);
        if (trial % 2 == 1)
            CHECK(out.noise.norm() == 0.0);
    }
}

TEST_CASE("solve_inner_convex - iteration cap raises with the last iterate")
{
    std::mt19937_64 rng(51);
    const LinkParams p = reference_params();
    const Instance in = random_instance(rng, 3, 2, p);
    InnerSolverOptions opts;
    opts.max_iterations = 1;
    opts.relative_tolerance = 0.0;
    opts.stationarity_tolerance = 0.0;
    try
    {
        (void)solve_inner_convex(in.obj, default_sca_start(3, 0.1), 0.1, opts);
        FAIL("expected NonConvergenceError");
    }
    catch (const NonConvergenceError &e)
    {
        CHECK(feasible(e.last_iterate(), 0.1));
    }
}

TEST_CASE("sca_loop - scalar grid oracle and monotone history")
{
    std::mt19937_64 rng(52);
    const LinkParams p = reference_params();
    const double budget = 0.1;
    ScaOptions opts;
    opts.tolerance = 1e-6;
    opts.max_iterations = 100;
    for (int trial = 0; trial < 10; ++trial)
    {
        const Instance in = random_instance(rng, 1, 2, p, trial % 3 != 0);
        const ScaState s = sca_loop(in.obj, default_sca_start(1, budget, in.obj.artificial_noise), budget, opts);
        const bool an = in.obj.artificial_noise;
        const GridOptimum grid =
            grid_search(budget, 2000, [&](double w, double v) { return an || v == 0.0 ? pq(in.obj, scalar_pair(w, v)) : -1e300; });
        CHECK(s.history.back() >= grid.value - 2e-3);
        CHECK(s.iterations <= opts.max_iterations);
        for (std::size_t k = 1; k < s.history.size(); ++k)
            CHECK(s.history[k] >= s.history[k - 1] - 1e-8);
        CHECK(feasible(s.current, budget));
    }
}

TEST_CASE("sca_loop - history and feasibility at larger arrays")
{
    std::mt19937_64 rng(53);
    const LinkParams p = reference_params();
    const ScaOptions opts;
    for (int trial = 0; trial < 10; ++trial)
    {
        const Instance in = random_instance(rng, 4, 4, p);
        const ScaState s = sca_loop(in.obj, default_sca_start(4, 0.1), 0.1, opts);
        CHECK(s.iterations <= opts.max_iterations);
        CHECK(s.history.size() == static_cast<std::size_t>(s.iterations) + 1);
        CHECK_THAT(s.history.back(), WithinAbs(pq(in.obj, s.current), 1e-12));
        for (std::size_t k = 1; k < s.history.size(); ++k)
            CHECK(s.history[k] >= s.history[k - 1] - 1e-8);
        CHECK(feasible(s.current, 0.1));
    }
}

TEST_CASE("sca_loop - stationary start stops after one round")
{
    const LinkParams p = reference_params();
    ChannelSet ch;
    ch.si = CMat::Zero(2, 2);
    ch.ub = CVec::Ones(2) * 1e-5;
    ch.bd = ch.be = CVec::Zero(2);
    ch.ud = ch.ue = 1e-6;
    const SecrecyObjective obj = secrecy_objective(effective_channels(ch, CVec::Unit(2, 0), p.sic), p);
    const CovariancePair start = default_sca_start(2, 0.1);
    const ScaState s = sca_loop(obj, start, 0.1, {});
    CHECK(s.iterations == 1);
    CHECK(s.converged);
    CHECK(rel_err(s.current.info, start.info) <= 1e-12);
    CHECK(rel_err(s.current.noise, start.noise) <= 1e-12);
}

TEST_CASE("default_sca_start")
{
    const CovariancePair s = default_sca_start(4, 0.1);
    CHECK_THAT(s.info(2, 2).real(), WithinRel(0.1 / 16, 1e-15));
    CHECK_THAT((s.info + s.noise).trace().real(), WithinRel(0.05, 1e-15));
    CHECK(default_sca_start(4, 0.1, false).noise.norm() == 0.0);
}

TEST_CASE("rank_one_extract")
{
    std::mt19937_64 rng(54);
    const CVec u = random_unit(rng, 3);
    const RankOneFactor f = rank_one_extract(0.07 * u * u.adjoint());
    CHECK_THAT(f.tightness, WithinAbs(0.0, 1e-12));
    CHECK(rel_err(CMat(f.vector * f.vector.adjoint()), CMat(0.07 * u * u.adjoint())) <= 1e-12);
    CHECK(std::abs(f.vector(0).imag()) <= 1e-15);
    CHECK(f.vector(0).real() > 0.0);

    CHECK_THAT(rank_one_extract(CMat::Identity(2, 2)).tightness, WithinRel(1.0, 1e-12));

    const RankOneFactor z = rank_one_extract(CMat::Zero(3, 3));
    CHECK(z.vector.norm() == 0.0);
    CHECK(z.tightness == 0.0);

    // Deterministic under a global phase change of the input vector.
    const CVec ur = u * std::polar(1.0, 2.2);
    CHECK(rel_err(CMat(rank_one_extract(0.07 * ur * ur.adjoint()).vector), CMat(f.vector)) <= 1e-12);
}

TEST_CASE("rank_one_extract after SCA - relaxation gap is measurable")
{
    std::mt19937_64 rng(55);
    const LinkParams p = reference_params();
    for (int trial = 0; trial < 10; ++trial)
    {
        const Instance in = random_instance(rng, 4, 4, p);
        const ScaState s = sca_loop(in.obj, default_sca_start(4, 0.1), 0.1, {});
        const RankOneFactor w = rank_one_extract(s.current.info);
        const RankOneFactor v = rank_one_extract(s.current.noise);
        CHECK(w.tightness >= 0.0);
        CHECK(w.tightness <= 1.0);
        const CovariancePair r1{w.vector * w.vector.adjoint(), v.vector * v.vector.adjoint()};
        CHECK(feasible(r1, 0.1));
        CHECK(std::isfinite(pq(in.obj, r1)));
    }
}
