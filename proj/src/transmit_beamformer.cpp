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

#include "mafd/transmit_beamformer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mafd
{

namespace
{

constexpr double inv_ln2 = 1.0 / std::numbers::ln2;

// Re Tr(x * a) for Hermitian a.
double trace_product(const CMat &x, const CMat &a)
{
    return (x.array() * a.transpose().array()).sum().real();
}

double term_argument(const LogTerm &t, const CovariancePair &x)
{
    return trace_product(x.info, t.on_info) + trace_product(x.noise, t.on_noise) + t.offset;
}

double sum_terms(const std::vector<LogTerm> &terms, const CovariancePair &x)
{
    double acc = 0.0;
    for (const auto &t : terms)
    {
        const double arg = term_argument(t, x);
        if (!(arg > 0.0))
            throw std::runtime_error("non-positive log argument in secrecy objective");
        acc += t.weight * std::log2(arg);
    }
    return acc;
}

CovariancePair grad_terms(const std::vector<LogTerm> &terms, const CovariancePair &x, int n)
{
    CovariancePair g{CMat::Zero(n, n), CMat::Zero(n, n)};
    for (const auto &t : terms)
    {
        const double scale = t.weight * inv_ln2 / term_argument(t, x);
        g.info += scale * t.on_info;
        g.noise += scale * t.on_noise;
    }
    return g;
}

CMat hermitian(const CMat &x) { return 0.5 * (x + x.adjoint()); }

// Projection of `values` onto {v >= 0, sum(v) <= budget}.
std::vector<double> project_capped_simplex(std::vector<double> values, double budget)
{
    double total = 0.0;
    for (auto &v : values)
    {
        v = std::max(v, 0.0);
        total += v;
    }
    if (total <= budget)
        return values;

    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double tau = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k)
    {
        cumulative += sorted[k];
        const double candidate = (cumulative - budget) / static_cast<double>(k + 1);
        if (k + 1 == sorted.size() || sorted[k + 1] <= candidate)
        {
            tau = candidate;
            break;
        }
    }
    for (auto &v : values)
        v = std::max(v - tau, 0.0);
    return values;
}

CovariancePair scaled(const CovariancePair &x, double s) { return {s * x.info, s * x.noise}; }

CovariancePair axpy(const CovariancePair &x, double t, const CovariancePair &g)
{
    return {x.info + t * g.info, x.noise + t * g.noise};
}

} // namespace

EffectiveChannels effective_channels(const ChannelSet &ch, const CVec &receive, double sic)
{
    EffectiveChannels e;
    e.h1 = receive.dot(ch.ub);
    e.h2 = std::sqrt(sic) * (ch.si.adjoint() * receive);
    e.h2_outer = e.h2 * e.h2.adjoint();
    e.bd_outer = ch.bd * ch.bd.adjoint();
    e.be_outer = ch.be * ch.be.adjoint();
    e.ud = ch.ud;
    e.ue = ch.ue;
    return e;
}

SecrecyObjective secrecy_objective(const EffectiveChannels &e, const LinkParams &p, bool artificial_noise)
{
    const auto n = e.bd_outer.rows();
    const CMat zero = CMat::Zero(n, n);
    const double ul_at_user = std::norm(e.h1) * p.power_ul;
    const double ul_at_dl = std::norm(e.ud) * p.power_ul;
    const double ul_at_eve = std::norm(e.ue) * p.power_ul;

    SecrecyObjective obj;
    obj.artificial_noise = artificial_noise;
    obj.n_tx = static_cast<int>(n);

    if (p.mode == DuplexMode::full)
    {
        obj.plus = {
            {1.0, e.h2_outer, e.h2_outer, ul_at_user + p.noise_bs},
            {1.0, e.bd_outer, e.bd_outer, ul_at_dl + p.noise_dl},
            {1.0, e.be_outer, e.be_outer, p.noise_eve},
            {1.0, zero, e.be_outer, ul_at_eve + p.noise_eve},
        };
        obj.minus = {
            {1.0, e.h2_outer, e.h2_outer, p.noise_bs},
            {1.0, zero, e.bd_outer, ul_at_dl + p.noise_dl},
            {2.0, e.be_outer, e.be_outer, ul_at_eve + p.noise_eve},
        };
    }
    else
    {
        // Uplink slot has no dependence on (W, V); it enters as constant terms.
        obj.plus = {
            {0.5, zero, zero, ul_at_user + p.noise_bs},
            {0.5, zero, zero, p.noise_eve},
            {0.5, e.bd_outer, e.bd_outer, p.noise_dl},
            {0.5, zero, e.be_outer, p.noise_eve},
        };
        obj.minus = {
            {0.5, zero, zero, p.noise_bs},
            {0.5, zero, zero, ul_at_eve + p.noise_eve},
            {0.5, zero, e.bd_outer, p.noise_dl},
            {0.5, e.be_outer, e.be_outer, p.noise_eve},
        };
    }
    return obj;
}

double objective_p(const SecrecyObjective &obj, const CovariancePair &x) { return sum_terms(obj.plus, x); }
double objective_q(const SecrecyObjective &obj, const CovariancePair &x) { return sum_terms(obj.minus, x); }

CovariancePair grad_p(const SecrecyObjective &obj, const CovariancePair &x)
{
    return grad_terms(obj.plus, x, obj.n_tx);
}

CovariancePair grad_q(const SecrecyObjective &obj, const CovariancePair &x)
{
    return grad_terms(obj.minus, x, obj.n_tx);
}

double inner_product(const CovariancePair &a, const CovariancePair &b)
{
    return (a.info.array().conjugate() * b.info.array()).sum().real() +
           (a.noise.array().conjugate() * b.noise.array()).sum().real();
}

double linearized_objective(const SecrecyObjective &obj, const CovariancePair &x, const CovariancePair &anchor)
{
    const CovariancePair g = grad_q(obj, anchor);
    const CovariancePair step{x.info - anchor.info, x.noise - anchor.noise};
    return objective_p(obj, x) - (objective_q(obj, anchor) + inner_product(g, step));
}

CovariancePair project_feasible(const CovariancePair &x, double budget, bool artificial_noise)
{
    const auto n = x.info.rows();
    if (budget <= 0.0)
        return {CMat::Zero(n, n), CMat::Zero(n, n)};

    Eigen::SelfAdjointEigenSolver<CMat> eig_w(hermitian(x.info));
    std::vector<double> values(eig_w.eigenvalues().data(), eig_w.eigenvalues().data() + n);

    Eigen::SelfAdjointEigenSolver<CMat> eig_v;
    if (artificial_noise)
    {
        eig_v.compute(hermitian(x.noise));
        values.insert(values.end(), eig_v.eigenvalues().data(), eig_v.eigenvalues().data() + n);
    }

    values = project_capped_simplex(std::move(values), budget);

    auto rebuild = [n](const Eigen::SelfAdjointEigenSolver<CMat> &eig, const double *lam)
    {
        Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(lam, n);
        const CMat &u = eig.eigenvectors();
        CMat out = u * d.cast<cplx>().asDiagonal() * u.adjoint();
        return hermitian(out);
    };

    CovariancePair out;
    out.info = rebuild(eig_w, values.data());
    out.noise = artificial_noise ? rebuild(eig_v, values.data() + n) : CMat::Zero(n, n);
    return out;
}

CovariancePair solve_inner_convex(const SecrecyObjective &obj, const CovariancePair &anchor, double budget,
                                  const InnerSolverOptions &opts)
{
    const int n = obj.n_tx;
    if (budget <= 0.0)
        return {CMat::Zero(n, n), CMat::Zero(n, n)};

    // Work in X / budget so that the feasible set has unit trace budget.
    SecrecyObjective norm = obj;
    for (auto *terms : {&norm.plus, &norm.minus})
        for (auto &t : *terms)
        {
            t.on_info *= budget;
            t.on_noise *= budget;
        }
    const bool an = obj.artificial_noise;
    const CovariancePair linear = grad_q(norm, scaled(anchor, 1.0 / budget));

    auto value = [&](const CovariancePair &x) { return objective_p(norm, x) - inner_product(linear, x); };
    auto gradient = [&](const CovariancePair &x)
    {
        CovariancePair g = axpy(grad_p(norm, x), -1.0, linear);
        if (!an)
            g.noise.setZero();
        return g;
    };

    CovariancePair x = project_feasible(scaled(anchor, 1.0 / budget), 1.0, an);
    double fx = value(x);
    CovariancePair g = gradient(x);
    double step = 1.0;

    for (int it = 0; it < opts.max_iterations; ++it)
    {
        const CovariancePair probe = project_feasible(axpy(x, 1.0, g), 1.0, an);
        const CovariancePair residual{x.info - probe.info, x.noise - probe.noise};
        if (std::sqrt(inner_product(residual, residual)) <= opts.stationarity_tolerance)
            return scaled(x, budget);

        CovariancePair next;
        CovariancePair delta;
        double f_next = fx;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt)
        {
            next = project_feasible(axpy(x, step, g), 1.0, an);
            delta = {next.info - x.info, next.noise - x.noise};
            f_next = value(next);
            if (f_next >= fx + 1e-4 * inner_product(g, delta))
            {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted)
            return scaled(x, budget); // no ascent direction left at working precision

        const CovariancePair g_next = gradient(next);
        const CovariancePair dg{g_next.info - g.info, g_next.noise - g.noise};
        const double sy = inner_product(delta, dg);
        const double ss = inner_product(delta, delta);
        step = sy < 0.0 ? ss / -sy : 2.0 * step;
        step = std::clamp(step, 1e-12, 1e12);

        const double change = std::fabs(f_next - fx) / std::max(1.0, std::fabs(fx));
        x = std::move(next);
        g = g_next;
        fx = f_next;
        if (change <= opts.relative_tolerance)
            return scaled(x, budget);
    }
    throw NonConvergenceError("inner convex solver exceeded its iteration cap", scaled(x, budget));
}

ScaState sca_loop(const SecrecyObjective &obj, const CovariancePair &initial, double budget, const ScaOptions &opts)
{
    ScaState state;
    state.current = initial;
    if (!obj.artificial_noise)
        state.current.noise.setZero();
    state.history.push_back(objective_p(obj, state.current) - objective_q(obj, state.current));

    for (int m = 1; m <= opts.max_iterations; ++m)
    {
        state.iterations = m;
        CovariancePair next = solve_inner_convex(obj, state.current, budget, opts.inner);
        const double value = objective_p(obj, next) - objective_q(obj, next);
        const double previous = state.history.back();
        if (value < previous)
        {
            // Round-off can only cost ~1e-15 here; keep the incumbent.
            state.history.push_back(previous);
            state.converged = true;
            break;
        }
        state.current = std::move(next);
        state.history.push_back(value);
        if (value - previous < opts.tolerance)
        {
            state.converged = true;
            break;
        }
    }
    return state;
}

CovariancePair default_sca_start(int n_tx, double budget, bool artificial_noise)
{
    const CMat iso = (budget / (4.0 * n_tx)) * CMat::Identity(n_tx, n_tx);
    return {iso, artificial_noise ? iso : CMat::Zero(n_tx, n_tx)};
}

RankOneFactor rank_one_extract(const CMat &cov)
{
    const auto n = cov.rows();
    Eigen::SelfAdjointEigenSolver<CMat> eig(hermitian(cov));
    const double top = eig.eigenvalues()(n - 1);
    if (!(top > 0.0))
        return {CVec::Zero(n), 0.0};

    CVec u = eig.eigenvectors().col(n - 1);
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(u(i)) > 1e-12)
        {
            u *= std::conj(u(i)) / std::abs(u(i));
            break;
        }
    const double second = n > 1 ? std::max(eig.eigenvalues()(n - 2), 0.0) : 0.0;
    return {std::sqrt(top) * u, second / std::max(top, 1e-300)};
}

} // namespace mafd
