// SPDX-License-Identifier: Apache-2.0
//
// noma-limfb: link-level simulator for limited-feedback MISO-NOMA downlink
// Copyright (C) 2026 The noma-limfb authors
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

#include "noma/noma_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace noma
{

namespace
{
constexpr double inf = std::numeric_limits<double>::infinity();

// num / den with the sign of num kept when den = 0.
double bound_ratio(double num, double den)
{
    if (den == 0.0)
        return num >= 0.0 ? inf : -inf;
    return num / den;
}

void check_beta(double beta)
{
    if (!(beta >= 0.0 && beta <= 1.0))
        throw std::invalid_argument("beta must lie in [0, 1].");
}
} // namespace

LinkParams::LinkParams(double p, double sigma2, double r_th)
    : p_(p), sigma2_(sigma2), r_th_(r_th), epsilon_(std::exp2(r_th) - 1.0)
{
    if (!(p > 0.0) || !std::isfinite(p))
        throw std::invalid_argument("LinkParams: p must be positive and finite.");
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw std::invalid_argument("LinkParams: sigma2 must be positive and finite.");
    if (!(r_th >= 0.0) || !std::isfinite(r_th))
        throw std::invalid_argument("LinkParams: r_th must be nonnegative and finite.");
}

LinkParams LinkParams::from_snr_db(double snr_db, double r_th)
{
    return LinkParams(std::pow(10.0, snr_db / 10.0), 1.0, r_th);
}

void validate(const EffectiveGains &g)
{
    for (double v : {g.g11, g.g22, g.g12, g.g21})
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("EffectiveGains: gains must be finite and nonnegative.");
}

SinrTriple sinr_all(const EffectiveGains &g, const LinkParams &lp, double beta)
{
    check_beta(beta);
    const double p = lp.p();
    const double s2 = lp.sigma2();
    return {beta * p * g.g11 / s2, (1.0 - beta) * p * g.g22 / (beta * p * g.g21 + s2),
            (1.0 - beta) * p * g.g12 / (beta * p * g.g11 + s2)};
}

BetaBounds beta_bounds(const EffectiveGains &g, const LinkParams &lp)
{
    const double p = lp.p();
    const double es2 = lp.epsilon() * lp.sigma2();
    const double eps = lp.epsilon();
    BetaBounds b;
    b.beta1_min = g.g11 == 0.0 ? inf : es2 / (p * g.g11);
    b.beta2_max = bound_ratio(p * g.g22 - es2, p * g.g22 + eps * p * g.g21);
    b.beta_sic_max = bound_ratio(p * g.g12 - es2, p * g.g12 + eps * p * g.g11);
    return b;
}

StationaryQuadratic stationary_quadratic(const EffectiveGains &g, const LinkParams &lp)
{
    const double G11 = lp.p() * g.g11;
    const double G21 = lp.p() * g.g21;
    const double G22 = lp.p() * g.g22;
    const double s2 = lp.sigma2();
    return {G11 * G21 * (G22 - G21), 2.0 * G11 * s2 * (G22 - G21), s2 * s2 * (G22 - G11) + s2 * (G21 - G11) * G22};
}

std::vector<double> stationary_roots(const EffectiveGains &g, const LinkParams &lp)
{
    const auto [a, b, c] = stationary_quadratic(g, lp);
    std::vector<double> roots;
    if (a == 0.0)
    {
        if (b != 0.0)
            roots.push_back(-c / b);
        return roots;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0)
        return roots;
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    roots.push_back(q / a);
    if (q != 0.0)
        roots.push_back(c / q);
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::optional<double> stationary_beta(const EffectiveGains &g, const LinkParams &lp)
{
    std::optional<double> best;
    double best_rate = -inf;
    for (double r : stationary_roots(g, lp))
    {
        if (!(r > 0.0 && r < 1.0))
            continue;
        const double rate = sum_rate(g, lp, r);
        if (rate > best_rate)
        {
            best = r;
            best_rate = rate;
        }
    }
    return best;
}

const char *to_string(Candidate c)
{
    switch (c)
    {
    case Candidate::min:
        return "min";
    case Candidate::stationary:
        return "stationary";
    case Candidate::max:
        return "max";
    case Candidate::none:
        break;
    }
    return "none";
}

double BetaSolution::interval_low() const { return std::max(0.0, beta1_min); }

double BetaSolution::interval_high() const { return std::min({beta2_max, beta_sic_max, 1.0}); }

BetaSolution solve_beta(const EffectiveGains &g, const LinkParams &lp)
{
    validate(g);
    const BetaBounds bb = beta_bounds(g, lp);
    BetaSolution sol;
    sol.beta1_min = bb.beta1_min;
    sol.beta2_max = bb.beta2_max;
    sol.beta_sic_max = bb.beta_sic_max;
    sol.beta0 = stationary_beta(g, lp);

    const double lo = sol.interval_low();
    const double hi = sol.interval_high();
    if (!(sol.beta1_min <= 1.0) || !(lo <= hi))
        return sol;
    sol.feasible = true;

    // Ascending in beta so that strict improvement keeps the smaller beta on ties.
    struct Option
    {
        double beta;
        Candidate kind;
    };
    std::vector<Option> options{{lo, Candidate::min}};
    if (sol.beta0 && *sol.beta0 > lo && *sol.beta0 < hi)
        options.push_back({*sol.beta0, Candidate::stationary});
    if (hi > lo)
        options.push_back({hi, Candidate::max});

    double best_rate = -inf;
    for (const auto &o : options)
    {
        const double r = sum_rate(g, lp, o.beta);
        if (r > best_rate)
        {
            best_rate = r;
            sol.beta_star = o.beta;
            sol.active_candidate = o.kind;
        }
    }
    return sol;
}

RateReport rates(const EffectiveGains &g, const LinkParams &lp, double beta)
{
    const SinrTriple s = sinr_all(g, lp, beta);
    RateReport r;
    r.sinr1 = s.sinr1;
    r.sinr2 = s.sinr2;
    r.sinr_1to2 = s.sinr_1to2;
    r.r1 = std::log2(1.0 + s.sinr1);
    r.r2 = std::log2(1.0 + s.sinr2);
    r.r_sum = r.r1 + r.r2;
    return r;
}

double sum_rate(const EffectiveGains &g, const LinkParams &lp, double beta)
{
    return rates(g, lp, beta).r_sum;
}

EffectiveGains reconstruct_gains(double h11_hat, double h22_hat, const ComplexVector &w1, const ComplexVector &w2)
{
    if (!(h11_hat >= 0.0) || !(h22_hat >= 0.0))
        throw std::invalid_argument("reconstruct_gains: quantized gains must be nonnegative.");
    const double c2 = std::min(coupling_gain(w1, w2), 1.0);
    return {h11_hat, h22_hat, h11_hat * c2, h22_hat * c2};
}

bool feasibility_geometric(double H1, double rho, double cos_theta, const LinkParams &lp)
{
    const double eps = lp.epsilon();
    const double es2 = eps * lp.sigma2();
    const double pH1 = lp.p() * H1;
    if (!(pH1 > es2))
        return false;
    if (eps == 0.0)
        return true;
    const double cos_min2 = es2 * (eps + 1.0) / (pH1 - es2);
    if (!(cos_theta * cos_theta > cos_min2))
        return false;
    const double inner = pH1 / es2 - 1.0 - eps * cos_theta * cos_theta;
    if (!(inner > 0.0))
        return false;
    return rho * rho * inner > 1.0;
}

bool feasibility_geometric(const ChannelRealization &ch, const LinkParams &lp)
{
    return feasibility_geometric(ch.H1, ch.rho, ch.cos_theta, lp);
}

const char *to_string(FeasibilityMode m)
{
    return m == FeasibilityMode::operational ? "operational" : "conservative";
}

bool feasibility_limited_feedback(const EffectiveGains &g_hat, const LinkParams &lp, FeasibilityMode mode,
                                  double delta)
{
    if (g_hat.g11 == 0.0 || g_hat.g22 == 0.0)
        return false;
    if (!(lp.p() * g_hat.g11 >= lp.epsilon() * lp.sigma2()))
        return false;
    if (!solve_beta(g_hat, lp).feasible)
        return false;
    if (mode == FeasibilityMode::operational)
        return true;
    if (!(delta >= 0.0))
        throw std::invalid_argument("feasibility_limited_feedback: delta must be nonnegative.");
    const double h1_low = g_hat.g11 - delta;
    const double cos_hat = std::sqrt(std::min(g_hat.g21 / g_hat.g22, 1.0));
    const double rho_hat = std::sqrt(g_hat.g22 / g_hat.g11);
    return feasibility_geometric(h1_low, rho_hat, cos_hat, lp);
}

StrongUser strong_user_order(double g1_cqi, double g2_cqi)
{
    return g2_cqi > g1_cqi ? StrongUser::second : StrongUser::first;
}

double tdma_rate(double g11, double g22, const LinkParams &lp)
{
    const double snr = lp.p() / lp.sigma2();
    return 0.5 * std::log2(1.0 + snr * g11) + 0.5 * std::log2(1.0 + snr * g22);
}

} // namespace noma
