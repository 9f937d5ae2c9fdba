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

#include "noma/statistics.hpp"

#include "noma/channel.hpp"
#include "noma/codebook.hpp"
#include "noma/rng.hpp"
#include "noma/summation.hpp"

#include <cmath>
#include <stdexcept>

namespace noma
{

const char *to_string(CheckStatus s)
{
    switch (s)
    {
    case CheckStatus::pass:
        return "pass";
    case CheckStatus::fail:
        return "fail";
    case CheckStatus::not_defined:
        break;
    }
    return "not defined";
}

bool StatisticsReport::all_pass() const
{
    return std::none_of(checks.begin(), checks.end(), [](const StatCheck &c) { return c.status == CheckStatus::fail; });
}

const StatCheck &StatisticsReport::find(const std::string &name) const
{
    for (const auto &c : checks)
        if (c.name == name)
            return c;
    throw std::out_of_range("no statistic named " + name);
}

double eta_cdf(double x, std::size_t n_t, int b_prime)
{
    if (x <= 0.0)
        return 0.0;
    if (x >= 1.0)
        return 1.0;
    const double single = 1.0 - std::pow(1.0 - x, static_cast<double>(n_t) - 1.0);
    return std::pow(single, std::ldexp(1.0, b_prime));
}

double mean_one_minus_eta_approx(std::size_t n_t, int b_prime)
{
    return std::exp2(-static_cast<double>(b_prime) / (static_cast<double>(n_t) - 1.0));
}

double mean_one_minus_eta_exact(std::size_t n_t, int b_prime)
{
    const double m = std::ldexp(1.0, b_prime);
    const double s = static_cast<double>(n_t) / (static_cast<double>(n_t) - 1.0);
    return m * std::exp(std::lgamma(m) + std::lgamma(s) - std::lgamma(m + s));
}

double sample_correlation(const std::vector<double> &x, const std::vector<double> &y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("sample_correlation: need two equal-length series of at least 2 points.");
    CompensatedSum sx, sy;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        sx.add(x[i]);
        sy.add(y[i]);
    }
    const double n = static_cast<double>(x.size());
    const double mx = sx.value() / n;
    const double my = sy.value() / n;
    CompensatedSum sxy, sxx, syy;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy.add(dx * dy);
        sxx.add(dx * dx);
        syy.add(dy * dy);
    }
    const double den = std::sqrt(sxx.value() * syy.value());
    return den > 0.0 ? sxy.value() / den : 0.0;
}

namespace
{
StatCheck make_check(std::string name, double target, double observed, double tolerance, bool relative)
{
    StatCheck c{std::move(name), target, observed, tolerance, relative, CheckStatus::fail};
    const double err = std::abs(observed - target);
    const bool ok = relative ? err <= tolerance * std::abs(target) : err <= tolerance;
    c.status = ok ? CheckStatus::pass : CheckStatus::fail;
    return c;
}

StatCheck undefined_check(std::string name, double tolerance, bool relative)
{
    return {std::move(name), std::nan(""), std::nan(""), tolerance, relative, CheckStatus::not_defined};
}
} // namespace

StatisticsReport validate_statistics(std::size_t n_t, const std::vector<int> &b_primes, std::size_t n_samples,
                                     std::uint64_t seed)
{
    if (n_t < 1)
        throw std::invalid_argument("validate_statistics: n_t must be at least 1.");
    if (n_samples < 2)
        throw std::invalid_argument("validate_statistics: need at least 2 samples.");
    int max_bp = 0;
    for (int bp : b_primes)
    {
        if (bp < 1 || bp > max_codebook_bits)
            throw std::invalid_argument("validate_statistics: b_prime must be in [1, 20].");
        max_bp = std::max(max_bp, bp);
    }

    StatisticsReport rep;
    rep.n_t = n_t;
    rep.n_samples = n_samples;
    rep.seed = seed;

    std::vector<double> H(n_samples), sin2(n_samples);
    std::vector<std::vector<double>> eta(b_primes.size(), std::vector<double>(n_samples));
    for (std::size_t i = 0; i < n_samples; ++i)
    {
        RandomStream ch_rng = substream(seed, i, StreamTag::statistics_channel);
        const ComplexVector h1 = draw_rayleigh(n_t, ch_rng);
        const ComplexVector h2 = draw_rayleigh(n_t, ch_rng);
        const ChannelRealization ch = describe(h1, h2);
        H[i] = ch.H1;
        sin2[i] = ch.sin2_theta;
        if (max_bp == 0)
            continue;
        RandomStream cb_rng = substream(seed, i, StreamTag::statistics_codebook);
        const Codebook cb = generate_rvq(max_bp, n_t, cb_rng);
        for (std::size_t k = 0; k < b_primes.size(); ++k)
            eta[k][i] = select_pmi(h1, b_primes[k] == max_bp ? cb : cb.prefix(b_primes[k])).eta;
    }

    MomentAccumulator mH, mH2, mInvH, mInvSin2;
    for (std::size_t i = 0; i < n_samples; ++i)
    {
        mH.add(H[i]);
        mH2.add(H[i] * H[i]);
        mInvH.add(1.0 / H[i]);
        if (sin2[i] > 0.0)
            mInvSin2.add(1.0 / sin2[i]);
    }
    const double nt = static_cast<double>(n_t);
    rep.checks.push_back(make_check("mean_H", nt, mH.mean(), 0.01, true));
    rep.checks.push_back(make_check("mean_H2", nt * (nt + 1.0), mH2.mean(), 0.02, true));
    if (n_t > 1)
        rep.checks.push_back(make_check("mean_inv_H", 1.0 / (nt - 1.0), mInvH.mean(), 0.02, true));
    else
        rep.checks.push_back(undefined_check("mean_inv_H", 0.02, true));
    if (n_t > 2)
        rep.checks.push_back(make_check("mean_inv_sin2", (nt - 1.0) / (nt - 2.0), mInvSin2.mean(), 0.03, true));
    else
        rep.checks.push_back(undefined_check("mean_inv_sin2", 0.03, true));
    if (n_t > 1)
    {
        std::vector<double> s = sin2;
        const double d = ks_distance(s, [&](double x) { return std::pow(std::clamp(x, 0.0, 1.0), nt - 1.0); });
        rep.checks.push_back(make_check("sin2_cdf_ks", 0.0, d, 0.01, false));
    }
    else
        rep.checks.push_back(undefined_check("sin2_cdf_ks", 0.01, false));

    for (std::size_t k = 0; k < b_primes.size(); ++k)
    {
        const int bp = b_primes[k];
        const std::string suffix = "_bp" + std::to_string(bp);
        if (n_t < 2)
        {
            rep.checks.push_back(undefined_check("mean_one_minus_eta" + suffix, 0.15, true));
            rep.checks.push_back(undefined_check("eta_cdf_ks" + suffix, 0.01, false));
            rep.checks.push_back(undefined_check("corr_eta_H" + suffix, 0.02, false));
            continue;
        }
        MomentAccumulator gap;
        for (double e : eta[k])
            gap.add(1.0 - e);
        rep.checks.push_back(
            make_check("mean_one_minus_eta" + suffix, mean_one_minus_eta_approx(n_t, bp), gap.mean(), 0.15, true));
        rep.checks.push_back(make_check("corr_eta_H" + suffix, 0.0, sample_correlation(eta[k], H), 0.02, false));
        std::vector<double> s = eta[k];
        const double d = ks_distance(s, [&](double x) { return eta_cdf(x, n_t, bp); });
        rep.checks.push_back(make_check("eta_cdf_ks" + suffix, 0.0, d, 0.01, false));
    }
    return rep;
}

} // namespace noma
