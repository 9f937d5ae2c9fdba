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

#include "noma/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace noma
{

namespace
{
double root_gap(double eta) { return std::sqrt(std::max(2.0 - 2.0 * eta, 0.0)); }

double lemma3_with(const BoundInputs &bi, double beta_denominator)
{
    const double p = bi.lp.p();
    const double s2 = bi.lp.sigma2();
    const double bracket = bi.H1 / (s2 + beta_denominator * p * bi.H1) + bi.H21_star / s2 +
                           (bi.H2 - bi.H21_star) / (s2 + p * bi.H21_star);
    return p / std::numbers::ln2 * bracket * std::abs(bi.delta_beta());
}
} // namespace

double lemma3_bound(const BoundInputs &bi) { return lemma3_with(bi, bi.beta_star); }

double lemma3_bound_corrected(const BoundInputs &bi)
{
    return lemma3_with(bi, std::min(bi.beta_star, bi.beta_q));
}

double lemma4_bound(const BoundInputs &bi)
{
    const double p = bi.lp.p();
    const double s2 = bi.lp.sigma2();
    const double bq = bi.beta_q;
    const double t1 = 2.0 * (1.0 - bq) * p * p * bq * bi.eta22 * bi.H2 * bi.H2 * root_gap(bi.eta11) / (s2 * s2);
    const double t2 = (1.0 - bq) * p * bi.H2 * (1.0 - bi.eta22) / s2;
    const double t3 = bq * p * bi.H1 * (1.0 - bi.eta11) / s2;
    return (t1 + t2 + t3) / std::numbers::ln2;
}

double theorem1_bound(const BoundInputs &bi, Theorem1Form form)
{
    const double p = bi.lp.p();
    const double s2 = bi.lp.sigma2();
    const double c = p / (s2 * std::numbers::ln2);
    const double c2 = p * p / (2.0 * s2 * s2 * std::numbers::ln2);
    const double amplitude = form == Theorem1Form::appendix
                                 ? bi.eta22 * root_gap(bi.eta11)
                                 : std::sqrt(std::max(2.0 - bi.eta11, 0.0));
    return c * bi.H1 * (1.0 - bi.eta11) + c2 * bi.H2 * bi.H2 * amplitude + c * bi.H2 * (1.0 - bi.eta22) +
           c * (bi.H1 + bi.H2) * std::abs(bi.delta_beta());
}

double s1_gap_bound(double H2, double eta11) { return 2.0 * H2 * root_gap(eta11); }

double s1_gap_bound_tight(double H2, double eta11)
{
    return 2.0 * H2 * root_gap(std::sqrt(std::max(eta11, 0.0)));
}

double interference_gap_bound(double H2, double eta11, double eta22, double delta)
{
    return 2.0 * H2 * (root_gap(eta11) + root_gap(eta22)) + delta + (1.0 - eta22) * H2;
}

EffectiveGains true_gains(const ChannelRealization &ch, const ComplexVector &w1, const ComplexVector &w2)
{
    return {coupling_gain(ch.h1, w1), coupling_gain(ch.h2, w2), coupling_gain(ch.h1, w2), coupling_gain(ch.h2, w1)};
}

EffectiveGains full_csi_gains(const ChannelRealization &ch)
{
    return {ch.H1, ch.H2, ch.H12_star, ch.H21_star};
}

std::optional<RateLossSplit> rate_loss_split(const ChannelRealization &ch, const ComplexVector &w1,
                                             const ComplexVector &w2, std::optional<double> beta_star,
                                             std::optional<double> beta_q, const LinkParams &lp)
{
    if (!beta_star || !beta_q)
        return std::nullopt;
    const EffectiveGains full = full_csi_gains(ch);
    const EffectiveGains lf = true_gains(ch, w1, w2);
    const double r_full_star = sum_rate(full, lp, *beta_star);
    const double r_full_q = sum_rate(full, lp, *beta_q);
    const double r_lf_q = sum_rate(lf, lp, *beta_q);
    RateLossSplit s;
    s.delta_r1 = r_full_star - r_full_q;
    s.delta_r2 = r_full_q - r_lf_q;
    s.delta_r = r_full_star - r_lf_q;
    return s;
}

BoundReport evaluate_bounds(const BoundSample &s, const LinkParams &lp)
{
    const ChannelRealization &ch = s.ch;
    const BoundInputs bi{ch.H1, ch.H2, s.eta11, s.eta22, ch.H21_star, s.beta_star, s.beta_q, s.delta_or_sat, lp};

    BoundReport r;
    auto split = *rate_loss_split(ch, s.w1, s.w2, s.beta_star, s.beta_q, lp);
    if (s.lf_rate)
    {
        split.delta_r = sum_rate(full_csi_gains(ch), lp, s.beta_star) - *s.lf_rate;
        split.delta_r2 = split.delta_r - split.delta_r1;
    }
    r.delta_r_actual = split.delta_r;
    r.delta_r1_actual = split.delta_r1;
    r.delta_r2_actual = split.delta_r2;
    r.thm1_bound = theorem1_bound(bi, Theorem1Form::appendix);
    r.thm1_statement_bound = theorem1_bound(bi, Theorem1Form::statement);
    r.lemma3_bound = lemma3_bound(bi);
    r.lemma3_corrected_bound = lemma3_bound_corrected(bi);
    r.lemma4_bound = lemma4_bound(bi);

    const double h21 = coupling_gain(ch.h2, s.w1);
    r.s1_gap_actual = std::abs(ch.H21_star - h21);
    r.s1_gap_bound = s1_gap_bound(ch.H2, s.eta11);
    r.s1_gap_tight_bound = s1_gap_bound_tight(ch.H2, s.eta11);

    const double h21_hat = s.h22_hat * std::min(coupling_gain(s.w2, s.w1), 1.0);
    r.interference_gap_actual = std::abs(ch.H21_star - h21_hat);
    r.interference_gap_bound = interference_gap_bound(ch.H2, s.eta11, s.eta22, s.delta_or_sat);

    auto check = [&](const char *name, double bound, double actual) {
        const double slack = bound - actual;
        if (slack < -bound_slack)
            r.violations.push_back({name, slack});
    };
    check("theorem1", r.thm1_bound, r.delta_r_actual);
    check("lemma3", r.lemma3_bound, std::abs(r.delta_r1_actual));
    check("lemma4", r.lemma4_bound, r.delta_r2_actual);
    check("s1_gap", r.s1_gap_bound, r.s1_gap_actual);
    check("s1_gap_tight", r.s1_gap_tight_bound, r.s1_gap_actual);
    check("interference_gap", r.interference_gap_bound, r.interference_gap_actual);
    return r;
}

} // namespace noma
