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

#ifndef NOMA_BOUNDS_HPP
#define NOMA_BOUNDS_HPP

#include "noma/channel.hpp"
#include "noma/noma_core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace noma
{

struct BoundInputs
{
    double H1 = 0.0;
    double H2 = 0.0;
    double eta11 = 1.0;
    double eta22 = 1.0;
    double H21_star = 0.0;
    double beta_star = 0.0;
    double beta_q = 0.0;
    double delta_or_sat = 0.0; // delta, or the saturation gap when the CQI saturates
    LinkParams lp;

    double delta_beta() const { return beta_q - beta_star; }
};

// Rate loss from the power-allocation mismatch alone.
double lemma3_bound(const BoundInputs &bi);

// Same expression with min(beta*, beta_q) in the strong-user denominator, which also covers
// beta_q < beta*.
double lemma3_bound_corrected(const BoundInputs &bi);

// Rate loss from the quantized beam directions at fixed beta_q.
double lemma4_bound(const BoundInputs &bi);

enum class Theorem1Form
{
    appendix,  // sqrt(2 - 2 eta11) with the eta22 factor kept
    statement  // sqrt(2 - eta11), eta22 dropped
};

double theorem1_bound(const BoundInputs &bi, Theorem1Form form = Theorem1Form::appendix);

// 2 H2 sqrt(2 - 2 eta11)
double s1_gap_bound(double H2, double eta11);
// 2 H2 sqrt(2 - 2 sqrt(eta11)), the intermediate step of the same chain
double s1_gap_bound_tight(double H2, double eta11);

// 2 H2 (sqrt(2 - 2 eta11) + sqrt(2 - 2 eta22)) + delta + (1 - eta22) H2
double interference_gap_bound(double H2, double eta11, double eta22, double delta);

struct RateLossSplit
{
    double delta_r = 0.0;  // full-CSI rate at beta* minus achieved LF rate at beta_q
    double delta_r1 = 0.0; // MRT beams: rate at beta* minus rate at beta_q
    double delta_r2 = 0.0; // at beta_q: MRT beams minus codebook beams
};

// w1, w2 are the beams serving the strong and weak user of ch. nullopt unless both allocations exist.
std::optional<RateLossSplit> rate_loss_split(const ChannelRealization &ch, const ComplexVector &w1,
                                             const ComplexVector &w2, std::optional<double> beta_star,
                                             std::optional<double> beta_q, const LinkParams &lp);

// True gains of ch on the beams (w1, w2).
EffectiveGains true_gains(const ChannelRealization &ch, const ComplexVector &w1, const ComplexVector &w2);
// ch on its own MRT beams.
EffectiveGains full_csi_gains(const ChannelRealization &ch);

struct Violation
{
    std::string name;
    double slack = 0.0; // bound - actual, negative when violated
};

struct BoundReport
{
    double delta_r_actual = 0.0;
    double delta_r1_actual = 0.0;
    double delta_r2_actual = 0.0;
    double thm1_bound = 0.0;
    double thm1_statement_bound = 0.0;
    double lemma3_bound = 0.0;
    double lemma3_corrected_bound = 0.0;
    double lemma4_bound = 0.0;
    double s1_gap_actual = 0.0;
    double s1_gap_bound = 0.0;
    double s1_gap_tight_bound = 0.0;
    double interference_gap_actual = 0.0;
    double interference_gap_bound = 0.0;
    std::vector<Violation> violations;
};

inline constexpr double bound_slack = 1e-9;

struct BoundSample
{
    const ChannelRealization &ch; // labelled strong = h1
    const ComplexVector &w1;      // beam of the strong user
    const ComplexVector &w2;      // beam of the weak user
    double eta11 = 1.0;
    double eta22 = 1.0;
    double beta_star = 0.0;
    double beta_q = 0.0;
    double h22_hat = 0.0;      // quantized CQI of the weak user
    double delta_or_sat = 0.0; // amplitude error allowance for the weak user's CQI
    // Achieved LF sum rate when it was computed under a different user ordering. delta_r then
    // uses it and delta_r2 absorbs the difference.
    std::optional<double> lf_rate;
};

// Evaluates every bound and records each checked bound whose slack is below -bound_slack.
// Checked: theorem1 (appendix form), lemma3 against |delta_r1|, lemma4, s1_gap, s1_gap_tight,
// interference_gap. The corrected lemma3 and statement-form theorem are reported only.
BoundReport evaluate_bounds(const BoundSample &s, const LinkParams &lp);

} // namespace noma

#endif
