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

#include "noma/harness.hpp"

#include <cmath>

namespace noma
{

const char *to_string(DeltaSource s)
{
    switch (s)
    {
    case DeltaSource::trained:
        return "trained";
    case DeltaSource::table1:
        return "table1";
    case DeltaSource::explicit_value:
        return "explicit";
    }
    return "trained";
}

const char *to_string(CodebookMode m)
{
    return m == CodebookMode::per_sample ? "per_sample" : "fixed";
}

DeltaSource parse_delta_source(const std::string &s)
{
    if (s == "trained")
        return DeltaSource::trained;
    if (s == "table1")
        return DeltaSource::table1;
    if (s == "explicit")
        return DeltaSource::explicit_value;
    throw ConfigError("delta_source must be one of trained, table1, explicit (got '" + s + "')");
}

CodebookMode parse_codebook_mode(const std::string &s)
{
    if (s == "per_sample")
        return CodebookMode::per_sample;
    if (s == "fixed")
        return CodebookMode::fixed;
    throw ConfigError("codebook_mode must be per_sample or fixed (got '" + s + "')");
}

FeasibilityMode parse_feasibility_mode(const std::string &s)
{
    if (s == "operational")
        return FeasibilityMode::operational;
    if (s == "conservative")
        return FeasibilityMode::conservative;
    throw ConfigError("feasibility_mode must be operational or conservative (got '" + s + "')");
}

void ExperimentConfig::validate() const
{
    if (n_t < 1)
        throw ConfigError("n_t must be at least 1");
    if (b < 1 || b > max_cqi_bits)
        throw ConfigError("b must be in [1, 20]");
    if (b_prime < 1 || b_prime > max_codebook_bits)
        throw ConfigError("b_prime must be in [1, 20]");
    if (!std::isfinite(snr_db))
        throw ConfigError("snr_db must be finite");
    if (!(r_th >= 0.0) || !std::isfinite(r_th))
        throw ConfigError("r_th must be nonnegative and finite");
    if (n_samples < 1)
        throw ConfigError("n_samples must be at least 1");
    if (delta_source == DeltaSource::explicit_value && (!(explicit_delta > 0.0) || !std::isfinite(explicit_delta)))
        throw ConfigError("explicit delta must be positive and finite");
    if (delta_source == DeltaSource::table1 && !table1_delta(b, b_prime))
        throw ConfigError("table1 delta is only defined for b, b_prime in [1, 6]");
    if (delta_source == DeltaSource::trained && train_samples < 1)
        throw ConfigError("train_samples must be at least 1");
}

double resolve_delta(const ExperimentConfig &cfg, DeltaCache *cache)
{
    cfg.validate();
    switch (cfg.delta_source)
    {
    case DeltaSource::table1:
        return *table1_delta(cfg.b, cfg.b_prime);
    case DeltaSource::explicit_value:
        return cfg.explicit_delta;
    case DeltaSource::trained:
        break;
    }
    if (cache)
        return cache->get_or_train(cfg.b, cfg.b_prime, cfg.n_t, cfg.seed, cfg.train_samples);
    return train_delta(cfg.b, cfg.b_prime, cfg.n_t, cfg.train_samples, cfg.seed);
}

std::pair<ComplexVector, ComplexVector> sample_channels(std::uint64_t seed, std::uint64_t index, std::size_t n_t)
{
    RandomStream rng = substream(seed, index, StreamTag::channel);
    ComplexVector h_a = draw_rayleigh(n_t, rng);
    ComplexVector h_b = draw_rayleigh(n_t, rng);
    return {std::move(h_a), std::move(h_b)};
}

std::pair<Codebook, Codebook> sample_codebooks(std::uint64_t seed, std::uint64_t index, int b_prime, std::size_t n_t,
                                               bool independent_users)
{
    RandomStream rng_a = substream(seed, index, StreamTag::codebook);
    Codebook cb_a = generate_rvq(b_prime, n_t, rng_a);
    if (!independent_users)
    {
        Codebook cb_b = cb_a;
        return {std::move(cb_a), std::move(cb_b)};
    }
    RandomStream rng_b = substream(seed, index, StreamTag::codebook_user2);
    Codebook cb_b = generate_rvq(b_prime, n_t, rng_b);
    return {std::move(cb_a), std::move(cb_b)};
}

Experiment::Experiment(ExperimentConfig cfg, DeltaCache *cache)
    : Experiment(cfg, resolve_delta(cfg, cache))
{
}

Experiment::Experiment(ExperimentConfig cfg, double delta)
    : cfg_(std::move(cfg)), lp_(cfg_.link()), quantizer_(delta, cfg_.b)
{
    cfg_.validate();
    if (cfg_.codebook_mode == CodebookMode::fixed)
        fixed_ = sample_codebooks(cfg_.seed, run_level_index, cfg_.b_prime, cfg_.n_t, cfg_.independent_user_codebooks);
}

SampleOutcome Experiment::run_sample(std::uint64_t index) const
{
    const auto [h_a, h_b] = sample_channels(cfg_.seed, index, cfg_.n_t);
    if (fixed_)
        return evaluate(h_a, h_b, fixed_->first, fixed_->second);
    const auto [cb_a, cb_b] =
        sample_codebooks(cfg_.seed, index, cfg_.b_prime, cfg_.n_t, cfg_.independent_user_codebooks);
    return evaluate(h_a, h_b, cb_a, cb_b);
}

SampleOutcome Experiment::evaluate(const ComplexVector &h_a, const ComplexVector &h_b, const Codebook &cb_a,
                                   const Codebook &cb_b) const
{
    SampleOutcome out;

    // UE side: PMI and quantized CQI.
    const PmiSelection sel_a = select_pmi(h_a, cb_a);
    const PmiSelection sel_b = select_pmi(h_b, cb_b);
    const ComplexVector w_a = cb_a.vector(sel_a.index);
    const ComplexVector w_b = cb_b.vector(sel_b.index);

    FeedbackState &fb = out.feedback;
    fb.pmi_a = sel_a.index;
    fb.pmi_b = sel_b.index;
    fb.cqi_a = quantizer_.quantize(sel_a.effective_gain);
    fb.cqi_b = quantizer_.quantize(sel_b.effective_gain);
    fb.saturated_a = quantizer_.saturates(sel_a.effective_gain);
    fb.saturated_b = quantizer_.saturates(sel_b.effective_gain);
    out.excluded = cfg_.condition_on_unsaturated && (fb.saturated_a || fb.saturated_b);

    // Full CSI: order by true norms, MRT beams.
    out.strong_full = strong_user_order(h_a.norm_squared(), h_b.norm_squared());
    const bool a_strong_full = out.strong_full == StrongUser::first;
    const ChannelRealization ch = a_strong_full ? describe(h_a, h_b) : describe(h_b, h_a);
    const PmiSelection &sel1 = a_strong_full ? sel_a : sel_b;
    const PmiSelection &sel2 = a_strong_full ? sel_b : sel_a;
    out.H1 = ch.H1;
    out.H2 = ch.H2;
    out.rho = ch.rho;
    out.cos_theta = ch.cos_theta;
    out.eta11 = sel1.eta;
    out.eta22 = sel2.eta;
    out.geometric_feasible = feasibility_geometric(ch, lp_);

    out.full_solution = solve_beta(full_csi_gains(ch), lp_);
    out.feasible_full = out.full_solution.feasible;
    if (out.feasible_full)
    {
        out.full_rates = rates(full_csi_gains(ch), lp_, *out.full_solution.beta_star);
        out.full_sum_rate = out.full_rates->r_sum;
    }
    else
    {
        out.fallback_full = true;
        out.full_sum_rate = tdma_rate(ch.H1, ch.H2, lp_);
    }

    // BS side: order by quantized CQI, reconstruct gains, allocate power.
    fb.strong = strong_user_order(fb.cqi_a.value, fb.cqi_b.value);
    const bool a_strong_lf = fb.strong == StrongUser::first;
    out.order_mismatch = a_strong_lf != a_strong_full;
    const ComplexVector &w_s = a_strong_lf ? w_a : w_b;
    const ComplexVector &w_w = a_strong_lf ? w_b : w_a;
    const double cqi_s = a_strong_lf ? fb.cqi_a.value : fb.cqi_b.value;
    const double cqi_w = a_strong_lf ? fb.cqi_b.value : fb.cqi_a.value;
    fb.g_hat = reconstruct_gains(cqi_s, cqi_w, w_s, w_w);

    out.lf_solution = solve_beta(fb.g_hat, lp_);
    out.feasible_lf = feasibility_limited_feedback(fb.g_hat, lp_, cfg_.feasibility_mode, quantizer_.delta());
    if (out.feasible_lf)
    {
        const ChannelRealization ch_lf = a_strong_lf ? describe(h_a, h_b) : describe(h_b, h_a);
        out.lf_rates = rates(true_gains(ch_lf, w_s, w_w), lp_, *out.lf_solution.beta_star);
        out.lf_sum_rate = out.lf_rates->r_sum;
    }
    else
    {
        out.fallback_lf = true;
        out.lf_sum_rate = tdma_rate(sel_a.effective_gain, sel_b.effective_gain, lp_);
    }

    out.feasible_both = out.feasible_full && out.feasible_lf;
    if (!out.feasible_both)
        return out;

    const double beta_star = *out.full_solution.beta_star;
    const double beta_q = *out.lf_solution.beta_star;
    out.delta_r = out.full_sum_rate - out.lf_sum_rate;
    out.delta_beta = beta_q - beta_star;

    const bool weak_saturated = a_strong_full ? fb.saturated_b : fb.saturated_a;
    const double weak_gain = sel2.effective_gain;
    const BoundSample bs{ch,
                         a_strong_full ? w_a : w_b,
                         a_strong_full ? w_b : w_a,
                         sel1.eta,
                         sel2.eta,
                         beta_star,
                         beta_q,
                         (a_strong_full ? fb.cqi_b : fb.cqi_a).value,
                         weak_saturated ? quantizer_.saturation_gap(weak_gain) : quantizer_.delta(),
                         out.lf_sum_rate};
    out.bounds = evaluate_bounds(bs, lp_);
    return out;
}

} // namespace noma
