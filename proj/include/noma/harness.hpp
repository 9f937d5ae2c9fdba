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

#ifndef NOMA_HARNESS_HPP
#define NOMA_HARNESS_HPP

#include "noma/bounds.hpp"
#include "noma/channel.hpp"
#include "noma/codebook.hpp"
#include "noma/noma_core.hpp"
#include "noma/quantizer.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace noma
{

class ConfigError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

enum class DeltaSource
{
    trained,
    table1,
    explicit_value
};

enum class CodebookMode
{
    per_sample,
    fixed
};

const char *to_string(DeltaSource s);
const char *to_string(CodebookMode m);
DeltaSource parse_delta_source(const std::string &s);
CodebookMode parse_codebook_mode(const std::string &s);
FeasibilityMode parse_feasibility_mode(const std::string &s);

struct ExperimentConfig
{
    std::size_t n_t = 2;
    int b = 3;
    int b_prime = 3;
    double snr_db = 10.0;
    double r_th = 1.0;
    std::size_t n_samples = 100000;
    std::uint64_t seed = 7;
    DeltaSource delta_source = DeltaSource::trained;
    double explicit_delta = 0.0;
    CodebookMode codebook_mode = CodebookMode::per_sample;
    FeasibilityMode feasibility_mode = FeasibilityMode::operational;
    bool independent_user_codebooks = false;
    bool condition_on_unsaturated = false;
    std::size_t train_samples = 100000;

    // Throws ConfigError.
    void validate() const;
    LinkParams link() const { return LinkParams::from_snr_db(snr_db, r_th); }

    bool operator==(const ExperimentConfig &) const = default;
};

// Step for the config's (b, b_prime): trained (through cache when given), published table, or explicit.
double resolve_delta(const ExperimentConfig &cfg, DeltaCache *cache = nullptr);

// What the BS learns from the two users and what it derives from it.
struct FeedbackState
{
    std::size_t pmi_a = 0; // codeword index fed back by the first drawn user
    std::size_t pmi_b = 0;
    QuantizedGain cqi_a;
    QuantizedGain cqi_b;
    bool saturated_a = false;
    bool saturated_b = false;
    StrongUser strong = StrongUser::first; // decided from the quantized CQI
    EffectiveGains g_hat;                  // reconstructed, strong user first
};

struct SampleOutcome
{
    // Geometry under the full-CSI labelling (strong user by true norm).
    double H1 = 0.0;
    double H2 = 0.0;
    double rho = 0.0;
    double cos_theta = 0.0;
    double eta11 = 0.0;
    double eta22 = 0.0;

    StrongUser strong_full = StrongUser::first;
    bool order_mismatch = false;
    bool geometric_feasible = false;

    bool feasible_full = false;
    bool feasible_lf = false;
    bool feasible_both = false;

    BetaSolution full_solution;
    std::optional<RateReport> full_rates; // NOMA rates when feasible
    double full_sum_rate = 0.0;           // NOMA or TDMA fallback

    FeedbackState feedback;
    BetaSolution lf_solution;
    std::optional<RateReport> lf_rates; // achieved with true gains at beta_q
    double lf_sum_rate = 0.0;           // NOMA or TDMA fallback

    bool fallback_full = false;
    bool fallback_lf = false;
    bool fallback_used() const { return fallback_full || fallback_lf; }

    bool excluded = false; // dropped by condition_on_unsaturated

    std::optional<double> delta_r;
    std::optional<double> delta_beta;
    std::optional<BoundReport> bounds;
};

class Experiment
{
  public:
    // Validates the config and resolves delta. The fixed codebooks, when used, are drawn from the
    // run-level substream.
    explicit Experiment(ExperimentConfig cfg, DeltaCache *cache = nullptr);
    Experiment(ExperimentConfig cfg, double delta);

    const ExperimentConfig &config() const { return cfg_; }
    const LinkParams &link() const { return lp_; }
    const GainQuantizer &quantizer() const { return quantizer_; }
    double delta() const { return quantizer_.delta(); }

    SampleOutcome run_sample(std::uint64_t index) const;

    // Pipeline on given channels and codebooks (cb_a for the first user, cb_b for the second).
    SampleOutcome evaluate(const ComplexVector &h_a, const ComplexVector &h_b, const Codebook &cb_a,
                           const Codebook &cb_b) const;

  private:
    ExperimentConfig cfg_;
    LinkParams lp_;
    GainQuantizer quantizer_;
    std::optional<std::pair<Codebook, Codebook>> fixed_;
};

// Channel pair of a sample index: both users from the channel substream of that index.
std::pair<ComplexVector, ComplexVector> sample_channels(std::uint64_t seed, std::uint64_t index, std::size_t n_t);

// Codebooks of a sample index (or run_level_index for a fixed codebook). Same stream for every
// b_prime, so smaller codebooks are prefixes of larger ones.
std::pair<Codebook, Codebook> sample_codebooks(std::uint64_t seed, std::uint64_t index, int b_prime, std::size_t n_t,
                                               bool independent_users);

} // namespace noma

#endif
