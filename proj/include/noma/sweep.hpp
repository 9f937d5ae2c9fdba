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

#ifndef NOMA_SWEEP_HPP
#define NOMA_SWEEP_HPP

#include "noma/harness.hpp"

#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace noma
{

struct SweepRow
{
    int b = 0;
    int b_prime = 0;
    std::size_t n_t = 0;
    double snr_db = 0.0;
    double r_th = 0.0;
    std::size_t n_samples = 0; // samples included (all, unless conditioning on unsaturated CQI)
    std::uint64_t seed = 0;
    double delta = 0.0;

    double mean_rate_loss = 0.0; // over both-feasible samples
    double ci_rate_loss = 0.0;
    double mean_sum_rate_lf = 0.0; // TDMA fallback included
    double ci_sum_rate_lf = 0.0;
    double mean_sum_rate_full = 0.0;
    double ci_sum_rate_full = 0.0;
    double frac_feasible_full = 0.0;
    double frac_feasible_lf = 0.0;
    double frac_feasible_both = 0.0;
    double mean_abs_delta_beta = 0.0;
    std::size_t n_both = 0;
    std::size_t bound_violations = 0; // samples with at least one checked bound violated
    std::size_t order_mismatches = 0;
};

inline constexpr std::size_t sweep_block_size = 1024;

// One row per (b, b_prime), b varying fastest within each b_prime. Every cell sees the same channel
// draws and nested codebooks for a given sample index. Partial sums are formed per fixed block of
// samples and reduced in block order, so the result does not depend on workers.
std::vector<SweepRow> run_sweep(const ExperimentConfig &base, const std::vector<int> &b_grid,
                                const std::vector<int> &bp_grid, unsigned workers, DeltaCache *cache = nullptr);

// Trains (or reads from cache) every missing delta of the grid, sharing training samples per b_prime.
void pretrain_deltas(const ExperimentConfig &base, const std::vector<int> &b_grid, const std::vector<int> &bp_grid,
                     DeltaCache &cache);

extern const char *const sweep_csv_header;
void write_sweep_csv(const std::vector<SweepRow> &rows, std::ostream &out);
void write_sweep_csv(const std::vector<SweepRow> &rows, const std::string &path);

// Writes rate_loss_bprime<k>.dat and sum_rate_lf_bprime<k>.dat for every b_prime (columns B value ci)
// and sum_rate_full.dat. Returns the file paths. Empty input throws ConfigError.
std::vector<std::string> emit_plot_data(const std::vector<SweepRow> &rows, const std::string &dir);

struct BoundsCheckCell
{
    std::size_t n_t = 0;
    int b = 0;
    int b_prime = 0;
    double delta = 0.0;
    std::size_t samples_drawn = 0;
    std::size_t both_feasible = 0;
    std::size_t saturated = 0; // both-feasible samples where the weak user's CQI saturated
    std::size_t order_mismatch = 0;
    std::map<std::string, std::size_t> violations;
    std::map<std::string, double> worst_slack;
    std::map<std::string, std::size_t> informational; // corrected lemma3, statement-form theorem
};

struct BoundsCheckSummary
{
    std::vector<BoundsCheckCell> cells;
    std::size_t both_feasible = 0;
    std::map<std::string, std::size_t> violations;
    std::map<std::string, std::size_t> informational;
    std::size_t total_violations() const;
};

// Draws samples in index order for each (n_t, b, b_prime) cell until both_feasible_per_cell
// both-feasible samples have been checked (or 100 times that many samples were drawn).
BoundsCheckSummary run_bounds_check(const ExperimentConfig &base, const std::vector<std::size_t> &nt_grid,
                                    const std::vector<int> &b_grid, const std::vector<int> &bp_grid,
                                    std::size_t both_feasible_per_cell, unsigned workers,
                                    DeltaCache *cache = nullptr);

unsigned default_workers();

} // namespace noma

#endif
