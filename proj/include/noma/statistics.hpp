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

#ifndef NOMA_STATISTICS_HPP
#define NOMA_STATISTICS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace noma
{

enum class CheckStatus
{
    pass,
    fail,
    not_defined
};

const char *to_string(CheckStatus s);

struct StatCheck
{
    std::string name;
    double target = 0.0;
    double observed = 0.0;
    double tolerance = 0.0;
    bool relative = true; // relative: |observed - target| <= tolerance * target; else |observed - target| <= tolerance
    CheckStatus status = CheckStatus::not_defined;
};

struct StatisticsReport
{
    std::size_t n_t = 0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    std::vector<StatCheck> checks;

    bool all_pass() const; // not_defined entries do not fail the report
    const StatCheck &find(const std::string &name) const;
};

// F_eta(x) = (1 - (1 - x)^(n_t - 1))^(2^b_prime) for the best of 2^b_prime RVQ codewords.
double eta_cdf(double x, std::size_t n_t, int b_prime);

// 2^(-b_prime / (n_t - 1))
double mean_one_minus_eta_approx(std::size_t n_t, int b_prime);

// 2^b_prime B(2^b_prime, n_t / (n_t - 1)), the exact mean under F_eta.
double mean_one_minus_eta_exact(std::size_t n_t, int b_prime);

// Sup distance between the empirical CDF of the samples and cdf (samples are sorted in place).
template <class Cdf> double ks_distance(std::vector<double> &samples, Cdf cdf)
{
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        const double f = cdf(samples[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double sample_correlation(const std::vector<double> &x, const std::vector<double> &y);

// Moments of H = ||h||^2, E[1/sin^2 theta], E[1 - eta] and the eta / sin^2 theta CDFs, compared
// with their closed forms. One channel pair and one nested RVQ codebook per sample; eta checks are
// repeated for each entry of b_primes.
StatisticsReport validate_statistics(std::size_t n_t, const std::vector<int> &b_primes, std::size_t n_samples,
                                     std::uint64_t seed);

} // namespace noma

#endif
