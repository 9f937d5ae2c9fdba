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

#include "noma/quantizer.hpp"

#include "noma/codebook.hpp"
#include "noma/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace noma
{

GainQuantizer::GainQuantizer(double delta, int b) : delta_(delta), b_(b)
{
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw std::invalid_argument("GainQuantizer: delta must be positive and finite.");
    if (b < 1 || b > max_cqi_bits)
        throw std::invalid_argument("GainQuantizer: b must be in [1, 20].");
}

QuantizedGain GainQuantizer::quantize(double x) const
{
    if (!std::isfinite(x) || x < 0.0)
        throw std::domain_error("quantize: input must be finite and nonnegative.");
    const std::uint32_t top = top_level();
    const double ratio = std::floor(x / delta_);
    if (ratio >= static_cast<double>(top))
        return {max_level(), top};

    auto level = static_cast<std::uint32_t>(ratio);
    while (level > 0 && static_cast<double>(level) * delta_ > x)
        --level;
    while (level < top && static_cast<double>(level + 1) * delta_ <= x)
        ++level;
    return {static_cast<double>(level) * delta_, level};
}

double GainQuantizer::saturation_gap(double x) const
{
    const double top = max_level();
    if (!(x >= top))
        throw NotSaturated("saturation_gap: input below the top quantization level.");
    return x - top;
}

std::vector<double> draw_training_samples(int b_prime, std::size_t n_t, std::size_t n_train, std::uint64_t seed)
{
    if (n_train == 0)
        throw std::invalid_argument("train_delta: n_train must be positive.");
    std::vector<double> samples(n_train);
    for (std::size_t i = 0; i < n_train; ++i)
    {
        RandomStream ch_rng = substream(seed, i, StreamTag::train_channel);
        RandomStream cb_rng = substream(seed, i, StreamTag::train_codebook);
        const ComplexVector h = draw_rayleigh(n_t, ch_rng);
        const Codebook cb = generate_rvq(b_prime, n_t, cb_rng);
        samples[i] = select_pmi(h, cb).effective_gain;
    }
    return samples;
}

double quantization_mse(const std::vector<double> &samples, double delta, int b)
{
    if (samples.empty())
        throw std::invalid_argument("quantization_mse: no samples.");
    const GainQuantizer q(delta, b);
    double acc = 0.0;
    for (double x : samples)
    {
        const double e = x - q.quantize(x).value;
        acc += e * e;
    }
    return acc / static_cast<double>(samples.size());
}

namespace
{
double round_6g(double v)
{
    return std::stod(format_6g(v));
}
} // namespace

double train_delta_from_samples(const std::vector<double> &samples, int b)
{
    if (samples.empty())
        throw std::invalid_argument("train_delta: n_train must be positive.");
    if (b < 1 || b > max_cqi_bits)
        throw std::invalid_argument("train_delta: b must be in [1, 20].");
    const double x_max = *std::max_element(samples.begin(), samples.end());
    if (!(x_max > 0.0))
        throw std::invalid_argument("train_delta: all samples are zero.");
    const double hi = x_max / static_cast<double>((std::uint32_t{1} << b) - 1);
    auto f = [&](double d) { return quantization_mse(samples, d, b); };

    // Log-spaced coarse grid over three decades below the upper limit.
    constexpr int coarse_points = 256;
    constexpr int keep = 4;
    constexpr double decades = 3.0;
    constexpr double dense_relative_step = 5e-4;

    const double ratio = std::pow(10.0, decades / coarse_points);
    auto grid = [&](int i) { return hi * std::pow(ratio, i - coarse_points); };
    std::vector<std::pair<double, int>> coarse;
    coarse.reserve(coarse_points + 1);
    for (int i = 0; i <= coarse_points; ++i)
        coarse.emplace_back(f(grid(i)), i);
    std::partial_sort(coarse.begin(), coarse.begin() + keep, coarse.end());

    double best_d = grid(coarse.front().second);
    double best_f = coarse.front().first;
    for (int k = 0; k < keep; ++k)
    {
        const int i = coarse[k].second;
        const double lo_d = grid(std::max(i - 1, 0));
        const double hi_d = grid(std::min(i + 1, coarse_points));
        for (double d = lo_d; d <= hi_d; d *= 1.0 + dense_relative_step)
        {
            const double v = f(d);
            if (v < best_f)
            {
                best_f = v;
                best_d = d;
            }
        }
    }

    // Golden-section polish within one dense step of the best point.
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::max(best_d * (1.0 - dense_relative_step), std::numeric_limits<double>::min());
    double c = std::min(best_d * (1.0 + dense_relative_step), hi);
    double x1 = c - phi * (c - a);
    double x2 = a + phi * (c - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (c - a > 1e-7 * best_d)
    {
        if (f1 <= f2)
        {
            c = x2;
            x2 = x1;
            f2 = f1;
            x1 = c - phi * (c - a);
            f1 = f(x1);
        }
        else
        {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (c - a);
            f2 = f(x2);
        }
    }
    const double polished = 0.5 * (a + c);
    if (f(polished) < best_f)
        best_d = polished;
    return round_6g(best_d);
}

double train_delta(int b, int b_prime, std::size_t n_t, std::size_t n_train, std::uint64_t seed)
{
    return train_delta_from_samples(draw_training_samples(b_prime, n_t, n_train, seed), b);
}

std::optional<double> table1_delta(int b, int b_prime)
{
    static constexpr double table[6][6] = {
        {1.59, 0.97, 0.60, 0.36, 0.22, 0.13}, {1.70, 1.06, 0.65, 0.39, 0.23, 0.13},
        {1.81, 1.11, 0.69, 0.42, 0.24, 0.14}, {1.92, 1.16, 0.71, 0.43, 0.25, 0.14},
        {1.98, 1.20, 0.73, 0.44, 0.26, 0.15}, {2.00, 1.22, 0.75, 0.44, 0.26, 0.15},
    };
    if (b < 1 || b > 6 || b_prime < 1 || b_prime > 6)
        return std::nullopt;
    return table[b_prime - 1][b - 1];
}

std::string format_6g(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

DeltaCache::DeltaCache(std::string path) : path_(std::move(path))
{
    std::ifstream in(path_);
    if (!in)
        return;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (line.empty() || line.rfind("B,", 0) == 0)
            continue;
        std::stringstream row(line);
        std::string f[5];
        for (auto &cell : f)
            if (!std::getline(row, cell, ','))
                throw std::runtime_error("delta cache " + path_ + ": malformed line " + std::to_string(line_no));
        try
        {
            insert(std::stoi(f[0]), std::stoi(f[1]), std::stoul(f[2]), std::stoull(f[3]), std::stod(f[4]));
        }
        catch (const std::logic_error &)
        {
            throw std::runtime_error("delta cache " + path_ + ": malformed line " + std::to_string(line_no));
        }
    }
}

std::optional<double> DeltaCache::find(int b, int b_prime, std::size_t n_t, std::uint64_t seed) const
{
    const auto it = entries_.find({b, b_prime, n_t, seed});
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

void DeltaCache::insert(int b, int b_prime, std::size_t n_t, std::uint64_t seed, double delta)
{
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw std::invalid_argument("delta cache: delta must be positive and finite.");
    entries_[{b, b_prime, n_t, seed}] = round_6g(delta);
}

double DeltaCache::get_or_train(int b, int b_prime, std::size_t n_t, std::uint64_t seed, std::size_t n_train)
{
    if (auto hit = find(b, b_prime, n_t, seed))
        return *hit;
    const double d = train_delta(b, b_prime, n_t, n_train, seed);
    insert(b, b_prime, n_t, seed, d);
    return d;
}

void DeltaCache::write(std::ostream &out) const
{
    out << "B,Bprime,Nt,seed,delta\n";
    for (const auto &[key, d] : entries_)
    {
        const auto &[b, bp, nt, seed] = key;
        out << b << ',' << bp << ',' << nt << ',' << seed << ',' << format_6g(d) << '\n';
    }
}

void DeltaCache::save() const
{
    if (path_.empty())
        return;
    std::ofstream out(path_);
    if (!out)
        throw std::runtime_error("delta cache: cannot write " + path_);
    write(out);
}

} // namespace noma
