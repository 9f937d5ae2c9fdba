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

#ifndef NOMA_QUANTIZER_HPP
#define NOMA_QUANTIZER_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace noma
{

inline constexpr int max_cqi_bits = 20;

class NotSaturated : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

struct QuantizedGain
{
    double value = 0.0;
    std::uint32_t level = 0;
};

// Uniform saturating scalar quantizer with outputs {0, delta, ..., (2^b - 1) delta}.
class GainQuantizer
{
  public:
    GainQuantizer(double delta, int b);

    double delta() const { return delta_; }
    int bits() const { return b_; }
    std::uint32_t top_level() const { return (std::uint32_t{1} << b_) - 1; }
    double max_level() const { return static_cast<double>(top_level()) * delta_; }

    // floor(x / delta) delta clamped to max_level. The level is adjusted so that value <= x and
    // x - value < delta hold in floating point, which also makes quantize idempotent.
    QuantizedGain quantize(double x) const;

    bool saturates(double x) const { return x >= max_level(); }

    // x - max_level for x >= max_level; NotSaturated otherwise.
    double saturation_gap(double x) const;

  private:
    double delta_;
    int b_;
};

// Training samples x = max_j |h^H c_j|^2 for h ~ CN(0, I_{n_t}) and a fresh b_prime-bit RVQ
// codebook per sample. Sample i uses the train_channel / train_codebook substreams of index i.
std::vector<double> draw_training_samples(int b_prime, std::size_t n_t, std::size_t n_train, std::uint64_t seed);

// Mean of (x - q(x))^2 over the samples, saturated samples included.
double quantization_mse(const std::vector<double> &samples, double delta, int b);

// Step minimizing quantization_mse over (0, max(x) / (2^b - 1)]: coarse grid, dense local grids
// around the best coarse points, then golden-section polish. Result rounded to 6 significant digits.
double train_delta_from_samples(const std::vector<double> &samples, int b);

double train_delta(int b, int b_prime, std::size_t n_t, std::size_t n_train, std::uint64_t seed);

// Published step table for b, b_prime in [1, 6]; nullopt outside that range.
std::optional<double> table1_delta(int b, int b_prime);

// Trained steps keyed by (B, B', N_t, seed). File lines: B,Bprime,Nt,seed,delta after a header.
class DeltaCache
{
  public:
    using Key = std::tuple<int, int, std::size_t, std::uint64_t>;

    DeltaCache() = default;
    explicit DeltaCache(std::string path);

    std::optional<double> find(int b, int b_prime, std::size_t n_t, std::uint64_t seed) const;
    void insert(int b, int b_prime, std::size_t n_t, std::uint64_t seed, double delta);

    // Cached value, or trains, stores and returns it.
    double get_or_train(int b, int b_prime, std::size_t n_t, std::uint64_t seed, std::size_t n_train);

    // Writes to the path given at construction (no-op when there is none).
    void save() const;
    void write(std::ostream &out) const;

    const std::map<Key, double> &entries() const { return entries_; }

  private:
    std::string path_;
    std::map<Key, double> entries_;
};

std::string format_6g(double v);

} // namespace noma

#endif
