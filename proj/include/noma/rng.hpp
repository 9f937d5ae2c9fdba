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

#ifndef NOMA_RNG_HPP
#define NOMA_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace noma
{

// Purpose tags for substreams. Distinct tags give statistically independent streams for the same
// (master seed, index) pair. Values are part of the reproducibility contract: do not renumber.
enum class StreamTag : std::uint64_t
{
    channel = 1,
    codebook = 2,
    codebook_user2 = 3,
    train_channel = 4,
    train_codebook = 5,
    statistics_channel = 6,
    statistics_codebook = 7,
    gain_sets = 8
};

// Deterministic random stream.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++ standard. Distributions
// are implemented here rather than taken from <random> because the standard distributions are
// implementation-defined and would break bit-reproducibility across toolchains.
class RandomStream
{
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on (0, 1] with 53 bits of resolution.
    double uniform()
    {
        return double((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    // Circularly-symmetric complex Gaussian CN(0, 1), one Box-Muller pair per draw:
    // |z|^2 = -ln(u1) ~ Exp(1), arg(z) = 2 pi u2.
    std::complex<double> complex_normal();

  private:
    std::mt19937_64 engine_;
};

// SplitMix64 finalizer, used to derive substream seeds.
std::uint64_t mix64(std::uint64_t x);

// Independent stream owned by one (master seed, sample index, purpose) triple.
RandomStream substream(std::uint64_t master_seed, std::uint64_t index, StreamTag tag);

// Index reserved for run-level draws (e.g. a fixed codebook), never used as a sample index.
inline constexpr std::uint64_t run_level_index = ~std::uint64_t{0};

} // namespace noma

#endif
