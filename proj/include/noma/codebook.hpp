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

#ifndef NOMA_CODEBOOK_HPP
#define NOMA_CODEBOOK_HPP

#include "noma/channel.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace noma
{

inline constexpr int max_codebook_bits = 20;

// 2^b_prime unit-norm beamforming vectors of dimension n_t, stored contiguously.
class Codebook
{
  public:
    // Takes ownership of the vectors; each must have unit norm within 1e-12 and the count must be
    // a power of two in [2, 2^20].
    explicit Codebook(std::vector<ComplexVector> vectors);

    int b_prime() const { return b_prime_; }
    std::size_t size() const { return std::size_t{1} << b_prime_; }
    std::size_t dim() const { return n_t_; }

    std::span<const cdouble> codeword(std::size_t j) const
    {
        return {data_.data() + j * n_t_, n_t_};
    }
    ComplexVector vector(std::size_t j) const { return ComplexVector(codeword(j)); }

    // Codebook holding the first 2^b_prime codewords of this one.
    Codebook prefix(int b_prime) const;

  private:
    Codebook(int b_prime, std::size_t n_t, std::vector<cdouble> data);

    int b_prime_ = 0;
    std::size_t n_t_ = 0;
    std::vector<cdouble> data_;
};

// RVQ codebook: normalized CN(0, I) draws taken in order from rng. Codewords are drawn
// sequentially, so for a fixed stream the B'-bit codebook is a prefix of the (B'+1)-bit one.
Codebook generate_rvq(int b_prime, std::size_t n_t, RandomStream &rng);

struct PmiSelection
{
    std::size_t index = 0;
    double effective_gain = 0.0; // |h^H c_index|^2
    double eta = 0.0;            // effective_gain / ||h||^2
};

// argmax_j |h^H c_j|^2, smallest index on ties.
PmiSelection select_pmi(const ComplexVector &h, const Codebook &cb);

// |w1^H w2| for unit-norm beams, clamped to [0, 1].
double cos_theta_hat(const ComplexVector &w1, const ComplexVector &w2);

// Text format: one codeword per line, entries "re,im" separated by ';'.
void save_codebook(const Codebook &cb, const std::string &path);
Codebook load_codebook(const std::string &path);

} // namespace noma

#endif
