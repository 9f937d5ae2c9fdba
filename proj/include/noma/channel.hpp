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

#ifndef NOMA_CHANNEL_HPP
#define NOMA_CHANNEL_HPP

#include "noma/rng.hpp"

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace noma
{

using cdouble = std::complex<double>;

// Raised for zero-norm channels, a probability-zero event that callers discard and redraw.
class DegenerateChannel : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

// Finite complex vector of dimension >= 1 (a channel, a codeword or a beamformer).
class ComplexVector
{
  public:
    explicit ComplexVector(std::vector<cdouble> entries);
    ComplexVector(std::initializer_list<cdouble> entries);
    explicit ComplexVector(std::span<const cdouble> entries);

    std::size_t dim() const { return entries_.size(); }
    std::span<const cdouble> entries() const { return entries_; }
    const cdouble &operator[](std::size_t i) const { return entries_[i]; }

    double norm_squared() const;
    double norm() const;

    // Unit-norm copy; throws DegenerateChannel for the zero vector.
    ComplexVector normalized() const;
    ComplexVector scaled(cdouble factor) const;

  private:
    std::vector<cdouble> entries_;
};

// a^H b (conjugate-linear in the first argument). Throws std::invalid_argument on dimension mismatch.
cdouble inner_product(std::span<const cdouble> a, std::span<const cdouble> b);
cdouble inner_product(const ComplexVector &a, const ComplexVector &b);

// |a^H b|^2
double coupling_gain(std::span<const cdouble> a, std::span<const cdouble> b);
double coupling_gain(const ComplexVector &a, const ComplexVector &b);

// One CN(0, I) channel of dimension n_t. Zero-norm draws are rejected and redrawn.
ComplexVector draw_rayleigh(std::size_t n_t, RandomStream &rng);

// One draw of the two-user channel pair with its geometry. h1 is user 1 as given by the caller;
// strong/weak labelling is applied upstream.
struct ChannelRealization
{
    ComplexVector h1;
    ComplexVector h2;
    double H1 = 0.0;         // ||h1||^2
    double H2 = 0.0;         // ||h2||^2
    double rho = 0.0;        // ||h2|| / ||h1||
    double cos_theta = 0.0;  // |h2^H h1| / (||h1|| ||h2||)
    double sin2_theta = 0.0; // 1 - cos^2
    double H21_star = 0.0;   // |h2^H h1 / ||h1|| |^2, weak user's gain on the ideal MRT beam of user 1
    double H12_star = 0.0;   // |h1^H h2 / ||h2|| |^2
};

ChannelRealization describe(const ComplexVector &h1, const ComplexVector &h2);

} // namespace noma

#endif
