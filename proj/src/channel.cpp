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

#include "noma/channel.hpp"

#include <algorithm>
#include <cmath>

namespace noma
{

namespace
{
void check_entries(const std::vector<cdouble> &entries)
{
    if (entries.empty())
        throw std::invalid_argument("ComplexVector: dimension must be at least 1.");
    for (const auto &z : entries)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("ComplexVector: entries must be finite.");
}
} // namespace

ComplexVector::ComplexVector(std::vector<cdouble> entries) : entries_(std::move(entries))
{
    check_entries(entries_);
}

ComplexVector::ComplexVector(std::initializer_list<cdouble> entries) : entries_(entries)
{
    check_entries(entries_);
}

ComplexVector::ComplexVector(std::span<const cdouble> entries) : entries_(entries.begin(), entries.end())
{
    check_entries(entries_);
}

double ComplexVector::norm_squared() const
{
    double s = 0.0;
    for (const auto &z : entries_)
        s += std::norm(z);
    return s;
}

double ComplexVector::norm() const { return std::sqrt(norm_squared()); }

ComplexVector ComplexVector::normalized() const
{
    const double n = norm();
    if (n == 0.0)
        throw DegenerateChannel("Cannot normalize a zero-norm vector.");
    return scaled(1.0 / n);
}

ComplexVector ComplexVector::scaled(cdouble factor) const
{
    std::vector<cdouble> out(entries_);
    for (auto &z : out)
        z *= factor;
    return ComplexVector(std::move(out));
}

cdouble inner_product(std::span<const cdouble> a, std::span<const cdouble> b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("inner_product: dimension mismatch.");
    cdouble acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::conj(a[i]) * b[i];
    return acc;
}

cdouble inner_product(const ComplexVector &a, const ComplexVector &b)
{
    return inner_product(a.entries(), b.entries());
}

double coupling_gain(std::span<const cdouble> a, std::span<const cdouble> b)
{
    return std::norm(inner_product(a, b));
}

double coupling_gain(const ComplexVector &a, const ComplexVector &b)
{
    return coupling_gain(a.entries(), b.entries());
}

ComplexVector draw_rayleigh(std::size_t n_t, RandomStream &rng)
{
    if (n_t == 0)
        throw std::invalid_argument("draw_rayleigh: n_t must be at least 1.");
    std::vector<cdouble> h(n_t);
    for (;;)
    {
        double energy = 0.0;
        for (auto &z : h)
        {
            z = rng.complex_normal();
            energy += std::norm(z);
        }
        if (energy > 0.0)
            return ComplexVector(std::move(h));
    }
}

ChannelRealization describe(const ComplexVector &h1, const ComplexVector &h2)
{
    if (h1.dim() != h2.dim())
        throw std::invalid_argument("describe: channel dimensions differ.");

    ChannelRealization ch{h1, h2};
    ch.H1 = h1.norm_squared();
    ch.H2 = h2.norm_squared();
    if (ch.H1 == 0.0 || ch.H2 == 0.0)
        throw DegenerateChannel("describe: zero-norm channel.");

    const double cross = coupling_gain(h2, h1); // |h2^H h1|^2
    ch.rho = std::sqrt(ch.H2 / ch.H1);
    const double cos2 = std::clamp(cross / (ch.H1 * ch.H2), 0.0, 1.0);
    ch.cos_theta = std::sqrt(cos2);
    ch.sin2_theta = 1.0 - cos2;
    ch.H21_star = cross / ch.H1;
    ch.H12_star = cross / ch.H2;
    return ch;
}

} // namespace noma
