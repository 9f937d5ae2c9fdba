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

#include "noma/codebook.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace noma
{

namespace
{
constexpr double unit_norm_tolerance = 1e-12;

int bits_for_size(std::size_t n)
{
    if (n < 2 || !std::has_single_bit(n))
        throw std::invalid_argument("Codebook: size must be a power of two and at least 2.");
    const int b = std::countr_zero(n);
    if (b > max_codebook_bits)
        throw std::invalid_argument("Codebook: more than 2^20 codewords.");
    return b;
}

void check_bits(int b_prime)
{
    if (b_prime < 1 || b_prime > max_codebook_bits)
        throw std::invalid_argument("Codebook: b_prime must be in [1, 20].");
}
} // namespace

Codebook::Codebook(std::vector<ComplexVector> vectors)
{
    b_prime_ = bits_for_size(vectors.size());
    n_t_ = vectors.front().dim();
    data_.reserve(vectors.size() * n_t_);
    for (const auto &v : vectors)
    {
        if (v.dim() != n_t_)
            throw std::invalid_argument("Codebook: codewords differ in dimension.");
        if (std::abs(v.norm_squared() - 1.0) > unit_norm_tolerance)
            throw std::invalid_argument("Codebook: codeword is not unit norm.");
        data_.insert(data_.end(), v.entries().begin(), v.entries().end());
    }
}

Codebook::Codebook(int b_prime, std::size_t n_t, std::vector<cdouble> data)
    : b_prime_(b_prime), n_t_(n_t), data_(std::move(data))
{
}

Codebook Codebook::prefix(int b_prime) const
{
    check_bits(b_prime);
    if (b_prime > b_prime_)
        throw std::invalid_argument("Codebook::prefix: requested more bits than available.");
    const std::size_t n = (std::size_t{1} << b_prime) * n_t_;
    return Codebook(b_prime, n_t_, std::vector<cdouble>(data_.begin(), data_.begin() + n));
}

Codebook generate_rvq(int b_prime, std::size_t n_t, RandomStream &rng)
{
    check_bits(b_prime);
    if (n_t == 0)
        throw std::invalid_argument("generate_rvq: n_t must be at least 1.");
    const std::size_t count = std::size_t{1} << b_prime;
    std::vector<ComplexVector> vectors;
    vectors.reserve(count);
    for (std::size_t j = 0; j < count; ++j)
    {
        // Normalizing a single draw can leave |norm^2 - 1| at a few ulps; one extra pass fixes it.
        ComplexVector c = draw_rayleigh(n_t, rng).normalized();
        if (std::abs(c.norm_squared() - 1.0) > unit_norm_tolerance)
            c = c.normalized();
        vectors.push_back(std::move(c));
    }
    return Codebook(std::move(vectors));
}

PmiSelection select_pmi(const ComplexVector &h, const Codebook &cb)
{
    if (h.dim() != cb.dim())
        throw std::invalid_argument("select_pmi: dimension mismatch.");
    const double norm2 = h.norm_squared();
    if (norm2 == 0.0)
        throw DegenerateChannel("select_pmi: zero-norm channel.");

    PmiSelection best;
    best.effective_gain = -1.0;
    for (std::size_t j = 0; j < cb.size(); ++j)
    {
        const double g = coupling_gain(h.entries(), cb.codeword(j));
        if (g > best.effective_gain)
        {
            best.index = j;
            best.effective_gain = g;
        }
    }
    best.eta = std::min(best.effective_gain / norm2, 1.0);
    return best;
}

double cos_theta_hat(const ComplexVector &w1, const ComplexVector &w2)
{
    return std::clamp(std::abs(inner_product(w1, w2)), 0.0, 1.0);
}

void save_codebook(const Codebook &cb, const std::string &path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("save_codebook: cannot open " + path);
    out << std::setprecision(17);
    for (std::size_t j = 0; j < cb.size(); ++j)
    {
        const auto c = cb.codeword(j);
        for (std::size_t i = 0; i < c.size(); ++i)
        {
            if (i)
                out << ';';
            out << c[i].real() << ',' << c[i].imag();
        }
        out << '\n';
    }
    if (!out)
        throw std::runtime_error("save_codebook: write failed for " + path);
}

Codebook load_codebook(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_codebook: cannot open " + path);
    std::vector<ComplexVector> vectors;
    std::string line;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        std::vector<cdouble> entries;
        std::stringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ';'))
        {
            const auto comma = cell.find(',');
            if (comma == std::string::npos)
                throw std::runtime_error("load_codebook: malformed entry '" + cell + "'");
            try
            {
                entries.emplace_back(std::stod(cell.substr(0, comma)), std::stod(cell.substr(comma + 1)));
            }
            catch (const std::logic_error &)
            {
                throw std::runtime_error("load_codebook: malformed entry '" + cell + "'");
            }
        }
        vectors.emplace_back(std::move(entries));
    }
    if (vectors.empty())
        throw std::runtime_error("load_codebook: no codewords in " + path);
    return Codebook(std::move(vectors));
}

} // namespace noma
