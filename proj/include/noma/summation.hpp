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

#ifndef NOMA_SUMMATION_HPP
#define NOMA_SUMMATION_HPP

#include <cmath>
#include <cstddef>

namespace noma
{

// Neumaier compensated sum.
class CompensatedSum
{
  public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            c_ += (sum_ - t) + x;
        else
            c_ += (x - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + c_; }

  private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

// Running first and second moments from compensated sums.
class MomentAccumulator
{
  public:
    void add(double x)
    {
        s1_.add(x);
        s2_.add(x * x);
        ++n_;
    }

    void merge(const MomentAccumulator &o)
    {
        s1_.add(o.s1_.value());
        s2_.add(o.s2_.value());
        n_ += o.n_;
    }

    std::size_t count() const { return n_; }
    double mean() const { return n_ ? s1_.value() / static_cast<double>(n_) : 0.0; }

    // Unbiased sample variance; 0 below two samples.
    double variance() const
    {
        if (n_ < 2)
            return 0.0;
        const double n = static_cast<double>(n_);
        const double m = s1_.value() / n;
        const double v = (s2_.value() - n * m * m) / (n - 1.0);
        return v > 0.0 ? v : 0.0;
    }

    // 95% normal-approximation half-width of the mean.
    double half_width() const
    {
        return n_ ? 1.959963984540054 * std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
    }

  private:
    CompensatedSum s1_;
    CompensatedSum s2_;
    std::size_t n_ = 0;
};

} // namespace noma

#endif
