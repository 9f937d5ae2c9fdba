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

#include "noma/statistics.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace noma;
using Catch::Approx;

TEST_CASE("eta_cdf shape")
{
    CHECK(eta_cdf(0.0, 4, 3) == 0.0);
    CHECK(eta_cdf(1.0, 4, 3) == 1.0);
    // single codeword, Nt = 2: eta uniform on (0, 1) for each of the 2^B' codewords
    CHECK(eta_cdf(0.3, 2, 1) == Approx(0.09));
    double prev = 0.0;
    for (int i = 1; i < 100; ++i)
    {
        const double f = eta_cdf(i / 100.0, 4, 6);
        CHECK(f >= prev);
        prev = f;
    }
}

TEST_CASE("exact mean of 1 - eta matches numerical integration of the CDF")
{
    for (const auto &[nt, bp] : {std::pair{4, 4}, std::pair{4, 6}, std::pair{4, 8}, std::pair{2, 3}, std::pair{3, 5}})
    {
        // E[1 - eta] = integral_0^1 F(x) dx, midpoint rule
        const int m = 200000;
        double acc = 0.0;
        for (int i = 0; i < m; ++i)
            acc += eta_cdf((i + 0.5) / m, nt, bp);
        CHECK(mean_one_minus_eta_exact(nt, bp) == Approx(acc / m).epsilon(1e-6));
    }
    // the approximation used by the validator stays within its 15% tolerance for Nt = 4
    for (int bp : {4, 6, 8})
        CHECK(mean_one_minus_eta_exact(4, bp) == Approx(mean_one_minus_eta_approx(4, bp)).epsilon(0.15));
}

TEST_CASE("ks_distance and correlation helpers")
{
    std::vector<double> u;
    for (int i = 0; i < 1000; ++i)
        u.push_back((i + 0.5) / 1000.0);
    CHECK(ks_distance(u, [](double x) { return x; }) == Approx(0.0005));
    std::vector<double> x{1, 2, 3, 4}, y{2, 4, 6, 8}, z{4, 3, 2, 1};
    CHECK(sample_correlation(x, y) == Approx(1.0));
    CHECK(sample_correlation(x, z) == Approx(-1.0));
    CHECK_THROWS(sample_correlation(x, {1.0}));
}

TEST_CASE("validate_statistics at Nt = 4")
{
    const auto rep = validate_statistics(4, {4, 6}, 100000, 7);
    for (const auto &c : rep.checks)
    {
        INFO(c.name << " observed " << c.observed << " target " << c.target);
        CHECK(c.status == CheckStatus::pass);
    }
    CHECK(rep.all_pass());
    CHECK(rep.find("mean_inv_sin2").target == Approx(1.5));
    CHECK(rep.find("mean_one_minus_eta_bp6").target == Approx(0.25));
}

TEST_CASE("validate_statistics marks undefined moments")
{
    const auto rep2 = validate_statistics(2, {2}, 2000, 1);
    CHECK(rep2.find("mean_inv_sin2").status == CheckStatus::not_defined);
    const auto rep3 = validate_statistics(3, {}, 100000, 3);
    CHECK(rep3.find("mean_inv_H").target == Approx(0.5));
    CHECK(rep3.find("mean_inv_H").status == CheckStatus::pass);
    CHECK_THROWS(validate_statistics(0, {1}, 10, 1));
    CHECK_THROWS(validate_statistics(2, {21}, 10, 1));
}
