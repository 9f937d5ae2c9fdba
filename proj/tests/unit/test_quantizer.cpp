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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

using namespace noma;
using Catch::Approx;

TEST_CASE("quantize examples")
{
    const auto a = GainQuantizer(0.36, 4).quantize(1.0);
    CHECK(a.value == Approx(0.72));
    CHECK(a.level == 2);

    const GainQuantizer q3(0.6, 3);
    const auto s = q3.quantize(10.0);
    CHECK(s.value == Approx(4.2));
    CHECK(s.level == 7);
    CHECK(q3.max_level() == Approx(4.2));

    const auto z = GainQuantizer(0.13, 6).quantize(0.0);
    CHECK(z.value == 0.0);
    CHECK(z.level == 0);
}

TEST_CASE("quantize errors")
{
    const GainQuantizer q(0.5, 2);
    CHECK_THROWS_AS(q.quantize(-1e-12), std::domain_error);
    CHECK_THROWS_AS(q.quantize(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(q.quantize(INFINITY), std::domain_error);
    CHECK_THROWS_AS(GainQuantizer(0.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(GainQuantizer(0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(GainQuantizer(0.1, 21), std::invalid_argument);
}

TEST_CASE("saturation_gap examples")
{
    const GainQuantizer q(0.6, 3);
    CHECK(q.saturation_gap(4.2) == Approx(0.0).margin(1e-15));
    CHECK(q.saturation_gap(5.0) == Approx(0.8));
    CHECK(GainQuantizer(1.59, 1).saturation_gap(2.0) == Approx(0.41));
    CHECK_THROWS_AS(q.saturation_gap(4.0), NotSaturated);
}

TEST_CASE("quantizer invariants")
{
    for (const auto &[delta, b] : {std::pair{0.36, 4}, std::pair{0.6, 3}, std::pair{0.1, 10}, std::pair{1e-4, 20}})
    {
        const GainQuantizer q(delta, b);
        double prev = 0.0;
        for (int k = 0; k <= 20000; ++k)
        {
            const double x = (q.max_level() * 1.3) * k / 20000.0;
            const auto r = q.quantize(x);
            REQUIRE(r.value <= x);
            REQUIRE(r.value >= prev);
            REQUIRE(r.level <= q.top_level());
            REQUIRE(r.value == static_cast<double>(r.level) * delta);
            if (x < q.max_level())
                REQUIRE(x - r.value < delta);
            else
                REQUIRE(r.value == q.max_level());
            REQUIRE(q.quantize(r.value).value == r.value);
            prev = r.value;
        }
    }
    // Exact multiples land on their own level.
    const GainQuantizer q(0.1, 5);
    for (std::uint32_t k = 0; k <= q.top_level(); ++k)
        REQUIRE(q.quantize(k * 0.1).level == k);
}

TEST_CASE("quantization_mse oracle")
{
    const std::vector<double> xs{0.1, 0.5, 0.9, 2.5};
    // delta 0.4, b 2 -> levels 0, 0.4, 0.8, 1.2
    const double expected = (0.1 * 0.1 + 0.1 * 0.1 + 0.1 * 0.1 + 1.3 * 1.3) / 4.0;
    CHECK(quantization_mse(xs, 0.4, 2) == Approx(expected));
}

TEST_CASE("training samples are reproducible and bounded by the channel norm")
{
    const auto a = draw_training_samples(2, 2, 1000, 5);
    const auto b = draw_training_samples(2, 2, 1000, 5);
    CHECK(a == b);
    for (double x : a)
        CHECK(x >= 0.0);
    CHECK_THROWS(draw_training_samples(2, 2, 0, 5));
    CHECK_THROWS(train_delta(1, 1, 2, 0, 5));
}

TEST_CASE("trained delta matches a fine grid search of the same objective")
{
    const auto samples = draw_training_samples(3, 2, 10000, 7);
    const double trained = train_delta_from_samples(samples, 3);
    const double hi = *std::max_element(samples.begin(), samples.end()) / 7.0;
    double best = 0.0, best_f = INFINITY;
    for (double d = 1e-4; d <= hi; d += 1e-4)
    {
        const double f = quantization_mse(samples, d, 3);
        if (f < best_f)
        {
            best_f = f;
            best = d;
        }
    }
    INFO("trained " << trained << " grid " << best);
    CHECK(std::abs(trained - best) / best <= 1e-3);
}

TEST_CASE("trained delta near the published value and decreasing in B")
{
    const auto samples = draw_training_samples(1, 2, 100000, 7);
    double prev = INFINITY;
    for (int b = 1; b <= 6; ++b)
    {
        const double d = train_delta_from_samples(samples, b);
        CHECK(d < prev);
        prev = d;
        if (b == 1)
            CHECK(d == Approx(1.59).epsilon(0.1));
    }
}

TEST_CASE("table1 literals")
{
    CHECK(*table1_delta(1, 1) == 1.59);
    CHECK(*table1_delta(3, 3) == 0.69);
    CHECK(*table1_delta(6, 6) == 0.15);
    CHECK(*table1_delta(4, 1) == 0.36);
    CHECK_FALSE(table1_delta(7, 1));
    CHECK_FALSE(table1_delta(1, 0));
}

TEST_CASE("delta cache round trip")
{
    const auto path = (std::filesystem::temp_directory_path() / "noma_delta_cache_test.csv").string();
    std::remove(path.c_str());
    {
        DeltaCache c(path);
        CHECK(c.entries().empty());
        c.insert(3, 2, 2, 7, 0.6512345678);
        c.insert(1, 1, 4, 123456789012345ULL, 1.5);
        c.save();
    }
    DeltaCache back(path);
    CHECK(*back.find(3, 2, 2, 7) == 0.651235);
    CHECK(*back.find(1, 1, 4, 123456789012345ULL) == 1.5);
    CHECK_FALSE(back.find(3, 2, 2, 8));
    std::ostringstream os;
    back.write(os);
    CHECK(os.str() == "B,Bprime,Nt,seed,delta\n1,1,4,123456789012345,1.5\n3,2,2,7,0.651235\n");
    std::remove(path.c_str());
}
