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

#include "noma/bounds.hpp"

#include "noma/codebook.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace noma;
using Catch::Approx;

namespace
{
const LinkParams lp10(10.0, 1.0, 1.0);
const double ln2 = std::log(2.0);

BoundInputs inputs(double H1, double H2, double e11, double e22, double H21s, double bs, double bq, double d)
{
    return {H1, H2, e11, e22, H21s, bs, bq, d, lp10};
}

// Strong user first.
std::pair<ComplexVector, ComplexVector> ordered_pair(RandomStream &rng, std::size_t n_t)
{
    auto a = draw_rayleigh(n_t, rng);
    auto b = draw_rayleigh(n_t, rng);
    if (b.norm_squared() > a.norm_squared())
        std::swap(a, b);
    return {a, b};
}
} // namespace

TEST_CASE("lemma3 examples")
{
    CHECK(lemma3_bound(inputs(2.0, 1.0, 0.9, 0.9, 0.3, 0.2, 0.2, 0.1)) == 0.0);
    const double v = lemma3_bound(inputs(2.0, 1.0, 1.0, 1.0, 0.0, 0.1, 0.15, 0.0));
    CHECK(v == Approx(10.0 / ln2 * (2.0 / 3.0 + 1.0) * 0.05).epsilon(1e-12));
    CHECK(v == Approx(1.2028).epsilon(1e-3));
    // corrected variant differs only when beta_q < beta_star
    CHECK(lemma3_bound_corrected(inputs(2.0, 1.0, 1.0, 1.0, 0.0, 0.1, 0.15, 0.0)) == v);
    CHECK(lemma3_bound_corrected(inputs(2.0, 1.0, 1.0, 1.0, 0.0, 0.1, 0.05, 0.0)) >
          lemma3_bound(inputs(2.0, 1.0, 1.0, 1.0, 0.0, 0.1, 0.05, 0.0)));
}

TEST_CASE("lemma4 examples")
{
    CHECK(lemma4_bound(inputs(3.0, 2.0, 1.0, 1.0, 0.5, 0.3, 0.4, 0.0)) == 0.0);
    const auto bi = inputs(3.0, 2.0, 0.8, 0.7, 0.5, 0.3, 0.0, 0.0);
    CHECK(lemma4_bound(bi) == Approx(10.0 * 2.0 * 0.3 / ln2).epsilon(1e-12));
    // hand evaluation of all three terms
    const auto ci = inputs(3.0, 2.0, 0.8, 0.7, 0.5, 0.3, 0.4, 0.0);
    const double t1 = 2 * 0.6 * 100 * 0.4 * 0.7 * 4.0 * std::sqrt(0.4);
    const double t2 = 0.6 * 10 * 2.0 * 0.3;
    const double t3 = 0.4 * 10 * 3.0 * 0.2;
    CHECK(lemma4_bound(ci) == Approx((t1 + t2 + t3) / ln2).epsilon(1e-12));
}

TEST_CASE("theorem1 examples and forms")
{
    CHECK(theorem1_bound(inputs(3.0, 2.0, 1.0, 1.0, 0.5, 0.3, 0.3, 0.0)) == 0.0);
    const auto bi = inputs(3.0, 2.0, 0.8, 0.7, 0.5, 0.3, 0.4, 0.0);
    const double expect = 10.0 / ln2 *
                          (3.0 * 0.2 + 10.0 * 0.7 * 4.0 * std::sqrt(0.4) / 2.0 + 2.0 * 0.3 + 5.0 * 0.1);
    CHECK(theorem1_bound(bi) == Approx(expect).epsilon(1e-12));
    const double stmt = 10.0 / ln2 * (3.0 * 0.2 + 10.0 * 4.0 * std::sqrt(1.2) / 2.0 + 2.0 * 0.3 + 5.0 * 0.1);
    CHECK(theorem1_bound(bi, Theorem1Form::statement) == Approx(stmt).epsilon(1e-12));
    CHECK(theorem1_bound(bi, Theorem1Form::statement) >= theorem1_bound(bi));
}

TEST_CASE("theorem1 dominates lemma3 plus lemma4")
{
    RandomStream rng(5);
    for (int k = 0; k < 100000; ++k)
    {
        const double H1 = 10 * rng.uniform(), H2 = H1 * rng.uniform();
        const auto bi = inputs(H1, H2, rng.uniform(), rng.uniform(), H2 * rng.uniform(), rng.uniform(),
                               rng.uniform(), 0.0);
        REQUIRE(theorem1_bound(bi) >= lemma3_bound(bi) + lemma4_bound(bi) - 1e-9);
    }
}

TEST_CASE("s1 and interference gap examples")
{
    CHECK(s1_gap_bound(3.0, 1.0) == 0.0);
    CHECK(s1_gap_bound(3.0, 0.5) == Approx(6.0));
    CHECK(s1_gap_bound_tight(3.0, 0.25) == Approx(6.0));
    CHECK(interference_gap_bound(2.0, 1.0, 1.0, 0.13) == Approx(0.13));
    CHECK(interference_gap_bound(2.0, 1.0, 1.0, 0.0) == 0.0);
    CHECK(interference_gap_bound(2.0, 0.5, 0.5, 0.1) == Approx(4.0 * 2.0 + 0.1 + 1.0));

    // w1 aligned with h1 up to phase: no gap
    const ComplexVector h1{1.0, cdouble(0.0, 1.0)}, h2{0.3, -0.2};
    const auto ch = describe(h1, h2);
    const ComplexVector w1 = h1.normalized().scaled(std::polar(1.0, 0.7));
    CHECK(std::abs(ch.H21_star - coupling_gain(h2, w1)) < 1e-15);

    // h2 orthogonal to h1 and w1
    const auto ch2 = describe(ComplexVector{1.0, 0.0, 0.0}, ComplexVector{0.0, 0.0, 2.0});
    const ComplexVector w{std::sqrt(0.5), std::sqrt(0.5), 0.0};
    CHECK(std::abs(ch2.H21_star - coupling_gain(ch2.h2, w)) == 0.0);
}

TEST_CASE("s1 gap chain holds on random beams")
{
    RandomStream rng(17);
    for (std::size_t n_t : {2u, 4u})
        for (int k = 0; k < 20000; ++k)
        {
            const auto [h1, h2] = ordered_pair(rng, n_t);
            const auto ch = describe(h1, h2);
            const Codebook cb = generate_rvq(1 + k % 6, n_t, rng);
            const auto sel = select_pmi(h1, cb);
            const double gap = std::abs(ch.H21_star - coupling_gain(h2.entries(), cb.codeword(sel.index)));
            REQUIRE(gap <= s1_gap_bound_tight(ch.H2, sel.eta) + 1e-12);
            REQUIRE(s1_gap_bound_tight(ch.H2, sel.eta) <= s1_gap_bound(ch.H2, sel.eta) + 1e-12);
        }
}

TEST_CASE("rate_loss_split examples")
{
    RandomStream rng(3);
    const auto [h1, h2] = ordered_pair(rng, 2);
    const auto ch = describe(h1, h2);
    const auto w1 = h1.normalized(), w2 = h2.normalized();
    const auto same = *rate_loss_split(ch, w1, w2, 0.3, 0.3, lp10);
    CHECK(same.delta_r == Approx(0.0).margin(1e-12));
    CHECK(same.delta_r1 == 0.0);
    CHECK(same.delta_r2 == Approx(0.0).margin(1e-12));
    const auto moved = *rate_loss_split(ch, w1, w2, 0.3, 0.4, lp10);
    CHECK(moved.delta_r2 == Approx(0.0).margin(1e-12));
    CHECK(moved.delta_r == Approx(moved.delta_r1).margin(1e-12));
    CHECK_FALSE(rate_loss_split(ch, w1, w2, std::nullopt, 0.4, lp10));
    CHECK_FALSE(rate_loss_split(ch, w1, w2, 0.3, std::nullopt, lp10));
}

TEST_CASE("rate_loss_split agrees with direct recomputation")
{
    RandomStream rng(13);
    const double p = lp10.p();
    for (int k = 0; k < 2000; ++k)
    {
        const auto [h1, h2] = ordered_pair(rng, 3);
        const auto ch = describe(h1, h2);
        const Codebook cb = generate_rvq(3, 3, rng);
        const auto w1 = cb.vector(select_pmi(h1, cb).index);
        const auto w2 = cb.vector(select_pmi(h2, cb).index);
        const double bs = rng.uniform(), bq = rng.uniform();
        const auto s = *rate_loss_split(ch, w1, w2, bs, bq, lp10);

        // raw recomputation
        auto ip2 = [](const ComplexVector &a, const ComplexVector &b) {
            cdouble acc = 0;
            for (std::size_t i = 0; i < a.dim(); ++i)
                acc += std::conj(a[i]) * b[i];
            return std::norm(acc);
        };
        const auto u1 = h1.normalized(), u2 = h2.normalized();
        auto rate = [&](const ComplexVector &v1, const ComplexVector &v2, double beta) {
            const double s1 = beta * p * ip2(h1, v1);
            const double s2 = (1 - beta) * p * ip2(h2, v2) / (beta * p * ip2(h2, v1) + 1.0);
            return std::log2(1 + s1) + std::log2(1 + s2);
        };
        REQUIRE(s.delta_r == Approx(rate(u1, u2, bs) - rate(w1, w2, bq)).margin(1e-12));
        REQUIRE(s.delta_r1 == Approx(rate(u1, u2, bs) - rate(u1, u2, bq)).margin(1e-12));
        REQUIRE(s.delta_r == Approx(s.delta_r1 + s.delta_r2).margin(1e-12));
    }
}

TEST_CASE("lemma3 as stated can be exceeded when beta_q is below beta_star")
{
    // The strong-user term is evaluated at beta*, which understates the log slope on [beta_q, beta*].
    // The corrected denominator uses the smaller allocation and holds throughout.
    RandomStream rng(101);
    int exceeded = 0;
    for (int k = 0; k < 200000; ++k)
    {
        const auto [h1, h2] = ordered_pair(rng, 2);
        const auto ch = describe(h1, h2);
        const auto sol = solve_beta(full_csi_gains(ch), lp10);
        if (!sol.feasible)
            continue;
        const double bs = *sol.beta_star;
        const double bq = bs * rng.uniform();
        const auto split = *rate_loss_split(ch, h1.normalized(), h2.normalized(), bs, bq, lp10);
        const auto bi = inputs(ch.H1, ch.H2, 1.0, 1.0, ch.H21_star, bs, bq, 0.0);
        REQUIRE(lemma3_bound_corrected(bi) >= std::abs(split.delta_r1) - 1e-9);
        exceeded += lemma3_bound(bi) < std::abs(split.delta_r1) - 1e-9;
    }
    CHECK(exceeded > 0);
}

TEST_CASE("evaluate_bounds reports named violations")
{
    RandomStream rng(71);
    const auto [h1, h2] = ordered_pair(rng, 2);
    const auto ch = describe(h1, h2);
    const auto w1 = h1.normalized(), w2 = h2.normalized();
    // perfect feedback: nothing to violate
    const BoundSample clean{ch, w1, w2, 1.0, 1.0, 0.3, 0.3, ch.H2, 0.0, std::nullopt};
    const auto r = evaluate_bounds(clean, lp10);
    CHECK(r.violations.empty());
    CHECK(r.interference_gap_actual == Approx(0.0).margin(1e-12));

    // an understated eta breaks the s1 chain
    const Codebook cb({ComplexVector{1.0, 0.0}, ComplexVector{0.0, 1.0}});
    const auto w_bad = cb.vector(select_pmi(h1, cb).index);
    const BoundSample lying{ch, w_bad, w2, 1.0, 1.0, 0.3, 0.3, ch.H2, 0.0, std::nullopt};
    const auto r2 = evaluate_bounds(lying, lp10);
    bool s1 = false;
    for (const auto &v : r2.violations)
        s1 |= v.name == "s1_gap" && v.slack < 0.0;
    CHECK(s1);
}
