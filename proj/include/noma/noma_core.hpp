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

#ifndef NOMA_NOMA_CORE_HPP
#define NOMA_NOMA_CORE_HPP

#include "noma/channel.hpp"

#include <optional>
#include <vector>

namespace noma
{

class LinkParams
{
  public:
    // p, sigma2 linear powers; r_th in bit/s/Hz.
    LinkParams(double p, double sigma2, double r_th);

    // sigma2 = 1 and p = 10^(snr_db / 10).
    static LinkParams from_snr_db(double snr_db, double r_th);

    double p() const { return p_; }
    double sigma2() const { return sigma2_; }
    double r_th() const { return r_th_; }
    double epsilon() const { return epsilon_; } // 2^r_th - 1

  private:
    double p_;
    double sigma2_;
    double r_th_;
    double epsilon_;
};

// Channel power gains seen by the two receivers. User 1 is the strong (SIC) user.
//   g11 = |h1^H w1|^2, g22 = |h2^H w2|^2, g12 = |h1^H w2|^2, g21 = |h2^H w1|^2
// With full CSI: g11 = H1, g22 = H2, g21 = H21*, g12 = H12*.
struct EffectiveGains
{
    double g11 = 0.0;
    double g22 = 0.0;
    double g12 = 0.0;
    double g21 = 0.0;
};

void validate(const EffectiveGains &g);

struct SinrTriple
{
    double sinr1 = 0.0;     // strong user, own message after SIC
    double sinr2 = 0.0;     // weak user, own message
    double sinr_1to2 = 0.0; // strong user decoding the weak user's message
};

// beta is the fraction of power on the strong user.
SinrTriple sinr_all(const EffectiveGains &g, const LinkParams &lp, double beta);

struct BetaBounds
{
    double beta1_min = 0.0;
    double beta2_max = 0.0;
    double beta_sic_max = 0.0;
};

// Values with nonpositive numerators are returned unclamped. g11 = 0 gives beta1_min = +inf.
BetaBounds beta_bounds(const EffectiveGains &g, const LinkParams &lp);

struct StationaryQuadratic
{
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

// Coefficients of a beta^2 + b beta + c = 0, the zero condition of dR_sum/dbeta, with G = P g.
StationaryQuadratic stationary_quadratic(const EffectiveGains &g, const LinkParams &lp);

// Real roots of the stationary quadratic (linear when a = 0), ascending.
std::vector<double> stationary_roots(const EffectiveGains &g, const LinkParams &lp);

// The root in (0, 1), if any.
std::optional<double> stationary_beta(const EffectiveGains &g, const LinkParams &lp);

enum class Candidate
{
    none,
    min,
    stationary,
    max
};

const char *to_string(Candidate c);

struct BetaSolution
{
    double beta1_min = 0.0;
    double beta2_max = 0.0;
    double beta_sic_max = 0.0;
    std::optional<double> beta0;
    std::optional<double> beta_star;
    bool feasible = false;
    Candidate active_candidate = Candidate::none;

    double interval_low() const;
    double interval_high() const;
};

BetaSolution solve_beta(const EffectiveGains &g, const LinkParams &lp);

struct RateReport
{
    double r1 = 0.0;
    double r2 = 0.0;
    double r_sum = 0.0;
    double sinr1 = 0.0;
    double sinr2 = 0.0;
    double sinr_1to2 = 0.0;
};

RateReport rates(const EffectiveGains &g, const LinkParams &lp, double beta);
double sum_rate(const EffectiveGains &g, const LinkParams &lp, double beta);

// BS-side estimate from quantized own-beam gains and the fed-back beams.
EffectiveGains reconstruct_gains(double h11_hat, double h22_hat, const ComplexVector &w1, const ComplexVector &w2);

// Full-CSI feasibility from (H1, rho, cos theta). Boundary equalities count as infeasible.
bool feasibility_geometric(const ChannelRealization &ch, const LinkParams &lp);
bool feasibility_geometric(double H1, double rho, double cos_theta, const LinkParams &lp);

enum class FeasibilityMode
{
    operational,
    conservative
};

const char *to_string(FeasibilityMode m);

// Operational: beta_q exists on the reconstructed gains and P g11 >= eps sigma^2.
// Conservative: additionally the geometric conditions hold with g11 - delta as the strong gain,
// cos^2 = g21 / g22 and rho^2 = g22 / g11.
bool feasibility_limited_feedback(const EffectiveGains &g_hat, const LinkParams &lp, FeasibilityMode mode,
                                  double delta);

enum class StrongUser
{
    first,
    second
};

// Larger CQI is the strong user; user 1 on ties.
StrongUser strong_user_order(double g1_cqi, double g2_cqi);

// Equal-time TDMA: 0.5 log2(1 + P g11 / sigma^2) + 0.5 log2(1 + P g22 / sigma^2).
double tdma_rate(double g11, double g22, const LinkParams &lp);

} // namespace noma

#endif
