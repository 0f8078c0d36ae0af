// vlcsee - energy-efficient artificial-noise design for VLC physical-layer security
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

#ifndef VLCSEE_KNOWN_CSI_HPP
#define VLCSEE_KNOWN_CSI_HPP

#include "vlcsee/unknown_csi.hpp"

namespace vlcsee {

/// Bisection setup for the max-min secrecy-energy-efficiency design.
/// t_high < 0 requests automatic bracketing from the rate ceiling.
struct MaxMinConfig {
    Real t_low = 0;
    Real t_high = -1;
    Real eps_bisect = 1e-3;
    Real eps_ccp = 1e-3;
    int max_iter_ccp = 50;
    bool use_an = true;  ///< false pins W = 0 (no-AN baseline)
};

/// Slack values of the convexified feasibility problem at its solution; the
/// inequality gaps are diagnostics for tightness checks.
struct SlackVariables {
    Real c_b1 = 0, c_b2 = 0, p_b1 = 0, p_b2 = 0;
    Vec c_e1, c_e2, p_e1, p_e2;
};

struct KnownPoint {
    Vec v;
    Mat W;  // one AN column per Eve (zero columns when AN is disabled)
};

struct P12Result {
    bool feasible = false;
    KnownPoint point;
    Real margin = 0;  ///< converged slack of the binding SEE constraint
    int ccp_iters = 0;
    SlackVariables slacks;
};

struct BracketingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Convexified feasibility test for target SEE t: runs a margin-maximizing
/// CCP and declares feasibility iff the converged margin is >= -1e-8. A warm
/// start from a point feasible at a lower t keeps the bisection cheap.
P12Result p12_feasible(const ChannelState& channel, const RoomScenario& scenario, Real t,
                       const MaxMinConfig& cfg, const KnownPoint* warm = nullptr);

/// Max-min SEE design over (v, W) by bisection on the target t. Returns the
/// last feasible point with t* = the feasible end of the final bracket.
/// Throws BracketingError if no infeasible upper bound can be established.
DesignOutcome maxmin_see(const ChannelState& channel, const RoomScenario& scenario,
                         const MaxMinConfig& cfg);

}  // namespace vlcsee

#endif  // VLCSEE_KNOWN_CSI_HPP
