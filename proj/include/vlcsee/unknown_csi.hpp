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

#ifndef VLCSEE_UNKNOWN_CSI_HPP
#define VLCSEE_UNKNOWN_CSI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vlcsee/metrics.hpp"

namespace vlcsee {

/// Knobs for the eavesdropper-agnostic designs: Bob's SINR floor, the
/// minimum AN power, and the two inner-loop tolerances.
struct DesignConfig {
    Real delta_b = 1.0;        ///< linear SINR floor (1.0 = 0 dB)
    Real p_th = 0.0;           ///< minimum AN power [A^2]
    Real rho = 0.2;            ///< AN budget fraction used to derive p_th
    Real eps_dinkelbach = 1e-3;
    Real eps_ccp = 1e-3;
    int max_iter_dinkelbach = 30;
    int max_iter_ccp = 50;

    /// (N_T - 1) (rho I_DC)^2, the budget that keeps every scheme's AN
    /// amplitude constraint satisfiable for rho <= 1.
    static Real p_th_from_rho(Real rho, Real i_dc, int n_luminaires) {
        return (n_luminaires - 1) * (rho * i_dc) * (rho * i_dc);
    }
    /// Returns a copy with p_th derived from rho for the given scenario.
    DesignConfig with_derived_p_th(const RoomScenario& s) const {
        DesignConfig c = *this;
        c.p_th = p_th_from_rho(rho, s.dc_bias_a, s.n_luminaires());
        return c;
    }
};

enum class DesignStatus { Solved, Infeasible };

/// CCP iterate: the data precoder, the AN precoder, and the AN-leakage slack
/// the linearizations expand around. w may be empty for no-AN problems.
struct CcpPoint {
    Vec v;
    Vec w;
    Real p_b2 = 0;
};

struct DesignOutcome {
    DesignStatus status = DesignStatus::Infeasible;
    PrecoderSolution sol;
    Real ee_bob = 0;
    Real resultant_see = 0;                 ///< a-posteriori SEE against the channel's Eves
    int dinkelbach_iters = 0;
    std::vector<int> ccp_iters_per_stage;
    std::vector<Real> lambda_trace;
    std::vector<Real> dinkelbach_error_trace;  ///< C - lambda_prev D per stage
    std::vector<Real> ccp_error_trace;         ///< stop metric per iteration, first stage
    std::vector<Real> t_trace;                 ///< bisection targets tested (known-CSI designs)
    std::vector<uint8_t> t_feas_trace;         ///< feasibility verdict per tested target
    Real slack_gap = 0;                        ///< worst relative slack-tightness residual
    std::string note;
};

struct CcpStageResult {
    bool feasible = true;
    CcpPoint point;
    int iters = 0;
    std::vector<Real> objective_trace;
    std::vector<Real> error_trace;
    Real slack_gap = 0;
};

/// No-AN energy-efficiency optimum: w = 0 and the data precoder maximizing
/// Bob's EE. Scalar-precoder schemes reduce to one bisection; MISO runs the
/// Dinkelbach/CCP machinery over v alone.
DesignOutcome solve_p1_noan(const ChannelState& channel, const RoomScenario& scenario,
                            const DesignConfig& cfg = {});

/// EE-maximizing AN design with SINR floor and minimum AN power, solved by a
/// Dinkelbach outer loop around CCP stages. start_override replaces the
/// default CCP starting point (it must be feasible for the first convexified
/// stage).
DesignOutcome dinkelbach_ee(const ChannelState& channel, const RoomScenario& scenario,
                            const DesignConfig& cfg,
                            const std::optional<CcpPoint>& start_override = std::nullopt);

/// One parametric stage: solves the convexified EE problem at fixed lambda by
/// iterated linearization from the given start.
CcpStageResult ccp_stage(const ChannelState& channel, const RoomScenario& scenario,
                         const DesignConfig& cfg, Real lambda, const CcpPoint& start);

/// Unit vector in the null space of h_bar^T: the normalized projection of the
/// all-ones vector, falling back to the projected first basis vector when the
/// all-ones vector is (numerically) parallel to h_bar.
Vec zf_basis(const Vec& h_bar);

struct ZfScalarResult {
    Real v_sq = 0;   ///< optimal squared data amplitude
    Real ee = 0;
    int branch = 0;  ///< 0 = interior root, 1 = upper endpoint, 2 = lower endpoint
};

/// Closed-form/bisection EE optimum of the scalar zero-forcing design at
/// fixed AN power phi_star (its own optimum is phi = p_th).
ZfScalarResult zf_optimal_V(const ChannelState& channel, const RoomScenario& scenario,
                            const DesignConfig& cfg, Real phi_star);

/// Zero-forcing design for the SISO schemes: AN rides the jammer null space
/// of Bob, the data amplitude comes from zf_optimal_V.
DesignOutcome zf_siso(const ChannelState& channel, const RoomScenario& scenario,
                      const DesignConfig& cfg);

/// Zero-forcing design for MISO: AN restricted to sqrt(phi) w-tilde with
/// w-tilde in Bob's null space; (v, phi) optimized by Dinkelbach/CCP with all
/// interference terms identically zero.
DesignOutcome zf_miso(const ChannelState& channel, const RoomScenario& scenario,
                      const DesignConfig& cfg);

}  // namespace vlcsee

#endif  // VLCSEE_UNKNOWN_CSI_HPP
