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

#ifndef VLCSEE_METRICS_HPP
#define VLCSEE_METRICS_HPP

#include <cmath>

#include "vlcsee/geometry.hpp"

namespace vlcsee {

/// Data precoder plus AN precoder(s) for one scheme.
///
/// info is a length-1 vector (SISO) or length-N_T vector (MISO). an has one
/// column per AN stream: a single column when the eavesdropper CSI is
/// unknown, K columns when it is known, and zero columns for no-AN
/// transmission. Amplitude feasibility means |info| <= headroom elementwise
/// and, per jammer row, sum_k |an(n,k)| <= headroom.
struct PrecoderSolution {
    SchemeKind scheme = SchemeKind::SelectiveSiso;
    Vec info;
    Mat an;
    bool zero_forcing = false;

    static PrecoderSolution zero(const ChannelState& channel, int an_streams);
};

/// min(I_DC - I_min, I_max - I_DC). Throws std::domain_error if the bias is
/// outside [I_min, I_max].
Real delta_dc(Real i_dc, Real i_min, Real i_max);

// --- scalar cores -----------------------------------------------------------
// The closed-form metrics only ever see three aggregates: the squared data
// term (h^T v)^2, the squared AN leakage |h-bar^T W|^2, and the normalized
// noise. Keeping them as free scalar functions lets designs and tests reuse
// the exact same expressions on normalized channels.

inline Real sinr_from_terms(Real signal_sq, Real interference_sq, Real noise_norm) {
    return signal_sq / (interference_sq + noise_norm);
}

/// Lower bound on the legitimate channel capacity, unclamped (can be
/// negative for adversarial AN leakage).
inline Real capacity_lower_from_terms_raw(Real signal_sq, Real interference_sq, Real noise_norm) {
    const Real num = Real(2) * (signal_sq + interference_sq) + kPiE * noise_norm;
    const Real den = kPiE * (interference_sq / Real(3) + noise_norm);
    return Real(0.5) * std::log2(num / den);
}

inline Real capacity_lower_from_terms(Real signal_sq, Real interference_sq, Real noise_norm) {
    return std::max(Real(0), capacity_lower_from_terms_raw(signal_sq, interference_sq, noise_norm));
}

/// Upper bound on an eavesdropper channel capacity.
inline Real capacity_upper_from_terms(Real signal_sq, Real interference_sq, Real noise_norm) {
    const Real num = kPiE * ((signal_sq + interference_sq) / Real(3) + noise_norm);
    const Real den = Real(2) * interference_sq + kPiE * noise_norm;
    return Real(0.5) * std::log2(num / den);
}

// --- channel-level metrics --------------------------------------------------

/// (h^T v)^2 for the given receiver (-1 = Bob, k >= 0 = Eve k).
Real signal_term_sq(const ChannelState& channel, const PrecoderSolution& sol, int who);
/// |h-bar^T W|^2 for the given receiver.
Real interference_term_sq(const ChannelState& channel, const PrecoderSolution& sol, int who);

Real sinr(const ChannelState& channel, const PrecoderSolution& sol, int who);
Real capacity_lower_bob(const ChannelState& channel, const PrecoderSolution& sol);
Real capacity_lower_bob_raw(const ChannelState& channel, const PrecoderSolution& sol);
Real capacity_upper_eve(const ChannelState& channel, const PrecoderSolution& sol, int k);

/// P_circuit + N_T U I_DC + zeta (|v|^2 + tr(W W^T)).
Real total_power(const RoomScenario& scenario, const PrecoderSolution& sol);

/// Bob-channel energy efficiency, capacity_lower_bob / total_power.
Real ee_bob(const RoomScenario& scenario, const ChannelState& channel, const PrecoderSolution& sol);

/// max(0, C_B - C_E,k): the achievable-secrecy lower bound is clamped at zero.
Real secrecy_rate_k(const ChannelState& channel, const PrecoderSolution& sol, int k);

/// min_k secrecy_rate_k / total_power. Throws std::domain_error when the
/// channel has no Eves.
Real min_see(const RoomScenario& scenario, const ChannelState& channel, const PrecoderSolution& sol);

}  // namespace vlcsee

#endif  // VLCSEE_METRICS_HPP
