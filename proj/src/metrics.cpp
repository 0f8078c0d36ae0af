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

#include "vlcsee/metrics.hpp"

#include <limits>

namespace vlcsee {

PrecoderSolution PrecoderSolution::zero(const ChannelState& channel, int an_streams) {
    PrecoderSolution sol;
    sol.scheme = channel.scheme;
    sol.info = Vec::Zero(channel.bob_alice.size());
    sol.an = Mat::Zero(channel.bob_jammer.size(), an_streams);
    return sol;
}

Real delta_dc(Real i_dc, Real i_min, Real i_max) {
    if (!(i_min <= i_dc && i_dc <= i_max))
        throw std::domain_error("DC bias outside [I_min, I_max]");
    return std::min(i_dc - i_min, i_max - i_dc);
}

namespace {

const Vec& alice_of(const ChannelState& ch, int who) {
    return who < 0 ? ch.bob_alice : ch.eve_alice.at(static_cast<size_t>(who));
}

const Vec& jammer_of(const ChannelState& ch, int who) {
    return who < 0 ? ch.bob_jammer : ch.eve_jammer.at(static_cast<size_t>(who));
}

Real noise_of(const ChannelState& ch, int who) {
    return who < 0 ? ch.bob_noise_norm : ch.eve_noise_norm.at(static_cast<size_t>(who));
}

}  // namespace

Real signal_term_sq(const ChannelState& channel, const PrecoderSolution& sol, int who) {
    const Real s = alice_of(channel, who).dot(sol.info);
    return s * s;
}

Real interference_term_sq(const ChannelState& channel, const PrecoderSolution& sol, int who) {
    if (sol.an.cols() == 0) return 0.0;
    return (sol.an.transpose() * jammer_of(channel, who)).squaredNorm();
}

Real sinr(const ChannelState& channel, const PrecoderSolution& sol, int who) {
    return sinr_from_terms(signal_term_sq(channel, sol, who),
                           interference_term_sq(channel, sol, who), noise_of(channel, who));
}

Real capacity_lower_bob_raw(const ChannelState& channel, const PrecoderSolution& sol) {
    return capacity_lower_from_terms_raw(signal_term_sq(channel, sol, -1),
                                         interference_term_sq(channel, sol, -1),
                                         channel.bob_noise_norm);
}

Real capacity_lower_bob(const ChannelState& channel, const PrecoderSolution& sol) {
    return std::max(Real(0), capacity_lower_bob_raw(channel, sol));
}

Real capacity_upper_eve(const ChannelState& channel, const PrecoderSolution& sol, int k) {
    return capacity_upper_from_terms(signal_term_sq(channel, sol, k),
                                     interference_term_sq(channel, sol, k),
                                     channel.eve_noise_norm.at(static_cast<size_t>(k)));
}

Real total_power(const RoomScenario& scenario, const PrecoderSolution& sol) {
    return scenario.power.circuit_w +
           scenario.n_luminaires() * scenario.power.led_voltage_v * scenario.dc_bias_a +
           scenario.power.zeta * (sol.info.squaredNorm() + sol.an.squaredNorm());
}

Real ee_bob(const RoomScenario& scenario, const ChannelState& channel, const PrecoderSolution& sol) {
    return capacity_lower_bob(channel, sol) / total_power(scenario, sol);
}

Real secrecy_rate_k(const ChannelState& channel, const PrecoderSolution& sol, int k) {
    return std::max(Real(0), capacity_lower_bob(channel, sol) - capacity_upper_eve(channel, sol, k));
}

Real min_see(const RoomScenario& scenario, const ChannelState& channel, const PrecoderSolution& sol) {
    if (channel.n_eves() == 0) throw std::domain_error("min_see requires at least one Eve");
    Real worst = std::numeric_limits<Real>::infinity();
    for (int k = 0; k < channel.n_eves(); ++k) worst = std::min(worst, secrecy_rate_k(channel, sol, k));
    return worst / total_power(scenario, sol);
}

}  // namespace vlcsee
