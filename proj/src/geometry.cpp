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

#include "vlcsee/geometry.hpp"

#include <cmath>

#include "vlcsee/metrics.hpp"

namespace vlcsee {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

Real deg_to_rad(Real deg) { return deg * kPi / Real(180); }

}  // namespace

void OpticalParams::validate() const {
    require(active_area_m2 > 0, "active_area must be > 0");
    require(semi_angle_half_deg > 0 && semi_angle_half_deg < 90, "semi_angle_half must be in (0, 90) deg");
    require(fov_deg > 0 && fov_deg <= 90, "fov must be in (0, 90] deg");
    require(filter_gain > 0, "filter_gain must be > 0");
    require(refractive_index > 0, "refractive_index must be > 0");
    require(responsivity_a_per_w > 0, "responsivity must be > 0");
    require(conversion_w_per_a > 0, "conversion factor must be > 0");
    require(bandwidth_hz > 0, "bandwidth must be > 0");
    require(ambient_photocurrent >= 0, "ambient photocurrent must be >= 0");
    require(preamp_density > 0, "preamp density must be > 0");
}

void PowerParams::validate() const {
    require(circuit_w > 0, "circuit power must be > 0");
    require(led_voltage_v > 0, "LED voltage must be > 0");
    require(zeta > 0, "zeta must be > 0");
}

Real RoomScenario::headroom_a() const { return delta_dc(dc_bias_a, i_min_a, i_max_a); }

void RoomScenario::validate() const {
    require(length_m > 0 && width_m > 0 && height_m > 0, "room dimensions must be > 0");
    require(n_luminaires() >= 2, "at least two luminaires required");
    require(receiver_height_m >= 0 && receiver_height_m < height_m, "receiver plane must sit below the ceiling");
    require(i_min_a <= dc_bias_a && dc_bias_a <= i_max_a, "DC bias must lie in [I_min, I_max]");
    for (const Vec3& p : luminaires) {
        require(std::abs(p.z() - height_m) < 1e-12, "luminaires must sit at ceiling height");
        require(std::abs(p.x()) <= length_m / 2 + 1e-12 && std::abs(p.y()) <= width_m / 2 + 1e-12,
                "luminaire outside the room footprint");
    }
    optical.validate();
    power.validate();
}

RoomScenario default_room(Real p_t_dbm) {
    RoomScenario s;
    const Real r = std::sqrt(Real(2));
    s.luminaires = {Vec3(-r, -r, 3.0), Vec3(r, -r, 3.0), Vec3(r, r, 3.0), Vec3(-r, r, 3.0)};
    s.dc_bias_a = dc_bias_for_dbm(p_t_dbm, s.optical.conversion_w_per_a);
    s.i_min_a = 0.0;
    s.i_max_a = 2.0 * s.dc_bias_a;
    s.validate();
    return s;
}

Real lambertian_order(Real semi_angle_half_deg) {
    if (!(semi_angle_half_deg > 0 && semi_angle_half_deg < 90))
        throw std::domain_error("semi-angle must be in (0, 90) degrees");
    return -std::log(Real(2)) / std::log(std::cos(deg_to_rad(semi_angle_half_deg)));
}

Real channel_gain(const Vec3& tx_pos, const Vec3& rx_pos, const OpticalParams& optical) {
    const Vec3 d = tx_pos - rx_pos;
    const Real l = d.norm();
    if (l <= 0) throw std::domain_error("coincident transmitter and receiver");
    if (d.z() <= 0) throw std::domain_error("luminaire must be above the receiver");

    const Real cos_angle = d.z() / l;  // irradiance = incidence for the vertical orientation
    const Real fov_rad = deg_to_rad(optical.fov_deg);
    if (cos_angle < std::cos(fov_rad)) return 0.0;

    const Real m = lambertian_order(optical.semi_angle_half_deg);
    const Real concentrator = optical.refractive_index * optical.refractive_index /
                              (std::sin(fov_rad) * std::sin(fov_rad));
    return optical.active_area_m2 * (m + 1) / (Real(2) * kPi * l * l) * optical.filter_gain *
           concentrator * std::pow(cos_angle, m) * cos_angle;
}

Real noise_variance(const Vec& channel_gains, Real dc_bias_a, const OpticalParams& o) {
    if ((channel_gains.array() < 0).any()) throw std::invalid_argument("channel gains must be >= 0");
    const Real received_dc_w = o.conversion_w_per_a * channel_gains.sum() * dc_bias_a;
    const Real shot = Real(2) * o.responsivity_a_per_w * kElementaryCharge * received_dc_w * o.bandwidth_hz;
    const Real fov_rad = deg_to_rad(o.fov_deg);
    const Real ambient = Real(4) * kPi * kElementaryCharge * o.active_area_m2 * o.responsivity_a_per_w *
                         o.ambient_photocurrent * (Real(1) - std::cos(fov_rad)) * o.bandwidth_hz;
    const Real preamp = o.preamp_density * o.preamp_density * o.bandwidth_hz;
    return shot + ambient + preamp;
}

Real normalized_noise(Real sigma2, const OpticalParams& o) {
    if (!(sigma2 > 0)) throw std::domain_error("noise variance must be > 0");
    const Real ge = o.responsivity_a_per_w * o.conversion_w_per_a;
    return sigma2 / (ge * ge / Real(3));
}

namespace {

struct ReceiverGains {
    Vec full;      // gain from every luminaire
    Real noise_norm;
};

ReceiverGains receiver_gains(const RoomScenario& s, const Vec2& xy) {
    const int n = s.n_luminaires();
    ReceiverGains g;
    g.full.resize(n);
    const Vec3 rx(xy.x(), xy.y(), s.receiver_height_m);
    for (int i = 0; i < n; ++i) g.full[i] = channel_gain(s.luminaires[i], rx, s.optical);
    g.noise_norm = normalized_noise(noise_variance(g.full, s.dc_bias_a, s.optical), s.optical);
    return g;
}

void split_gains(const Vec& full, int alice_index, SchemeKind scheme, Vec& alice, Vec& jammer) {
    if (scheme == SchemeKind::Miso) {
        alice = full;
        jammer = full;
        return;
    }
    alice.resize(1);
    alice[0] = full[alice_index];
    jammer.resize(full.size() - 1);
    int j = 0;
    for (int i = 0; i < full.size(); ++i)
        if (i != alice_index) jammer[j++] = full[i];
}

}  // namespace

ChannelState build_channel(const RoomScenario& scenario, const Vec2& bob_xy,
                           const std::vector<Vec2>& eve_xys, SchemeKind scheme) {
    scenario.validate();

    ChannelState ch;
    ch.scheme = scheme;

    const ReceiverGains bob = receiver_gains(scenario, bob_xy);
    if (bob.full.maxCoeff() <= 0)
        throw DegenerateChannelError("Bob is outside every luminaire's field of view");

    int alice = 0;
    if (scheme == SchemeKind::SelectiveSiso) {
        // argmax with ties resolved toward the lowest index
        for (int i = 1; i < bob.full.size(); ++i)
            if (bob.full[i] > bob.full[alice]) alice = i;
    }
    ch.alice_index = scheme == SchemeKind::Miso ? -1 : alice;

    split_gains(bob.full, alice, scheme, ch.bob_alice, ch.bob_jammer);
    ch.bob_noise_norm = bob.noise_norm;

    for (const Vec2& xy : eve_xys) {
        const ReceiverGains eve = receiver_gains(scenario, xy);
        Vec ea, ej;
        split_gains(eve.full, alice, scheme, ea, ej);
        ch.eve_alice.push_back(std::move(ea));
        ch.eve_jammer.push_back(std::move(ej));
        ch.eve_noise_norm.push_back(eve.noise_norm);
    }
    return ch;
}

}  // namespace vlcsee
