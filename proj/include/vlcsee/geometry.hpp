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

#ifndef VLCSEE_GEOMETRY_HPP
#define VLCSEE_GEOMETRY_HPP

#include <vector>

#include "vlcsee/types.hpp"

namespace vlcsee {

/// Photodetector / LED optics. Defaults are the standard indoor test bench:
/// 1 cm^2 PD, 60 deg half-power semi-angle (Lambertian order 1), 60 deg FOV,
/// unit optical filter, kappa = 1.5 concentrator, 0.54 A/W responsivity,
/// 0.44 W/A conversion, 20 MHz bandwidth.
struct OpticalParams {
    Real active_area_m2 = 1e-4;        ///< A_r
    Real semi_angle_half_deg = 60.0;   ///< Theta_1/2
    Real fov_deg = 60.0;               ///< Psi
    Real filter_gain = 1.0;            ///< T_s
    Real refractive_index = 1.5;       ///< kappa
    Real responsivity_a_per_w = 0.54;  ///< gamma
    Real conversion_w_per_a = 0.44;    ///< eta
    Real bandwidth_hz = 20e6;          ///< B_mod
    Real ambient_photocurrent = 10.93; ///< chi_amb [A/(m^2 sr)]
    Real preamp_density = 5e-12;       ///< i_amp [A/sqrt(Hz)]

    void validate() const;
};

/// Electrical power model: fixed circuitry draw, per-LED forward voltage at
/// the DC bias, and the AC dissipation factor zeta = R_AC / 3 applied to the
/// precoder powers.
struct PowerParams {
    Real circuit_w = 8.0;
    Real led_voltage_v = 3.3;
    Real zeta = 2.0;

    void validate() const;
};

/// Room geometry plus the electrical operating point shared by all designs.
/// Luminaires hang from the ceiling facing straight down; receivers sit on a
/// horizontal plane facing straight up.
struct RoomScenario {
    Real length_m = 5.0;
    Real width_m = 5.0;
    Real height_m = 3.0;
    std::vector<Vec3> luminaires;
    Real receiver_height_m = 0.5;
    Real dc_bias_a = 1.0;  ///< I_DC
    Real i_min_a = 0.0;
    Real i_max_a = 2.0;
    OpticalParams optical;
    PowerParams power;

    int n_luminaires() const { return static_cast<int>(luminaires.size()); }
    /// Per-LED modulation headroom min(I_DC - I_min, I_max - I_DC).
    Real headroom_a() const;
    void validate() const;
};

/// The four-luminaire 5 x 5 x 3 m bench room operated at the given average
/// optical power per luminaire. I_max is set to 2 I_DC so the headroom equals
/// I_DC.
RoomScenario default_room(Real p_t_dbm);

/// LoS gains seen by Bob and each Eve, split into the data-carrying part and
/// the jamming part as the scheme requires, plus normalized noise variances.
///
/// SISO schemes: alice holds the single scalar gain from the serving
/// luminaire (size 1) and jammer the N_T-1 gains from the rest. MISO: alice
/// and jammer are both the full N_T gain vector.
struct ChannelState {
    SchemeKind scheme = SchemeKind::SelectiveSiso;
    Vec bob_alice;
    Vec bob_jammer;
    std::vector<Vec> eve_alice;
    std::vector<Vec> eve_jammer;
    Real bob_noise_norm = 0.0;            ///< sigma-bar^2 of Bob
    std::vector<Real> eve_noise_norm;     ///< sigma-bar^2 per Eve
    int alice_index = -1;                 ///< serving luminaire (SISO only)

    int n_eves() const { return static_cast<int>(eve_alice.size()); }
};

/// Lambertian emission order m = -ln 2 / ln cos(semi-angle). Throws
/// std::domain_error outside (0, 90) degrees.
Real lambertian_order(Real semi_angle_half_deg);

/// LoS channel gain between a down-facing luminaire and an up-facing
/// receiver (irradiance and incidence angles coincide). Returns exactly 0
/// beyond the FOV. Throws std::domain_error if the points coincide or the
/// luminaire is not above the receiver.
Real channel_gain(const Vec3& tx_pos, const Vec3& rx_pos, const OpticalParams& optical);

/// Receiver noise variance [A^2]: shot noise from the received DC optical
/// power, ambient-light shot noise over the FOV, and preamplifier noise.
/// The ambient-term bandwidth is taken equal to the modulation bandwidth.
Real noise_variance(const Vec& channel_gains, Real dc_bias_a, const OpticalParams& optical);

/// sigma^2 / ((1/3) (gamma eta)^2), the noise variance after absorbing the
/// front-end scaling and the 1/3 symbol variance of uniform signalling.
Real normalized_noise(Real sigma2, const OpticalParams& optical);

/// Builds the full channel state for Bob at bob_xy and Eves at eve_xys (all
/// at receiver height). Selective SISO serves Bob from his strongest
/// luminaire (ties to the lowest index), fixed SISO always from luminaire 0.
/// Throws DegenerateChannelError if Bob sees no luminaire.
ChannelState build_channel(const RoomScenario& scenario, const Vec2& bob_xy,
                           const std::vector<Vec2>& eve_xys, SchemeKind scheme);

}  // namespace vlcsee

#endif  // VLCSEE_GEOMETRY_HPP
