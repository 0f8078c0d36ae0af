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

#ifndef VLCSEE_TYPES_HPP
#define VLCSEE_TYPES_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace vlcsee {

using Real = double;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

inline constexpr Real kPi = 3.14159265358979323846;
inline constexpr Real kE = 2.71828182845904523536;
inline constexpr Real kPiE = kPi * kE;
/// Elementary charge [C].
inline constexpr Real kElementaryCharge = 1.602176634e-19;

/// Transmission scheme. In the SISO schemes one luminaire carries the data
/// signal and the remaining N_T-1 jam; in MISO every luminaire carries a
/// data-plus-noise mix through vector precoders.
enum class SchemeKind { FixedSiso, SelectiveSiso, Miso };

inline const char* to_string(SchemeKind s) {
    switch (s) {
        case SchemeKind::FixedSiso: return "fixed_siso";
        case SchemeKind::SelectiveSiso: return "selective_siso";
        case SchemeKind::Miso: return "miso";
    }
    return "?";
}

/// Thrown when a receiver sees no luminaire at all (every LoS gain is zero).
struct DegenerateChannelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Real db_to_linear(Real db) { return std::pow(Real(10), db / Real(10)); }
inline Real linear_to_db(Real x) { return Real(10) * std::log10(x); }

/// Average emitted optical power per luminaire is eta * I_DC, so a dBm target
/// maps to a DC bias of 10^((dBm-30)/10) / eta.
inline Real dc_bias_for_dbm(Real p_t_dbm, Real conversion_eta) {
    return std::pow(Real(10), (p_t_dbm - Real(30)) / Real(10)) / conversion_eta;
}

}  // namespace vlcsee

#endif  // VLCSEE_TYPES_HPP
