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

#ifndef VLCSEE_CONFIG_HPP
#define VLCSEE_CONFIG_HPP

#include <string>
#include <vector>

#include "vlcsee/experiment.hpp"

namespace vlcsee {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key = value configuration with a strict schema: unknown keys are
/// rejected and every default matches the standard bench setup. See
/// write_template() for the full key list.
struct ConfigFile {
    RoomScenario room;      ///< DC bias filled in per operating point
    bool i_max_auto = true; ///< I_max tracks 2 I_DC
    Real delta_b_db = 0.0;
    DesignConfig design;    ///< delta_b converted from dB; p_th derived from rho
    MaxMinConfig maxmin;

    std::vector<Real> p_t_dbm_values;  ///< default 26..44 step 2
    std::vector<Real> rho_values;      ///< default 0..1 step 0.05
    std::vector<Real> k_values;        ///< default 1..5
    std::vector<Real> feas_p_t_dbm;    ///< default 30, 35, 40
    Real p_t_dbm = 30.0;
    Real eves_p_t_dbm = 26.0;
    int k_eves = 1;
    int n_realizations = 200;
    uint64_t rng_seed = 1;
    int threads = 1;
    std::vector<SchemeKind> schemes;   ///< default all three
    std::vector<DesignKind> designs;   ///< default general, zf, noan
    CsiMode csi = CsiMode::Unknown;

    static ConfigFile defaults();
    /// Parses the document; throws ConfigError on unknown keys, syntax
    /// errors, or invariant violations.
    static ConfigFile parse(const std::string& text);
    static ConfigFile load(const std::string& path);

    /// Commented template with every key at its default value.
    static std::string write_template();
};

}  // namespace vlcsee

#endif  // VLCSEE_CONFIG_HPP
