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

#ifndef VLCSEE_EXPERIMENT_HPP
#define VLCSEE_EXPERIMENT_HPP

#include "vlcsee/known_csi.hpp"
#include "vlcsee/rng.hpp"

namespace vlcsee {

enum class DesignKind { General, ZeroForcing, NoAn };
enum class CsiMode { Unknown, Known };

inline const char* to_string(DesignKind d) {
    switch (d) {
        case DesignKind::General: return "general";
        case DesignKind::ZeroForcing: return "zf";
        case DesignKind::NoAn: return "noan";
    }
    return "?";
}

inline const char* to_string(CsiMode m) { return m == CsiMode::Unknown ? "unknown" : "known"; }

struct SchemeSpec {
    SchemeKind scheme = SchemeKind::SelectiveSiso;
    DesignKind design = DesignKind::General;
};

/// e.g. "selective_siso_general", "miso_zf".
std::string scheme_tag(const SchemeSpec& s);

/// One Monte Carlo experiment: a swept variable, the schemes to compare, and
/// the shared room / design setup. Placement seeds derive deterministically
/// from rng_seed, the sweep-point index, and the realization index, so runs
/// replay bit-exactly at any thread count.
struct SweepSpec {
    enum class Variable { PowerDbm, Rho, EveCount };

    Variable variable = Variable::PowerDbm;
    std::vector<Real> values;
    int n_realizations = 200;
    uint64_t rng_seed = 1;
    std::vector<SchemeSpec> schemes;
    CsiMode csi = CsiMode::Unknown;
    int k_eves = 1;        ///< Eve count for non-EveCount sweeps
    Real p_t_dbm = 30.0;   ///< optical power for non-power sweeps
    RoomScenario room;     ///< template; DC bias set per point
    bool room_auto_imax = true;  ///< keep I_max at 2 I_DC across power points
    DesignConfig design;   ///< p_th rederived from rho at each point
    MaxMinConfig maxmin;
    int threads = 1;
};

/// Per-(sweep point, scheme) statistics. EE/SEE/SINR-gap means run over the
/// realizations feasible for every compared scheme (paired averaging);
/// iteration means run over the scheme's own feasible realizations.
struct PointStats {
    Real sweep_value = 0;
    SchemeSpec scheme;
    Real mean_ee = 0;
    Real mean_see = 0;
    Real mean_sinr_gap_db = 0;
    Real feas_prob = 0;
    Real mean_dinkelbach_iters = 0;
    Real mean_ccp_iters = 0;
    int n_feasible = 0;
    int n_paired = 0;
    int n_errors = 0;
};

struct ExperimentResult {
    std::vector<PointStats> rows;
    uint64_t seed = 0;
};

/// Uniform receiver placement over the floor at receiver height; receivers
/// that see no luminaire at all are resampled.
void place_receivers(Rng& rng, const RoomScenario& scenario, int k_eves, Vec2& bob,
                     std::vector<Vec2>& eves);

/// 10 log10(SINR_Bob) - 10 log10(SINR_Eve1), clamped to +-100 dB.
Real sinr_gap_db(const ChannelState& channel, const PrecoderSolution& sol);

ExperimentResult run_sweep(const SweepSpec& spec);

/// Runs one realization's design for a scheme; shared by the sweep driver and
/// the convergence-trace command.
DesignOutcome run_design(const ChannelState& channel, const RoomScenario& scenario,
                         const SweepSpec& spec, const SchemeSpec& scheme, Real rho);

}  // namespace vlcsee

#endif  // VLCSEE_EXPERIMENT_HPP
