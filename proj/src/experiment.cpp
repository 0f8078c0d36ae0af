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

#include "vlcsee/experiment.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace vlcsee {

namespace {

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int spawn = std::min(threads, n);
    pool.reserve(static_cast<size_t>(spawn));
    for (int tid = 0; tid < spawn; ++tid) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

struct RealizationRecord {
    bool feasible = false;
    bool errored = false;
    Real ee = 0;
    Real see = 0;
    Real sinr_gap = 0;
    Real dinkelbach_iters = 0;
    Real ccp_iters = 0;
};

RoomScenario scenario_at(const SweepSpec& spec, Real p_t_dbm) {
    RoomScenario s = spec.room;
    s.dc_bias_a = dc_bias_for_dbm(p_t_dbm, s.optical.conversion_w_per_a);
    if (spec.room_auto_imax) {
        s.i_min_a = std::min(s.i_min_a, Real(0));
        s.i_max_a = 2 * s.dc_bias_a;
    }
    return s;
}

}  // namespace

std::string scheme_tag(const SchemeSpec& s) {
    return std::string(to_string(s.scheme)) + "_" + to_string(s.design);
}

void place_receivers(Rng& rng, const RoomScenario& scenario, int k_eves, Vec2& bob,
                     std::vector<Vec2>& eves) {
    auto draw = [&]() {
        for (int attempt = 0; attempt < 1000; ++attempt) {
            Vec2 xy(rng.uniform(-scenario.length_m / 2, scenario.length_m / 2),
                    rng.uniform(-scenario.width_m / 2, scenario.width_m / 2));
            const Vec3 rx(xy.x(), xy.y(), scenario.receiver_height_m);
            for (const Vec3& lum : scenario.luminaires)
                if (channel_gain(lum, rx, scenario.optical) > 0) return xy;
        }
        throw std::runtime_error("no receiver position inside any luminaire's coverage");
    };
    bob = draw();
    eves.clear();
    eves.reserve(static_cast<size_t>(k_eves));
    for (int k = 0; k < k_eves; ++k) eves.push_back(draw());
}

Real sinr_gap_db(const ChannelState& channel, const PrecoderSolution& sol) {
    const Real sb = sinr(channel, sol, -1);
    const Real se = sinr(channel, sol, 0);
    if (se <= 0 && sb <= 0) return 0;
    if (se <= 0) return 100;
    if (sb <= 0) return -100;
    return std::clamp(Real(10) * std::log10(sb / se), Real(-100), Real(100));
}

DesignOutcome run_design(const ChannelState& channel, const RoomScenario& scenario,
                         const SweepSpec& spec, const SchemeSpec& scheme, Real rho) {
    DesignConfig cfg = spec.design;
    cfg.rho = rho;
    cfg.p_th = DesignConfig::p_th_from_rho(rho, scenario.dc_bias_a, scenario.n_luminaires());

    if (spec.csi == CsiMode::Unknown) {
        switch (scheme.design) {
            case DesignKind::General: return dinkelbach_ee(channel, scenario, cfg);
            case DesignKind::ZeroForcing:
                return channel.scheme == SchemeKind::Miso ? zf_miso(channel, scenario, cfg)
                                                          : zf_siso(channel, scenario, cfg);
            case DesignKind::NoAn: return solve_p1_noan(channel, scenario, cfg);
        }
    }
    MaxMinConfig mm = spec.maxmin;
    mm.use_an = scheme.design != DesignKind::NoAn;
    if (scheme.design == DesignKind::ZeroForcing)
        throw std::invalid_argument("zero-forcing designs are defined for unknown-CSI runs only");
    return maxmin_see(channel, scenario, mm);
}

ExperimentResult run_sweep(const SweepSpec& spec) {
    if (spec.n_realizations < 1) throw std::invalid_argument("n_realizations must be >= 1");
    if (spec.values.empty()) throw std::invalid_argument("sweep needs at least one value");
    if (spec.schemes.empty()) throw std::invalid_argument("sweep needs at least one scheme");

    ExperimentResult result;
    result.seed = spec.rng_seed;
    const int n_schemes = static_cast<int>(spec.schemes.size());
    const int n_real = spec.n_realizations;

    for (size_t pi = 0; pi < spec.values.size(); ++pi) {
        const Real value = spec.values[pi];
        const Real p_dbm = spec.variable == SweepSpec::Variable::PowerDbm ? value : spec.p_t_dbm;
        const Real rho = spec.variable == SweepSpec::Variable::Rho ? value : spec.design.rho;
        const int k_eves =
            spec.variable == SweepSpec::Variable::EveCount ? static_cast<int>(value) : spec.k_eves;
        const RoomScenario scenario = scenario_at(spec, p_dbm);
        scenario.validate();

        std::vector<std::vector<RealizationRecord>> rec(
            static_cast<size_t>(n_schemes), std::vector<RealizationRecord>(static_cast<size_t>(n_real)));

        parallel_for(n_real, spec.threads, [&](int r) {
            Rng rng(mix_seed(spec.rng_seed, pi, static_cast<uint64_t>(r)));
            Vec2 bob;
            std::vector<Vec2> eves;
            place_receivers(rng, scenario, k_eves, bob, eves);

            // the base channels are shared by every design variant of a scheme
            std::array<std::optional<ChannelState>, 3> channels;
            auto channel_for = [&](SchemeKind kind) -> const ChannelState& {
                auto& slot = channels[static_cast<size_t>(kind)];
                if (!slot) slot = build_channel(scenario, bob, eves, kind);
                return *slot;
            };

            for (int si = 0; si < n_schemes; ++si) {
                RealizationRecord& out = rec[static_cast<size_t>(si)][static_cast<size_t>(r)];
                try {
                    const ChannelState& ch = channel_for(spec.schemes[static_cast<size_t>(si)].scheme);
                    const DesignOutcome d =
                        run_design(ch, scenario, spec, spec.schemes[static_cast<size_t>(si)], rho);
                    out.feasible = d.status == DesignStatus::Solved;
                    if (out.feasible) {
                        out.ee = d.ee_bob;
                        out.see = d.resultant_see;
                        out.sinr_gap = k_eves > 0 ? sinr_gap_db(ch, d.sol) : 0;
                        out.dinkelbach_iters = d.dinkelbach_iters;
                        Real ccp_sum = 0;
                        for (int c : d.ccp_iters_per_stage) ccp_sum += c;
                        out.ccp_iters = d.ccp_iters_per_stage.empty()
                                            ? 0
                                            : ccp_sum / static_cast<Real>(d.ccp_iters_per_stage.size());
                    }
                } catch (const std::exception&) {
                    out.errored = true;
                }
            }
        });

        // paired mask: realizations solved by every compared scheme
        std::vector<bool> paired(static_cast<size_t>(n_real), true);
        for (int si = 0; si < n_schemes; ++si)
            for (int r = 0; r < n_real; ++r)
                if (!rec[static_cast<size_t>(si)][static_cast<size_t>(r)].feasible)
                    paired[static_cast<size_t>(r)] = false;
        int n_paired = 0;
        for (bool b : paired) n_paired += b ? 1 : 0;

        for (int si = 0; si < n_schemes; ++si) {
            PointStats ps;
            ps.sweep_value = value;
            ps.scheme = spec.schemes[static_cast<size_t>(si)];
            ps.n_paired = n_paired;
            Real ee = 0, see = 0, gap = 0, din = 0, ccp = 0;
            for (int r = 0; r < n_real; ++r) {
                const RealizationRecord& rr = rec[static_cast<size_t>(si)][static_cast<size_t>(r)];
                if (rr.errored) ++ps.n_errors;
                if (rr.feasible) {
                    ++ps.n_feasible;
                    din += rr.dinkelbach_iters;
                    ccp += rr.ccp_iters;
                }
                if (paired[static_cast<size_t>(r)]) {
                    ee += rr.ee;
                    see += rr.see;
                    gap += rr.sinr_gap;
                }
            }
            ps.feas_prob = static_cast<Real>(ps.n_feasible) / n_real;
            if (n_paired > 0) {
                ps.mean_ee = ee / n_paired;
                ps.mean_see = see / n_paired;
                ps.mean_sinr_gap_db = gap / n_paired;
            }
            if (ps.n_feasible > 0) {
                ps.mean_dinkelbach_iters = din / ps.n_feasible;
                ps.mean_ccp_iters = ccp / ps.n_feasible;
            }
            result.rows.push_back(ps);
        }
    }
    return result;
}

}  // namespace vlcsee
