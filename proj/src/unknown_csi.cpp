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

#include "vlcsee/unknown_csi.hpp"

#include <cmath>

#include "vlcsee/convex.hpp"

namespace vlcsee {

namespace {

constexpr Real kLn2 = 0.69314718055994530942;

// Bob's channel with the noise scaled out (sigma-bar^2 = 1), plus the scalar
// problem data every stage needs. Precoders stay in physical amperes.
struct NormBob {
    Vec ha;      // data-path gains / sigma-bar
    Vec hj;      // jammer gains / sigma-bar
    Real delta;  // amplitude headroom
    Real p0;     // static power P_circuit + N_T U I_DC
    Real zeta;
};

NormBob norm_bob(const ChannelState& ch, const RoomScenario& s) {
    NormBob nb;
    const Real sb = std::sqrt(ch.bob_noise_norm);
    nb.ha = ch.bob_alice / sb;
    nb.hj = ch.bob_jammer / sb;
    nb.delta = s.headroom_a();
    nb.p0 = s.power.circuit_w + s.n_luminaires() * s.power.led_voltage_v * s.dc_bias_a;
    nb.zeta = s.power.zeta;
    return nb;
}

// Which pieces a stage problem carries. The general design has the AN vector
// and the interference slacks; the no-AN and zero-forcing variants drop them
// (their interference terms vanish identically).
struct StageOptions {
    bool with_w = false;
    bool with_phi = false;  // scalar AN power (ZF MISO)
    Real phi_cap = 0;
    Real delta_b = 0;       // linear SINR floor, 0 disables it
    Real p_th = 0;
};

struct Layout {
    int nv = 0, nw = 0;
    int iv = 0, iw = -1, iphi = -1, icb1 = -1, icb2 = -1, ipb1 = -1, ipb2 = -1;
    int n = 0;
};

Layout make_layout(const NormBob& nb, const StageOptions& o) {
    Layout L;
    L.nv = static_cast<int>(nb.ha.size());
    int at = L.nv;
    if (o.with_w) {
        L.nw = static_cast<int>(nb.hj.size());
        L.iw = at;
        at += L.nw;
    }
    if (o.with_phi) L.iphi = at++;
    L.icb1 = at++;
    if (o.with_w) L.icb2 = at++;
    L.ipb1 = at++;
    if (o.with_w) L.ipb2 = at++;
    L.n = at;
    return L;
}

struct StagePoint {
    Vec v;
    Vec w;          // empty when the stage has no AN vector
    Real phi = 0;   // used only with_phi
    Real p_b2 = 0;  // AN leakage slack the linearization expands around
};

Real signal_amp(const NormBob& nb, const StagePoint& p) { return nb.ha.dot(p.v); }

Real cap_norm(const NormBob& nb, const StageOptions& o, const StagePoint& p) {
    const Real sv = signal_amp(nb, p);
    const Real iw = o.with_w ? nb.hj.dot(p.w) : Real(0);
    return capacity_lower_from_terms_raw(sv * sv, iw * iw, Real(1));
}

Real den_power(const NormBob& nb, const StageOptions& o, const StagePoint& p) {
    Real x = p.v.squaredNorm();
    if (o.with_w) x += p.w.squaredNorm();
    if (o.with_phi) x += p.phi;
    return nb.p0 + nb.zeta * x;
}

convex::ConvexProgram build_stage(const NormBob& nb, const StageOptions& o, const Layout& L,
                                  Real lambda, const StagePoint& e) {
    convex::ConvexProgram p;
    p.n = L.n;
    p.c = Vec::Zero(L.n);
    p.c[L.icb1] = 0.5;
    if (o.with_w)
        p.c[L.icb2] = -0.5;
    else
        p.c0 -= 0.5 * std::log2(kPiE);  // c_B2 degenerates to log2(pi e)
    p.c0 -= lambda * nb.p0;
    if (lambda > 0) {
        p.P = Mat::Zero(L.n, L.n);
        for (int i = 0; i < L.nv; ++i) p.P(L.iv + i, L.iv + i) = 2 * lambda * nb.zeta;
        for (int i = 0; i < L.nw; ++i) p.P(L.iw + i, L.iw + i) = 2 * lambda * nb.zeta;
        if (o.with_phi) p.c[L.iphi] = -lambda * nb.zeta;
    } else if (o.with_phi) {
        p.c[L.iphi] = 0;
    }

    // first-order expansion of the received-power term feeding p_B1
    {
        Vec a = Vec::Zero(L.n);
        a[L.ipb1] = 1;
        const Real av = nb.ha.dot(e.v);
        a.segment(L.iv, L.nv) -= 2 * av * nb.ha;
        Real b = -av * av;
        if (o.with_w) {
            const Real aw = nb.hj.dot(e.w);
            a.segment(L.iw, L.nw) -= 2 * aw * nb.hj;
            b -= aw * aw;
        }
        p.lin.push_back({std::move(a), b});
    }

    if (o.with_w) {
        // tangent bound on the interference log-term
        const Real arg0 = kPiE * (e.p_b2 / 3 + 1);
        const Real slope = 1 / (kLn2 * arg0);
        Vec a = Vec::Zero(L.n);
        a[L.icb2] = -1;
        a[L.ipb2] = slope;
        p.lin.push_back({std::move(a), slope * e.p_b2 - std::log2(arg0)});

        // minorant of |w|^2 keeping the AN power at or above its floor
        if (o.p_th > 0) {
            Vec aw = Vec::Zero(L.n);
            aw.segment(L.iw, L.nw) = -2 * e.w;
            p.lin.push_back({std::move(aw), -(o.p_th + e.w.squaredNorm())});
        }

        // p_B2 dominates the squared AN leakage
        Mat Q = Mat::Zero(L.n, L.n);
        Q.block(L.iw, L.iw, L.nw, L.nw) = nb.hj * nb.hj.transpose();
        Vec aq = Vec::Zero(L.n);
        aq[L.ipb2] = -1;
        p.quad.push_back({std::move(Q), std::move(aq), 0});
    }

    // rate slack capped by the data-power log
    {
        Vec g = Vec::Zero(L.n);
        g[L.icb1] = 1;
        Vec a = Vec::Zero(L.n);
        a[L.ipb1] = 2;
        p.logc.push_back({std::move(g), 1, std::move(a), kPiE});
    }

    // SINR floor
    if (o.delta_b > 0) {
        if (o.with_w) {
            Mat A = Mat::Zero(2, L.n);
            A.row(0).segment(L.iw, L.nw) = nb.hj.transpose();
            Vec b(2);
            b << 0, 1;
            Vec c = Vec::Zero(L.n);
            c.segment(L.iv, L.nv) = nb.ha / std::sqrt(o.delta_b);
            p.soc.push_back({std::move(A), std::move(b), std::move(c), 0});
        } else {
            Vec a = Vec::Zero(L.n);
            a.segment(L.iv, L.nv) = -nb.ha;
            p.lin.push_back({std::move(a), -std::sqrt(o.delta_b)});
        }
    } else {
        // sign convention: the data term is kept nonnegative
        Vec a = Vec::Zero(L.n);
        a.segment(L.iv, L.nv) = -nb.ha;
        p.lin.push_back({std::move(a), 0});
    }

    if (o.with_phi) {
        Vec lo = Vec::Zero(L.n), hi = Vec::Zero(L.n);
        lo[L.iphi] = -1;
        hi[L.iphi] = 1;
        p.lin.push_back({std::move(lo), -o.p_th});
        p.lin.push_back({std::move(hi), o.phi_cap});
    }

    // amplitude boxes
    for (int i = 0; i < L.nv; ++i) {
        Vec a = Vec::Zero(L.n), b = Vec::Zero(L.n);
        a[L.iv + i] = 1;
        b[L.iv + i] = -1;
        p.lin.push_back({std::move(a), nb.delta});
        p.lin.push_back({std::move(b), nb.delta});
    }
    for (int i = 0; i < L.nw; ++i) {
        Vec a = Vec::Zero(L.n), b = Vec::Zero(L.n);
        a[L.iw + i] = 1;
        b[L.iw + i] = -1;
        p.lin.push_back({std::move(a), nb.delta});
        p.lin.push_back({std::move(b), nb.delta});
    }
    return p;
}

// Strictly feasible barrier start derived from the expansion point, or
// nothing when the expansion sits too close to a constraint boundary (the
// solver then falls back to phase one).
std::optional<Vec> assemble_start(const convex::ConvexProgram& prog, const NormBob& nb,
                                  const StageOptions& o, const Layout& L, const StagePoint& e) {
    Vec x = Vec::Zero(L.n);
    const Real pull = 1 - 1e-7;
    for (int i = 0; i < L.nv; ++i)
        x[L.iv + i] = std::clamp(e.v[i], -nb.delta * pull, nb.delta * pull);
    for (int i = 0; i < L.nw; ++i) {
        Real wi = e.w[i] * (1 + 1e-6);  // inflate to clear the AN-power minorant
        x[L.iw + i] = std::clamp(wi, -nb.delta * pull, nb.delta * pull);
    }
    if (o.with_phi) {
        const Real span = o.phi_cap - o.p_th;
        if (!(span > 0)) return std::nullopt;
        x[L.iphi] = std::clamp(e.phi, o.p_th + Real(1e-3) * span, o.phi_cap - Real(1e-3) * span);
    }
    if (o.with_w) {
        const Real leak = nb.hj.dot(x.segment(L.iw, L.nw));
        x[L.ipb2] = leak * leak * (1 + 1e-6) + 1e-9;
    }
    // back off the two data-power slacks from their own constraints
    {
        const auto& c29 = prog.lin.front();  // p_B1 row is pushed first
        Vec probe = x;
        probe[L.ipb1] = 0;
        const Real allowed = c29.b - c29.a.dot(probe);
        x[L.ipb1] = allowed - std::max(Real(1e-9), Real(1e-7) * std::abs(allowed));
        if (2 * x[L.ipb1] + kPiE <= 0) return std::nullopt;
        x[L.icb1] = std::log2(2 * x[L.ipb1] + kPiE) - 1e-6;
    }
    if (o.with_w) {
        const auto& c30 = prog.lin[1];
        Vec probe = x;
        probe[L.icb2] = 0;
        const Real needed = c30.a.dot(probe) - c30.b;  // -c_B2 <= b - rest
        x[L.icb2] = needed + 1e-6 * (1 + std::abs(needed));
    }
    if (prog.max_violation(x) < -1e-12) return x;
    return std::nullopt;
}

StagePoint extract(const Vec& x, const StageOptions& o, const Layout& L) {
    StagePoint p;
    p.v = x.segment(L.iv, L.nv);
    if (o.with_w) {
        p.w = x.segment(L.iw, L.nw);
        p.p_b2 = x[L.ipb2];
    }
    if (o.with_phi) p.phi = x[L.iphi];
    return p;
}

Real rel_change(Real a, Real b, Real floor) { return std::abs(a - b) / std::max(std::abs(a), floor); }

Real rel_change(const Vec& a, const Vec& b, Real floor) {
    if (a.size() == 0) return 0;
    return (a - b).norm() / std::max(a.norm(), floor);
}

Real stop_metric(const NormBob& nb, const StageOptions& o, const StagePoint& now,
                 const StagePoint& before) {
    const Real amp_floor = 1e-6 * std::max(Real(1), nb.delta);
    Real err = rel_change(now.v, before.v, amp_floor);
    if (o.with_w) {
        err = std::max(err, rel_change(now.w, before.w, amp_floor));
        const Real leak_scale = nb.hj.norm() * nb.delta;
        err = std::max(err, rel_change(now.p_b2, before.p_b2, 1e-6 * (1 + leak_scale * leak_scale)));
    }
    if (o.with_phi) err = std::max(err, rel_change(now.phi, before.phi, 1e-6 * std::max(Real(1), o.phi_cap)));
    return err;
}

// Worst relative gap between the slack variables and the expressions that
// should pin them at a converged stage.
Real slack_tightness(const Vec& x, const convex::ConvexProgram& prog, const NormBob& nb,
                     const StageOptions& o, const Layout& L) {
    auto rel = [](Real lhs, Real rhs) { return std::abs(lhs - rhs) / (1 + std::abs(rhs)); };
    Real worst = rel(x[L.icb1], std::log2(2 * x[L.ipb1] + kPiE));
    const auto& c29 = prog.lin.front();
    Vec probe = x;
    probe[L.ipb1] = 0;
    worst = std::max(worst, rel(x[L.ipb1], c29.b - c29.a.dot(probe)));
    if (o.with_w) {
        const Real leak = nb.hj.dot(x.segment(L.iw, L.nw));
        worst = std::max(worst, rel(x[L.ipb2], leak * leak));
        const auto& c30 = prog.lin[1];
        probe = x;
        probe[L.icb2] = 0;
        worst = std::max(worst, rel(x[L.icb2], c30.a.dot(probe) - c30.b));
    }
    return worst;
}

struct CcpInternal {
    bool feasible = true;
    StagePoint point;
    int iters = 0;
    std::vector<Real> objective_trace;
    std::vector<Real> error_trace;
    Real slack_gap = 0;
};

CcpInternal run_ccp(const NormBob& nb, const StageOptions& o, const DesignConfig& cfg, Real lambda,
                    const StagePoint& start) {
    const Layout L = make_layout(nb, o);
    CcpInternal res;
    StagePoint e = start;
    if (o.with_w) {
        const Real leak = nb.hj.dot(e.w);
        e.p_b2 = leak * leak;
    }
    for (int j = 1; j <= cfg.max_iter_ccp; ++j) {
        const convex::ConvexProgram prog = build_stage(nb, o, L, lambda, e);
        const auto hint = assemble_start(prog, nb, o, L, e);
        const convex::SolveReport rep = convex::solve(prog, 1e-8, 1e-8, hint);
        if (rep.status == convex::SolveStatus::Infeasible) {
            if (j == 1) {
                res.feasible = false;
                return res;
            }
            throw convex::SolverError("CCP stage lost feasibility after a feasible iterate");
        }
        const StagePoint next = extract(rep.x, o, L);
        const Real err = stop_metric(nb, o, next, e);
        res.objective_trace.push_back(rep.objective_value);
        res.error_trace.push_back(err);
        res.slack_gap = slack_tightness(rep.x, prog, nb, o, L);
        e = next;
        ++res.iters;
        if (err <= cfg.eps_ccp) break;
    }
    res.point = e;
    return res;
}

// Dinkelbach outer loop; returns the final iterate and records the traces.
std::optional<StagePoint> run_dinkelbach(const NormBob& nb, const StageOptions& o,
                                         const DesignConfig& cfg, const StagePoint& start,
                                         DesignOutcome& out) {
    StagePoint point = start;
    Real lambda = 0;
    for (int i = 1; i <= cfg.max_iter_dinkelbach; ++i) {
        const CcpInternal st = run_ccp(nb, o, cfg, lambda, point);
        if (!st.feasible) {
            out.status = DesignStatus::Infeasible;
            out.note = "convexified stage infeasible";
            return std::nullopt;
        }
        if (i == 1) out.ccp_error_trace = st.error_trace;
        point = st.point;
        out.ccp_iters_per_stage.push_back(st.iters);
        out.slack_gap = std::max(out.slack_gap, st.slack_gap);

        const Real cap = cap_norm(nb, o, point);
        const Real den = den_power(nb, o, point);
        const Real err = cap - lambda * den;
        out.dinkelbach_error_trace.push_back(err);
        lambda = std::max(Real(0), cap / den);
        out.lambda_trace.push_back(lambda);
        out.dinkelbach_iters = i;
        if (err <= cfg.eps_dinkelbach) break;
    }
    out.status = DesignStatus::Solved;
    return point;
}

StagePoint default_start(const ChannelState& ch, const NormBob& nb, const StageOptions& o) {
    StagePoint s;
    if (ch.scheme == SchemeKind::Miso) {
        const Real hmax = nb.ha.lpNorm<Eigen::Infinity>();
        s.v = hmax > 0 ? Vec(nb.delta * nb.ha / hmax) : Vec(Vec::Zero(nb.ha.size()));
    } else {
        s.v = Vec::Constant(1, nb.ha[0] >= 0 ? nb.delta : -nb.delta);
    }
    if (o.with_w) {
        const int n_all = static_cast<int>(ch.bob_alice.size() == 1
                                               ? ch.bob_jammer.size() + 1
                                               : ch.bob_alice.size());
        const Real entry = std::min(std::sqrt(std::max(o.p_th, Real(0)) / (n_all - 1)), nb.delta);
        s.w = Vec::Constant(nb.hj.size(), entry);
        const Real leak = nb.hj.dot(s.w);
        s.p_b2 = leak * leak;
    }
    if (o.with_phi) s.phi = o.p_th + 1e-3 * (o.phi_cap - o.p_th);
    return s;
}

void finalize_outcome(DesignOutcome& out, const ChannelState& ch, const RoomScenario& sc,
                      const Vec& v, const Vec& w, bool zf) {
    out.sol.scheme = ch.scheme;
    out.sol.zero_forcing = zf;
    out.sol.info = v;
    out.sol.an = w.size() ? Mat(w.reshaped(w.size(), 1)) : Mat(Mat::Zero(ch.bob_jammer.size(), 1));
    out.ee_bob = ee_bob(sc, ch, out.sol);
    out.resultant_see = ch.n_eves() > 0 ? min_see(sc, ch, out.sol) : 0;
}

}  // namespace

DesignOutcome solve_p1_noan(const ChannelState& channel, const RoomScenario& scenario,
                            const DesignConfig& cfg) {
    scenario.validate();
    const NormBob nb = norm_bob(channel, scenario);
    DesignOutcome out;

    if (channel.scheme != SchemeKind::Miso) {
        // scalar precoder: the EE maximum in V = v^2 comes from one bisection
        DesignConfig free_cfg = cfg;
        free_cfg.delta_b = 0;
        const ZfScalarResult r = zf_optimal_V(channel, scenario, free_cfg, 0);
        out.status = DesignStatus::Solved;
        finalize_outcome(out, channel, scenario, Vec::Constant(1, std::sqrt(r.v_sq)), Vec(), false);
        return out;
    }

    StageOptions o;
    o.with_w = false;
    o.delta_b = 0;
    o.p_th = 0;
    const auto point = run_dinkelbach(nb, o, cfg, default_start(channel, nb, o), out);
    if (!point) return out;
    finalize_outcome(out, channel, scenario, point->v, Vec(), false);
    return out;
}

DesignOutcome dinkelbach_ee(const ChannelState& channel, const RoomScenario& scenario,
                            const DesignConfig& cfg, const std::optional<CcpPoint>& start_override) {
    scenario.validate();
    const NormBob nb = norm_bob(channel, scenario);
    DesignOutcome out;

    const int n_jam = static_cast<int>(nb.hj.size());
    const Real max_signal = nb.delta * (channel.scheme == SchemeKind::Miso
                                            ? nb.ha.lpNorm<1>()
                                            : std::abs(nb.ha[0]));
    if (cfg.delta_b > max_signal * max_signal) {
        out.note = "SINR floor above Bob's best-case SINR";
        return out;
    }
    if (cfg.p_th > n_jam * nb.delta * nb.delta) {
        out.note = "AN power floor exceeds the amplitude budget";
        return out;
    }

    StageOptions o;
    o.with_w = true;
    o.delta_b = cfg.delta_b;
    o.p_th = cfg.p_th;

    StagePoint start;
    if (start_override) {
        start.v = start_override->v;
        start.w = start_override->w;
        start.p_b2 = start_override->p_b2;
    } else {
        start = default_start(channel, nb, o);
    }

    const auto point = run_dinkelbach(nb, o, cfg, start, out);
    if (!point) return out;
    finalize_outcome(out, channel, scenario, point->v, point->w, false);
    return out;
}

CcpStageResult ccp_stage(const ChannelState& channel, const RoomScenario& scenario,
                         const DesignConfig& cfg, Real lambda, const CcpPoint& start) {
    const NormBob nb = norm_bob(channel, scenario);
    StageOptions o;
    o.with_w = true;
    o.delta_b = cfg.delta_b;
    o.p_th = cfg.p_th;
    StagePoint s;
    s.v = start.v;
    s.w = start.w;
    s.p_b2 = start.p_b2;
    const CcpInternal r = run_ccp(nb, o, cfg, lambda, s);
    CcpStageResult res;
    res.feasible = r.feasible;
    res.point = {r.point.v, r.point.w, r.point.p_b2};
    res.iters = r.iters;
    res.objective_trace = r.objective_trace;
    res.error_trace = r.error_trace;
    res.slack_gap = r.slack_gap;
    return res;
}

Vec zf_basis(const Vec& h_bar) {
    const int n = static_cast<int>(h_bar.size());
    if (n < 2) throw std::domain_error("null-space direction needs dimension >= 2");
    const Real hn2 = h_bar.squaredNorm();
    if (!(hn2 > 0)) throw std::domain_error("cannot build a null-space direction for a zero channel");
    auto project = [&](const Vec& u) { return Vec(u - h_bar * (h_bar.dot(u) / hn2)); };
    Vec w = project(Vec::Ones(n));
    if (w.norm() <= 1e-9 * std::sqrt(Real(n))) w = project(Vec::Unit(n, 0));
    return w / w.norm();
}

ZfScalarResult zf_optimal_V(const ChannelState& channel, const RoomScenario& scenario,
                            const DesignConfig& cfg, Real phi_star) {
    if (channel.scheme == SchemeKind::Miso)
        throw std::domain_error("scalar ZF search applies to the SISO schemes only");
    const Real h = channel.bob_alice[0];
    const Real s2 = channel.bob_noise_norm;
    const Real delta = scenario.headroom_a();
    const Real p0 = scenario.power.circuit_w +
                    scenario.n_luminaires() * scenario.power.led_voltage_v * scenario.dc_bias_a;
    const Real zeta = scenario.power.zeta;

    ZfScalarResult res;
    const Real v_hi = delta * delta;
    if (!(h > 0)) {
        if (cfg.delta_b > 0) throw std::domain_error("SINR floor unreachable on a zero channel");
        return res;  // dark link: zero rate at zero spend
    }
    const Real v_lo = cfg.delta_b > 0 ? cfg.delta_b * s2 / (h * h) : Real(0);
    if (v_lo > v_hi) throw std::domain_error("SINR floor incompatible with the amplitude headroom");

    const Real a = 2 * h * h / (kPiE * s2);
    const Real b = 2 * (p0 + zeta * phi_star);
    const auto f = [&](Real V) {
        return a * (b + 2 * zeta * V) / (kLn2 * (1 + a * V)) - 2 * zeta * std::log2(1 + a * V);
    };

    Real v_star;
    if (f(v_hi) > 0) {
        v_star = v_hi;
        res.branch = 1;
    } else if (f(v_lo) < 0) {
        v_star = v_lo;
        res.branch = 2;
    } else {
        Real lo = v_lo, hi = v_hi;
        const Real tol = 1e-10 * std::max(Real(1), v_hi);
        while (hi - lo > tol) {
            const Real mid = (lo + hi) / 2;
            (f(mid) >= 0 ? lo : hi) = mid;
        }
        v_star = (lo + hi) / 2;
        res.branch = 0;
    }
    res.v_sq = v_star;
    res.ee = std::log2(1 + a * v_star) / (2 * (p0 + zeta * (v_star + phi_star)));
    return res;
}

DesignOutcome zf_siso(const ChannelState& channel, const RoomScenario& scenario,
                      const DesignConfig& cfg) {
    scenario.validate();
    DesignOutcome out;
    const Real delta = scenario.headroom_a();
    const Real h = channel.bob_alice[0];

    if (!(h > 0)) {
        out.note = "Bob outside the serving luminaire's coverage";
        return out;
    }
    const Vec w_tilde = zf_basis(channel.bob_jammer);
    const Real winf = w_tilde.lpNorm<Eigen::Infinity>();
    if (cfg.p_th > delta * delta / (winf * winf) * (1 + 1e-12)) {
        out.note = "AN power floor exceeds the null-space amplitude budget";
        return out;
    }
    if (cfg.delta_b * channel.bob_noise_norm > delta * delta * h * h) {
        out.note = "SINR floor above Bob's best-case SINR";
        return out;
    }

    const Real phi_star = cfg.p_th;
    const ZfScalarResult r = zf_optimal_V(channel, scenario, cfg, phi_star);
    out.status = DesignStatus::Solved;
    out.sol.info = Vec::Constant(1, std::sqrt(r.v_sq));
    out.sol.an = std::sqrt(phi_star) * w_tilde;
    out.sol.scheme = channel.scheme;
    out.sol.zero_forcing = true;
    out.ee_bob = ee_bob(scenario, channel, out.sol);
    out.resultant_see = channel.n_eves() > 0 ? min_see(scenario, channel, out.sol) : 0;
    return out;
}

DesignOutcome zf_miso(const ChannelState& channel, const RoomScenario& scenario,
                      const DesignConfig& cfg) {
    scenario.validate();
    if (channel.scheme != SchemeKind::Miso) throw std::domain_error("zf_miso requires the MISO scheme");
    const NormBob nb = norm_bob(channel, scenario);
    DesignOutcome out;

    const Vec w_tilde = zf_basis(channel.bob_alice);
    const Real winf = w_tilde.lpNorm<Eigen::Infinity>();
    const Real phi_cap = nb.delta * nb.delta / (winf * winf);
    if (cfg.p_th > phi_cap * (1 + 1e-12)) {
        out.note = "AN power floor exceeds the null-space amplitude budget";
        return out;
    }
    const Real max_signal = nb.delta * nb.ha.lpNorm<1>();
    if (cfg.delta_b > max_signal * max_signal) {
        out.note = "SINR floor above Bob's best-case SINR";
        return out;
    }

    StageOptions o;
    o.with_w = false;
    o.with_phi = true;
    o.phi_cap = phi_cap;
    o.delta_b = cfg.delta_b;
    o.p_th = cfg.p_th;

    const auto point = run_dinkelbach(nb, o, cfg, default_start(channel, nb, o), out);
    if (!point) return out;
    const Real phi = std::max(point->phi, cfg.p_th);
    finalize_outcome(out, channel, scenario, point->v, Vec(std::sqrt(phi) * w_tilde), true);
    return out;
}

}  // namespace vlcsee
