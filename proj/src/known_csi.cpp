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

#include "vlcsee/known_csi.hpp"

#include <cmath>

#include "vlcsee/convex.hpp"

namespace vlcsee {

namespace {

constexpr Real kLn2 = 0.69314718055994530942;

// Channel with each receiver's gains divided by its own noise deviation, so
// every per-receiver noise term is 1. The secrecy-rate differences are
// invariant under this rescaling; precoders remain physical.
struct NormChannel {
    Vec hb_a, hb_j;                 // Bob
    std::vector<Vec> he_a, he_j;    // per Eve
    int K = 0;
    Real delta = 0;
    Real p0 = 0;
    Real zeta = 0;
};

NormChannel norm_channel(const ChannelState& ch, const RoomScenario& s) {
    NormChannel nc;
    const Real sb = std::sqrt(ch.bob_noise_norm);
    nc.hb_a = ch.bob_alice / sb;
    nc.hb_j = ch.bob_jammer / sb;
    nc.K = ch.n_eves();
    for (int k = 0; k < nc.K; ++k) {
        const Real se = std::sqrt(ch.eve_noise_norm[k]);
        nc.he_a.push_back(ch.eve_alice[k] / se);
        nc.he_j.push_back(ch.eve_jammer[k] / se);
    }
    nc.delta = s.headroom_a();
    nc.p0 = s.power.circuit_w + s.n_luminaires() * s.power.led_voltage_v * s.dc_bias_a;
    nc.zeta = s.power.zeta;
    return nc;
}

struct Layout {
    bool an = true;
    int nv = 0, nj = 0, K = 0;
    int iv = 0, iW = -1;
    int icb1 = -1, icb2 = -1, ipb1 = -1, ipb2 = -1;
    int ice1 = -1, ice2 = -1, ipe1 = -1, ipe2 = -1;  // K-blocks
    int iu = -1;                                     // nj*K block (row-L1 helpers)
    int is = -1;
    int n = 0;

    int w_col(int k) const { return iW + k * nj; }
    int u_at(int row, int k) const { return iu + k * nj + row; }
};

Layout make_layout(const NormChannel& nc, bool an) {
    Layout L;
    L.an = an;
    L.nv = static_cast<int>(nc.hb_a.size());
    L.nj = static_cast<int>(nc.hb_j.size());
    L.K = nc.K;
    int at = L.nv;
    if (an) {
        L.iW = at;
        at += L.nj * L.K;
    }
    L.icb1 = at++;
    if (an) L.icb2 = at++;
    L.ipb1 = at++;
    if (an) L.ipb2 = at++;
    L.ice1 = at;
    at += L.K;
    if (an) {
        L.ice2 = at;
        at += L.K;
    }
    L.ipe1 = at;
    at += L.K;
    if (an) {
        L.ipe2 = at;
        at += L.K;
        L.iu = at;
        at += L.nj * L.K;
    }
    L.is = at++;
    L.n = at;
    return L;
}

// Expansion point of the convexified feasibility problem.
struct Expansion {
    Vec v;
    Mat W;       // nj x K (0 x 0 without AN)
    Real p_b2 = 0;
    Vec p_e1;    // K
};

struct BuiltProgram {
    convex::ConvexProgram prog;
    bool margins_quadratic = false;  // margin rows are quad[0..K-1] when t > 0
    int row_pb1 = -1;
    int row_cb2 = -1;
    std::vector<int> rows_ce1;
    std::vector<int> rows_pe2;
};

Real leak_sq(const Vec& h, const Mat& W) {
    if (W.size() == 0) return 0;
    return (W.transpose() * h).squaredNorm();
}

BuiltProgram build_p12(const NormChannel& nc, const Layout& L, Real t, const Expansion& e) {
    BuiltProgram bp;
    convex::ConvexProgram& p = bp.prog;
    p.n = L.n;
    p.c = Vec::Zero(L.n);
    p.c[L.is] = 1;  // maximize the worst SEE margin

    const int n = L.n;
    const bool an = L.an;

    // per-Eve SEE margin with slack s
    for (int k = 0; k < L.K; ++k) {
        Vec a = Vec::Zero(n);
        a[L.is] = 1;
        a[L.icb1] = -0.5;
        a[L.ice1 + k] = 0.5;
        if (an) {
            a[L.icb2] = 0.5;
            a[L.ice2 + k] = -0.5;
        }
        const Real tq = t * nc.zeta;
        if (tq > 0) {
            Mat Q = Mat::Zero(n, n);
            for (int i = 0; i < L.nv; ++i) Q(L.iv + i, L.iv + i) = tq;
            if (an)
                for (int i = 0; i < L.nj * L.K; ++i) Q(L.iW + i, L.iW + i) = tq;
            bp.margins_quadratic = true;
            p.quad.push_back({std::move(Q), std::move(a), -t * nc.p0});
        } else {
            p.lin.push_back({std::move(a), -t * nc.p0});
        }
    }

    // tangent minorant of the Bob data-power term feeding p_B1
    {
        Vec a = Vec::Zero(n);
        a[L.ipb1] = 1;
        const Real av = nc.hb_a.dot(e.v);
        a.segment(L.iv, L.nv) -= 2 * av * nc.hb_a;
        Real b = -av * av;
        if (an) {
            for (int k = 0; k < L.K; ++k) {
                const Real bk = nc.hb_j.dot(e.W.col(k));
                a.segment(L.w_col(k), L.nj) -= 2 * bk * nc.hb_j;
                b -= bk * bk;
            }
        }
        bp.row_pb1 = static_cast<int>(p.lin.size());
        p.lin.push_back({std::move(a), b});
    }

    if (an) {
        // tangent bound on Bob's interference log-term
        const Real arg0 = kPiE * (e.p_b2 / 3 + 1);
        const Real slope = 1 / (kLn2 * arg0);
        Vec a = Vec::Zero(n);
        a[L.icb2] = -1;
        a[L.ipb2] = slope;
        bp.row_cb2 = static_cast<int>(p.lin.size());
        p.lin.push_back({std::move(a), slope * e.p_b2 - std::log2(arg0)});
    }

    // per-Eve tangent bound on the received-power log-term
    for (int k = 0; k < L.K; ++k) {
        const Real arg0 = kPiE * (e.p_e1[k] / 3 + 1);
        const Real slope = 1 / (kLn2 * arg0);
        Vec a = Vec::Zero(n);
        a[L.ice1 + k] = -1;
        a[L.ipe1 + k] = slope;
        bp.rows_ce1.push_back(static_cast<int>(p.lin.size()));
        p.lin.push_back({std::move(a), slope * e.p_e1[k] - std::log2(arg0)});
    }

    // per-Eve tangent minorant of the AN leakage feeding p_E2
    if (an) {
        for (int k = 0; k < L.K; ++k) {
            Vec a = Vec::Zero(n);
            a[L.ipe2 + k] = 1;
            Real b = 0;
            for (int j = 0; j < L.K; ++j) {
                const Real gkj = nc.he_j[k].dot(e.W.col(j));
                a.segment(L.w_col(j), L.nj) -= 2 * gkj * nc.he_j[k];
                b -= gkj * gkj;
            }
            bp.rows_pe2.push_back(static_cast<int>(p.lin.size()));
            p.lin.push_back({std::move(a), b});
        }
    }

    // c_B1 capped by the data-power log
    {
        Vec g = Vec::Zero(n);
        g[L.icb1] = 1;
        Vec a = Vec::Zero(n);
        a[L.ipb1] = 2;
        p.logc.push_back({std::move(g), 1, std::move(a), kPiE});
    }

    if (an) {
        // p_B2 dominates Bob's squared AN leakage
        Mat Q = Mat::Zero(n, n);
        for (int k = 0; k < L.K; ++k)
            Q.block(L.w_col(k), L.w_col(k), L.nj, L.nj) = nc.hb_j * nc.hb_j.transpose();
        Vec a = Vec::Zero(n);
        a[L.ipb2] = -1;
        p.quad.push_back({std::move(Q), std::move(a), 0});
    }

    // p_E1 dominates each Eve's full received power
    for (int k = 0; k < L.K; ++k) {
        Mat Q = Mat::Zero(n, n);
        Q.block(L.iv, L.iv, L.nv, L.nv) = nc.he_a[k] * nc.he_a[k].transpose();
        if (an)
            for (int j = 0; j < L.K; ++j)
                Q.block(L.w_col(j), L.w_col(j), L.nj, L.nj) = nc.he_j[k] * nc.he_j[k].transpose();
        Vec a = Vec::Zero(n);
        a[L.ipe1 + k] = -1;
        p.quad.push_back({std::move(Q), std::move(a), 0});
    }

    // c_E2 capped by each Eve's leakage log
    if (an) {
        for (int k = 0; k < L.K; ++k) {
            Vec g = Vec::Zero(n);
            g[L.ice2 + k] = 1;
            Vec a = Vec::Zero(n);
            a[L.ipe2 + k] = 2;
            p.logc.push_back({std::move(g), 1, std::move(a), kPiE});
        }
    }

    // amplitude boxes and row-wise L1 budget across the AN streams
    for (int i = 0; i < L.nv; ++i) {
        Vec a = Vec::Zero(n), b = Vec::Zero(n);
        a[L.iv + i] = 1;
        b[L.iv + i] = -1;
        p.lin.push_back({std::move(a), nc.delta});
        p.lin.push_back({std::move(b), nc.delta});
    }
    if (an) {
        for (int k = 0; k < L.K; ++k) {
            for (int r = 0; r < L.nj; ++r) {
                Vec a = Vec::Zero(n), b = Vec::Zero(n);
                a[L.w_col(k) + r] = 1;
                a[L.u_at(r, k)] = -1;
                b[L.w_col(k) + r] = -1;
                b[L.u_at(r, k)] = -1;
                p.lin.push_back({std::move(a), 0});
                p.lin.push_back({std::move(b), 0});
            }
        }
        for (int r = 0; r < L.nj; ++r) {
            Vec a = Vec::Zero(n);
            for (int k = 0; k < L.K; ++k) a[L.u_at(r, k)] = 1;
            p.lin.push_back({std::move(a), nc.delta});
        }
    }
    return bp;
}

std::optional<Vec> assemble_start(const BuiltProgram& bp, const NormChannel& nc, const Layout& L,
                                  const Expansion& e) {
    const convex::ConvexProgram& p = bp.prog;
    Vec x = Vec::Zero(L.n);
    const Real pull = 1 - 1e-7;
    for (int i = 0; i < L.nv; ++i)
        x[L.iv + i] = std::clamp(e.v[i], -nc.delta * pull, nc.delta * pull);

    Mat Ws = e.W;
    if (L.an && Ws.size()) {
        Real worst_row = 0;
        for (int r = 0; r < L.nj; ++r) worst_row = std::max(worst_row, Ws.row(r).lpNorm<1>());
        if (worst_row > nc.delta * (1 - 1e-6)) Ws *= nc.delta * (1 - 1e-6) / worst_row;
        for (int k = 0; k < L.K; ++k) x.segment(L.w_col(k), L.nj) = Ws.col(k);
        for (int r = 0; r < L.nj; ++r) {
            const Real pad = (nc.delta - Ws.row(r).lpNorm<1>()) / (2 * L.K);
            if (!(pad > 0)) return std::nullopt;
            for (int k = 0; k < L.K; ++k) x[L.u_at(r, k)] = std::abs(Ws(r, k)) + pad;
        }
        x[L.ipb2] = std::max(e.p_b2, leak_sq(nc.hb_j, Ws)) * (1 + 1e-6) + 1e-9;
    }

    const Vec vs = x.segment(L.iv, L.nv);
    for (int k = 0; k < L.K; ++k) {
        const Real sig = nc.he_a[k].dot(vs);
        const Real pe1 = sig * sig + (L.an ? leak_sq(nc.he_j[k], Ws) : Real(0));
        x[L.ipe1 + k] = std::max(e.p_e1[k], pe1) * (1 + 1e-6) + 1e-9;
    }

    auto back_off_upper = [&](int row, int idx) {
        const auto& c = p.lin[static_cast<size_t>(row)];
        Vec probe = x;
        probe[idx] = 0;
        const Real allowed = c.b - c.a.dot(probe);
        x[idx] = allowed - std::max(Real(1e-9), Real(1e-7) * std::abs(allowed));
    };
    auto back_off_lower = [&](int row, int idx) {
        const auto& c = p.lin[static_cast<size_t>(row)];
        Vec probe = x;
        probe[idx] = 0;
        const Real needed = c.a.dot(probe) - c.b;
        x[idx] = needed + 1e-6 * (1 + std::abs(needed));
    };

    back_off_upper(bp.row_pb1, L.ipb1);
    if (2 * x[L.ipb1] + kPiE <= 0) return std::nullopt;
    x[L.icb1] = std::log2(2 * x[L.ipb1] + kPiE) - 1e-6;
    if (L.an) back_off_lower(bp.row_cb2, L.icb2);
    for (int k = 0; k < L.K; ++k) {
        back_off_lower(bp.rows_ce1[k], L.ice1 + k);
        if (L.an) {
            back_off_upper(bp.rows_pe2[k], L.ipe2 + k);
            if (2 * x[L.ipe2 + k] + kPiE <= 0) return std::nullopt;
            x[L.ice2 + k] = std::log2(2 * x[L.ipe2 + k] + kPiE) - 1e-6;
        }
    }

    // pull the margin below the worst per-Eve slack
    Real allowed = std::numeric_limits<Real>::infinity();
    x[L.is] = 0;
    for (int k = 0; k < L.K; ++k) {
        Real slack;
        if (bp.margins_quadratic) {
            const auto& c = p.quad[static_cast<size_t>(k)];
            slack = c.b - c.a.dot(x) - x.dot(c.Q * x);
        } else {
            const auto& c = p.lin[static_cast<size_t>(k)];
            slack = c.b - c.a.dot(x);
        }
        allowed = std::min(allowed, slack);
    }
    x[L.is] = allowed - std::max(Real(1e-9), Real(1e-6) * std::abs(allowed));

    if (p.max_violation(x) < -1e-12) return x;
    return std::nullopt;
}

Expansion extract(const Vec& x, const Layout& L) {
    Expansion e;
    e.v = x.segment(L.iv, L.nv);
    if (L.an) {
        e.W.resize(L.nj, L.K);
        for (int k = 0; k < L.K; ++k) e.W.col(k) = x.segment(L.w_col(k), L.nj);
        e.p_b2 = x[L.ipb2];
    } else {
        e.W.resize(L.nj, 0);
    }
    e.p_e1 = x.segment(L.ipe1, L.K);
    return e;
}

SlackVariables extract_slacks(const Vec& x, const Layout& L) {
    SlackVariables s;
    s.c_b1 = x[L.icb1];
    s.p_b1 = x[L.ipb1];
    s.c_b2 = L.an ? x[L.icb2] : std::log2(kPiE);
    s.p_b2 = L.an ? x[L.ipb2] : 0;
    s.c_e1 = x.segment(L.ice1, L.K);
    s.p_e1 = x.segment(L.ipe1, L.K);
    if (L.an) {
        s.c_e2 = x.segment(L.ice2, L.K);
        s.p_e2 = x.segment(L.ipe2, L.K);
    } else {
        s.c_e2 = Vec::Constant(L.K, std::log2(kPiE));
        s.p_e2 = Vec::Zero(L.K);
    }
    return s;
}

Real rel_change(const Vec& a, const Vec& b, Real floor) {
    if (a.size() == 0) return 0;
    return (a - b).norm() / std::max(a.norm(), floor);
}

// W = 0 is a fixed point of the linearized stages (the leakage terms have
// zero gradient there), so the cold start must seed every AN stream with a
// nonzero direction: each column aims at its Eve inside Bob's null space.
Expansion cold_start(const ChannelState& ch, const NormChannel& nc, bool an) {
    Expansion e;
    if (ch.scheme == SchemeKind::Miso) {
        const Real hmax = nc.hb_a.lpNorm<Eigen::Infinity>();
        e.v = hmax > 0 ? Vec(0.5 * nc.delta * nc.hb_a / hmax) : Vec(Vec::Zero(nc.hb_a.size()));
    } else {
        e.v = Vec::Constant(1, 0.5 * nc.delta);
    }
    const int nj = static_cast<int>(nc.hb_j.size());
    e.W = Mat::Zero(nj, an ? nc.K : 0);
    if (an) {
        const Real hb2 = nc.hb_j.squaredNorm();
        const Real amp = 0.3 * nc.delta / nc.K;
        for (int k = 0; k < nc.K; ++k) {
            Vec dir = nc.he_j[k];
            if (hb2 > 0) dir -= nc.hb_j * (nc.hb_j.dot(dir) / hb2);
            if (dir.norm() < 1e-9 * std::max(Real(1), nc.he_j[k].norm())) dir = zf_basis(nc.hb_j);
            e.W.col(k) = amp * dir / dir.lpNorm<Eigen::Infinity>();
        }
    }
    e.p_b2 = leak_sq(nc.hb_j, e.W);
    e.p_e1 = Vec::Zero(nc.K);
    for (int k = 0; k < nc.K; ++k) {
        const Real sig = nc.he_a[k].dot(e.v);
        e.p_e1[k] = sig * sig + leak_sq(nc.he_j[k], e.W);
    }
    return e;
}

}  // namespace

P12Result p12_feasible(const ChannelState& channel, const RoomScenario& scenario, Real t,
                       const MaxMinConfig& cfg, const KnownPoint* warm) {
    scenario.validate();
    if (channel.n_eves() == 0) throw std::domain_error("the max-min design requires at least one Eve");
    if (t < 0) throw std::domain_error("target SEE must be nonnegative");

    const NormChannel nc = norm_channel(channel, scenario);
    const Layout L = make_layout(nc, cfg.use_an);

    Expansion e;
    if (warm && warm->v.size() == L.nv && warm->W.cols() == (cfg.use_an ? nc.K : 0)) {
        e.v = warm->v;
        e.W = warm->W;
        e.p_b2 = leak_sq(nc.hb_j, e.W);
        e.p_e1 = Vec::Zero(nc.K);
        for (int k = 0; k < nc.K; ++k) {
            const Real sig = nc.he_a[k].dot(e.v);
            e.p_e1[k] = sig * sig + leak_sq(nc.he_j[k], e.W);
        }
    } else {
        e = cold_start(channel, nc, cfg.use_an);
    }

    P12Result res;
    Real margin = -std::numeric_limits<Real>::infinity();
    const Real amp_floor = 1e-6 * std::max(Real(1), nc.delta);
    Real gain_scale = nc.hb_j.norm();
    for (int k = 0; k < nc.K; ++k)
        gain_scale = std::max({gain_scale, nc.he_j[k].norm(), nc.he_a[k].norm()});
    const Real p_floor = 1e-6 * (1 + gain_scale * gain_scale * nc.delta * nc.delta * std::max(1, nc.K));

    Vec x_final;
    for (int j = 1; j <= cfg.max_iter_ccp; ++j) {
        const BuiltProgram bp = build_p12(nc, L, t, e);
        const auto hint = assemble_start(bp, nc, L, e);
        const convex::SolveReport rep = convex::solve(bp.prog, 1e-8, 1e-8, hint);
        if (rep.status == convex::SolveStatus::Infeasible) {
            const auto ph = convex::phase1_feasible(bp.prog, 1e-8);
            fprintf(stderr, "p12 dbg: t=%g hint=%d ph1.feasible=%d ph1.viol=%g\n", t,
                    hint.has_value(), ph.feasible, ph.max_violation);
            if (hint) fprintf(stderr, "p12 dbg: hint viol=%g\n", bp.prog.max_violation(*hint));
            throw convex::SolverError("margin-maximization stage reported infeasible");
        }
        const Expansion next = extract(rep.x, L);
        Real err = rel_change(next.v, e.v, amp_floor);
        if (L.an) {
            err = std::max(err, rel_change(next.W.reshaped(), e.W.reshaped(), amp_floor));
            err = std::max(err, std::abs(next.p_b2 - e.p_b2) / std::max(std::abs(next.p_b2), p_floor));
        }
        err = std::max(err, rel_change(next.p_e1, e.p_e1, p_floor));
        e = next;
        margin = rep.x[L.is];
        x_final = rep.x;
        ++res.ccp_iters;
        if (err <= cfg.eps_ccp) break;
        if (margin >= 1e-4 && j >= 2) break;  // early out: clearly feasible
    }

    res.feasible = margin >= -1e-8;
    res.margin = margin;
    res.point.v = e.v;
    res.point.W = e.W;
    res.slacks = extract_slacks(x_final, L);
    return res;
}

DesignOutcome maxmin_see(const ChannelState& channel, const RoomScenario& scenario,
                         const MaxMinConfig& cfg) {
    scenario.validate();
    if (channel.n_eves() == 0) throw std::domain_error("the max-min design requires at least one Eve");

    DesignOutcome out;
    const NormChannel nc = norm_channel(channel, scenario);

    Real t_lo = std::max(Real(0), cfg.t_low);
    P12Result last_feasible = p12_feasible(channel, scenario, t_lo, cfg, nullptr);
    if (!last_feasible.feasible)
        throw BracketingError("lower bisection endpoint is infeasible");
    out.t_trace.push_back(t_lo);
    out.t_feas_trace.push_back(1);
    out.ccp_iters_per_stage.push_back(last_feasible.ccp_iters);

    Real t_hi = cfg.t_high;
    if (t_hi <= t_lo) {
        // rate ceiling over static power, doubled until certified infeasible
        PrecoderSolution best = PrecoderSolution::zero(channel, 0);
        best.info = Vec::Constant(channel.bob_alice.size(), scenario.headroom_a());
        const Real cap_hi = capacity_lower_bob(channel, best);
        t_hi = std::max(cap_hi / nc.p0, t_lo + cfg.eps_bisect);
        int doublings = 0;
        for (;;) {
            const P12Result r = p12_feasible(channel, scenario, t_hi, cfg, &last_feasible.point);
            out.t_trace.push_back(t_hi);
            out.t_feas_trace.push_back(r.feasible ? 1 : 0);
            out.ccp_iters_per_stage.push_back(r.ccp_iters);
            if (!r.feasible) break;
            t_lo = t_hi;
            last_feasible = r;
            t_hi *= 2;
            if (++doublings > 8) throw BracketingError("no infeasible upper bound found");
        }
    }

    const int n_steps =
        static_cast<int>(std::ceil(std::log2(std::max((t_hi - t_lo) / cfg.eps_bisect, Real(1)))));
    for (int i = 0; i < n_steps; ++i) {
        const Real t_mid = (t_lo + t_hi) / 2;
        const P12Result r = p12_feasible(channel, scenario, t_mid, cfg, &last_feasible.point);
        out.t_trace.push_back(t_mid);
        out.t_feas_trace.push_back(r.feasible ? 1 : 0);
        out.ccp_iters_per_stage.push_back(r.ccp_iters);
        if (r.feasible) {
            t_lo = t_mid;
            last_feasible = r;
        } else {
            t_hi = t_mid;
        }
    }

    out.status = DesignStatus::Solved;
    out.sol.scheme = channel.scheme;
    out.sol.info = last_feasible.point.v;
    out.sol.an = last_feasible.point.W.cols() ? last_feasible.point.W
                                              : Mat::Zero(channel.bob_jammer.size(), 1);
    out.ee_bob = ee_bob(scenario, channel, out.sol);
    out.resultant_see = min_see(scenario, channel, out.sol);
    out.dinkelbach_iters = n_steps;
    out.lambda_trace.push_back(t_lo);  // achieved target
    if (out.resultant_see < t_lo - cfg.eps_bisect)
        out.note = "achieved SEE below the certified bisection target";
    return out;
}

}  // namespace vlcsee
