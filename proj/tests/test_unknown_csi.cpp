#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "vlcsee/unknown_csi.hpp"

using namespace vlcsee;

namespace {

RoomScenario bench(Real p_dbm = 30.0) { return default_room(p_dbm); }

DesignConfig bench_cfg(const RoomScenario& s, Real rho = 0.2) {
    DesignConfig cfg;
    cfg.delta_b = 1.0;
    cfg.rho = rho;
    cfg.p_th = DesignConfig::p_th_from_rho(rho, s.dc_bias_a, s.n_luminaires());
    return cfg;
}

ChannelState bench_channel(const RoomScenario& s, SchemeKind kind, Vec2 bob = Vec2(0.8, -0.4),
                           Vec2 eve = Vec2(-1.2, 0.9)) {
    return build_channel(s, bob, {eve}, kind);
}

// EE of a candidate (v, w) through the public metric path
Real ee_of(const RoomScenario& s, const ChannelState& ch, Real v, const Vec& w) {
    PrecoderSolution sol;
    sol.scheme = ch.scheme;
    sol.info = Vec::Constant(1, v);
    sol.an = w.size() ? Mat(w.reshaped(w.size(), 1)) : Mat(Mat::Zero(ch.bob_jammer.size(), 1));
    return ee_bob(s, ch, sol);
}

}  // namespace

TEST_SUITE("unknown_csi") {

TEST_CASE("no-AN optimum keeps the jammers silent") {
    const RoomScenario s = bench();
    const ChannelState ch = bench_channel(s, SchemeKind::SelectiveSiso);
    const DesignOutcome d = solve_p1_noan(ch, s);

    REQUIRE(d.status == DesignStatus::Solved);
    CHECK(d.sol.an.norm() == 0.0);                      // exactly zero
    CHECK(d.ee_bob == doctest::Approx(ee_of(s, ch, d.sol.info[0], Vec())));

    // dense 1-D scan over the data amplitude
    const Real delta = s.headroom_a();
    Real best = 0;
    for (int i = 0; i <= 100000; ++i) {
        const Real v = delta * i / 100000.0;
        best = std::max(best, ee_of(s, ch, v, Vec()));
    }
    CHECK(d.ee_bob == doctest::Approx(best).epsilon(1e-6));
}

TEST_CASE("no-AN MISO beats no-AN selective SISO") {
    const RoomScenario s = bench();
    const DesignOutcome sel = solve_p1_noan(bench_channel(s, SchemeKind::SelectiveSiso), s);
    const DesignOutcome miso = solve_p1_noan(bench_channel(s, SchemeKind::Miso), s);
    REQUIRE(sel.status == DesignStatus::Solved);
    REQUIRE(miso.status == DesignStatus::Solved);
    CHECK(miso.ee_bob >= sel.ee_bob * (1 - 1e-4));
    CHECK(miso.sol.an.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("general design satisfies its constraints and the Dinkelbach contract") {
    const RoomScenario s = bench();
    const DesignConfig cfg = bench_cfg(s);

    for (SchemeKind kind : {SchemeKind::SelectiveSiso, SchemeKind::Miso}) {
        CAPTURE(to_string(kind));
        const ChannelState ch = bench_channel(s, kind);
        const DesignOutcome d = dinkelbach_ee(ch, s, cfg);
        REQUIRE(d.status == DesignStatus::Solved);

        // AN power floor and SINR floor hold at the returned point
        CHECK(d.sol.an.squaredNorm() >= cfg.p_th - 1e-8);
        CHECK(sinr(ch, d.sol, -1) >= cfg.delta_b * (1 - 1e-6));
        // per-LED amplitudes inside the drive range
        CHECK(d.sol.info.cwiseAbs().maxCoeff() <= s.headroom_a() * (1 + 1e-9));
        CHECK(d.sol.an.cwiseAbs().maxCoeff() <= s.headroom_a() * (1 + 1e-9));

        // lambda trace rises monotonically and the final stage error is small
        for (size_t i = 1; i < d.lambda_trace.size(); ++i)
            CHECK(d.lambda_trace[i] >= d.lambda_trace[i - 1] - 1e-9);
        REQUIRE_FALSE(d.dinkelbach_error_trace.empty());
        const Real terminal = d.dinkelbach_error_trace.back();
        CHECK(terminal >= -1e-12);
        CHECK(terminal <= cfg.eps_dinkelbach);

        // slack variables pinned by their constraints at convergence
        CHECK(d.slack_gap <= 1e-6);

        // the extra constraints cannot beat the unconstrained no-AN optimum
        const DesignOutcome p1 = solve_p1_noan(ch, s);
        CHECK(d.ee_bob <= p1.ee_bob * (1 + 1e-4));
    }
}

TEST_CASE("general design matches a multi-start search within 1 percent") {
    const RoomScenario s = bench();
    const DesignConfig cfg = bench_cfg(s);
    const ChannelState ch = bench_channel(s, SchemeKind::SelectiveSiso);
    const DesignOutcome d = dinkelbach_ee(ch, s, cfg);
    REQUIRE(d.status == DesignStatus::Solved);

    const Real delta = s.headroom_a();
    auto objective = [&](const Vec& x) { return ee_of(s, ch, x[0], x.tail(3)); };
    auto violation = [&](const Vec& x) {
        PrecoderSolution sol;
        sol.scheme = ch.scheme;
        sol.info = Vec::Constant(1, x[0]);
        sol.an = x.tail(3).reshaped(3, 1);
        Real viol = x.cwiseAbs().maxCoeff() - delta;
        viol = std::max(viol, cfg.p_th - x.tail(3).squaredNorm());
        viol = std::max(viol, (cfg.delta_b - sinr(ch, sol, -1)) / cfg.delta_b);
        return viol;
    };
    Rng rng(99);
    const auto best = oracles::multistart_max(objective, violation, Vec::Constant(4, -delta),
                                              Vec::Constant(4, delta), rng, 40, 1500);
    REQUIRE(best.found);
    CHECK(d.ee_bob >= best.value * 0.99);
    CHECK(d.ee_bob <= best.value * 1.01);
}

TEST_CASE("general design infeasibility conditions") {
    const RoomScenario s = bench();
    const ChannelState ch = bench_channel(s, SchemeKind::SelectiveSiso);

    DesignConfig too_greedy = bench_cfg(s);
    too_greedy.delta_b = 1e12;  // above the best-case SINR
    CHECK(dinkelbach_ee(ch, s, too_greedy).status == DesignStatus::Infeasible);

    DesignConfig too_loud = bench_cfg(s);
    too_loud.p_th = 3.01 * s.headroom_a() * s.headroom_a();
    CHECK(dinkelbach_ee(ch, s, too_loud).status == DesignStatus::Infeasible);
}

TEST_CASE("CCP stage behaves like a fixed-point scheme") {
    const RoomScenario s = bench();
    const DesignConfig cfg = bench_cfg(s);
    const ChannelState ch = bench_channel(s, SchemeKind::SelectiveSiso);

    // a feasible start per the default rule
    CcpPoint start;
    start.v = Vec::Constant(1, s.headroom_a());
    start.w = Vec::Constant(3, std::sqrt(cfg.p_th / 3.0));
    const Real leak = ch.bob_jammer.dot(start.w) / std::sqrt(ch.bob_noise_norm);
    start.p_b2 = leak * leak;

    const CcpStageResult st = ccp_stage(ch, s, cfg, 0.05, start);
    REQUIRE(st.feasible);
    CHECK(st.slack_gap <= 1e-6);
    for (size_t i = 1; i < st.objective_trace.size(); ++i)
        CHECK(st.objective_trace[i] >=
              st.objective_trace[i - 1] - 1e-7 * (1 + std::abs(st.objective_trace[i - 1])));

    // restarting at the fixed point stops after one iteration
    const CcpStageResult again = ccp_stage(ch, s, cfg, 0.05, st.point);
    CHECK(again.iters == 1);
}

TEST_CASE("null-space direction") {
    SUBCASE("projection of the all-ones vector") {
        Vec h(3);
        h << 1, 0, 0;
        const Vec w = zf_basis(h);
        CHECK(w[0] == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(w[1] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
        CHECK(w[2] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
    }
    SUBCASE("orthogonality for random channels") {
        Rng rng(4);
        for (int i = 0; i < 50; ++i) {
            Vec h(4);
            for (int j = 0; j < 4; ++j) h[j] = rng.uniform(1e-6, 1e-4);
            const Vec w = zf_basis(h);
            CHECK(std::abs(h.dot(w)) <= 1e-12 * h.norm());
            CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("fallback when the all-ones vector lies along the channel") {
        Vec h(2);
        h << 1, 1;
        const Vec w = zf_basis(h);
        CHECK(std::abs(w[0]) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
        CHECK(w[0] == doctest::Approx(-w[1]).epsilon(1e-12));
    }
    SUBCASE("rejects degenerate inputs") {
        CHECK_THROWS_AS(zf_basis(Vec::Zero(3)), std::domain_error);
        CHECK_THROWS_AS(zf_basis(Vec::Ones(1)), std::domain_error);
    }
}

TEST_CASE("scalar zero-forcing search hits all three regimes") {
    SUBCASE("power-starved link rails at the amplitude cap") {
        const RoomScenario s = bench(10.0);  // tiny drive current
        const ChannelState ch = bench_channel(s, SchemeKind::SelectiveSiso);
        DesignConfig cfg = bench_cfg(s);
        cfg.delta_b = 0;
        const ZfScalarResult r = zf_optimal_V(ch, s, cfg, cfg.p_th);
        CHECK(r.branch == 1);
        CHECK(r.v_sq == doctest::Approx(s.headroom_a() * s.headroom_a()).epsilon(1e-12));
    }
    SUBCASE("harsh SINR floor pins the solution at its lower endpoint") {
        const RoomScenario s = bench(40.0);
        const ChannelState ch = bench_channel(s, SchemeKind::SelectiveSiso);
        DesignConfig cfg = bench_cfg(s);
        const Real h = ch.bob_alice[0];
        const Real max_sinr = h * h * s.headroom_a() * s.headroom_a() / ch.bob_noise_norm;
        cfg.delta_b = 0.5 * max_sinr;  // far beyond the EE peak
        const ZfScalarResult r = zf_optimal_V(ch, s, cfg, cfg.p_th);
        CHECK(r.branch == 2);
        CHECK(r.v_sq == doctest::Approx(cfg.delta_b * ch.bob_noise_norm / (h * h)).epsilon(1e-10));
    }
    SUBCASE("interior optimum matches a dense scan") {
        const RoomScenario s = bench(30.0);
        const ChannelState ch = bench_channel(s, SchemeKind::SelectiveSiso);
        const DesignConfig cfg = bench_cfg(s);
        const ZfScalarResult r = zf_optimal_V(ch, s, cfg, cfg.p_th);
        CHECK(r.branch == 0);

        const Real h = ch.bob_alice[0];
        const Real a = 2 * h * h / (kPiE * ch.bob_noise_norm);
        const Real p0 = s.power.circuit_w + 4 * s.power.led_voltage_v * s.dc_bias_a;
        const Real v_hi = s.headroom_a() * s.headroom_a();
        Real best = 0, best_v = 0;
        for (int i = 0; i <= 1000000; ++i) {
            const Real V = v_hi * i / 1000000.0;
            const Real ee = std::log2(1 + a * V) / (2 * (p0 + s.power.zeta * (V + cfg.p_th)));
            if (ee > best) {
                best = ee;
                best_v = V;
            }
        }
        CHECK(r.ee == doctest::Approx(best).epsilon(1e-8));
        CHECK(r.v_sq == doctest::Approx(best_v).epsilon(1e-2));
    }
}

TEST_CASE("zero-forcing SISO design") {
    const RoomScenario s = bench();
    const DesignConfig cfg = bench_cfg(s);
    const ChannelState ch = bench_channel(s, SchemeKind::SelectiveSiso);
    const DesignOutcome d = zf_siso(ch, s, cfg);
    REQUIRE(d.status == DesignStatus::Solved);

    // the AN never reaches Bob
    const Real leak = (d.sol.an.transpose() * ch.bob_jammer).norm();
    CHECK(leak <= 1e-12 * ch.bob_jammer.norm());
    CHECK(d.sol.an.squaredNorm() == doctest::Approx(cfg.p_th).epsilon(1e-12));
    // reported EE consistent with the public metric
    CHECK(d.ee_bob == doctest::Approx(ee_bob(s, ch, d.sol)).epsilon(1e-12));

    // the general design searches a superset
    const DesignOutcome gen = dinkelbach_ee(ch, s, cfg);
    REQUIRE(gen.status == DesignStatus::Solved);
    CHECK(gen.ee_bob >= d.ee_bob * (1 - 1e-4));

    DesignConfig greedy = cfg;
    greedy.p_th = 10 * s.headroom_a() * s.headroom_a();
    CHECK(zf_siso(ch, s, greedy).status == DesignStatus::Infeasible);
}

TEST_CASE("zero-forcing MISO design") {
    const RoomScenario s = bench();
    const DesignConfig cfg = bench_cfg(s);
    const ChannelState miso = bench_channel(s, SchemeKind::Miso);
    const DesignOutcome d = zf_miso(miso, s, cfg);
    REQUIRE(d.status == DesignStatus::Solved);

    const Real leak = (d.sol.an.transpose() * miso.bob_alice).norm();
    CHECK(leak <= 1e-10 * miso.bob_alice.norm() * d.sol.an.norm() + 1e-30);
    CHECK(d.sol.an.squaredNorm() >= cfg.p_th * (1 - 1e-9));

    // wider search space than the selective SISO null-space design
    const ChannelState sel = bench_channel(s, SchemeKind::SelectiveSiso);
    const DesignOutcome zf_sel = zf_siso(sel, s, cfg);
    REQUIRE(zf_sel.status == DesignStatus::Solved);
    CHECK(d.ee_bob >= zf_sel.ee_bob * (1 - 1e-4));

    // multi-start search over (v, phi) agrees within 1 percent
    const Vec w_tilde = zf_basis(miso.bob_alice);
    const Real delta = s.headroom_a();
    const Real phi_cap = delta * delta / std::pow(w_tilde.lpNorm<Eigen::Infinity>(), 2);
    auto objective = [&](const Vec& x) {
        PrecoderSolution sol;
        sol.scheme = SchemeKind::Miso;
        sol.info = x.head(4);
        sol.an = std::sqrt(std::max(x[4], Real(0))) * w_tilde;
        return ee_bob(s, miso, sol);
    };
    auto violation = [&](const Vec& x) {
        Real viol = x.head(4).cwiseAbs().maxCoeff() - delta;
        viol = std::max(viol, cfg.p_th - x[4]);
        viol = std::max(viol, x[4] - phi_cap);
        PrecoderSolution sol;
        sol.scheme = SchemeKind::Miso;
        sol.info = x.head(4);
        sol.an = Mat::Zero(4, 1);
        viol = std::max(viol, (cfg.delta_b - sinr(miso, sol, -1)) / cfg.delta_b);
        return viol;
    };
    Vec lo(5), hi(5);
    lo << -delta, -delta, -delta, -delta, cfg.p_th;
    hi << delta, delta, delta, delta, phi_cap;
    Rng rng(123);
    const auto best = oracles::multistart_max(objective, violation, lo, hi, rng, 30, 1500);
    REQUIRE(best.found);
    CHECK(d.ee_bob >= best.value * 0.99);
    CHECK(d.ee_bob <= best.value * 1.01);
}

TEST_CASE("appendix objective derivative stays negative") {
    // f(V) from the scalar search must be strictly decreasing
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const Real a = rng.uniform(0.1, 200.0);
        const Real b = rng.uniform(5.0, 100.0);
        const Real zeta = rng.uniform(0.5, 4.0);
        auto f = [&](Real V) {
            return a * (b + 2 * zeta * V) / (std::log(2.0) * (1 + a * V)) -
                   2 * zeta * std::log2(1 + a * V);
        };
        Real prev = f(0);
        for (Real V = 0.05; V < 30; V += 0.5) {
            const Real cur = f(V);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

}  // TEST_SUITE
