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

#include "vlcsee/convex.hpp"

#include <Eigen/Cholesky>
#include <functional>
#include <cmath>
#include <limits>

namespace vlcsee::convex {

namespace {

constexpr Real kInf = std::numeric_limits<Real>::infinity();
constexpr Real kLn2 = 0.69314718055994530942;

// Newton/line-search knobs. Fixed, not adaptive: runs must replay exactly.
constexpr int kMaxNewtonPerStage = 120;
constexpr int kMaxNewtonTotal = 4000;
constexpr Real kDecrementTol = 1e-12;
constexpr Real kArmijo = 0.25;
constexpr Real kMuFactor = 10.0;

Real checked_log_arg(Real v) { return v > 0 ? std::log(v) : -kInf; }

// Barrier view over a ConvexProgram: psi_mu(x) = -F(x) + mu sum_i phi_i(x)
// with phi = -log(-f) for linear/quadratic/log constraints and the canonical
// -log((c^T x + d)^2 - |A x + b|^2) for second-order cones. Keeping the
// objective term at its natural scale preserves barrier precision when mu
// gets small.
class Barrier {
  public:
    explicit Barrier(const ConvexProgram& p) : p_(p) {
        soc_AtA_.reserve(p.soc.size());
        soc_cct_.reserve(p.soc.size());
        for (const auto& s : p.soc) {
            soc_AtA_.push_back(s.A.transpose() * s.A);
            soc_cct_.push_back(s.c * s.c.transpose());
        }
    }

    // psi_mu(x); +inf outside the barrier domain.
    Real value(const Vec& x, Real mu) const {
        Real barrier = 0;
        for (const auto& c : p_.lin) barrier -= checked_log_arg(c.b - c.a.dot(x));
        for (const auto& c : p_.quad) barrier -= checked_log_arg(c.b - c.a.dot(x) - x.dot(c.Q * x));
        for (const auto& c : p_.soc) {
            const Real u = c.c.dot(x) + c.d;
            if (u <= 0) return kInf;
            barrier -= checked_log_arg(u * u - (c.A * x + c.b).squaredNorm());
        }
        for (const auto& c : p_.logc) {
            const Real arg = c.a.dot(x) + c.b;
            if (arg <= 0) return kInf;
            barrier -= checked_log_arg(c.alpha * std::log2(arg) - c.g.dot(x));
        }
        return -p_.objective(x) + mu * barrier;
    }

    // Gradient and Hessian of psi_mu at an in-domain point.
    void derivatives(const Vec& x, Real mu, Vec& g, Mat& H) const {
        const int n = p_.n;
        g = p_.P.size() ? Vec(p_.P * x - p_.c) : Vec(-p_.c);
        H = p_.P.size() ? p_.P : Mat::Zero(n, n);

        for (const auto& c : p_.lin) {
            const Real r = c.b - c.a.dot(x);
            g += (mu / r) * c.a;
            H.selfadjointView<Eigen::Lower>().rankUpdate(c.a, mu / (r * r));
        }
        for (const auto& c : p_.quad) {
            const Vec Qx = c.Q * x;
            const Real r = c.b - c.a.dot(x) - x.dot(Qx);
            const Vec df = 2 * Qx + c.a;
            g += (mu / r) * df;
            H.selfadjointView<Eigen::Lower>().rankUpdate(df, mu / (r * r));
            H.triangularView<Eigen::Lower>() += (2 * mu / r) * c.Q;
        }
        for (size_t i = 0; i < p_.soc.size(); ++i) {
            const auto& c = p_.soc[i];
            const Real u = c.c.dot(x) + c.d;
            const Vec r = c.A * x + c.b;
            const Real q = u * u - r.squaredNorm();
            const Vec dq = 2 * u * c.c - 2 * (c.A.transpose() * r);
            g -= (mu / q) * dq;
            H.selfadjointView<Eigen::Lower>().rankUpdate(dq, mu / (q * q));
            H.triangularView<Eigen::Lower>() += (2 * mu / q) * (soc_AtA_[i] - soc_cct_[i]);
        }
        for (const auto& c : p_.logc) {
            const Real arg = c.a.dot(x) + c.b;
            const Real r = c.alpha * std::log2(arg) - c.g.dot(x);
            const Vec df = c.g - (c.alpha / (kLn2 * arg)) * c.a;
            g += (mu / r) * df;
            H.selfadjointView<Eigen::Lower>().rankUpdate(df, mu / (r * r));
            H.selfadjointView<Eigen::Lower>().rankUpdate(c.a, mu * c.alpha / (kLn2 * arg * arg * r));
        }
        H.triangularView<Eigen::StrictlyUpper>() = H.transpose().triangularView<Eigen::StrictlyUpper>();
    }

  private:
    const ConvexProgram& p_;
    std::vector<Mat> soc_AtA_;
    std::vector<Mat> soc_cct_;
};

// Damped Newton descent on psi_t. Returns false when the iteration budget is
// exhausted before the decrement tolerance is met. An optional stop predicate
// lets phase one bail out as soon as an interior point appears.
bool center(const Barrier& barrier, const ConvexProgram& p, Vec& x, Real mu, int& newton_total,
            const std::function<bool(const Vec&)>* stop_early = nullptr, Real grad_target = 0) {
    Vec g(p.n), d(p.n);
    Mat H(p.n, p.n);
    int stalls = 0;
    for (int it = 0; it < kMaxNewtonPerStage; ++it) {
        if (newton_total >= kMaxNewtonTotal) return false;
        if (stop_early && (*stop_early)(x)) return true;
        barrier.derivatives(x, mu, g, H);
        if (grad_target > 0 && g.lpNorm<Eigen::Infinity>() <= grad_target) return true;

        Real ridge = 0;
        for (;;) {
            Mat Hr = H;
            if (ridge > 0) Hr.diagonal().array() += ridge;
            Eigen::LDLT<Mat> ldlt(Hr);
            if (ldlt.info() == Eigen::Success) {
                d = ldlt.solve(-g);
                if (d.allFinite() && g.dot(d) <= 0) break;
            }
            ridge = ridge == 0 ? 1e-12 * (1 + H.diagonal().maxCoeff()) : ridge * 100;
            if (!(ridge < 1e6 * (1 + std::abs(H.diagonal().maxCoeff()))))
                throw SolverError("Newton system breakdown; check PSD inputs");
        }

        const Real dec2 = -g.dot(d);
        ++newton_total;
        const Real psi0 = barrier.value(x, mu);
        if (dec2 / 2 <= kDecrementTol * (1 + std::abs(psi0)) && grad_target <= 0) return true;

        Real step = 1;
        int halvings = 0;
        Real psi = psi0;
        while (halvings < 70) {
            psi = barrier.value(x + step * d, mu);
            if (psi <= psi0 + kArmijo * step * g.dot(d) && std::isfinite(psi)) break;
            step /= 2;
            ++halvings;
        }
        if (halvings >= 70) return true;  // at numerical resolution
        x += step * d;
        // progress below the rounding noise of psi means double precision ran out
        if (psi0 - psi <= 4 * std::numeric_limits<Real>::epsilon() * std::max(Real(1), std::abs(psi0))) {
            if (++stalls >= 2) return true;
        } else {
            stalls = 0;
        }
    }
    return false;
}

struct BarrierRunResult {
    bool converged = true;
    Real mu_final = 1.0;
    std::vector<Real> stage_objectives;
};

BarrierRunResult run_barrier(const ConvexProgram& p, Vec& x, Real tol_opt, int& newton_total,
                             bool* early_feasible_exit = nullptr,
                             const ConvexProgram* original = nullptr) {
    Barrier barrier(p);
    BarrierRunResult res;
    Real mu = 1.0;
    const int m = p.constraint_count();
    std::function<bool(const Vec&)> interior_found;
    if (early_feasible_exit && original)
        interior_found = [&](const Vec& xs) {
            return original->max_violation(xs.head(original->n)) <= -1e-6;
        };
    for (;;) {
        const bool ok = center(barrier, p, x, mu, newton_total,
                               interior_found ? &interior_found : nullptr);
        res.stage_objectives.push_back(p.objective(x));
        if (interior_found && interior_found(x)) {
            *early_feasible_exit = true;
            res.mu_final = mu;
            return res;
        }
        if (!ok) {
            res.converged = false;
            res.mu_final = mu;
            return res;
        }
        if (mu * m < tol_opt) {
            res.mu_final = mu;
            return res;
        }
        mu /= kMuFactor;
    }
}

// Extra Newton sweeps at the final stage until the raw Lagrangian gradient
// meets the stationarity target (or precision runs out).
void polish(const ConvexProgram& p, Vec& x, Real mu_final, int& newton_total) {
    Barrier barrier(p);
    const Vec grad_obj = p.P.size() ? Vec(p.c - p.P * x) : p.c;
    const Real target = 1e-7 * (1 + grad_obj.lpNorm<Eigen::Infinity>());
    center(barrier, p, x, mu_final, newton_total, nullptr, target);
}

// Valid approximate KKT multipliers make the stationarity check honest even
// when steep constraint gradients keep the raw barrier gradient large: start
// from the barrier multipliers mu / (-f_i) and least-squares refine over the
// effectively active constraints.
Real kkt_residual(const ConvexProgram& p, const Vec& x, Real mu) {
    const Vec grad_obj = p.P.size() ? Vec(p.P * x - p.c) : Vec(-p.c);
    std::vector<Vec> grads;
    std::vector<Real> lam;
    for (const auto& c : p.lin) {
        grads.push_back(c.a);
        lam.push_back(mu / (c.b - c.a.dot(x)));
    }
    for (const auto& c : p.quad) {
        grads.push_back(2 * (c.Q * x) + c.a);
        lam.push_back(mu / (c.b - c.a.dot(x) - x.dot(c.Q * x)));
    }
    for (const auto& c : p.soc) {
        const Real u = c.c.dot(x) + c.d;
        const Vec r = c.A * x + c.b;
        const Real rn = std::max(r.norm(), Real(1e-300));
        grads.push_back(Vec(c.A.transpose() * r / rn - c.c));
        lam.push_back(2 * mu * u / std::max(u * u - r.squaredNorm(), Real(1e-300)));
    }
    for (const auto& c : p.logc) {
        const Real arg = c.a.dot(x) + c.b;
        grads.push_back(Vec(c.g - (c.alpha / (kLn2 * arg)) * c.a));
        lam.push_back(mu / (c.alpha * std::log2(arg) - c.g.dot(x)));
    }

    Vec resid = grad_obj;
    Real lam_max = 0;
    for (size_t i = 0; i < grads.size(); ++i) {
        resid += lam[i] * grads[i];
        lam_max = std::max(lam_max, lam[i]);
    }
    Real best = resid.lpNorm<Eigen::Infinity>();

    std::vector<int> active;
    for (size_t i = 0; i < grads.size(); ++i)
        if (lam[i] > 1e-10 * (1 + lam_max)) active.push_back(static_cast<int>(i));
    if (!active.empty()) {
        Mat J(p.n, active.size());
        for (size_t k = 0; k < active.size(); ++k) J.col(k) = grads[static_cast<size_t>(active[k])];
        Vec ls = J.colPivHouseholderQr().solve(-grad_obj);
        ls = ls.cwiseMax(0.0);  // multipliers stay dual-feasible
        best = std::min(best, Real((grad_obj + J * ls).lpNorm<Eigen::Infinity>()));
    }
    return best / (1 + grad_obj.lpNorm<Eigen::Infinity>());
}

// The four constraint classes are closed under the slack shift f(x) <= s, so
// phase one is itself a ConvexProgram in (x, s) maximizing -s.
ConvexProgram make_phase1(const ConvexProgram& p) {
    const int n = p.n;
    ConvexProgram a;
    a.n = n + 1;
    a.c = Vec::Zero(n + 1);
    a.c[n] = -1;
    auto widen = [n](const Vec& v, Real tail) {
        Vec w = Vec::Zero(n + 1);
        w.head(n) = v;
        w[n] = tail;
        return w;
    };
    for (const auto& c : p.lin) a.lin.push_back({widen(c.a, -1), c.b});
    for (const auto& c : p.quad) {
        Mat Q = Mat::Zero(n + 1, n + 1);
        Q.topLeftCorner(n, n) = c.Q;
        a.quad.push_back({std::move(Q), widen(c.a, -1), c.b});
    }
    for (const auto& c : p.soc) {
        Mat A = Mat::Zero(c.A.rows(), n + 1);
        A.leftCols(n) = c.A;
        a.soc.push_back({std::move(A), c.b, widen(c.c, 1), c.d});
    }
    for (const auto& c : p.logc) {
        a.logc.push_back({widen(c.g, -1), c.alpha, widen(c.a, 0), c.b});
        // domain guard: the log argument must stay positive once s < 0
        const Real delta = 1e-12 * (1 + std::abs(c.b));
        a.lin.push_back({widen(-c.a, -1), c.b - delta});
    }
    return a;
}

}  // namespace

Real ConvexProgram::objective(const Vec& x) const {
    Real v = c.dot(x) + c0;
    if (P.size()) v -= Real(0.5) * x.dot(P * x);
    return v;
}

Real ConvexProgram::max_violation(const Vec& x) const {
    Real worst = -kInf;
    for (const auto& c : lin) worst = std::max(worst, c.a.dot(x) - c.b);
    for (const auto& c : quad) worst = std::max(worst, x.dot(c.Q * x) + c.a.dot(x) - c.b);
    for (const auto& c : soc) worst = std::max(worst, (c.A * x + c.b).norm() - c.c.dot(x) - c.d);
    for (const auto& c : logc) {
        const Real arg = c.a.dot(x) + c.b;
        worst = std::max(worst, arg > 0 ? c.g.dot(x) - c.alpha * std::log2(arg) : kInf);
    }
    return worst;
}

void ConvexProgram::validate() const {
    if (n <= 0) throw std::invalid_argument("program has no variables");
    if (c.size() != n) throw std::invalid_argument("objective dimension mismatch");
    if (P.size() && (P.rows() != n || P.cols() != n))
        throw std::invalid_argument("quadratic objective dimension mismatch");
    for (const auto& cns : lin)
        if (cns.a.size() != n) throw std::invalid_argument("linear constraint dimension mismatch");
    for (const auto& cns : quad)
        if (cns.a.size() != n || cns.Q.rows() != n || cns.Q.cols() != n)
            throw std::invalid_argument("quadratic constraint dimension mismatch");
    for (const auto& cns : soc)
        if (cns.c.size() != n || cns.A.cols() != n || cns.b.size() != cns.A.rows())
            throw std::invalid_argument("cone constraint dimension mismatch");
    for (const auto& cns : logc) {
        if (cns.g.size() != n || cns.a.size() != n)
            throw std::invalid_argument("log constraint dimension mismatch");
        if (!(cns.alpha > 0)) throw std::invalid_argument("log constraint needs alpha > 0");
        if (!(cns.b > 0)) throw std::invalid_argument("log constraint argument must be positive at the origin");
    }
}

Phase1Result phase1_impl(const ConvexProgram& p, Real tol_feas, bool allow_early_exit) {
    p.validate();
    const ConvexProgram aug = make_phase1(p);

    Vec x0 = Vec::Zero(p.n);
    const Real v0 = p.max_violation(x0);
    Vec xs = Vec::Zero(p.n + 1);
    xs[p.n] = v0 + 1 + Real(0.1) * std::abs(v0);

    int newton = 0;
    bool early = false;
    run_barrier(aug, xs, std::min(tol_feas, Real(1e-9)), newton,
                allow_early_exit ? &early : nullptr, allow_early_exit ? &p : nullptr);

    Phase1Result res;
    res.point = xs.head(p.n);
    res.max_violation = p.max_violation(res.point);
    res.feasible = early || xs[p.n] <= tol_feas;
    return res;
}

Phase1Result phase1_feasible(const ConvexProgram& p, Real tol_feas) {
    return phase1_impl(p, tol_feas, /*allow_early_exit=*/false);
}

SolveReport solve(const ConvexProgram& p, Real tol_feas, Real tol_opt,
                  const std::optional<Vec>& start) {
    p.validate();
    SolveReport rep;

    Vec x;
    if (start && start->size() == p.n && p.max_violation(*start) < -1e-12) {
        x = *start;
    } else {
        const Phase1Result ph1 = phase1_impl(p, tol_feas, /*allow_early_exit=*/true);
        if (!ph1.feasible) {
            rep.status = SolveStatus::Infeasible;
            rep.x = ph1.point;
            return rep;
        }
        x = ph1.point;
        if (p.max_violation(x) >= -1e-14) {
            // feasible set has (numerically) empty interior; report the
            // phase-one point as-is
            rep.status = SolveStatus::Optimal;
            rep.x = x;
            rep.objective_value = p.objective(x);
            return rep;
        }
    }

    if (p.feasibility_only) {
        rep.status = SolveStatus::Optimal;
        rep.x = x;
        rep.objective_value = p.objective(x);
        rep.barrier_mu_final = 1.0;
        return rep;
    }

    int newton = 0;
    const BarrierRunResult run = run_barrier(p, x, tol_opt, newton);
    if (run.converged) polish(p, x, run.mu_final, newton);

    rep.status = run.converged ? SolveStatus::Optimal : SolveStatus::MaxIter;
    rep.x = x;
    rep.objective_value = p.objective(x);
    rep.barrier_mu_final = run.mu_final;
    rep.newton_iterations = newton;
    rep.stage_objectives = run.stage_objectives;

    rep.kkt_residual = kkt_residual(p, x, run.mu_final);
    return rep;
}

}  // namespace vlcsee::convex
