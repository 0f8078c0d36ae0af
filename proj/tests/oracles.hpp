// Test-side oracles: brute-force optimizers kept independent of the solver
// implementation they check.

#ifndef VLCSEE_TESTS_ORACLES_HPP
#define VLCSEE_TESTS_ORACLES_HPP

#include <functional>
#include <optional>
#include <vector>

#include "vlcsee/convex.hpp"
#include "vlcsee/rng.hpp"

namespace oracles {

using vlcsee::Mat;
using vlcsee::Real;
using vlcsee::Vec;

struct GridBest {
    bool found = false;
    Real value = -std::numeric_limits<Real>::infinity();
    Vec x;
};

/// Golden-section maximization of the objective along the feasible part of
/// the segment x + t d, t in [0, t_max]. Pure function evaluations.
inline void line_polish(const vlcsee::convex::ConvexProgram& p, Vec& x, Real& value, const Vec& d,
                        Real t_max) {
    // shrink to the feasible prefix (the feasible set is convex along a line)
    Real hi = t_max;
    while (hi > 1e-14 && p.max_violation(x + hi * d) > 0) hi /= 2;
    if (hi <= 1e-14) return;
    Real lo = 0;
    const Real phi = 0.5 * (std::sqrt(5.0) - 1);
    Real a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
    Real fa = p.objective(x + a * d), fb = p.objective(x + b * d);
    for (int it = 0; it < 80; ++it) {
        if (fa < fb) {
            lo = a;
            a = b;
            fa = fb;
            b = lo + phi * (hi - lo);
            fb = p.objective(x + b * d);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - phi * (hi - lo);
            fa = p.objective(x + a * d);
        }
    }
    const Real t_best = fa > fb ? a : b;
    const Vec cand = x + t_best * d;
    const Real f_cand = p.objective(cand);
    if (f_cand > value && p.max_violation(cand) <= 0) {
        x = cand;
        value = f_cand;
    }
}

/// Nelder-Mead ascent of an arbitrary (penalized) function; the callable can
/// record the best feasible point it sees. The adaptive simplex can creep
/// along curved constraint boundaries that random line searches cannot
/// follow.
inline void nm_maximize(const std::function<Real(const Vec&)>& penalized, const Vec& start,
                        Real radius, int iters) {
    const int n = static_cast<int>(start.size());
    std::vector<Vec> pts(static_cast<size_t>(n + 1), start);
    std::vector<Real> val(static_cast<size_t>(n + 1));
    for (int i = 1; i <= n; ++i) pts[static_cast<size_t>(i)][i - 1] += radius;
    for (int i = 0; i <= n; ++i) val[static_cast<size_t>(i)] = penalized(pts[static_cast<size_t>(i)]);

    for (int it = 0; it < iters; ++it) {
        // order (maximizing): best first
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (val[static_cast<size_t>(j)] > val[static_cast<size_t>(i)]) {
                    std::swap(val[static_cast<size_t>(i)], val[static_cast<size_t>(j)]);
                    std::swap(pts[static_cast<size_t>(i)], pts[static_cast<size_t>(j)]);
                }
        Vec centroid = Vec::Zero(n);
        for (int i = 0; i < n; ++i) centroid += pts[static_cast<size_t>(i)];
        centroid /= n;
        const Vec& worst = pts[static_cast<size_t>(n)];
        const Vec refl = centroid + (centroid - worst);
        const Real f_refl = penalized(refl);
        if (f_refl > val[0]) {
            const Vec expand = centroid + 2 * (centroid - worst);
            const Real f_exp = penalized(expand);
            pts[static_cast<size_t>(n)] = f_exp > f_refl ? expand : refl;
            val[static_cast<size_t>(n)] = std::max(f_exp, f_refl);
        } else if (f_refl > val[static_cast<size_t>(n - 1)]) {
            pts[static_cast<size_t>(n)] = refl;
            val[static_cast<size_t>(n)] = f_refl;
        } else {
            const Vec contract = centroid + Real(0.5) * (worst - centroid);
            const Real f_con = penalized(contract);
            if (f_con > val[static_cast<size_t>(n)]) {
                pts[static_cast<size_t>(n)] = contract;
                val[static_cast<size_t>(n)] = f_con;
            } else {
                for (int i = 1; i <= n; ++i) {
                    pts[static_cast<size_t>(i)] = pts[0] + Real(0.5) * (pts[static_cast<size_t>(i)] - pts[0]);
                    val[static_cast<size_t>(i)] = penalized(pts[static_cast<size_t>(i)]);
                }
            }
        }
        // converged simplex
        Real spread = 0;
        for (int i = 1; i <= n; ++i)
            spread = std::max(spread, (pts[static_cast<size_t>(i)] - pts[0]).lpNorm<Eigen::Infinity>());
        if (spread < 1e-10) break;
    }
}

/// NM polish of a convex program around the incumbent, tracking feasibility.
inline void nelder_mead_polish(const vlcsee::convex::ConvexProgram& p, Vec& x_best, Real& f_best,
                               Real radius, int iters) {
    const Vec start = x_best;
    auto penalized = [&p, &x_best, &f_best](const Vec& x) {
        const Real viol = p.max_violation(x);
        const Real f = p.objective(x);
        if (viol <= 0 && f > f_best) {
            f_best = f;
            x_best = x;
        }
        return f - 1e6 * std::max(Real(0), viol) * std::max(Real(0), viol);
    };
    nm_maximize(penalized, start, radius, iters);
}

/// Recursively refined grid search over [lo, hi], keeping only feasible
/// points, followed by random feasible-chord line searches and a Nelder-Mead
/// finish. Convexity makes the refinement safe: the coarse pass lands in the
/// unique basin and from any suboptimal point the chord toward the optimum
/// improves the objective.
inline GridBest zoom_grid_max(const vlcsee::convex::ConvexProgram& p, Vec lo, Vec hi,
                              int pts_per_dim, int rounds, Real feas_tol = 0.0) {
    const int n = p.n;
    const Vec lo0 = lo, hi0 = hi;
    GridBest best;
    for (int round = 0; round < rounds; ++round) {
        std::vector<int> idx(static_cast<size_t>(n), 0);
        Vec x(n);
        for (;;) {
            for (int d = 0; d < n; ++d)
                x[d] = lo[d] + (hi[d] - lo[d]) * idx[static_cast<size_t>(d)] / (pts_per_dim - 1);
            if (p.max_violation(x) <= feas_tol) {
                const Real v = p.objective(x);
                if (v > best.value) {
                    best.value = v;
                    best.x = x;
                    best.found = true;
                }
            }
            int d = 0;
            while (d < n && ++idx[static_cast<size_t>(d)] == pts_per_dim) idx[static_cast<size_t>(d++)] = 0;
            if (d == n) break;
        }
        if (!best.found) break;
        const Real shrink = 2.5;  // gentle zoom keeps the optimum inside the next box
        for (int d = 0; d < n; ++d) {
            const Real half = (hi[d] - lo[d]) / (2 * shrink);
            lo[d] = std::max(lo0[d], best.x[d] - half);
            hi[d] = std::min(hi0[d], best.x[d] + half);
        }
    }
    if (best.found) {
        vlcsee::Rng dir_rng(0x9d2c5680);
        const Real span = (hi0 - lo0).maxCoeff();
        int since_improvement = 0;
        for (int it = 0; it < 600 && since_improvement < 100; ++it) {
            Vec d(n);
            for (int i = 0; i < n; ++i) d[i] = dir_rng.uniform(-1, 1);
            const Real nn = d.norm();
            if (nn < 1e-9) continue;
            d /= nn;
            const Real before = best.value;
            line_polish(p, best.x, best.value, d, span);
            line_polish(p, best.x, best.value, Vec(-d), span);
            since_improvement = best.value > before + 1e-15 ? 0 : since_improvement + 1;
        }
        for (Real radius : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6})
            nelder_mead_polish(p, best.x, best.value, radius, 2500);
    }
    return best;
}

/// Exact optimum of a linear-objective program with only linear constraints,
/// by enumerating basic solutions (vertices).
inline std::optional<Real> lp_vertex_max(const vlcsee::convex::ConvexProgram& p) {
    const int n = p.n;
    const int m = static_cast<int>(p.lin.size());
    if (!p.quad.empty() || !p.soc.empty() || !p.logc.empty() || p.P.size()) return std::nullopt;
    std::optional<Real> best;
    std::vector<int> pick(static_cast<size_t>(n));
    // iterate all n-subsets of the m constraints
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == n) {
            Mat A(n, n);
            Vec b(n);
            for (int i = 0; i < n; ++i) {
                A.row(i) = p.lin[static_cast<size_t>(pick[static_cast<size_t>(i)])].a.transpose();
                b[i] = p.lin[static_cast<size_t>(pick[static_cast<size_t>(i)])].b;
            }
            const Eigen::FullPivLU<Mat> lu(A);
            if (!lu.isInvertible()) return;
            const Vec x = lu.solve(b);
            if (p.max_violation(x) <= 1e-9) {
                const Real v = p.objective(x);
                if (!best || v > *best) best = v;
            }
            return;
        }
        for (int i = start; i < m; ++i) {
            pick[static_cast<size_t>(depth)] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return best;
}

struct MultiStartBest {
    bool found = false;
    Real value = -std::numeric_limits<Real>::infinity();
    Vec x;
};

/// Multi-start Nelder-Mead maximization of a black-box objective under a
/// black-box feasibility measure (violation <= 0 means feasible). The box
/// bounds the starts; the caller folds them into the violation if binding.
inline MultiStartBest multistart_max(const std::function<Real(const Vec&)>& objective,
                                     const std::function<Real(const Vec&)>& violation,
                                     const Vec& lo, const Vec& hi, vlcsee::Rng& rng, int starts,
                                     int iters) {
    MultiStartBest best;
    const int n = static_cast<int>(lo.size());
    auto penalized = [&](const Vec& x) {
        const Real viol = violation(x);
        const Real f = objective(x);
        if (viol <= 0 && f > best.value) {
            best.value = f;
            best.x = x;
        }
        return f - 1e6 * std::max(Real(0), viol) * std::max(Real(0), viol);
    };
    const Real span = (hi - lo).maxCoeff();
    for (int s = 0; s < starts; ++s) {
        Vec x0(n);
        for (int i = 0; i < n; ++i) x0[i] = rng.uniform(lo[i], hi[i]);
        nm_maximize(penalized, x0, 0.15 * span, iters);
    }
    if (best.found || best.value > -std::numeric_limits<Real>::infinity()) {
        best.found = true;
        for (Real radius : {1e-2 * span, 1e-3 * span, 1e-4 * span, 1e-5 * span})
            nm_maximize(penalized, best.x, radius, iters);
    }
    return best;
}

/// Random feasible-by-construction programs over the [-1, 1] box with a
/// strongly concave objective and a mix of the four constraint classes.
inline vlcsee::convex::ConvexProgram random_program(vlcsee::Rng& rng, int n) {
    using namespace vlcsee::convex;
    ConvexProgram p;
    p.n = n;
    Vec anchor(n);
    for (int i = 0; i < n; ++i) anchor[i] = rng.uniform(-0.5, 0.5);

    p.c = Vec(n);
    for (int i = 0; i < n; ++i) p.c[i] = rng.uniform(-1, 1);
    Mat G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = rng.uniform(-1, 1) / std::sqrt(Real(n));
    p.P = G.transpose() * G + 0.5 * Mat::Identity(n, n);

    for (int i = 0; i < n; ++i) {
        Vec a = Vec::Zero(n), b = Vec::Zero(n);
        a[i] = 1;
        b[i] = -1;
        p.lin.push_back({a, 1.0});
        p.lin.push_back({b, 1.0});
    }
    auto unit = [&] {
        Vec u(n);
        for (int i = 0; i < n; ++i) u[i] = rng.uniform(-1, 1);
        return Vec(u / std::max(u.norm(), Real(1e-9)));
    };

    const int extra_lin = static_cast<int>(rng.uniform(0, 2.999));
    for (int i = 0; i < extra_lin; ++i) {
        const Vec a = unit();
        p.lin.push_back({a, a.dot(anchor) + rng.uniform(0.3, 0.8)});
    }
    if (rng.uniform01() < 0.6) {
        const Vec g = unit();
        Mat Q = g * g.transpose() * rng.uniform(0.2, 1.0);
        const Vec a = 0.3 * unit();
        p.quad.push_back({Q, a, anchor.dot(Q * anchor) + a.dot(anchor) + rng.uniform(0.3, 0.8)});
    }
    if (rng.uniform01() < 0.6) {
        Mat A(2, n);
        for (int r = 0; r < 2; ++r) A.row(r) = unit().transpose();
        Vec b0(2);
        b0 << rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3);
        const Vec c = unit();
        const Real d = (A * anchor + b0).norm() + rng.uniform(0.3, 0.8) - c.dot(anchor);
        p.soc.push_back({A, b0, c, d});
    }
    if (rng.uniform01() < 0.6) {
        Vec a = 0.5 * unit();
        const Real b = 2.0 + a.lpNorm<1>();  // log argument positive on the whole box
        const Real alpha = rng.uniform(0.5, 2.0);
        const Real cap = alpha * std::log2(a.dot(anchor) + b) - rng.uniform(0.3, 0.6);
        Vec g = Vec::Zero(n);  // zero keeps the constraint trivially slack as fallback
        for (int tries = 0; tries < 20; ++tries) {
            const Vec u = unit();
            const Real at = u.dot(anchor);
            if (std::abs(at) > 0.05) {
                g = u * (cap / at);  // anchor lands exactly on the shifted level
                break;
            }
        }
        p.logc.push_back({g, alpha, a, b});
    }
    return p;
}

}  // namespace oracles

#endif  // VLCSEE_TESTS_ORACLES_HPP
