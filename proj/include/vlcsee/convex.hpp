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

#ifndef VLCSEE_CONVEX_HPP
#define VLCSEE_CONVEX_HPP

#include <optional>
#include <vector>

#include "vlcsee/types.hpp"

namespace vlcsee::convex {

// Declarative description of a small dense convex program
//
//   maximize  c^T x - 1/2 x^T P x + c0          (P positive semidefinite)
//   s.t.      a^T x <= b                        (LinearIneq)
//             x^T Q x + a^T x <= b              (QuadIneq, Q PSD)
//             |A x + b|_2 <= c^T x + d          (SocIneq)
//             g^T x <= alpha log2(a^T x + b)    (LogIneq, alpha > 0, b > 0)
//
// solved by a log-barrier interior-point method with damped Newton inner
// iterations. Dimensions are expected to stay in the tens-to-hundreds.

struct LinearIneq {
    Vec a;
    Real b = 0;
};

struct QuadIneq {
    Mat Q;
    Vec a;
    Real b = 0;
};

struct SocIneq {
    Mat A;
    Vec b;
    Vec c;
    Real d = 0;
};

struct LogIneq {
    Vec g;
    Real alpha = 1;
    Vec a;
    Real b = 0;  // must be > 0 so the log argument is positive at the origin
};

struct ConvexProgram {
    int n = 0;
    Vec c;
    Mat P;       // may be empty for a purely linear objective
    Real c0 = 0;
    std::vector<LinearIneq> lin;
    std::vector<QuadIneq> quad;
    std::vector<SocIneq> soc;
    std::vector<LogIneq> logc;
    bool feasibility_only = false;

    int constraint_count() const {
        return static_cast<int>(lin.size() + quad.size() + soc.size() + logc.size());
    }
    /// Objective value c^T x - 1/2 x^T P x + c0.
    Real objective(const Vec& x) const;
    /// Largest constraint violation, max_i f_i(x); <= 0 means feasible.
    Real max_violation(const Vec& x) const;
    /// Throws std::invalid_argument on malformed dimensions or signs.
    void validate() const;
};

enum class SolveStatus { Optimal, Infeasible, MaxIter };

struct SolveReport {
    SolveStatus status = SolveStatus::MaxIter;
    Vec x;
    Real objective_value = std::numeric_limits<Real>::quiet_NaN();
    Real barrier_mu_final = 0;
    int newton_iterations = 0;
    /// Infinity norm of the Lagrangian gradient with the barrier multipliers,
    /// normalized by 1 + |grad objective|_inf.
    Real kkt_residual = std::numeric_limits<Real>::infinity();
    /// Objective value after each barrier stage (diagnostic).
    std::vector<Real> stage_objectives;
};

/// Raised on numerical breakdown (e.g. an indefinite Hessian produced by an
/// input violating the PSD contract).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Phase1Result {
    bool feasible = false;
    Vec point;             // strictly feasible when feasible and margin < 0
    Real max_violation = std::numeric_limits<Real>::infinity();
};

/// Minimizes the largest constraint violation s with f_i(x) <= s. Feasible
/// iff the optimum satisfies s < 0 strictly or |s| <= tol_feas.
Phase1Result phase1_feasible(const ConvexProgram& p, Real tol_feas = 1e-8);

/// Solves the program. An optional strictly feasible start skips phase one.
SolveReport solve(const ConvexProgram& p, Real tol_feas = 1e-8, Real tol_opt = 1e-8,
                  const std::optional<Vec>& start = std::nullopt);

}  // namespace vlcsee::convex

#endif  // VLCSEE_CONVEX_HPP
