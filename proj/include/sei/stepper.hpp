#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sei/matrix.hpp"
#include "sei/tableau.hpp"

namespace sei {

using State = std::vector<double>;

// A semilinear initial value problem y' = My + f(y), y(0) = y0, plus the
// optional extras the harness knows how to exploit: a conserved quantity (or
// Lyapunov function) H, a closed-form solution, and a symplectic structure.
struct SemilinearProblem {
    int d = 0;
    SquareMatrix M;
    std::function<void(const State&, State&)> f;   // writes f(y) into the output argument
    std::function<double(const State&)> invariant_H;   // may be empty
    std::function<State(double)> exact;                // may be empty
    std::optional<SquareMatrix> J;
    std::string label;
    State y0;
};

// Stage fixed-point iteration controls.
struct SolverSettings {
    double fp_tol = 1e-13;   // relative inf-norm tolerance on successive stage iterates
    int max_iters = 200;
};

// Thrown when the stage iteration fails to contract to fp_tol; carries the
// last observed defect and, once integrate() has annotated it, the step index.
class NonconvergenceError : public std::runtime_error {
  public:
    NonconvergenceError(const std::string& what, double defect, long step = -1)
        : std::runtime_error(what), last_defect(defect), step_index(step) {}
    double last_defect;
    long step_index;
};

// Fixed-step solution record: t[n] = n*h, one state per grid point.
struct Trajectory {
    std::vector<double> t;
    std::vector<State> y;
    double h = 0.0;
    std::string method_name;
    std::string problem_label;
};

// Frozen exponentials for one (method, M, h) triple: e^{c_i hM}, e^{hM},
// abar_ij(hM), and bbar_i(hM). Immutable after construction and safe to share.
struct StepKernel {
    std::string method_name;
    int s = 0;
    int d = 0;
    double h = 0.0;
    SquareMatrix M;                   // kept to let ei_step verify the pairing
    std::vector<SquareMatrix> Ec;     // e^{c_i h M}, i = 0..s-1
    SquareMatrix Eh;                  // e^{h M}
    std::vector<SquareMatrix> abar;   // s*s, row-major
    std::vector<SquareMatrix> bbar;   // size s
    RKTableau tab;
};

StepKernel precompute(const SEIMethod& m, const SquareMatrix& M, double h);

// One step of the exponential integrator:
//   Y_i = e^{c_i hM} y0 + h sum_j abar_ij(hM) f(Y_j),
//   y1  = e^{hM} y0 + h sum_i bbar_i(hM) f(Y_i),
// with the stage system solved by plain fixed-point iteration seeded with
// Y_i = e^{c_i hM} y0. Throws NonconvergenceError when the iteration fails.
// iters, when non-null, receives the iteration count.
State ei_step(const StepKernel& k, const SemilinearProblem& p, const State& y0, double h,
              const SolverSettings& s, int* iters = nullptr);

// One step of the classical RK method applied to the full right-hand side
// g(y) = My + f(y), stages seeded with y0.
State rk_step(const RKTableau& t, const SemilinearProblem& p, const State& y0, double h,
              const SolverSettings& s, int* iters = nullptr);

// Aggregate stage-iteration effort across a trajectory.
struct StepStats {
    long long total_iters = 0;
    long n_steps = 0;
    double mean_iters() const { return n_steps > 0 ? double(total_iters) / double(n_steps) : 0.0; }
};

using StepMap = std::function<State(const State&, int*)>;

// Fixed-step loop: requires t_end/h to be a positive integer (within 1e-9).
// Step nonconvergence is rethrown with the failing step index attached.
Trajectory integrate(const StepMap& step, const SemilinearProblem& p, const State& y0, double h,
                     double t_end, StepStats* stats = nullptr);

// Conveniences that build the appropriate step map for a method. The
// integrate_method dispatcher picks EI or classical RK from m.classical_rk.
Trajectory integrate_ei(const SEIMethod& m, const SemilinearProblem& p, double h, double t_end,
                        const SolverSettings& s = {}, StepStats* stats = nullptr);
Trajectory integrate_rk(const SEIMethod& m, const SemilinearProblem& p, double h, double t_end,
                        const SolverSettings& s = {}, StepStats* stats = nullptr);
Trajectory integrate_method(const SEIMethod& m, const SemilinearProblem& p, double h, double t_end,
                            const SolverSettings& s = {}, StepStats* stats = nullptr);

}  // namespace sei
