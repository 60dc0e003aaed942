#include "sei/stepper.hpp"

#include <cmath>

namespace sei {

StepKernel precompute(const SEIMethod& m, const SquareMatrix& M, double h) {
    m.tableau.validate();
    if (h == 0.0) throw std::invalid_argument("precompute: h must be nonzero");
    if (!is_finite(M)) throw std::invalid_argument("precompute: non-finite M");

    StepKernel k;
    k.method_name = m.name;
    k.s = m.tableau.s;
    k.d = M.d;
    k.h = h;
    k.M = M;
    k.tab = m.tableau;
    const SquareMatrix hM = scale(h, M);
    for (int i = 0; i < k.s; ++i) k.Ec.push_back(expm(scale(m.tableau.c[i], hM)));
    k.Eh = expm(hM);
    for (int i = 1; i <= k.s; ++i)
        for (int j = 1; j <= k.s; ++j) k.abar.push_back(sei_abar(m, i, j, hM));
    for (int i = 1; i <= k.s; ++i) k.bbar.push_back(sei_bbar(m, i, hM));
    return k;
}

static void check_step_args(const StepKernel& k, const SemilinearProblem& p, const State& y0,
                            double h) {
    if (h != k.h) throw std::invalid_argument("ei_step: kernel was built for a different h");
    if (p.d != k.d || y0.size() != static_cast<size_t>(k.d))
        throw std::invalid_argument("ei_step: dimension mismatch between kernel, problem, and state");
    if (p.M.d != k.M.d || p.M.e != k.M.e)
        throw std::invalid_argument("ei_step: kernel was built for a different M");
}

// Relative inf-norm convergence over the concatenated stage vector, with an
// absolute floor of 1e-15.
static bool converged(double delta, double scale_now, double fp_tol) {
    return delta <= std::max(fp_tol * scale_now, 1e-15);
}

State ei_step(const StepKernel& k, const SemilinearProblem& p, const State& y0, double h,
              const SolverSettings& s, int* iters) {
    check_step_args(k, p, y0, h);
    const int ns = k.s, d = k.d;

    std::vector<State> seed(ns), Y(ns), Yn(ns, State(d)), fY(ns, State(d));
    for (int i = 0; i < ns; ++i) {
        seed[i] = mat_vec(k.Ec[i], y0);
        Y[i] = seed[i];
    }

    double delta = 0.0;
    for (int it = 1; it <= s.max_iters; ++it) {
        for (int j = 0; j < ns; ++j) p.f(Y[j], fY[j]);
        delta = 0.0;
        double scale_now = 0.0;
        for (int i = 0; i < ns; ++i) {
            State& yi = Yn[i];
            yi = seed[i];
            for (int j = 0; j < ns; ++j) {
                const SquareMatrix& Aij = k.abar[static_cast<size_t>(i) * ns + j];
                for (int r = 0; r < d; ++r) {
                    double acc = 0.0;
                    for (int c = 0; c < d; ++c) acc += Aij(r, c) * fY[j][c];
                    yi[r] += h * acc;
                }
            }
            for (int r = 0; r < d; ++r) {
                delta = std::max(delta, std::fabs(yi[r] - Y[i][r]));
                scale_now = std::max(scale_now, std::fabs(yi[r]));
            }
        }
        Y.swap(Yn);
        if (!std::isfinite(delta))
            throw NonconvergenceError("ei_step: stage iteration diverged (non-finite iterate)",
                                      delta);
        if (converged(delta, scale_now, s.fp_tol)) {
            if (iters) *iters = it;
            State y1 = mat_vec(k.Eh, y0);
            for (int i = 0; i < ns; ++i) {
                p.f(Y[i], fY[i]);
                const std::vector<double> bi = mat_vec(k.bbar[i], fY[i]);
                for (int r = 0; r < d; ++r) y1[r] += h * bi[r];
            }
            return y1;
        }
    }
    throw NonconvergenceError("ei_step: stage iteration did not reach fp_tol within " +
                                  std::to_string(s.max_iters) + " iterations (last defect " +
                                  std::to_string(delta) + "); h is too large for the contraction",
                              delta);
}

State rk_step(const RKTableau& t, const SemilinearProblem& p, const State& y0, double h,
              const SolverSettings& s, int* iters) {
    t.validate();
    if (h == 0.0) throw std::invalid_argument("rk_step: h must be nonzero");
    if (p.d != static_cast<int>(y0.size()) || p.M.d != p.d)
        throw std::invalid_argument("rk_step: dimension mismatch");
    const int ns = t.s, d = p.d;

    // g(y) = My + f(y)
    State fy(d);
    auto eval_g = [&](const State& y, State& out) {
        out = mat_vec(p.M, y);
        p.f(y, fy);
        for (int r = 0; r < d; ++r) out[r] += fy[r];
    };

    std::vector<State> Y(ns, y0), Yn(ns, State(d)), gY(ns, State(d));
    double delta = 0.0;
    for (int it = 1; it <= s.max_iters; ++it) {
        for (int j = 0; j < ns; ++j) eval_g(Y[j], gY[j]);
        delta = 0.0;
        double scale_now = 0.0;
        for (int i = 0; i < ns; ++i) {
            State& yi = Yn[i];
            yi = y0;
            for (int j = 0; j < ns; ++j) {
                const double aij = t.a(i, j);
                if (aij == 0.0) continue;
                for (int r = 0; r < d; ++r) yi[r] += h * aij * gY[j][r];
            }
            for (int r = 0; r < d; ++r) {
                delta = std::max(delta, std::fabs(yi[r] - Y[i][r]));
                scale_now = std::max(scale_now, std::fabs(yi[r]));
            }
        }
        Y.swap(Yn);
        if (!std::isfinite(delta))
            throw NonconvergenceError("rk_step: stage iteration diverged (non-finite iterate)",
                                      delta);
        if (converged(delta, scale_now, s.fp_tol)) {
            if (iters) *iters = it;
            State y1 = y0;
            for (int i = 0; i < ns; ++i) {
                eval_g(Y[i], gY[i]);
                for (int r = 0; r < d; ++r) y1[r] += h * t.b[i] * gY[i][r];
            }
            return y1;
        }
    }
    throw NonconvergenceError("rk_step: stage iteration did not reach fp_tol within " +
                                  std::to_string(s.max_iters) + " iterations (last defect " +
                                  std::to_string(delta) + "); h is too large for the contraction",
                              delta);
}

Trajectory integrate(const StepMap& step, const SemilinearProblem& p, const State& y0, double h,
                     double t_end, StepStats* stats) {
    if (h == 0.0) throw std::invalid_argument("integrate: h must be nonzero");
    const double ratio = t_end / h;
    const long N = std::lround(ratio);
    if (N < 1 || std::fabs(N * h - t_end) > 1e-9)
        throw std::invalid_argument("integrate: t_end/h must be a positive integer");

    Trajectory traj;
    traj.h = h;
    traj.problem_label = p.label;
    traj.t.reserve(N + 1);
    traj.y.reserve(N + 1);
    traj.t.push_back(0.0);
    traj.y.push_back(y0);
    State y = y0;
    for (long n = 1; n <= N; ++n) {
        int it = 0;
        try {
            y = step(y, &it);
        } catch (const NonconvergenceError& e) {
            throw NonconvergenceError(std::string(e.what()) + " [at step " + std::to_string(n) +
                                          " of " + std::to_string(N) + "]",
                                      e.last_defect, n);
        }
        if (stats) { stats->total_iters += it; stats->n_steps += 1; }
        traj.t.push_back(n * h);
        traj.y.push_back(y);
    }
    return traj;
}

Trajectory integrate_ei(const SEIMethod& m, const SemilinearProblem& p, double h, double t_end,
                        const SolverSettings& s, StepStats* stats) {
    const StepKernel k = precompute(m, p.M, h);
    StepMap step = [&k, &p, h, &s](const State& y, int* it) { return ei_step(k, p, y, h, s, it); };
    Trajectory traj = integrate(step, p, p.y0, h, t_end, stats);
    traj.method_name = m.name;
    return traj;
}

Trajectory integrate_rk(const SEIMethod& m, const SemilinearProblem& p, double h, double t_end,
                        const SolverSettings& s, StepStats* stats) {
    StepMap step = [&m, &p, h, &s](const State& y, int* it) {
        return rk_step(m.tableau, p, y, h, s, it);
    };
    Trajectory traj = integrate(step, p, p.y0, h, t_end, stats);
    traj.method_name = m.name;
    return traj;
}

Trajectory integrate_method(const SEIMethod& m, const SemilinearProblem& p, double h, double t_end,
                            const SolverSettings& s, StepStats* stats) {
    return m.classical_rk ? integrate_rk(m, p, h, t_end, s, stats)
                          : integrate_ei(m, p, h, t_end, s, stats);
}

}  // namespace sei
