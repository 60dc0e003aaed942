// Python bindings: the library's main operations with plain lists/dicts at
// the boundary, mirroring the CLI surface (integrate, convergence, energy,
// verify, method catalog) plus the low-level oracles (expm, Jacobi functions,
// Duffing exact solution).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sei/harness.hpp"
#include "sei/matrix.hpp"
#include "sei/problems.hpp"
#include "sei/stepper.hpp"
#include "sei/tableau.hpp"

namespace py = pybind11;

namespace {

sei::SquareMatrix to_matrix(const std::vector<std::vector<double>>& rows) {
    const int d = static_cast<int>(rows.size());
    sei::SquareMatrix A(d);
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(rows[size_t(i)].size()) != d)
            throw std::invalid_argument("expm: matrix rows must form a square matrix");
        for (int j = 0; j < d; ++j) A(i, j) = rows[size_t(i)][size_t(j)];
    }
    return A;
}

std::vector<std::vector<double>> from_matrix(const sei::SquareMatrix& A) {
    std::vector<std::vector<double>> rows(size_t(A.d), std::vector<double>(size_t(A.d)));
    for (int i = 0; i < A.d; ++i)
        for (int j = 0; j < A.d; ++j) rows[size_t(i)][size_t(j)] = A(i, j);
    return rows;
}

sei::SolverSettings settings(double fp_tol, int max_iters) {
    sei::SolverSettings s;
    s.fp_tol = fp_tol;
    s.max_iters = max_iters;
    return s;
}

py::dict row_to_dict(const sei::MetricRow& r) {
    py::dict d;
    d["method"] = r.method;
    d["problem"] = r.problem;
    d["h"] = r.h;
    d["t_end"] = r.t_end;
    d["GE"] = r.GE;
    d["GEH"] = r.GEH;
    d["divergent"] = r.divergent;
    d["wall_time"] = r.wall_time;
    d["n_steps"] = r.n_steps;
    d["mean_fp_iters"] = r.mean_fp_iters;
    return d;
}

sei::ExperimentConfig make_config(const std::string& experiment, const std::string& problem,
                                  const std::vector<std::string>& methods,
                                  const std::vector<double>& h_list,
                                  const std::vector<double>& t_end_list,
                                  const std::map<std::string, double>& params, double fp_tol,
                                  int max_iters) {
    sei::ExperimentConfig cfg;
    cfg.experiment = experiment;
    cfg.problem = problem;
    cfg.methods = methods;
    cfg.h_list = h_list;
    cfg.t_end_list = t_end_list;
    cfg.params = params;
    cfg.solver = settings(fp_tol, max_iters);
    return cfg;
}

}  // namespace

PYBIND11_MODULE(pysei, m) {
    m.doc() = "Symmetric and symplectic exponential integrators for y' = My + f(y)";

    m.def(
        "expm", [](const std::vector<std::vector<double>>& rows) {
            return from_matrix(sei::expm(to_matrix(rows)));
        },
        py::arg("matrix"), "Matrix exponential of a square matrix given as nested lists.");

    m.def(
        "jacobi_sn_cn_dn",
        [](double u, double modulus) {
            const sei::JacobiValues v = sei::jacobi_sn_cn_dn(u, modulus);
            return py::make_tuple(v.sn, v.cn, v.dn);
        },
        py::arg("u"), py::arg("modulus"), "Jacobi elliptic functions (sn, cn, dn).");

    m.def(
        "duffing_exact",
        [](double t, double k, double omega) {
            sei::DuffingParams p;
            p.k = k;
            p.omega = omega;
            return sei::duffing(p).exact(t);
        },
        py::arg("t"), py::arg("k") = 0.07, py::arg("omega") = 20.0,
        "Closed-form Duffing solution (q, p) at time t.");

    m.def("list_methods", [] {
        py::list out;
        for (const sei::SEIMethod& mm : sei::builtin_methods()) {
            py::dict d;
            d["name"] = mm.name;
            d["stages"] = mm.tableau.s;
            d["order"] = mm.order;
            d["classical_rk"] = mm.classical_rk;
            out.append(d);
        }
        return out;
    }, "Catalog of the built-in methods.");

    m.def(
        "tableau_json", [](const std::string& name) {
            return sei::tableau_to_json(sei::find_method(name));
        },
        py::arg("name"), "Butcher tableau of a built-in method as a JSON string.");

    m.def(
        "condition_residuals",
        [](const std::string& name) {
            const sei::SEIMethod& mm = sei::find_method(name);
            const sei::SquareMatrix Z0(2);
            py::dict d;
            d["rk_symmetry"] = sei::check_rk_symmetry(mm.tableau).residual;
            d["rk_symplecticity"] = sei::check_rk_symplecticity(mm.tableau).residual;
            d["ei_symmetry_at_zero"] = sei::check_ei_symmetry(mm, Z0).residual;
            d["ei_symplecticity_at_zero"] =
                sei::check_ei_symplecticity(mm, Z0, sei::canonical_j(2)).residual;
            d["order"] = sei::check_order_conditions(mm.tableau, mm.order).residual;
            return d;
        },
        py::arg("name"), "Symmetry/symplecticity/order residuals of a built-in method.");

    m.def(
        "integrate",
        [](const std::string& method, const std::string& problem, double h, double t_end,
           const std::map<std::string, double>& params, double fp_tol, int max_iters) {
            const sei::SEIMethod& mm = sei::find_method(method);
            const sei::SemilinearProblem p = sei::make_problem(problem, params);
            sei::StepStats stats;
            const sei::Trajectory traj =
                sei::integrate_method(mm, p, h, t_end, settings(fp_tol, max_iters), &stats);
            py::dict d;
            d["method"] = traj.method_name;
            d["problem"] = problem;
            d["h"] = traj.h;
            d["t"] = traj.t;
            d["y"] = traj.y;
            d["mean_fp_iters"] = stats.mean_iters();
            return d;
        },
        py::arg("method"), py::arg("problem"), py::arg("h"), py::arg("t_end"),
        py::arg("params") = std::map<std::string, double>{}, py::arg("fp_tol") = 1e-13,
        py::arg("max_iters") = 200,
        "Fixed-step integration; returns the trajectory as {'t': [...], 'y': [[...]]}.");

    m.def(
        "run_convergence",
        [](const std::string& problem, const std::vector<std::string>& methods,
           const std::vector<double>& h_list, double t_end,
           const std::map<std::string, double>& params, double fp_tol, int max_iters) {
            const std::vector<sei::MetricRow> rows = sei::run_convergence(make_config(
                "convergence", problem, methods, h_list, {t_end}, params, fp_tol, max_iters));
            py::list out;
            for (const sei::MetricRow& r : rows) out.append(row_to_dict(r));
            return out;
        },
        py::arg("problem"), py::arg("methods"), py::arg("h_list"), py::arg("t_end"),
        py::arg("params") = std::map<std::string, double>{}, py::arg("fp_tol") = 1e-13,
        py::arg("max_iters") = 200,
        "Global-error study over a step-size list; one row dict per (method, h).");

    m.def(
        "run_energy",
        [](const std::string& problem, const std::vector<std::string>& methods, double h,
           const std::vector<double>& t_end_list, const std::map<std::string, double>& params,
           double fp_tol, int max_iters) {
            const std::vector<sei::MetricRow> rows = sei::run_energy(make_config(
                "energy", problem, methods, {h}, t_end_list, params, fp_tol, max_iters));
            py::list out;
            for (const sei::MetricRow& r : rows) out.append(row_to_dict(r));
            return out;
        },
        py::arg("problem"), py::arg("methods"), py::arg("h"), py::arg("t_end_list"),
        py::arg("params") = std::map<std::string, double>{}, py::arg("fp_tol") = 1e-13,
        py::arg("max_iters") = 200,
        "Energy-drift study over a horizon list; one row dict per (method, t_end).");

    m.def(
        "verify",
        [](double fp_tol, int max_iters) {
            const sei::VerifyReport rep = sei::run_verify(settings(fp_tol, max_iters));
            py::list checks;
            for (const sei::VerifyCheck& ck : rep.checks) {
                py::dict d;
                d["name"] = ck.name;
                d["residual"] = ck.residual;
                d["threshold"] = ck.threshold;
                d["pass"] = ck.pass;
                checks.append(d);
            }
            py::dict d;
            d["all_pass"] = rep.all_pass();
            d["checks"] = checks;
            return d;
        },
        py::arg("fp_tol") = 1e-13, py::arg("max_iters") = 200,
        "Full verification battery; {'all_pass': bool, 'checks': [...]}.");
}
