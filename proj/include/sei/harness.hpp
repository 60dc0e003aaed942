#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sei/problems.hpp"
#include "sei/stepper.hpp"

namespace sei {

// One experiment request, mirrored 1:1 by the CLI's JSON config format.
struct ExperimentConfig {
    std::string experiment;                  // convergence | energy | verify | run
    std::string problem = "duffing";         // duffing | wind
    std::map<std::string, double> params;    // k/omega or r/theta overrides
    std::vector<std::string> methods;        // empty = all built-ins
    std::vector<double> h_list;
    std::vector<double> t_end_list;          // energy: the checkpoint list; else single t_end
    std::string output_path;                 // empty = caller handles output
    SolverSettings solver;
};

// One measured run. GE/GEH hold NaN when not applicable; divergent marks a
// run whose stage iteration failed (GE/GEH meaningless, reported as such).
struct MetricRow {
    std::string method;
    std::string problem;
    double h = 0.0;
    double t_end = 0.0;
    double GE = 0.0;
    double GEH = 0.0;
    bool divergent = false;
    double wall_time = 0.0;   // seconds
    long n_steps = 0;
    double mean_fp_iters = 0.0;
};

// max over grid points of ||y_n - reference(t_n)||_2. Throws when no
// reference is available (use numeric_reference for problems without one).
double global_error(const Trajectory& traj, const std::function<State(double)>& reference);

// max over grid points of |H(y_n) - H(y_0)|.
double energy_error(const Trajectory& traj, const std::function<double(const State&)>& H);

// Reference solution on the h_target grid, computed with SSSEI3s4 at
// h_ref = h_target/200 and validated against a second run at h_ref/2 (the two
// tiers must agree to 1e-10 in the 2-norm, else the reference is untrusted
// and this throws). The returned function only accepts grid points of the
// reference grid (t a multiple of h_ref within 1e-9).
std::function<State(double)> numeric_reference(const SemilinearProblem& p, double h_target,
                                               double t_end, const SolverSettings& s = {});

// log2(GE(h_i)/GE(h_{i+1})) for consecutive rows of a halving-h study.
// Pairs with a divergent row, a non-finite GE, or GE < 1e-12 (roundfloor) are
// skipped.
std::vector<double> estimate_order(const std::vector<MetricRow>& rows);

// Problem factory used by the CLI: label "duffing" (params k, omega) or
// "wind" (params r, theta). Unknown labels or params throw.
SemilinearProblem make_problem(const std::string& label,
                               const std::map<std::string, double>& params = {});

// Experiment drivers. Rows are ordered methods x h x t_end in config order;
// a nonconverging run yields a divergent row and the experiment continues.
// When cfg.output_path is nonempty the rows are also written there as CSV.
std::vector<MetricRow> run_convergence(const ExperimentConfig& cfg);
std::vector<MetricRow> run_energy(const ExperimentConfig& cfg);
std::vector<MetricRow> run_single(const ExperimentConfig& cfg);

// CSV emission: header 'method,problem,h,t_end,GE,GEH,wall_time,n_steps,mean_fp_iters',
// floats at 17 significant digits, NaN printed as 'nan', divergent rows carry
// the literal 'divergent' in GE and GEH.
void write_csv(const std::vector<MetricRow>& rows, std::ostream& out);
std::string to_csv(const std::vector<MetricRow>& rows);

// Batched verification: tableau-level condition checks for every built-in
// method (RK symmetry/symplecticity, order conditions, EI symmetry and
// symplecticity sampled at Z in {0, +-hM for the benchmark h values, 5 random
// Hamiltonian matrices with ||Z|| <= 3}), plus step-map round-trip and
// finite-difference symplecticity checks for the SSSEI methods.
struct VerifyCheck {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
};
struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass() const;
};
VerifyReport run_verify(const SolverSettings& s = {},
                        const std::vector<SEIMethod>& extra_tableaux = {});

}  // namespace sei
