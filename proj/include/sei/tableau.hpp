#pragma once

#include <random>
#include <string>
#include <vector>

#include "sei/matrix.hpp"

namespace sei {

// Butcher coefficients of an s-stage Runge-Kutta method.
struct RKTableau {
    int s = 0;
    std::vector<double> c;    // abscissae, size s
    std::vector<double> b;    // weights, size s
    std::vector<double> A;    // stage coefficients, s*s row-major

    double a(int i, int j) const { return A[static_cast<size_t>(i) * s + j]; }
    double& a(int i, int j) { return A[static_cast<size_t>(i) * s + j]; }
    void validate() const;    // throws std::invalid_argument on bad shape or non-finite entries
};

// A named tableau with its classical order. The exponential integrator's
// matrix-valued coefficients abar_ij(hM) = a_ij e^{(c_i-c_j)hM} and
// bbar_i(hM) = b_i e^{(1-c_i)hM} are induced from the tableau; classical_rk
// marks the comparator variants that instead step the full right-hand side
// My + f(y) with the plain tableau.
struct SEIMethod {
    std::string name;
    RKTableau tableau;
    int order = 0;
    bool classical_rk = false;
};

// Result of one condition check: the worst defect plus the per-equation list.
struct ConditionReport {
    struct Entry {
        std::string label;
        double defect = 0.0;
    };
    std::string condition_name;
    double residual = 0.0;             // max over details
    std::vector<Entry> details;
    std::vector<double> gammas;        // fitted per-stage gamma_i (symplecticity checker only)
};

// Matrix-valued SEI coefficients at the sample point Z (Z plays the role of
// hM). Stage indices are 1-based, matching the tableau convention; out of
// range indices throw std::out_of_range.
SquareMatrix sei_abar(const SEIMethod& m, int i, int j, const SquareMatrix& Z);
SquareMatrix sei_bbar(const SEIMethod& m, int i, const SquareMatrix& Z);

// Symmetry conditions of an s-stage RK method:
//   c_i = 1 - c_{s+1-i},  b_i = b_{s+1-i},  a_ij = b_{s+1-j} - a_{s+1-i,s+1-j}.
ConditionReport check_rk_symmetry(const RKTableau& t);

// Symplecticity conditions of an s-stage RK method:
//   b_i b_j - b_i a_ij - b_j a_ji = 0 for all i,j.
ConditionReport check_rk_symplecticity(const RKTableau& t);

// Symmetry conditions of the exponential integrator, evaluated pointwise at
// the sample Z: the abscissa condition c_i + c_{s+1-i} = 1 first, then
//   bbar_i(Z)  = e^Z bbar_{s+1-i}(-Z),
//   abar_ij(Z) = e^{c_i Z} bbar_{s+1-j}(-Z) - abar_{s+1-i,s+1-j}(-Z).
ConditionReport check_ei_symmetry(const SEIMethod& m, const SquareMatrix& Z);

// Symplecticity conditions of the exponential integrator at hM with
// structure J, using S = e^{hM}, S_i = e^{c_i hM} (S_i^{-1} is computed as
// e^{-c_i hM}, the exact inverse):
//   bbar_i(hM)^T J S S_i^{-1} = S_i^{-T} S^T J bbar_i(hM) = gamma_i J,
//   bbar_i^T J bbar_j = bbar_i^T J S S_i^{-1} abar_ij + abar_ji^T S_j^{-T} S^T J bbar_j.
// gamma_i is fitted per stage by least squares (projection onto J) and
// reported in the result; the residual collects the off-J defects and the
// second-family defects.
ConditionReport check_ei_symplecticity(const SEIMethod& m, const SquareMatrix& hM,
                                       const SquareMatrix& J);

// Classical order conditions up to p in {1,2,3,4} plus row-sum consistency
// sum_j a_ij = c_i. Residual is the max violation.
ConditionReport check_order_conditions(const RKTableau& t, int p);

// The six built-in methods: SSSEI1s2 (implicit midpoint lift, order 2),
// SSSEI2s4 (2-stage Gauss lift, order 4), SSSEI3s4 (triple-jump composition
// lift, order 4), and SSRK1s2/SSRK2s4/SSRK3s4, the same tableaux flagged for
// classical-RK stepping. Each entry's stated order is checked on first use.
const std::vector<SEIMethod>& builtin_methods();
const SEIMethod& find_method(const std::string& name);   // throws on unknown name

// Canonical symplectic structure [[0, I], [-I, 0]] (d even).
SquareMatrix canonical_j(int d);

// Random Hamiltonian matrix Z = J*S with S symmetric, rescaled so that
// ||Z||_inf equals norm_bound. Satisfies Z^T J + J Z = 0 by construction.
SquareMatrix random_hamiltonian(int d, double norm_bound, std::mt19937& rng);

// JSON exchange format: {"name": ..., "s": ..., "c": [...], "b": [...], "A": [[...]]}.
// Parsing infers the order as the highest p in 1..4 passing the order checker.
std::string tableau_to_json(const SEIMethod& m);
SEIMethod tableau_from_json(const std::string& text);

}  // namespace sei
