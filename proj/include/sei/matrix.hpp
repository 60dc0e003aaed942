#pragma once

#include <vector>

namespace sei {

// Dense real square matrix, row-major. Carrier for M, hM, e^{tM}, the
// symplectic structure J, and everything the condition checkers assemble.
// Pure value semantics; all operations below are free functions.
struct SquareMatrix {
    int d = 0;                // dimension, >= 1 once constructed
    std::vector<double> e;    // d*d entries, row-major

    SquareMatrix() = default;
    explicit SquareMatrix(int dim);                        // zero matrix
    SquareMatrix(int dim, std::vector<double> entries);    // checks size and finiteness

    double& operator()(int i, int j) { return e[static_cast<size_t>(i) * d + j]; }
    double operator()(int i, int j) const { return e[static_cast<size_t>(i) * d + j]; }
};

SquareMatrix identity(int d);
SquareMatrix transpose(const SquareMatrix& A);
SquareMatrix add(const SquareMatrix& A, const SquareMatrix& B);
SquareMatrix sub(const SquareMatrix& A, const SquareMatrix& B);
SquareMatrix scale(double s, const SquareMatrix& A);
SquareMatrix mat_mul(const SquareMatrix& A, const SquareMatrix& B);
std::vector<double> mat_vec(const SquareMatrix& A, const std::vector<double>& x);
double inf_norm(const SquareMatrix& A);
bool is_finite(const SquareMatrix& A);

// Solve A*X = B by LU factorization with partial pivoting.
// Throws std::runtime_error on a (numerically) singular A.
SquareMatrix lu_solve(SquareMatrix A, const SquareMatrix& B);

// e^A by scaling-and-squaring with the degree-6 diagonal Pade approximant.
// Relative inf-norm error <= 1e-13 for ||A||_inf <= 50, which covers every
// use in this library (the steppers see ||hM|| <= 2.6).
SquareMatrix expm(const SquareMatrix& A);

}  // namespace sei
