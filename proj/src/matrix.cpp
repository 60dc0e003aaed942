#include "sei/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sei {

SquareMatrix::SquareMatrix(int dim) : d(dim) {
    if (dim < 1)
        throw std::invalid_argument("SquareMatrix: dimension must be >= 1, got " + std::to_string(dim));
    e.assign(static_cast<size_t>(dim) * dim, 0.0);
}

SquareMatrix::SquareMatrix(int dim, std::vector<double> entries) : d(dim), e(std::move(entries)) {
    if (dim < 1)
        throw std::invalid_argument("SquareMatrix: dimension must be >= 1, got " + std::to_string(dim));
    if (e.size() != static_cast<size_t>(dim) * dim)
        throw std::invalid_argument("SquareMatrix: entry count does not match dimension");
    for (double v : e)
        if (!std::isfinite(v))
            throw std::invalid_argument("SquareMatrix: non-finite entry");
}

SquareMatrix identity(int d) {
    SquareMatrix I(d);
    for (int i = 0; i < d; ++i) I(i, i) = 1.0;
    return I;
}

SquareMatrix transpose(const SquareMatrix& A) {
    SquareMatrix T(A.d);
    for (int i = 0; i < A.d; ++i)
        for (int j = 0; j < A.d; ++j) T(j, i) = A(i, j);
    return T;
}

static void require_same_dim(const SquareMatrix& A, const SquareMatrix& B, const char* op) {
    if (A.d != B.d)
        throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                    std::to_string(A.d) + " vs " + std::to_string(B.d) + ")");
}

SquareMatrix add(const SquareMatrix& A, const SquareMatrix& B) {
    require_same_dim(A, B, "add");
    SquareMatrix C(A.d);
    for (size_t k = 0; k < C.e.size(); ++k) C.e[k] = A.e[k] + B.e[k];
    return C;
}

SquareMatrix sub(const SquareMatrix& A, const SquareMatrix& B) {
    require_same_dim(A, B, "sub");
    SquareMatrix C(A.d);
    for (size_t k = 0; k < C.e.size(); ++k) C.e[k] = A.e[k] - B.e[k];
    return C;
}

SquareMatrix scale(double s, const SquareMatrix& A) {
    SquareMatrix C(A.d);
    for (size_t k = 0; k < C.e.size(); ++k) C.e[k] = s * A.e[k];
    return C;
}

SquareMatrix mat_mul(const SquareMatrix& A, const SquareMatrix& B) {
    require_same_dim(A, B, "mat_mul");
    const int d = A.d;
    SquareMatrix C(d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            const double a = A(i, k);
            if (a == 0.0) continue;
            for (int j = 0; j < d; ++j) C(i, j) += a * B(k, j);
        }
    return C;
}

std::vector<double> mat_vec(const SquareMatrix& A, const std::vector<double>& x) {
    if (x.size() != static_cast<size_t>(A.d))
        throw std::invalid_argument("mat_vec: dimension mismatch");
    std::vector<double> y(A.d, 0.0);
    for (int i = 0; i < A.d; ++i) {
        double s = 0.0;
        for (int j = 0; j < A.d; ++j) s += A(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double inf_norm(const SquareMatrix& A) {
    double n = 0.0;
    for (int i = 0; i < A.d; ++i) {
        double r = 0.0;
        for (int j = 0; j < A.d; ++j) r += std::fabs(A(i, j));
        if (r > n) n = r;
    }
    return n;
}

bool is_finite(const SquareMatrix& A) {
    for (double v : A.e)
        if (!std::isfinite(v)) return false;
    return true;
}

SquareMatrix lu_solve(SquareMatrix A, const SquareMatrix& B) {
    require_same_dim(A, B, "lu_solve");
    const int d = A.d;
    SquareMatrix X = B;
    std::vector<int> piv(d);
    for (int i = 0; i < d; ++i) piv[i] = i;

    for (int k = 0; k < d; ++k) {
        int p = k;
        double best = std::fabs(A(k, k));
        for (int i = k + 1; i < d; ++i) {
            const double v = std::fabs(A(i, k));
            if (v > best) { best = v; p = i; }
        }
        if (best == 0.0) throw std::runtime_error("lu_solve: singular matrix");
        if (p != k) {
            for (int j = 0; j < d; ++j) std::swap(A(k, j), A(p, j));
            for (int j = 0; j < d; ++j) std::swap(X(k, j), X(p, j));
        }
        for (int i = k + 1; i < d; ++i) {
            const double l = A(i, k) / A(k, k);
            A(i, k) = l;
            for (int j = k + 1; j < d; ++j) A(i, j) -= l * A(k, j);
            for (int j = 0; j < d; ++j) X(i, j) -= l * X(k, j);
        }
    }
    // back substitution, column by column of X
    for (int j = 0; j < d; ++j)
        for (int i = d - 1; i >= 0; --i) {
            double s = X(i, j);
            for (int k = i + 1; k < d; ++k) s -= A(i, k) * X(k, j);
            X(i, j) = s / A(i, i);
        }
    return X;
}

SquareMatrix expm(const SquareMatrix& A) {
    if (!is_finite(A)) throw std::invalid_argument("expm: non-finite input");

    // Scale so ||A/2^s|| <= 0.25, well inside the accuracy radius of the
    // degree-6 diagonal Pade approximant, then square back.
    double nrm = inf_norm(A);
    int s = 0;
    while (nrm > 0.25) { nrm *= 0.5; ++s; }
    const SquareMatrix As = scale(std::ldexp(1.0, -s), A);

    // p(x) = sum b_k x^k with q(x) = p(-x); e^x ~ p(x)/q(x).
    static const double b[7] = {1.0,      1.0 / 2.0,    5.0 / 44.0,   1.0 / 66.0,
                                1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0};
    const SquareMatrix I = identity(A.d);
    const SquareMatrix A2 = mat_mul(As, As);
    const SquareMatrix A4 = mat_mul(A2, A2);
    const SquareMatrix A6 = mat_mul(A4, A2);
    const SquareMatrix U =
        mat_mul(As, add(scale(b[1], I), add(scale(b[3], A2), scale(b[5], A4))));
    const SquareMatrix V =
        add(add(scale(b[0], I), scale(b[2], A2)), add(scale(b[4], A4), scale(b[6], A6)));
    SquareMatrix R = lu_solve(sub(V, U), add(V, U));
    for (int i = 0; i < s; ++i) R = mat_mul(R, R);
    return R;
}

}  // namespace sei
