#pragma once

#include <random>

#include "sei/matrix.hpp"

namespace testutil {

// Uniform random matrix rescaled to the requested inf-norm.
inline sei::SquareMatrix random_matrix(int d, double norm, std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    sei::SquareMatrix A(d);
    for (auto& v : A.e) v = uni(rng);
    const double n = sei::inf_norm(A);
    return n > 0.0 ? sei::scale(norm / n, A) : A;
}

// Independent expm oracle: truncated Taylor series with scaling-and-squaring
// (scale by 2 until the norm drops below 0.5, sum 25 terms, square back).
inline sei::SquareMatrix taylor_expm(const sei::SquareMatrix& A) {
    int s = 0;
    double nrm = sei::inf_norm(A);
    while (nrm >= 0.5) {
        nrm *= 0.5;
        ++s;
    }
    sei::SquareMatrix As = sei::scale(std::ldexp(1.0, -s), A);
    sei::SquareMatrix term = sei::identity(A.d);
    sei::SquareMatrix sum = term;
    for (int n = 1; n <= 25; ++n) {
        term = sei::scale(1.0 / n, sei::mat_mul(term, As));
        sum = sei::add(sum, term);
    }
    for (int i = 0; i < s; ++i) sum = sei::mat_mul(sum, sum);
    return sum;
}

inline double rel_err(const sei::SquareMatrix& got, const sei::SquareMatrix& want) {
    return sei::inf_norm(sei::sub(got, want)) / sei::inf_norm(want);
}

}  // namespace testutil
