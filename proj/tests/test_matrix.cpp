#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "sei/matrix.hpp"

using sei::SquareMatrix;
using testutil::rel_err;

TEST_SUITE_BEGIN("matrix");

TEST_CASE("construction validates shape and finiteness") {
    CHECK_THROWS_AS(SquareMatrix(0), std::invalid_argument);
    CHECK_THROWS_AS(SquareMatrix(2, {1.0, 2.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(SquareMatrix(1, {std::nan("")}), std::invalid_argument);
    const SquareMatrix A(2, {1, 2, 3, 4});
    CHECK(A(1, 0) == 3.0);
}

TEST_CASE("basic products") {
    const SquareMatrix A(2, {1, 2, 3, 4});
    const SquareMatrix I = sei::identity(2);
    const SquareMatrix Z(2);

    CHECK(sei::inf_norm(sei::sub(sei::mat_mul(I, A), A)) == 0.0);           // I*A = A
    CHECK(sei::inf_norm(sei::mat_mul(A, Z)) == 0.0);                        // A*0 = 0
    const SquareMatrix J(2, {0, 1, -1, 0});
    const SquareMatrix J2 = sei::mat_mul(J, J);                             // J^2 = -I
    CHECK(sei::inf_norm(sei::add(J2, I)) == 0.0);

    CHECK_THROWS_AS(sei::mat_mul(A, SquareMatrix(3)), std::invalid_argument);
    CHECK_THROWS_AS(sei::mat_vec(A, {1.0}), std::invalid_argument);
}

TEST_CASE("companion operations") {
    const SquareMatrix A(2, {1, -2, 3, 4});
    CHECK(sei::inf_norm(A) == 7.0);   // max row abs sum
    const SquareMatrix T = sei::transpose(A);
    CHECK(T(0, 1) == 3.0);
    const auto y = sei::mat_vec(A, {1.0, 1.0});
    CHECK(y[0] == -1.0);
    CHECK(y[1] == 7.0);
    CHECK(sei::inf_norm(sei::sub(sei::add(A, sei::scale(-1.0, A)), SquareMatrix(2))) == 0.0);
}

TEST_CASE("lu_solve recovers the inverse and flags singularity") {
    const SquareMatrix A(3, {2, 1, 0, 1, 3, 1, 0, 1, 2});
    const SquareMatrix X = sei::lu_solve(A, sei::identity(3));
    CHECK(rel_err(sei::mat_mul(A, X), sei::identity(3)) < 1e-14);
    CHECK_THROWS_AS(sei::lu_solve(SquareMatrix(2, {1, 2, 2, 4}), sei::identity(2)),
                    std::runtime_error);
}

TEST_CASE("expm trivial cases") {
    CHECK(sei::inf_norm(sei::sub(sei::expm(SquareMatrix(3)), sei::identity(3))) == 0.0);

    const SquareMatrix D(2, {1, 0, 0, -1});
    const SquareMatrix E = sei::expm(D);
    CHECK(E(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(E(1, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(std::fabs(E(0, 1)) + std::fabs(E(1, 0)) == 0.0);

    // rotation generator
    const SquareMatrix G(2, {0, 0.1, -0.1, 0});
    const SquareMatrix R = sei::expm(G);
    CHECK(R(0, 0) == doctest::Approx(std::cos(0.1)).epsilon(1e-15));
    CHECK(R(0, 1) == doctest::Approx(std::sin(0.1)).epsilon(1e-15));
    CHECK(R(1, 0) == doctest::Approx(-std::sin(0.1)).epsilon(1e-15));

    SquareMatrix NF(1);
    NF.e[0] = 1.0 / 0.0;
    CHECK_THROWS_AS(sei::expm(NF), std::invalid_argument);
}

// Frozen reference values (50-digit computation rounded to doubles; matrix
// entries constructed exactly as below).
TEST_CASE("expm golden: oscillator generator at h=1/8") {
    const double w2 = 20.0 * 20.0 + 0.07 * 0.07;
    const SquareMatrix A(2, {0, 0.125, -0.125 * w2, 0});
    const SquareMatrix E = sei::expm(A);
    const SquareMatrix want(2, {-0.80115277952965253, 0.029922810551334187,
                                -11.969270842305377, -0.80115277952965253});
    CHECK(rel_err(E, want) < 4e-14);
    // independent recipe: truncated Taylor with scaling
    CHECK(rel_err(E, testutil::taylor_expm(A)) < 4e-14);
}

TEST_CASE("expm golden: 4x4, moderate and large norm") {
    const SquareMatrix A(4, {3.0 / 7, -1.0 / 3, 2.0 / 5, 1.0 / 9,
                             -2.0 / 7, 1.0 / 2, -3.0 / 8, 2.0 / 9,
                             1.0 / 6, -1.0 / 4, 2.0 / 7, 3.0 / 5,
                             -1.0 / 8, 2.0 / 3, -1.0 / 5, 1.0 / 7});
    const SquareMatrix wantA(4, {1.6499820081156971, -0.54407202136720033, 0.65962472024388281,
                                 0.27408798994690238,
                                 -0.54414934266570607, 1.8845647133970552, -0.70034668592325688,
                                 0.11946854126140790,
                                 0.22067984165368366, -0.14158650388748294, 1.3385269339212947,
                                 0.73673183328610670,
                                 -0.34676502561630533, 1.0240712638070618, -0.48500602648789412,
                                 1.1251847902176112});
    CHECK(rel_err(sei::expm(A), wantA) < 1e-14);

    // ||30 A||_inf ~ 41.5, near the top of the accuracy contract
    const SquareMatrix B = sei::scale(30.0, A);
    const SquareMatrix wantB(4, {3257595908.5279057, -2512528393.5256381, 3841124836.5132025,
                                 2900688502.4299980,
                                 -4800814789.3898084, 5406084131.7681047, -5866250358.7316998,
                                 -2868004842.9415472,
                                 -271883947.84676272, 2198680343.7772073, -560520494.65513765,
                                 1400687376.9828396,
                                 -4464462168.7476692, 5676618740.1385939, -5533577076.4780852,
                                 -2130789139.2777922});
    CHECK(rel_err(sei::expm(B), wantB) < 1e-13);
}

TEST_CASE("expm oracle agreement on random matrices") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2 + trial % 4;
        const double norm = (trial % 2 == 0) ? 0.8 : 5.0;
        const SquareMatrix A = testutil::random_matrix(d, norm, rng);
        CHECK(rel_err(sei::expm(A), testutil::taylor_expm(A)) < 1e-13);
    }
}

TEST_CASE("expm group properties") {
    std::mt19937 rng(1331);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const int d = 2 + trial % 4;
        const SquareMatrix A = testutil::random_matrix(d, 5.0, rng);

        // expm(A) expm(-A) = I
        const SquareMatrix P = sei::mat_mul(sei::expm(A), sei::expm(sei::scale(-1.0, A)));
        CHECK(sei::inf_norm(sei::sub(P, sei::identity(d))) < 1e-12);

        // expm((s+t)A) = expm(sA) expm(tA)
        const double s = uni(rng), t = uni(rng);
        const SquareMatrix lhs = sei::expm(sei::scale(s + t, A));
        const SquareMatrix rhs = sei::mat_mul(sei::expm(sei::scale(s, A)),
                                              sei::expm(sei::scale(t, A)));
        CHECK(sei::inf_norm(sei::sub(lhs, rhs)) < 1e-12);
    }
}

TEST_CASE("expm of a Hamiltonian matrix is symplectic") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const int d = (trial % 2 == 0) ? 2 : 4;
        // A = J S with S symmetric satisfies A^T J + J A = 0
        SquareMatrix S(d);
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) S(i, j) = S(j, i) = uni(rng);
        SquareMatrix J(d);
        for (int i = 0; i < d / 2; ++i) {
            J(i, d / 2 + i) = 1.0;
            J(d / 2 + i, i) = -1.0;
        }
        const SquareMatrix A = sei::mat_mul(J, S);
        const SquareMatrix E = sei::expm(A);
        const SquareMatrix EJE = sei::mat_mul(sei::transpose(E), sei::mat_mul(J, E));
        CHECK(sei::inf_norm(sei::sub(EJE, J)) < 1e-12);
    }
}

TEST_CASE("det(expm(A)) = e^trace(A) in 2d") {
    std::mt19937 rng(2025);
    for (int trial = 0; trial < 20; ++trial) {
        const SquareMatrix A = testutil::random_matrix(2, 3.0, rng);
        const SquareMatrix E = sei::expm(A);
        const double det = E(0, 0) * E(1, 1) - E(0, 1) * E(1, 0);
        const double want = std::exp(A(0, 0) + A(1, 1));
        CHECK(std::fabs(det - want) < 1e-10 * want);
    }
}

TEST_SUITE_END();
