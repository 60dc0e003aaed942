#pragma once

#include "sei/stepper.hpp"

namespace sei {

// Duffing oscillator q'' + (omega^2 + k^2) q = 2 k^2 q^3, written as the
// semilinear system for y = (q, p):
//   M = [[0, 1], [-(omega^2+k^2), 0]],  f(q,p) = (0, 2 k^2 q^3),
// with y0 = (0, omega), energy H = p^2/2 + (omega^2+k^2) q^2/2 - k^2 q^4/2,
// and closed-form solution q(t) = sn(omega t; k/omega), p = q'.
struct DuffingParams {
    double k = 0.07;
    double omega = 20.0;
};

// Averaged wind-induced oscillation system for y = (x1, x2):
//   M = [[-zeta, -lambda], [lambda, -zeta]],  f = (x1 x2, (x1^2 - x2^2)/2),
// zeta = r cos(theta), lambda = r sin(theta), y0 = (0, 1). H below is a first
// integral when theta = pi/2 and a Lyapunov function when theta < pi/2.
struct WindParams {
    double r = 20.0;
    double theta = 1.5707963267948966;   // pi/2
};

SemilinearProblem duffing(const DuffingParams& p = {});
SemilinearProblem wind_oscillation(const WindParams& p = {});

// Jacobi elliptic functions by the descending Landen (AGM) recursion.
// The second argument is the modulus k (not the parameter m = k^2); the
// argument u is first reduced modulo the real period 4K to keep the absolute
// error <= 1e-12 for |u| up to several hundred.
struct JacobiValues {
    double sn, cn, dn;
};
JacobiValues jacobi_sn_cn_dn(double u, double modulus);

}  // namespace sei
