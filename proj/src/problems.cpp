#include "sei/problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sei {

JacobiValues jacobi_sn_cn_dn(double u, double modulus) {
    if (!(modulus >= 0.0 && modulus < 1.0))
        throw std::invalid_argument("jacobi_sn_cn_dn: modulus must lie in [0,1)");
    if (!std::isfinite(u)) throw std::invalid_argument("jacobi_sn_cn_dn: non-finite argument");
    if (modulus == 0.0) return {std::sin(u), std::cos(u), 1.0};

    // arithmetic-geometric mean, a_n -> b_n, c_n -> 0
    double a[61], c[61];
    a[0] = 1.0;
    c[0] = modulus;
    double b = std::sqrt((1.0 - modulus) * (1.0 + modulus));
    int n = 0;
    while (std::fabs(a[n] - b) > 1e-15 * a[n] && n < 60) {
        const double an = 0.5 * (a[n] + b);
        const double bn = std::sqrt(a[n] * b);
        c[n + 1] = 0.5 * (a[n] - b);
        a[n + 1] = an;
        b = bn;
        ++n;
    }

    // reduce modulo the real period 4K, K = pi/(2 AGM(1, k')); the phase
    // 2^n a_n u otherwise grows with |u| and costs absolute accuracy
    const double period = 2.0 * 3.14159265358979323846 / a[n];
    const double ur = u - std::floor(u / period) * period;

    // descending Landen: phi_{m-1} = (phi_m + asin(c_m/a_m sin phi_m)) / 2
    double phi = std::ldexp(a[n] * ur, n);
    double phi1 = phi;   // value of phi at level 1, needed for dn
    for (int m = n; m >= 1; --m) {
        const double sarg = std::clamp(c[m] / a[m] * std::sin(phi), -1.0, 1.0);
        phi1 = phi;
        phi = 0.5 * (phi + std::asin(sarg));
    }
    const double sn = std::sin(phi);
    const double cn = std::cos(phi);
    double dn;
    if (n >= 1)
        dn = cn / std::cos(phi1 - phi);
    else   // modulus small enough that the AGM converged immediately
        dn = std::sqrt(1.0 - modulus * modulus * sn * sn);
    return {sn, cn, dn};
}

SemilinearProblem duffing(const DuffingParams& p) {
    if (!(p.k >= 0.0) || !(p.k < p.omega))
        throw std::invalid_argument("duffing: parameters must satisfy 0 <= k < omega");

    const double k2 = p.k * p.k;
    const double w2 = p.omega * p.omega + k2;   // frequency^2 of the linear part
    const double omega = p.omega;
    const double modulus = p.k / p.omega;

    SemilinearProblem prob;
    prob.d = 2;
    prob.M = SquareMatrix(2, {0.0, 1.0, -w2, 0.0});
    prob.f = [k2](const State& y, State& out) {
        out[0] = 0.0;
        out[1] = 2.0 * k2 * y[0] * y[0] * y[0];
    };
    prob.invariant_H = [k2, w2](const State& y) {
        const double q = y[0], pp = y[1];
        return 0.5 * pp * pp + 0.5 * w2 * q * q - 0.5 * k2 * q * q * q * q;
    };
    prob.exact = [omega, modulus](double t) {
        const JacobiValues v = jacobi_sn_cn_dn(omega * t, modulus);
        return State{v.sn, omega * v.cn * v.dn};
    };
    prob.J = SquareMatrix(2, {0.0, 1.0, -1.0, 0.0});
    prob.label = "duffing";
    prob.y0 = {0.0, omega};
    return prob;
}

SemilinearProblem wind_oscillation(const WindParams& p) {
    const double half_pi = 1.5707963267948966;
    if (!(p.r >= 0.0)) throw std::invalid_argument("wind_oscillation: r must be nonnegative");
    if (!(p.theta >= 0.0 && p.theta <= half_pi))
        throw std::invalid_argument("wind_oscillation: theta must lie in [0, pi/2]");

    const double zeta = p.r * std::cos(p.theta);
    const double lambda = p.r * std::sin(p.theta);
    const double r = p.r, st = std::sin(p.theta), ct = std::cos(p.theta);

    SemilinearProblem prob;
    prob.d = 2;
    prob.M = SquareMatrix(2, {-zeta, -lambda, lambda, -zeta});
    prob.f = [](const State& y, State& out) {
        out[0] = y[0] * y[1];
        out[1] = 0.5 * (y[0] * y[0] - y[1] * y[1]);
    };
    prob.invariant_H = [r, st, ct](const State& y) {
        const double x1 = y[0], x2 = y[1];
        return 0.5 * r * (x1 * x1 + x2 * x2) -
               0.5 * st * (x1 * x2 * x2 - x1 * x1 * x1 / 3.0) +
               0.5 * ct * (-x1 * x1 * x2 + x2 * x2 * x2 / 3.0);
    };
    prob.label = "wind";
    prob.y0 = {0.0, 1.0};
    return prob;
}

}  // namespace sei
