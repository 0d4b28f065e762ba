// Closed forms used as test oracles, written out independently of the
// library's own example module.
#ifndef CANONSYS_TESTS_ORACLES_HPP
#define CANONSYS_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "canonsys/core.hpp"
#include "canonsys/hamiltonian.hpp"

namespace oracle {

using canon::Complex;
using canon::Matrix2c;

/// W(t, z) of H = diag((t-1)^2, (t-1)^-2) with W(0, z) = I, for t != 1.
inline Matrix2c example_W(double t, Complex z) {
    const double u = t - 1.0;
    const Complex s = std::sin(z * t), c = std::cos(z * t);
    Matrix2c w;
    if (z == 0.0) return Matrix2c::Identity();
    const Complex sz = s / z;
    w(0, 0) = (sz - c) / u;
    w(0, 1) = s / (z * z) - t * c / z - u * s;
    w(1, 0) = s / u;
    w(1, 1) = sz - u * c;
    return w;
}

inline Matrix2c example_Uminus(Complex z) {
    const Complex s = std::sin(z), c = std::cos(z);
    Matrix2c m;
    m(0, 0) = z * s - s / z + 2.0 * c;
    m(0, 1) = s / (z * z) - c / z;
    m(1, 0) = z * c - s;
    m(1, 1) = s / z;
    return m;
}

inline Matrix2c example_N(Complex z) {
    const Complex q = std::sin(z) / z, a = std::sin(z) / (z * z) - std::cos(z) / z;
    Matrix2c n;
    n << q * a, -a * a, q * q, -q * a;
    return n;
}

/// (U+)^-1 for s_plus = 2 and V = W.
inline Matrix2c example_Uplus_inv(Complex z) {
    const Complex s = std::sin(z), c = std::cos(z);
    Matrix2c m;
    m(0, 0) = s / z;
    m(0, 1) = -(s / (z * z) - c / z);
    m(1, 0) = -z * c - s;
    m(1, 1) = z * s + s / z;
    return m;
}

/// H = I: W(t, z) = [[cos zt, sin zt], [-sin zt, cos zt]] from W(0) = I.
inline Matrix2c identity_W(double t, Complex z) {
    Matrix2c w;
    w << std::cos(z * t), std::sin(z * t), -std::sin(z * t), std::cos(z * t);
    return w;
}

/// Relative-or-absolute entrywise error.
inline double rel_err(const Matrix2c& a, const Matrix2c& b) {
    return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

/// 20 non-real points with |Re| <= 3 and 0.3 <= |Im| <= 2.8.
inline std::vector<Complex> grid20() {
    std::vector<Complex> z;
    for (int k = 0; k < 20; ++k) {
        const double re = -3.0 + 6.0 * k / 19.0;
        const double im = 0.3 + 2.5 * ((7 * k) % 20) / 19.0;
        z.emplace_back(re, k % 2 ? -im : im);
    }
    return z;
}

/// Piecewise-constant PSD Hamiltonian on (lo, hi) with `pieces` random pieces.
inline canon::Hamiltonian random_piecewise(double lo, double hi, int pieces, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    canon::PiecewiseSpec spec;
    for (int k = 0; k < pieces; ++k) {
        Eigen::Matrix2d a;
        a << u(gen), u(gen), u(gen), u(gen);
        const Eigen::Matrix2d m = a * a.transpose() + 0.05 * Eigen::Matrix2d::Identity();
        canon::Piece p;
        p.from = lo + (hi - lo) * k / pieces;
        p.to = lo + (hi - lo) * (k + 1) / pieces;
        p.h1 = {{m(0, 0), 0.0, 0.0}};
        p.h2 = {{m(1, 1), 0.0, 0.0}};
        p.h3 = {{m(0, 1), 0.0, 0.0}};
        spec.pieces.push_back(p);
    }
    return canon::Hamiltonian(lo, hi, spec);
}

}  // namespace oracle

#endif  // CANONSYS_TESTS_ORACLES_HPP
