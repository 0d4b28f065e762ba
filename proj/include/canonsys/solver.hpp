#ifndef CANONSYS_SOLVER_HPP
#define CANONSYS_SOLVER_HPP

#include <functional>
#include <optional>
#include <vector>

#include "canonsys/hamiltonian.hpp"
#include "canonsys/options.hpp"

namespace canon {

/// A solution t -> y(t) of y' = zJHy at fixed z.
struct SolutionSampler {
    Complex z;
    double lo = 0.0, hi = 0.0;  // where eval is defined
    double t0 = 0.0;
    Vector2c y0 = Vector2c::Zero();
    std::function<Vector2c(double)> eval;
    double tol = 0.0;             // integrator rtol, 0 for closed forms
    std::vector<double> knots;    // step boundaries of the dense output

    Vector2c operator()(double t) const { return eval(t); }
};

/// W(t) with rows solving the transposed system W' J = z W H.
struct MatrixSolution {
    Complex z;
    double lo = 0.0, hi = 0.0;
    double t0 = 0.0;
    Matrix2c init = Matrix2c::Identity();
    std::function<Matrix2c(double)> eval;
    double tol = 0.0;
    std::vector<double> knots;

    Matrix2c operator()(double t) const { return eval(t); }
    Complex det(double t) const { return eval(t).determinant(); }
    /// Transposed i-th row as a SolutionSampler.
    SolutionSampler row(int i) const;
};

struct SolveOptions {
    double rtol = 1e-10;
    double atol = 1e-10;
    int max_rejections = 64;
    double eps_cut = 1e-6;        // relative to the interval length
    std::vector<double> stops;    // points hit exactly by step boundaries
    std::optional<double> until_lo, until_hi;  // override the integration range

    static SolveOptions from(const Tolerances& tol, bool pipeline = false);
};

/// Integration range: a limit-circle end with finite entries is reached, any
/// other end stops eps_cut * length short of it.
std::pair<double, double> integration_range(const Hamiltonian& h, const SolveOptions& opt);

SolutionSampler solve_row(const Hamiltonian& h, Complex z, double t0, const Vector2c& y0,
                          const SolveOptions& opt = {});

MatrixSolution fundamental(const Hamiltonian& h, Complex z, const std::vector<double>& t_grid,
                           const Matrix2c& init, double t0, const SolveOptions& opt = {});

/// (z - conj(w)) * int_{x1}^{x2} u* H f  minus  (u(x1)* J f(x1) - u(x2)* J f(x2)),
/// with u solving at w = u.z and f at z = f.z.
Complex greens_residual(const Hamiltonian& h, const SolutionSampler& u, const SolutionSampler& f, double x1,
                        double x2);

}  // namespace canon

#endif  // CANONSYS_SOLVER_HPP
