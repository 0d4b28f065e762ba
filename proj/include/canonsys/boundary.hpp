#ifndef CANONSYS_BOUNDARY_HPP
#define CANONSYS_BOUNDARY_HPP

#include <vector>

#include "canonsys/indefinite.hpp"
#include "canonsys/options.hpp"
#include "canonsys/richardson.hpp"
#include "canonsys/solver.hpp"
#include "canonsys/wpoly.hpp"

namespace canon {

/// Boundary values of one solution at the singularity.
struct RegularisedBoundary {
    Side side = Side::minus;
    Complex z;
    Complex gamma_s;
    Complex gamma_r;
    double err_est = 0.0;
    std::vector<Complex> samples_s;  // pre-limit values at the limit nodes
    std::vector<Complex> samples_r;

    Vector2c vec() const { return Vector2c(gamma_s, gamma_r); }
};

/// Limit nodes x_k = sigma -/+ eps0 L 2^-k, k = 0..levels, keeping only
/// those at distance >= eps_cut L from sigma.
std::vector<double> limit_nodes(const IndefHamiltonianA& ih, Side side, const Tolerances& tol = {});

/// Extrapolates samples taken at `nodes` to sigma. Throws LimitError when the
/// error estimate exceeds tol_limit * max(1, |value|).
LimitEstimate<Complex> limit_at_sigma(const std::vector<double>& nodes, double sigma,
                                      const std::vector<Complex>& samples, const Tolerances& tol,
                                      const char* what);

/// Pre-limit Gamma_s expression at x: sum over n <= delta of z^n w_n(x)^T J
/// (f - gamma_r sum_{j=delta+1}^{2 delta-n} z^j w_j(x)). Missing w_j count as 0.
Complex gamma_s_expression(const std::vector<WFunction>& w_funcs, int delta, const Vector2c& f, double x, Complex z,
                           Complex gamma_r);

/// Everything needed to take boundary values on one side, built once.
class SideBoundary {
public:
    SideBoundary(const IndefHamiltonianA& ih, Side side, const Tolerances& tol = {});

    Side side() const noexcept { return side_; }
    const Hamiltonian& hamiltonian() const noexcept { return h_; }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<WFunction>& w() const noexcept { return w_; }
    int delta() const noexcept { return delta_; }
    double sigma() const noexcept { return sigma_; }
    /// Indivisible with Ran H = span{(0, 1)}: boundary values are endpoint values.
    bool indivisible() const noexcept { return indivisible_; }
    const Tolerances& tolerances() const noexcept { return tol_; }

    /// Options for integrations feeding this side: pipeline tolerances, limit nodes as stops.
    SolveOptions solve_options() const;
    /// The side's regular end, or the nearest reachable point to it.
    double anchor() const;

    RegularisedBoundary gamma(const SolutionSampler& f) const;
    LimitEstimate<Complex> gamma_r(const SolutionSampler& f) const;
    LimitEstimate<Complex> gamma_s(const SolutionSampler& f, Complex gamma_r) const;

    /// Pre-limit Gamma_s values at the limit nodes. The f-dependent part is
    /// evaluated as sum z^n w_n^T J f at the start point minus
    /// z^{delta+1} int w_delta^T H f, which equals it identically along
    /// solutions and avoids cancelling the growth of f_1.
    std::vector<Complex> gamma_s_samples(const SolutionSampler& f, Complex gamma_r) const;

private:
    Side side_;
    Hamiltonian h_;
    int delta_;
    double sigma_;
    double regular_;
    Tolerances tol_;
    std::vector<double> nodes_;
    std::vector<WFunction> w_;
    bool indivisible_ = false;
};

LimitEstimate<Complex> gamma_r(const SolutionSampler& fhat, const IndefHamiltonianA& ih, Side side,
                               const Tolerances& tol = {});
/// w_funcs must hold w_0..w_{2 delta - 1} (and w_{2 delta} for non-diagonal H).
LimitEstimate<Complex> gamma_s(const SolutionSampler& fhat, const IndefHamiltonianA& ih, Side side,
                               const std::vector<WFunction>& w_funcs, const Tolerances& tol = {});
RegularisedBoundary gamma_vec(const SolutionSampler& fhat, const IndefHamiltonianA& ih, Side side,
                              const Tolerances& tol = {});

/// The solution on `side` with Gamma(z) f = c.
SolutionSampler solve_from_gamma(const SideBoundary& sb, Complex z, const Vector2c& c);
SolutionSampler solve_from_gamma(const IndefHamiltonianA& ih, Side side, Complex z, const Vector2c& c,
                                 const Tolerances& tol = {});

/// Gamma+(z) f+ - R(z) Gamma-(z) f-.
Vector2c interface_residual(const IndefHamiltonianA& ih, const SolutionSampler& fhat_minus,
                            const SolutionSampler& fhat_plus, Complex z, const Tolerances& tol = {});

}  // namespace canon

#endif  // CANONSYS_BOUNDARY_HPP
