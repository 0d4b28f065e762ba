#ifndef CANONSYS_WPOLY_HPP
#define CANONSYS_WPOLY_HPP

#include <functional>
#include <memory>
#include <vector>

#include "canonsys/hamiltonian.hpp"
#include "canonsys/options.hpp"
#include "canonsys/quadrature.hpp"

namespace canon {

/// Regular and singular endpoints of one side. On the minus side the
/// singularity is the upper end, on the plus side the lower end.
struct SideGeometry {
    double regular;
    double singular;

    static SideGeometry of(const Hamiltonian& h, Side side) {
        return side == Side::minus ? SideGeometry{h.lo(), h.hi()} : SideGeometry{h.hi(), h.lo()};
    }
    double length() const { return std::abs(singular - regular); }
    double direction() const { return singular > regular ? 1.0 : -1.0; }
};

std::shared_ptr<const PanelGrid> side_grid(const Hamiltonian& h, Side side, const Tolerances& tol = {});

/// w_n on one side, real valued, with w_n(regular) = (0, omega_n).
struct WFunction {
    Side side = Side::minus;
    int index = 0;
    double omega = 0.0;
    PanelFunction<Vector2> values;  // empty for index -1

    Vector2 operator()(double t) const { return values.empty() ? Vector2::Zero() : values(t); }
};

/// Oriented integral of J H f from the regular end of `side` to t.
Vector2c volterra(const Hamiltonian& h, const std::function<Vector2c(double)>& f, double t, Side side,
                  const Tolerances& tol = {});

/// w_0 .. w_{n_max} from the explicit recursion for diagonal H.
std::vector<WFunction> w_diagonal_family(const Hamiltonian& h, Side side, int n_max, const Tolerances& tol = {});
WFunction w_n_diagonal(const Hamiltonian& h, Side side, int n, const Tolerances& tol = {});

/// w_0 .. w_{n_max} by iterated Volterra integration with given omega_0..omega_{n_max}.
std::vector<WFunction> w_general_family(const Hamiltonian& h, Side side, int n_max,
                                        const std::vector<double>& omegas, const Tolerances& tol = {});
WFunction w_n_general(const Hamiltonian& h, Side side, int n, const std::vector<double>& omegas,
                      const Tolerances& tol = {});

/// The functions the boundary values need: w_0..w_{2 delta - 1}, plus
/// w_{2 delta} when H is not diagonal (then omegas must be supplied).
std::vector<WFunction> w_family(const Hamiltonian& h, Side side, int delta, const std::vector<double>& omegas,
                                const Tolerances& tol = {});

struct DeltaReport {
    bool w_delta_in_L2 = false;
    bool w_deltaminus1_in_L2 = false;
    bool consistent = false;
    std::vector<double> tail_norms;  // integral of w_n* H w_n, n = 0..delta
    std::vector<bool> in_L2;
};

DeltaReport delta_diagnostic(const Hamiltonian& h, Side side, int delta, const std::vector<double>& omegas = {},
                             const Tolerances& tol = {});

struct RhoSequence {
    Side side = Side::minus;
    std::vector<double> values;  // rho_0 .. rho_N
};

/// Coefficients of the L2 corrections of I^n (1, 0) for diagonal H.
RhoSequence rho_sequence(const Hamiltonian& h, Side side, int n, const Tolerances& tol = {});

}  // namespace canon

#endif  // CANONSYS_WPOLY_HPP
