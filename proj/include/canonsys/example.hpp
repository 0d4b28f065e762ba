#ifndef CANONSYS_EXAMPLE_HPP
#define CANONSYS_EXAMPLE_HPP

#include <string>
#include <vector>

#include "canonsys/indefinite.hpp"
#include "canonsys/options.hpp"

namespace canon::example {

/// H = diag((t-1)^2, (t-1)^-2) on (0, 1) and (1, s_plus) with delta = 1.
struct ExampleConfig {
    double s_plus = 2.0;
    double d0 = -2.0;  // -s_plus / (s_plus - 1) reproduces the closed form
    double d1 = 0.0;
    int oe = 0;
    std::vector<double> b;

    static ExampleConfig defaults(double s_plus = 2.0) {
        ExampleConfig c;
        c.s_plus = s_plus;
        c.d0 = -s_plus / (s_plus - 1.0);
        return c;
    }
};

IndefHamiltonianA make_problem(const ExampleConfig& cfg = {});

/// sin(zx)/z and sin(zx)/z^2 - x cos(zx)/z, with series for small |z|.
Complex sinc_x(Complex z, double x);
Complex sinc2_x(Complex z, double x);

/// Closed-form fundamental solution; throws a domain error at t = 1.
Matrix2c closed_W(double t, Complex z);
Matrix2c closed_Uminus(Complex z);
Matrix2c closed_Uplus_inv(Complex z, double s_plus = 2.0);
Matrix2c closed_N(Complex z);
/// w_1 on the side ending at s (0 for minus, s_plus for plus).
Vector2 closed_w1(double t, double s);

struct Check {
    std::string artifact;
    double max_abs_err = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct ValidationReport {
    std::vector<Check> checks;
    bool passed() const;
};

/// Runs the numerical pipeline on the example and diffs every artifact
/// against its closed form.
ValidationReport run_validation(const ExampleConfig& cfg, const std::vector<Complex>& z_grid,
                                const std::vector<double>& t_grid, const Tolerances& tol = {});

}  // namespace canon::example

#endif  // CANONSYS_EXAMPLE_HPP
