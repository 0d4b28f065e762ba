#ifndef CANONSYS_OPTIONS_HPP
#define CANONSYS_OPTIONS_HPP

namespace canon {

/// Numerical knobs shared by the pipeline. Defaults are the library's
/// documented tolerances; every field can be overridden from a run config.
struct Tolerances {
    // Embedded Runge-Kutta 5(4) error control.
    double rtol = 1e-10;
    double atol = 1e-10;
    // Integrations that feed boundary values at the singularity run tighter,
    // because the pre-limit expressions cancel a 1/(sigma - x) growth.
    double pipeline_rtol = 1e-13;
    double pipeline_atol = 1e-13;
    int max_rejections = 64;

    // Distance (relative to the side length) at which integration toward a
    // limit-point endpoint stops.
    double eps_cut = 1e-6;

    // Richardson nodes x_k = sigma -/+ eps0 * L * 2^-k, k = 0..levels.
    double eps0 = 0.1;
    int levels = 20;
    int max_order = 10;
    double tol_limit = 1e-6;

    double tol_psd = 1e-10;
    double tol_indiv = 1e-8;
    double tol_tail = 1e-8;
    double tol_det = 1e-8;
    double tol_shoot = 1e-7;
    double tol_pipeline = 1e-6;
    double tol_eig = 1e-8;
    double max_condition = 1e12;

    // Quadrature panels: Chebyshev nodes per panel and number of geometric
    // refinements toward the singular endpoint.
    int panel_nodes = 24;
    int geometric_levels = 44;
    double quad_rel_tol = 1e-13;
};

}  // namespace canon

#endif  // CANONSYS_OPTIONS_HPP
