#include "canonsys/example.hpp"

#include "canonsys/errors.hpp"
#include "canonsys/monodromy.hpp"
#include "canonsys/wpoly.hpp"

namespace canon::example {

namespace {

constexpr double kSeriesRadius = 1e-4;
constexpr int kSeriesTerms = 6;

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

}  // namespace

IndefHamiltonianA make_problem(const ExampleConfig& cfg) {
    if (!(cfg.s_plus > 1.0)) throw ConfigError("/s_plus", "s_plus must exceed 1");
    auto ih = make_indefinite(Hamiltonian::builtin("example", 0.0, 1.0),
                              Hamiltonian::builtin("example", 1.0, cfg.s_plus), 1, {cfg.d0, cfg.d1}, cfg.oe, cfg.b);
    ih.validate();
    return ih;
}

Complex sinc_x(Complex z, double x) {
    if (std::abs(z) >= kSeriesRadius) return std::sin(z * x) / z;
    Complex acc = 0.0, zp = 1.0;
    for (int k = 0; k < kSeriesTerms; ++k) {
        acc += (k % 2 ? -1.0 : 1.0) * zp * std::pow(x, 2 * k + 1) / factorial(2 * k + 1);
        zp *= z * z;
    }
    return acc;
}

Complex sinc2_x(Complex z, double x) {
    if (std::abs(z) >= kSeriesRadius) return std::sin(z * x) / (z * z) - x * std::cos(z * x) / z;
    Complex acc = 0.0, zp = z;
    for (int k = 1; k <= kSeriesTerms; ++k) {
        acc += (k % 2 ? -1.0 : 1.0) * zp * std::pow(x, 2 * k + 1) * (1.0 / factorial(2 * k + 1) - 1.0 / factorial(2 * k));
        zp *= z * z;
    }
    return acc;
}

Matrix2c closed_W(double t, Complex z) {
    if (t == 1.0) throw Error(ErrorKind::domain, "example", "closed_W has a pole at t = 1");
    const double u = t - 1.0;
    const Complex s = std::sin(z * t), c = std::cos(z * t);
    const Complex s1 = sinc_x(z, t);
    Matrix2c w;
    w << (s1 - c) / u, sinc2_x(z, t) - u * s, s / u, s1 - u * c;
    return w;
}

Matrix2c closed_Uminus(Complex z) {
    const Complex s = std::sin(z), c = std::cos(z);
    Matrix2c m;
    m << z * s - sinc_x(z, 1.0) + 2.0 * c, sinc2_x(z, 1.0), z * c - s, sinc_x(z, 1.0);
    return m;
}

Matrix2c closed_Uplus_inv(Complex z, double s_plus) {
    const double a = s_plus - 1.0;
    const Complex s = std::sin(z), c = std::cos(z);
    const Complex s1 = sinc_x(z, 1.0);
    Matrix2c m;
    m << s1, -sinc2_x(z, 1.0), -z * c - s / a, z * s + s1 / a + c - c / a;
    return m;
}

Matrix2c closed_N(Complex z) {
    const Complex a = sinc2_x(z, 1.0), q = sinc_x(z, 1.0);
    Matrix2c n;
    n << q * a, -a * a, q * q, -q * a;
    return n;
}

Vector2 closed_w1(double t, double s) { return Vector2(1.0 / (t - 1.0) - 1.0 / (s - 1.0), 0.0); }

bool ValidationReport::passed() const {
    for (const Check& c : checks)
        if (!c.pass) return false;
    return !checks.empty();
}

ValidationReport run_validation(const ExampleConfig& cfg, const std::vector<Complex>& z_grid,
                                const std::vector<double>& t_grid, const Tolerances& tol) {
    const IndefHamiltonianA ih = make_problem(cfg);
    const MonodromyPipeline pipe(ih, tol);
    const ExampleConfig ref = ExampleConfig::defaults(cfg.s_plus);
    const Polynomial dp = build_p(ih) - build_p(make_problem(ref));

    double err_w = 0.0, err_um = 0.0, err_det = 0.0, err_upinv = 0.0, err_n = 0.0, err_zero = 0.0;
    VSpec closed_v{VChoice::custom, [&](Complex z) { return closed_W(cfg.s_plus, z); }};
    for (const Complex& z : z_grid) {
        const MonodromyFactorisation f = pipe.factorise(z, {}, t_grid);
        for (double t : t_grid) {
            Matrix2c expected = closed_W(t, z);
            if (t > 1.0) expected += dp(z) * closed_N(z) * expected;
            err_w = std::max(err_w, max_abs(f.w(t) - expected));
        }
        err_um = std::max(err_um, max_abs(f.u_minus - closed_Uminus(z)));
        err_det = std::max(err_det, std::abs(f.u_minus.determinant() - 1.0));
        const Matrix2c up = pipe.u_plus(pipe.v(z, closed_v));
        const Matrix2c upinv = closed_Uplus_inv(z, cfg.s_plus);
        err_upinv = std::max(err_upinv, max_abs(up.inverse() - upinv) / std::max(1.0, max_abs(upinv)));
        err_n = std::max(err_n, max_abs(pipe.m_matrix(f.w_minus) - closed_N(z)));
    }
    {
        const MonodromyFactorisation f = pipe.factorise(0.0, {}, t_grid);
        for (double t : t_grid) err_zero = std::max(err_zero, max_abs(f.w(t) - Matrix2c::Identity()));
    }
    double err_w1 = 0.0;
    for (Side side : {Side::minus, Side::plus}) {
        const Hamiltonian& h = ih.side(side);
        const WFunction w1 = w_n_diagonal(h, side, 1, tol);
        const double s_end = side == Side::minus ? ih.s_minus() : ih.s_plus();
        for (int k = 1; k < 100; ++k) {
            const double t = h.lo() + h.length() * k / 100.0;
            err_w1 = std::max(err_w1, (w1(t) - closed_w1(t, s_end)).cwiseAbs().maxCoeff() /
                                          std::max(1.0, std::abs(closed_w1(t, s_end)(0))));
        }
    }

    ValidationReport rep;
    auto add = [&](const char* name, double err, double thr) { rep.checks.push_back({name, err, thr, err <= thr}); };
    add("W_h vs closed W", err_w, tol.tol_pipeline);
    add("U- vs closed U-", err_um, tol.tol_pipeline);
    add("det U- - 1", err_det, tol.tol_det);
    add("(U+)^-1 vs closed, V = closed W (relative)", err_upinv, tol.tol_pipeline);
    add("M vs closed N", err_n, tol.tol_det);
    add("w_1 vs closed w_1 (relative)", err_w1, tol.tol_det);
    add("z = 0 gives identity", err_zero, 1e-12);
    return rep;
}

}  // namespace canon::example
