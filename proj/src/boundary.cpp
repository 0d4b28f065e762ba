#include "canonsys/boundary.hpp"

#include <memory>
#include <sstream>

#include "canonsys/diagnostics.hpp"
#include "canonsys/errors.hpp"

namespace canon {

std::vector<double> limit_nodes(const IndefHamiltonianA& ih, Side side, const Tolerances& tol) {
    const Hamiltonian& h = ih.side(side);
    const double len = h.length();
    const double dir = side == Side::minus ? -1.0 : 1.0;  // from sigma into the side
    std::vector<double> nodes;
    for (int k = 0; k <= tol.levels; ++k) {
        const double d = tol.eps0 * len * std::ldexp(1.0, -k);
        if (d < tol.eps_cut * len) break;
        nodes.push_back(ih.sigma() + dir * d);
    }
    return nodes;
}

LimitEstimate<Complex> limit_at_sigma(const std::vector<double>& nodes, double sigma,
                                      const std::vector<Complex>& samples, const Tolerances& tol,
                                      const char* what) {
    std::vector<double> dist;
    for (double x : nodes) dist.push_back(std::abs(x - sigma));
    LimitEstimate<Complex> est = extrapolate_to_zero(dist, samples, tol.max_order);
    bool all_zero = true;
    for (const Complex& s : samples) all_zero = all_zero && s == Complex(0.0);
    if (all_zero) {
        est.value = 0.0;
        est.error = 0.0;
    }
    if (!(est.error <= tol.tol_limit * std::max(1.0, std::abs(est.value)))) {
        std::ostringstream os;
        os << what << ": limit at sigma not resolved, error estimate " << est.error;
        throw LimitError("boundary", os.str(), samples, est.error);
    }
    return est;
}

SideBoundary::SideBoundary(const IndefHamiltonianA& ih, Side side, const Tolerances& tol)
    : side_(side),
      h_(ih.side(side)),
      delta_(ih.delta),
      sigma_(ih.sigma()),
      regular_(side == Side::minus ? ih.s_minus() : ih.s_plus()),
      tol_(tol),
      nodes_(limit_nodes(ih, side, tol)) {
    const IndivisibleReport rep = indivisible_type(h_, h_.lo(), h_.hi(), tol.tol_indiv);
    indivisible_ = rep.is_indivisible && std::abs(std::cos(rep.phi)) <= tol.tol_indiv;
    if (!indivisible_) w_ = w_family(h_, side, delta_, ih.omegas(side), tol);
}

SolveOptions SideBoundary::solve_options() const {
    SolveOptions o = SolveOptions::from(tol_, true);
    o.stops = nodes_;
    return o;
}

double SideBoundary::anchor() const {
    const auto [lo, hi] = integration_range(h_, solve_options());
    return side_ == Side::minus ? lo : hi;
}

Complex gamma_s_expression(const std::vector<WFunction>& w_funcs, int delta, const Vector2c& f, double x, Complex z,
                           Complex gamma_r) {
    const int d = delta;
    const int available = static_cast<int>(w_funcs.size()) - 1;
    std::vector<Vector2> w(static_cast<std::size_t>(2 * d + 1), Vector2::Zero());
    for (int n = 0; n <= std::min(available, 2 * d); ++n) w[n] = w_funcs[n](x);
    auto wjv = [](const Vector2& a, const Vector2c& v) { return a(1) * v(0) - a(0) * v(1); };  // a^T J v
    Complex acc = 0.0;
    Complex zn = 1.0;
    for (int n = 0; n <= d; ++n) {
        Vector2c corr = Vector2c::Zero();
        Complex zj = std::pow(z, d + 1);
        for (int j = d + 1; j <= 2 * d - n; ++j) {
            corr += zj * w[j].cast<Complex>();
            zj *= z;
        }
        acc += zn * wjv(w[n], f - gamma_r * corr);
        zn *= z;
    }
    return acc;
}

std::vector<Complex> SideBoundary::gamma_s_samples(const SolutionSampler& f, Complex gr) const {
    const Complex z = f.z;
    const int d = delta_;
    const double dir = side_ == Side::minus ? 1.0 : -1.0;  // toward sigma
    const double start = (regular_ >= f.lo && regular_ <= f.hi) ? regular_ : (dir > 0 ? f.lo : f.hi);
    const WFunction& wd = w_[d];

    // Cut points between start and the deepest node: dense-output knots,
    // quadrature panels of w_delta, breakpoints of H.
    const double end = nodes_.back();
    std::vector<double> cuts;
    auto between = [&](double t) { return (t - start) * dir > 0.0 && (end - t) * dir > 0.0; };
    for (double t : f.knots)
        if (between(t)) cuts.push_back(t);
    for (const Panel& p : wd.values.grid().panels())
        if (between(p.start)) cuts.push_back(p.start);
    for (double t : h_.breakpoints())
        if (between(t)) cuts.push_back(t);
    for (double t : nodes_) cuts.push_back(t);
    cuts.push_back(start);
    std::sort(cuts.begin(), cuts.end(), [dir](double a, double b) { return (a - b) * dir < 0.0; });
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto integrand = [&](double t) -> Complex {
        const Entries e = h_.entries_unchecked(t);
        const Vector2 w = wd(t);
        const Vector2c y = f(t);
        return w(0) * (e.h1 * y(0) + e.h3 * y(1)) + w(1) * (e.h3 * y(0) + e.h2 * y(1));
    };

    const Vector2c f0 = f(start);
    Complex s0 = 0.0, zn = 1.0;
    for (int n = 0; n <= d; ++n) {
        const Vector2 w = w_[n](start);
        s0 += zn * (w(1) * f0(0) - w(0) * f0(1));
        zn *= z;
    }
    const Complex zd1 = std::pow(z, d + 1);

    std::vector<Complex> out;
    Complex integral = 0.0;
    std::size_t next = 0;
    for (std::size_t i = 0; i + 1 < cuts.size() && next < nodes_.size(); ++i) {
        if (zd1 != 0.0) {
            // Accuracy is needed relative to the sample, not to this piece.
            const double scale = std::max(std::abs(s0), std::abs(zd1 * integral)) / std::abs(zd1);
            const double abs_tol = std::max(tol_.quad_rel_tol * scale / cuts.size(), 1e-300);
            integral += integrate<Complex>(integrand, cuts[i], cuts[i + 1], abs_tol, tol_.quad_rel_tol).value;
        }
        if (cuts[i + 1] == nodes_[next]) {
            // The gamma_r correction involves only w_n, evaluated directly.
            const double x = nodes_[next];
            const Complex corr = gamma_s_expression(w_, d, Vector2c::Zero(), x, z, gr);
            out.push_back(s0 - zd1 * integral + corr);
            ++next;
        }
    }
    return out;
}

LimitEstimate<Complex> SideBoundary::gamma_r(const SolutionSampler& f) const {
    if (indivisible_) return {f(regular_)(1), 0.0, 0, 0};
    std::vector<Complex> s;
    for (double x : nodes_) s.push_back(f(x)(1));
    return limit_at_sigma(nodes_, sigma_, s, tol_, "gamma_r");
}

LimitEstimate<Complex> SideBoundary::gamma_s(const SolutionSampler& f, Complex gr) const {
    if (indivisible_) return {f(regular_)(0), 0.0, 0, 0};
    return limit_at_sigma(nodes_, sigma_, gamma_s_samples(f, gr), tol_, "gamma_s");
}

RegularisedBoundary SideBoundary::gamma(const SolutionSampler& f) const {
    RegularisedBoundary rb;
    rb.side = side_;
    rb.z = f.z;
    if (indivisible_) {
        const Vector2c c = f(regular_);
        rb.gamma_s = c(0);
        rb.gamma_r = c(1);
        return rb;
    }
    const auto r = gamma_r(f);
    for (double x : nodes_) rb.samples_r.push_back(f(x)(1));
    rb.samples_s = gamma_s_samples(f, r.value);
    const auto s = limit_at_sigma(nodes_, sigma_, rb.samples_s, tol_, "gamma_s");
    rb.gamma_r = r.value;
    rb.gamma_s = s.value;
    rb.err_est = std::max(r.error, s.error);
    return rb;
}

LimitEstimate<Complex> gamma_r(const SolutionSampler& fhat, const IndefHamiltonianA& ih, Side side,
                               const Tolerances& tol) {
    return SideBoundary(ih, side, tol).gamma_r(fhat);
}

LimitEstimate<Complex> gamma_s(const SolutionSampler& fhat, const IndefHamiltonianA& ih, Side side,
                               const std::vector<WFunction>& w_funcs, const Tolerances& tol) {
    const Hamiltonian& h = ih.side(side);
    const int need = h.is_diagonal() ? 2 * ih.delta - 1 : 2 * ih.delta;
    if (static_cast<int>(w_funcs.size()) < need + 1)
        throw ConfigError("/w_funcs", "gamma_s needs w_0..w_" + std::to_string(need));
    SideBoundary sb(ih, side, tol);
    const auto r = sb.gamma_r(fhat);
    if (sb.indivisible()) return sb.gamma_s(fhat, r.value);
    std::vector<Complex> s;
    const auto& nodes = sb.nodes();
    for (double x : nodes) s.push_back(gamma_s_expression(w_funcs, ih.delta, fhat(x), x, fhat.z, r.value));
    return limit_at_sigma(nodes, ih.sigma(), s, tol, "gamma_s");
}

RegularisedBoundary gamma_vec(const SolutionSampler& fhat, const IndefHamiltonianA& ih, Side side,
                              const Tolerances& tol) {
    return SideBoundary(ih, side, tol).gamma(fhat);
}

SolutionSampler solve_from_gamma(const SideBoundary& sb, Complex z, const Vector2c& c) {
    const double t0 = sb.anchor();
    const SolveOptions opt = sb.solve_options();
    const Hamiltonian& h = sb.hamiltonian();
    const SolutionSampler e1 = solve_row(h, z, t0, Vector2c(1.0, 0.0), opt);
    const SolutionSampler e2 = solve_row(h, z, t0, Vector2c(0.0, 1.0), opt);
    Matrix2c g;
    g.col(0) = sb.gamma(e1).vec();
    g.col(1) = sb.gamma(e2).vec();
    const Eigen::JacobiSVD<Matrix2c> svd(g);
    const double smin = svd.singularValues()(1);
    if (!(smin > 0.0) || svd.singularValues()(0) / smin > sb.tolerances().max_condition)
        throw ConditioningError("boundary", "boundary-value matrix of the basis solutions is singular", g);
    const Vector2c a = g.partialPivLu().solve(c);
    SolutionSampler out = e1;
    out.y0 = a(0) * e1.y0 + a(1) * e2.y0;
    auto f1 = e1.eval, f2 = e2.eval;
    out.eval = [f1, f2, a](double t) -> Vector2c { return a(0) * f1(t) + a(1) * f2(t); };
    out.knots.insert(out.knots.end(), e2.knots.begin(), e2.knots.end());
    std::sort(out.knots.begin(), out.knots.end());
    out.knots.erase(std::unique(out.knots.begin(), out.knots.end()), out.knots.end());
    return out;
}

SolutionSampler solve_from_gamma(const IndefHamiltonianA& ih, Side side, Complex z, const Vector2c& c,
                                 const Tolerances& tol) {
    return solve_from_gamma(SideBoundary(ih, side, tol), z, c);
}

Vector2c interface_residual(const IndefHamiltonianA& ih, const SolutionSampler& fhat_minus,
                            const SolutionSampler& fhat_plus, Complex z, const Tolerances& tol) {
    const Vector2c gm = SideBoundary(ih, Side::minus, tol).gamma(fhat_minus).vec();
    const Vector2c gp = SideBoundary(ih, Side::plus, tol).gamma(fhat_plus).vec();
    return gp - build_R(ih, z) * gm;
}

}  // namespace canon
