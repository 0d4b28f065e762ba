#include "canonsys/solver.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

#include "canonsys/errors.hpp"
#include "canonsys/ode.hpp"
#include "canonsys/quadrature.hpp"

namespace canon {

SolveOptions SolveOptions::from(const Tolerances& tol, bool pipeline) {
    SolveOptions o;
    o.rtol = pipeline ? tol.pipeline_rtol : tol.rtol;
    o.atol = pipeline ? tol.pipeline_atol : tol.atol;
    o.max_rejections = tol.max_rejections;
    o.eps_cut = tol.eps_cut;
    return o;
}

std::pair<double, double> integration_range(const Hamiltonian& h, const SolveOptions& opt) {
    const double cut = opt.eps_cut * h.length();
    auto reachable = [&](Endpoint e, double t) {
        return h.endpoint_kind(e) == EndpointKind::limit_circle && h.entries_unchecked(t).finite();
    };
    double lo = reachable(Endpoint::lower, h.lo()) ? h.lo() : h.lo() + cut;
    double hi = reachable(Endpoint::upper, h.hi()) ? h.hi() : h.hi() - cut;
    if (opt.until_lo) lo = std::max(lo, *opt.until_lo);
    if (opt.until_hi) hi = std::min(hi, *opt.until_hi);
    return {lo, hi};
}

namespace {

template <typename State, typename Rhs>
std::shared_ptr<DenseTrajectory<State>> run(Rhs&& rhs, double t0, const State& y0, double lo, double hi,
                                            std::vector<double> stops, const SolveOptions& opt) {
    OdeOptions o;
    o.rtol = opt.rtol;
    o.atol = opt.atol;
    o.max_rejections = opt.max_rejections;
    auto traj = std::make_shared<DenseTrajectory<State>>(t0, y0);
    traj->append(dopri5<State>(rhs, t0, y0, lo, stops, o));
    traj->append(dopri5<State>(rhs, t0, y0, hi, stops, o));
    return traj;
}

template <typename State>
std::vector<double> knots_of(const DenseTrajectory<State>& traj) {
    std::vector<double> k;
    for (const auto& s : traj.steps()) {
        k.push_back(s.lo());
        k.push_back(s.hi());
    }
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    return k;
}

void check_anchor(const Hamiltonian& h, double t0, double lo, double hi) {
    if (!(t0 >= lo && t0 <= hi)) {
        std::ostringstream os;
        os << "anchor t0 = " << t0 << " outside the integrable range [" << lo << ", " << hi << "] of ("
           << h.lo() << ", " << h.hi() << ")";
        throw Error(ErrorKind::domain, "solver", os.str());
    }
}

std::vector<double> all_stops(const Hamiltonian& h, const SolveOptions& opt, const std::vector<double>& extra) {
    std::vector<double> s = h.breakpoints();
    s.insert(s.end(), opt.stops.begin(), opt.stops.end());
    s.insert(s.end(), extra.begin(), extra.end());
    return s;
}

}  // namespace

SolutionSampler MatrixSolution::row(int i) const {
    SolutionSampler s;
    s.z = z;
    s.lo = lo;
    s.hi = hi;
    s.t0 = t0;
    s.y0 = init.row(i).transpose();
    auto ev = eval;
    s.eval = [ev, i](double t) -> Vector2c { return ev(t).row(i).transpose(); };
    s.tol = tol;
    s.knots = knots;
    return s;
}

SolutionSampler solve_row(const Hamiltonian& h, Complex z, double t0, const Vector2c& y0, const SolveOptions& opt) {
    const auto [lo, hi] = integration_range(h, opt);
    check_anchor(h, t0, lo, hi);
    auto rhs = [&h, z](double t, const Vector2c& y) -> Vector2c {
        const Entries e = h.entries_unchecked(t);
        return Vector2c(-z * (e.h3 * y(0) + e.h2 * y(1)), z * (e.h1 * y(0) + e.h3 * y(1)));
    };
    auto traj = run<Vector2c>(rhs, t0, y0, lo, hi, all_stops(h, opt, {}), opt);
    SolutionSampler s;
    s.z = z;
    s.lo = lo;
    s.hi = hi;
    s.t0 = t0;
    s.y0 = y0;
    s.eval = [traj](double t) { return (*traj)(t); };
    s.tol = opt.rtol;
    s.knots = knots_of(*traj);
    return s;
}

MatrixSolution fundamental(const Hamiltonian& h, Complex z, const std::vector<double>& t_grid, const Matrix2c& init,
                           double t0, const SolveOptions& opt) {
    if (std::abs(init.determinant()) == 0.0)
        throw Error(ErrorKind::precondition, "solver", "initial matrix is singular");
    const auto [lo, hi] = integration_range(h, opt);
    check_anchor(h, t0, lo, hi);
    auto rhs = [&h, z](double t, const Matrix2c& w) -> Matrix2c {
        const Entries e = h.entries_unchecked(t);
        // W' = -z W H J with H J = [[h3, -h1], [h2, -h3]]
        Matrix2c out;
        for (int r = 0; r < 2; ++r) {
            out(r, 0) = -z * (w(r, 0) * e.h3 + w(r, 1) * e.h2);
            out(r, 1) = -z * (-w(r, 0) * e.h1 - w(r, 1) * e.h3);
        }
        return out;
    };
    auto traj = run<Matrix2c>(rhs, t0, init, lo, hi, all_stops(h, opt, t_grid), opt);
    MatrixSolution m;
    m.z = z;
    m.lo = lo;
    m.hi = hi;
    m.t0 = t0;
    m.init = init;
    m.eval = [traj](double t) { return (*traj)(t); };
    m.tol = opt.rtol;
    m.knots = knots_of(*traj);
    return m;
}

Complex greens_residual(const Hamiltonian& h, const SolutionSampler& u, const SolutionSampler& f, double x1,
                        double x2) {
    const double a = std::min(x1, x2), b = std::max(x1, x2);
    if (a < std::max(u.lo, f.lo) || b > std::min(u.hi, f.hi))
        throw Error(ErrorKind::domain, "solver", "samplers do not cover [x1, x2]");
    std::vector<double> cuts{a, b};
    for (const auto* k : {&u.knots, &f.knots})
        for (double t : *k)
            if (t > a && t < b) cuts.push_back(t);
    for (double t : h.breakpoints())
        if (t > a && t < b) cuts.push_back(t);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto integrand = [&](double t) -> Complex {
        const Entries e = h.entries_unchecked(t);
        const Vector2c fu = u(t), ff = f(t);
        const Vector2c hf(e.h1 * ff(0) + e.h3 * ff(1), e.h3 * ff(0) + e.h2 * ff(1));
        return fu.dot(hf);  // conjugates the first argument
    };
    Complex integral = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        integral += integrate<Complex>(integrand, cuts[i], cuts[i + 1], 1e-15, 1e-13).value;
    if (x1 > x2) integral = -integral;
    const Matrix2c j = symplectic_j<Complex>();
    const Complex lhs = (f.z - std::conj(u.z)) * integral;
    const Complex rhs = u(x1).dot(j * f(x1)) - u(x2).dot(j * f(x2));
    return lhs - rhs;
}

}  // namespace canon
