#include "canonsys/wpoly.hpp"

#include <string>

#include "canonsys/errors.hpp"

namespace canon {

namespace {

using Scalar = PanelFunction<double>;
using VecFn = PanelFunction<Vector2>;

Vector2 jh(const Entries& e, const Vector2& v) {
    return Vector2(-(e.h3 * v(0) + e.h2 * v(1)), e.h1 * v(0) + e.h3 * v(1));
}

void require_diagonal(const Hamiltonian& h, const char* what) {
    if (!h.is_diagonal())
        throw Error(ErrorKind::unsupported, "wpoly",
                    std::string(what) + " needs a diagonal Hamiltonian; use w_n_general with user-supplied omegas");
}

// Places the scalar w_n into its component: second for even n, first for odd n.
VecFn embed(const Scalar& w, int n) {
    return w.map<Vector2>([n](double v) { return n % 2 == 0 ? Vector2(0.0, v) : Vector2(v, 0.0); });
}

}  // namespace

std::shared_ptr<const PanelGrid> side_grid(const Hamiltonian& h, Side side, const Tolerances& tol) {
    const SideGeometry g = SideGeometry::of(h, side);
    return std::make_shared<const PanelGrid>(g.regular, g.singular, h.breakpoints(), tol.geometric_levels,
                                             tol.panel_nodes);
}

Vector2c volterra(const Hamiltonian& h, const std::function<Vector2c(double)>& f, double t, Side side,
                  const Tolerances& tol) {
    const SideGeometry g = SideGeometry::of(h, side);
    if ((t - g.regular) * g.direction() < 0.0 || (g.singular - t) * g.direction() <= 0.0)
        throw Error(ErrorKind::domain, "wpoly", "volterra: t outside [regular end, singularity)");
    auto integrand = [&](double s) -> Vector2c {
        const Entries e = h.entries_unchecked(s);
        const Vector2c y = f(s);
        return Vector2c(-(e.h3 * y(0) + e.h2 * y(1)), e.h1 * y(0) + e.h3 * y(1));
    };
    const PanelGrid grid(g.regular, g.singular, h.breakpoints(), tol.geometric_levels, 2);
    Vector2c acc = Vector2c::Zero();
    for (const Panel& p : grid.panels()) {
        const bool last = p.contains(t);
        const double b = last ? t : p.end;
        acc += integrate<Vector2c>(integrand, p.start, b, 1e-300, tol.quad_rel_tol).value;
        if (last) break;
    }
    return acc;
}

std::vector<WFunction> w_diagonal_family(const Hamiltonian& h, Side side, int n_max, const Tolerances& tol) {
    require_diagonal(h, "w_n_diagonal");
    if (n_max < 0) return {WFunction{side, -1, 0.0, {}}};
    const auto grid = side_grid(h, side, tol);
    std::vector<WFunction> out;
    Scalar w = Scalar::sample(grid, [](double) { return 1.0; });
    out.push_back({side, 0, 1.0, embed(w, 0)});
    for (int n = 0; n < n_max; ++n) {
        if (n % 2 == 0) {
            const Scalar g = w.transform<double>([&](double t, double v) { return -h.entries_unchecked(t).h2 * v; });
            w = Scalar::cumulative(g, 0.0);
        } else {
            const Scalar g = w.transform<double>([&](double t, double v) { return h.entries_unchecked(t).h1 * v; });
            w = Scalar::from_singular(g);
        }
        const int m = n + 1;
        out.push_back({side, m, m % 2 == 0 ? w.at_regular() : 0.0, embed(w, m)});
    }
    return out;
}

WFunction w_n_diagonal(const Hamiltonian& h, Side side, int n, const Tolerances& tol) {
    return w_diagonal_family(h, side, n, tol).back();
}

std::vector<WFunction> w_general_family(const Hamiltonian& h, Side side, int n_max,
                                        const std::vector<double>& omegas, const Tolerances& tol) {
    if (n_max < 0) return {WFunction{side, -1, 0.0, {}}};
    if (static_cast<int>(omegas.size()) < n_max + 1)
        throw ConfigError(side == Side::minus ? "/omega_minus" : "/omega_plus",
                          "w_n_general needs omega_0..omega_" + std::to_string(n_max));
    const auto grid = side_grid(h, side, tol);
    std::vector<WFunction> out;
    VecFn w = VecFn::sample(grid, [](double) { return Vector2(0.0, 1.0); });
    out.push_back({side, 0, 1.0, w});
    for (int n = 1; n <= n_max; ++n) {
        const VecFn g = w.transform<Vector2>([&](double t, const Vector2& v) { return jh(h.entries_unchecked(t), v); });
        w = VecFn::cumulative(g, Vector2(0.0, omegas[n]));
        out.push_back({side, n, omegas[n], w});
    }
    return out;
}

WFunction w_n_general(const Hamiltonian& h, Side side, int n, const std::vector<double>& omegas,
                      const Tolerances& tol) {
    return w_general_family(h, side, n, omegas, tol).back();
}

std::vector<WFunction> w_family(const Hamiltonian& h, Side side, int delta, const std::vector<double>& omegas,
                                const Tolerances& tol) {
    if (h.is_diagonal()) return w_diagonal_family(h, side, 2 * delta - 1, tol);
    return w_general_family(h, side, 2 * delta, omegas, tol);
}

DeltaReport delta_diagnostic(const Hamiltonian& h, Side side, int delta, const std::vector<double>& omegas,
                             const Tolerances& tol) {
    DeltaReport rep;
    const auto family =
        h.is_diagonal() ? w_diagonal_family(h, side, delta, tol) : w_general_family(h, side, delta, omegas, tol);
    for (const WFunction& w : family) {
        const PanelGrid& grid = w.values.grid();
        const auto& rule = grid.rule();
        std::vector<double> inc;
        // The terminal panel touching sigma is left to the tail estimate.
        for (std::size_t p = 0; p + 1 < grid.panels().size(); ++p) {
            double s = 0.0;
            for (int j = 0; j < rule.size(); ++j) {
                const Vector2& v = w.values.values()[p][j];
                s += rule.weights()(j) * v.dot(h.entries_unchecked(grid.node(p, j)).matrix() * v);
            }
            inc.push_back(s * std::abs(grid.panels()[p].half()));
        }
        const TailReport t = tail_from_increments(std::move(inc), tol.tol_tail);
        rep.tail_norms.push_back(t.converges ? t.value : std::numeric_limits<double>::infinity());
        rep.in_L2.push_back(t.converges);
    }
    rep.w_delta_in_L2 = rep.in_L2[delta];
    rep.w_deltaminus1_in_L2 = rep.in_L2[delta - 1];
    rep.consistent = rep.w_delta_in_L2 && !rep.w_deltaminus1_in_L2;
    return rep;
}

RhoSequence rho_sequence(const Hamiltonian& h, Side side, int n, const Tolerances& tol) {
    require_diagonal(h, "rho_sequence");
    RhoSequence out{side, std::vector<double>(static_cast<std::size_t>(std::max(n, 0) + 1), 0.0)};
    const Endpoint singular_end = side == Side::minus ? Endpoint::upper : Endpoint::lower;
    if (h.endpoint_kind(singular_end) == EndpointKind::limit_circle) return out;
    const auto grid = side_grid(h, side, tol);
    Scalar r = Scalar::sample(grid, [](double) { return 1.0; });
    for (int k = 1; k <= n; ++k) {
        if (k % 2 == 1) {
            const Scalar g = r.transform<double>([&](double t, double v) { return h.entries_unchecked(t).h1 * v; });
            r = Scalar::from_singular(g);
            out.values[k] = r.at_regular();
        } else {
            const Scalar g = r.transform<double>([&](double t, double v) { return -h.entries_unchecked(t).h2 * v; });
            r = Scalar::cumulative(g, 0.0);
        }
    }
    return out;
}

}  // namespace canon
