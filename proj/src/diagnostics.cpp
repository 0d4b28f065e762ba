#include "canonsys/diagnostics.hpp"

#include <sstream>

#include "canonsys/errors.hpp"
#include "canonsys/quadrature.hpp"

namespace canon {

IndivisibleReport indivisible_type(const Hamiltonian& h, double a, double b, double tol_indiv, int samples) {
    if (!(h.lo() <= a && a < b && b <= h.hi()))
        throw Error(ErrorKind::domain, "hamiltonian", "indivisible_type needs lo <= a < b <= hi");
    const double pi = std::acos(-1.0);
    std::vector<Matrix2> mats;
    double largest = 0.0;
    Vector2 direction = Vector2::Zero();
    for (int i = 0; i < samples; ++i) {
        const double t = a + (b - a) * (i + 0.5) / samples;
        const Entries e = h.entries_unchecked(t);
        if (!e.finite()) continue;
        const Matrix2 m = e.matrix();
        Eigen::SelfAdjointEigenSolver<Matrix2> es(m);
        const double top = es.eigenvalues()(1);
        if (top > largest) {
            largest = top;
            direction = es.eigenvectors().col(1);
        }
        mats.push_back(m);
    }
    if (largest <= 0.0)
        throw Error(ErrorKind::indeterminate, "hamiltonian", "H vanishes at every sample; type undetermined");

    IndivisibleReport rep;
    double phi = std::atan2(direction(1), direction(0));
    phi = std::fmod(phi, pi);
    if (phi < 0.0) phi += pi;
    const Vector2 x = xi(phi);
    const Matrix2 off = Matrix2::Identity() - x * x.transpose();
    for (const Matrix2& m : mats) {
        const double scale = m.norm();
        if (scale == 0.0) continue;
        rep.residual = std::max(rep.residual, (off * m).norm() / scale);
    }
    rep.is_indivisible = rep.residual <= tol_indiv;
    rep.phi = phi;
    return rep;
}

namespace {

double regular_end(const Hamiltonian& h, Endpoint singular_end) {
    return singular_end == Endpoint::upper ? h.lo() : h.hi();
}
double singular_point(const Hamiltonian& h, Endpoint singular_end) {
    return singular_end == Endpoint::upper ? h.hi() : h.lo();
}

ConditionReport to_condition(const TailReport& t) {
    return {t.converges, t.value, t.partials, t.tail_estimate};
}

}  // namespace

ConditionReport check_I(const Hamiltonian& h, Endpoint singular_end, const Tolerances& tol) {
    auto h1 = [&](double t) { return h.entries_unchecked(t).h1; };
    return to_condition(improper_tail(h1, regular_end(h, singular_end), singular_point(h, singular_end),
                                      tol.geometric_levels, tol.tol_tail));
}

ConditionReport check_HS(const Hamiltonian& h, Endpoint singular_end, const Tolerances& tol) {
    const double reg = regular_end(h, singular_end);
    const auto bounds = geometric_boundaries(reg, singular_point(h, singular_end), tol.geometric_levels);
    auto h1 = [&](double t) { return h.entries_unchecked(t).h1; };
    auto h2 = [&](double t) { return h.entries_unchecked(t).h2; };
    std::vector<double> inc;
    double inner_at_start = 0.0;  // integral of h2 from the regular end to bounds[k-1]
    try {
        for (std::size_t k = 1; k < bounds.size(); ++k) {
            const double a = bounds[k - 1], b = bounds[k];
            // Fixed composite rule: smooth in t, unlike an adaptive one.
            auto integrand = [&](double t) {
                const double lo = std::min(a, t), w = std::abs(t - a) / 4.0;
                double inner = inner_at_start;
                for (int j = 0; j < 4; ++j) inner += detail::gk15<double>(h2, lo + w * j, lo + w * (j + 1)).value;
                return inner * h1(t);
            };
            inc.push_back(integrate<double>(integrand, std::min(a, b), std::max(a, b), 1e-300, 1e-11).value);
            inner_at_start += integrate<double>(h2, std::min(a, b), std::max(a, b), 1e-300, 1e-12).value;
        }
    } catch (const IntegrationError&) {
        // A non-integrable singularity inside a panel is itself a divergence verdict.
        ConditionReport rep;
        rep.converges = false;
        rep.remainder = std::numeric_limits<double>::infinity();
        return rep;
    }
    return to_condition(tail_from_increments(std::move(inc), tol.tol_tail));
}

EndpointKind classify_endpoint(const Hamiltonian& h, Endpoint end, const Tolerances& tol) {
    auto trace = [&](double t) {
        const Entries e = h.entries_unchecked(t);
        return e.h1 + e.h2;
    };
    const double mid = 0.5 * (h.lo() + h.hi());
    const double target = end == Endpoint::upper ? h.hi() : h.lo();
    try {
        const TailReport rep = improper_tail(trace, mid, target, tol.geometric_levels, tol.tol_tail);
        return rep.converges ? EndpointKind::limit_circle : EndpointKind::limit_point;
    } catch (const IntegrationError&) {
        return EndpointKind::limit_point;
    }
}

}  // namespace canon
