#include "canonsys/indefinite.hpp"

#include <string>

#include "canonsys/diagnostics.hpp"
#include "canonsys/errors.hpp"

namespace canon {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    std::vector<double> c(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) c[k] = a[static_cast<int>(k)] - b[static_cast<int>(k)];
    return Polynomial(std::move(c));
}

void IndefHamiltonianA::validate(double tol_indiv) const {
    const double sm = s_minus(), sg = sigma(), sp = s_plus();
    if (!(std::isfinite(sm) && std::isfinite(sg) && std::isfinite(sp)) || !(sm < sg && sg < sp))
        throw ConfigError("/interval", "need finite s_minus < sigma < s_plus");
    if (h_plus.lo() != sg) throw ConfigError("/sigma", "h_plus must start at sigma");
    if (delta < 1) throw ConfigError("/delta", "delta must be a positive integer");
    if (static_cast<int>(d.size()) != 2 * delta)
        throw ConfigError("/d", "expected " + std::to_string(2 * delta) + " numbers d_0..d_{2 delta - 1}");
    if (oe < 0) throw ConfigError("/oe", "oe must be nonnegative");
    if (static_cast<int>(b.size()) != oe)
        throw ConfigError("/b", "expected " + std::to_string(oe) + " numbers b_1..b_oe");
    if (oe > 0 && b.front() == 0.0) throw ConfigError("/b/0", "b_1 must be non-zero");
    for (const auto* om : {&omega_minus, &omega_plus}) {
        const std::string path = om == &omega_minus ? "/omega_minus" : "/omega_plus";
        if (!om->empty() && om->front() != 1.0) throw ConfigError(path + "/0", "omega_0 must equal 1");
    }
    for (Side s : {Side::minus, Side::plus}) {
        const std::string path = s == Side::minus ? "/omega_minus" : "/omega_plus";
        if (!side(s).is_diagonal() && static_cast<int>(omegas(s).size()) < 2 * delta + 1)
            throw ConfigError(path, "non-diagonal side needs omega_0..omega_{2 delta}");
    }
    const bool minus_indiv = indivisible_type(h_minus, sm, sg, tol_indiv).is_indivisible;
    const bool plus_indiv = indivisible_type(h_plus, sg, sp, tol_indiv).is_indivisible;
    if (minus_indiv && plus_indiv)
        throw Error(ErrorKind::unsupported, "hamiltonian",
                    "both sides indivisible (kind B/C); the monodromy matrix is then R(z)^T and is not "
                    "computed by this pipeline");
}

IndefHamiltonianA IndefHamiltonianA::with_discrete(std::vector<double> d_new, int oe_new,
                                                   std::vector<double> b_new) const {
    IndefHamiltonianA out = *this;
    out.d = std::move(d_new);
    out.oe = oe_new;
    out.b = std::move(b_new);
    return out;
}

IndefHamiltonianA make_indefinite(Hamiltonian h_minus, Hamiltonian h_plus, int delta, std::vector<double> d, int oe,
                                  std::vector<double> b, std::vector<double> omega_minus,
                                  std::vector<double> omega_plus) {
    return IndefHamiltonianA{
        h_minus.with_endpoint_kinds(EndpointKind::limit_circle, EndpointKind::limit_point),
        h_plus.with_endpoint_kinds(EndpointKind::limit_point, EndpointKind::limit_circle),
        delta,
        std::move(d),
        oe,
        std::move(b),
        std::move(omega_minus),
        std::move(omega_plus)};
}

Polynomial build_p(const IndefHamiltonianA& ih) {
    const int two_delta = 2 * ih.delta;
    std::vector<double> c(static_cast<std::size_t>(two_delta + ih.oe + 1), 0.0);
    for (int n = 1; n <= two_delta; ++n) c[n] = -ih.d[n - 1];
    for (int n = two_delta + 1; n <= two_delta + ih.oe; ++n) c[n] = ih.b[ih.oe + two_delta - n];  // b_{oe+2delta+1-n}
    return Polynomial(std::move(c));
}

Matrix2c build_R(const IndefHamiltonianA& ih, Complex z) { return unitriangular<Complex>(build_p(ih)(z)); }

}  // namespace canon
