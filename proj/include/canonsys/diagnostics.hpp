#ifndef CANONSYS_DIAGNOSTICS_HPP
#define CANONSYS_DIAGNOSTICS_HPP

#include <vector>

#include "canonsys/hamiltonian.hpp"
#include "canonsys/options.hpp"

namespace canon {

struct IndivisibleReport {
    bool is_indivisible = false;
    double phi = 0.0;       // type in [0, pi), meaningful when indivisible
    double residual = 0.0;  // max relative size of H(t) off span{xi_phi}
};

/// Samples H on (a, b) and decides whether Ran H(t) is one fixed line.
/// Throws an indeterminate error when every sample vanishes.
IndivisibleReport indivisible_type(const Hamiltonian& h, double a, double b, double tol_indiv = 1e-8,
                                   int samples = 512);

/// Convergence diagnostic for an integral approaching a singular endpoint.
struct ConditionReport {
    bool converges = false;
    double value = 0.0;
    std::vector<double> tail_estimates;  // partial integrals toward the endpoint
    double remainder = 0.0;
};

/// Condition (I): the integral of h1 up to the singular endpoint is finite.
ConditionReport check_I(const Hamiltonian& h, Endpoint singular_end, const Tolerances& tol = {});

/// Condition (HS) with phi = 0: the nested integral of (integral of h2 from
/// the regular end) * h1 is finite.
ConditionReport check_HS(const Hamiltonian& h, Endpoint singular_end, const Tolerances& tol = {});

/// Limit circle iff the trace of H is integrable up to the endpoint.
EndpointKind classify_endpoint(const Hamiltonian& h, Endpoint end, const Tolerances& tol = {});

}  // namespace canon

#endif  // CANONSYS_DIAGNOSTICS_HPP
