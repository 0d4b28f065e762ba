#ifndef CANONSYS_HAMILTONIAN_HPP
#define CANONSYS_HAMILTONIAN_HPP

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "canonsys/core.hpp"

namespace canon {

/// The three independent entries (h1, h2, h3) of H = [[h1, h3], [h3, h2]].
struct Entries {
    double h1 = 0.0;
    double h2 = 0.0;
    double h3 = 0.0;

    Matrix2 matrix() const {
        Matrix2 m;
        m << h1, h3, h3, h2;
        return m;
    }
    bool finite() const { return std::isfinite(h1) && std::isfinite(h2) && std::isfinite(h3); }
};

/// Named closed-form Hamiltonians.
///   example              diag((t-1)^2, (t-1)^-2)
///   identity             I
///   example_indivisible  diag(0, (t-1)^-2)
struct BuiltinSpec {
    std::string name;
};

/// coef * (t - center)^power; non-integer powers act on |t - center|.
struct PowerTerm {
    double coef = 0.0;
    double center = 0.0;
    double power = 0.0;

    double operator()(double t) const;
};

struct Piece {
    double from = 0.0;
    double to = 0.0;
    std::vector<PowerTerm> h1, h2, h3;
};

struct PiecewiseSpec {
    std::vector<Piece> pieces;
};

/// Node table, linearly interpolated (monotone, and convex combinations of
/// PSD matrices stay PSD).
struct TableSpec {
    std::vector<double> t, h1, h2, h3;
};

/// Programmatic Hamiltonian; not serialisable.
struct FunctionSpec {
    std::function<Entries(double)> fn;
    bool diagonal = false;
    std::vector<double> breakpoints;
    std::string label = "function";
};

using HamiltonianSpec = std::variant<BuiltinSpec, PiecewiseSpec, TableSpec, FunctionSpec>;

/// A real symmetric positive semidefinite 2x2 matrix function on (lo, hi).
/// Immutable; copies share the underlying specification.
class Hamiltonian {
public:
    Hamiltonian(double lo, double hi, HamiltonianSpec spec,
                EndpointKind lower = EndpointKind::limit_circle,
                EndpointKind upper = EndpointKind::limit_circle);

    static Hamiltonian builtin(const std::string& name, double lo, double hi);
    static Hamiltonian identity(double lo, double hi);
    static Hamiltonian from_function(double lo, double hi, std::function<Entries(double)> fn,
                                     bool diagonal, std::vector<double> breakpoints = {});

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double length() const noexcept { return hi_ - lo_; }

    /// Entries at t in the open interval. Throws domain/evaluation errors.
    Entries entries(double t) const;
    /// Entries without the interval check; may be non-finite at endpoints.
    Entries entries_unchecked(double t) const;
    Matrix2 operator()(double t) const { return entries(t).matrix(); }

    bool is_diagonal() const;
    /// Interior points where the entries may fail to be smooth.
    std::vector<double> breakpoints() const;

    EndpointKind endpoint_kind(Endpoint e) const noexcept { return e == Endpoint::lower ? lower_ : upper_; }
    Hamiltonian with_endpoint_kinds(EndpointKind lower, EndpointKind upper) const;
    /// Same entries on the subinterval (a, b).
    Hamiltonian restricted(double a, double b) const;

    const HamiltonianSpec& spec() const noexcept { return *spec_; }
    /// Structural equality: same interval and same specification.
    bool same_as(const Hamiltonian& other) const;

private:
    double lo_;
    double hi_;
    std::shared_ptr<const HamiltonianSpec> spec_;
    EndpointKind lower_;
    EndpointKind upper_;
};

/// H(t) at t strictly inside the interval.
inline Matrix2 eval_H(const Hamiltonian& h, double t) { return h(t); }

/// c * H, c > 0.
Hamiltonian scaled(const Hamiltonian& h, double c);
/// Q H Q^T with Q the rotation by theta.
Hamiltonian rotated(const Hamiltonian& h, double theta);

/// Smallest eigenvalue of H(t) relative to max(1, |H(t)|) over `samples`
/// uniformly spaced interior points; >= -tol_psd for a valid Hamiltonian.
double min_relative_eigenvalue(const Hamiltonian& h, int samples = 1000);

}  // namespace canon

#endif  // CANONSYS_HAMILTONIAN_HPP
