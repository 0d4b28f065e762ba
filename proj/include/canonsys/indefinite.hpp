#ifndef CANONSYS_INDEFINITE_HPP
#define CANONSYS_INDEFINITE_HPP

#include <vector>

#include "canonsys/hamiltonian.hpp"

namespace canon {

/// Real polynomial, coefficients in increasing degree.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);

    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    double operator[](int k) const { return k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : 0.0; }

    template <typename Scalar>
    Scalar operator()(const Scalar& z) const {
        Scalar acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);

private:
    std::vector<double> coeffs_;  // trailing zeros trimmed; empty == 0
};

/// Elementary indefinite Hamiltonian of kind (A): two positive Hamiltonians
/// meeting at an inner singularity sigma plus the discrete data (d_j, oe, b_j).
///
/// h_minus lives on (s_minus, sigma) and is limit point at sigma; h_plus on
/// (sigma, s_plus), limit point at sigma. `omega_minus`/`omega_plus` hold
/// omega_0..omega_k of each side; they may be left empty for diagonal sides,
/// where they are computed from the explicit recursion.
struct IndefHamiltonianA {
    Hamiltonian h_minus;
    Hamiltonian h_plus;
    int delta = 1;
    std::vector<double> d;  // d_0 .. d_{2 delta - 1}
    int oe = 0;
    std::vector<double> b;  // b_1 .. b_oe
    std::vector<double> omega_minus;
    std::vector<double> omega_plus;

    double s_minus() const { return h_minus.lo(); }
    double sigma() const { return h_minus.hi(); }
    double s_plus() const { return h_plus.hi(); }
    const Hamiltonian& side(Side s) const { return s == Side::minus ? h_minus : h_plus; }
    const std::vector<double>& omegas(Side s) const { return s == Side::minus ? omega_minus : omega_plus; }

    /// Checks the structural invariants; throws ConfigError (with `path`
    /// naming the offending field) or an unsupported error for kinds B/C.
    void validate(double tol_indiv = 1e-8) const;

    /// Same Hamiltonians, new discrete data.
    IndefHamiltonianA with_discrete(std::vector<double> d_new, int oe_new, std::vector<double> b_new) const;
};

/// Builds an IndefHamiltonianA from two sides; endpoint kinds are set to
/// (circle, point) on the left and (point, circle) on the right.
IndefHamiltonianA make_indefinite(Hamiltonian h_minus, Hamiltonian h_plus, int delta, std::vector<double> d,
                                  int oe = 0, std::vector<double> b = {}, std::vector<double> omega_minus = {},
                                  std::vector<double> omega_plus = {});

/// p(z) = -sum_{n=1}^{2 delta} d_{n-1} z^n + sum_{n=2 delta+1}^{2 delta+oe} b_{oe+2 delta+1-n} z^n.
Polynomial build_p(const IndefHamiltonianA& ih);

/// R(z) = [[1, p(z)], [0, 1]].
Matrix2c build_R(const IndefHamiltonianA& ih, Complex z);

}  // namespace canon

#endif  // CANONSYS_INDEFINITE_HPP
