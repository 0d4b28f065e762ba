#ifndef CANONSYS_MONODROMY_HPP
#define CANONSYS_MONODROMY_HPP

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "canonsys/boundary.hpp"

namespace canon {

enum class VChoice { anchored_at_s_plus, custom };

/// How V(., z) on the plus side is fixed: V(s_plus, z) = I, or a caller-given
/// non-singular anchor matrix.
struct VSpec {
    VChoice choice = VChoice::anchored_at_s_plus;
    std::function<Matrix2c(Complex)> anchor;  // used when choice == custom
};

/// U-(z), R(z), U+(z), V(., z) and the fundamental solution they assemble.
struct MonodromyFactorisation {
    Complex z;
    Matrix2c u_minus, u_plus, r;
    Matrix2c left;             // U-(z) R(z)^T U+(z)^-1
    MatrixSolution v;          // on the plus side
    MatrixSolution w_minus;    // direct fundamental solution on the minus side
    double sigma = 0.0;
    std::array<Complex, 3> det_report{};  // det U-, det U+, det V(s_plus)
    double err_est = 0.0;                 // worst extrapolation error estimate

    /// W_h(t, z): direct on the minus side, U- R^T (U+)^-1 V(t) on the plus side.
    Matrix2c w(double t) const;
};

/// Builds the z-independent parts (w_n functions, limit nodes) once.
class MonodromyPipeline {
public:
    explicit MonodromyPipeline(IndefHamiltonianA ih, Tolerances tol = {});

    const IndefHamiltonianA& problem() const noexcept { return ih_; }
    const Tolerances& tolerances() const noexcept { return tol_; }
    const SideBoundary& side(Side s) const { return s == Side::minus ? *minus_ : *plus_; }

    /// Fundamental solution on the minus side with W(s_minus) = I.
    MatrixSolution w_minus(Complex z, const std::vector<double>& t_grid = {}) const;
    /// V on the plus side.
    MatrixSolution v(Complex z, const VSpec& spec = {}, const std::vector<double>& t_grid = {}) const;

    Matrix2c u_minus(Complex z) const;
    Matrix2c u_minus(const MatrixSolution& w_minus, double* err = nullptr) const;
    Matrix2c u_plus(const MatrixSolution& v, double* err = nullptr) const;

    MonodromyFactorisation factorise(Complex z, const VSpec& spec = {}, const std::vector<double>& t_grid = {}) const;

    /// lim (w12, w22)^T (w22, -w12) at sigma from the minus side.
    Matrix2c m_matrix(const MatrixSolution& w_minus) const;
    Matrix2c m_matrix(Complex z) const { return m_matrix(w_minus(z)); }

    /// lim w12 / w22 at sigma from the minus side.
    LimitEstimate<Complex> weyl_intermediate(Complex z) const;

private:
    IndefHamiltonianA ih_;
    Tolerances tol_;
    std::shared_ptr<const SideBoundary> minus_, plus_;
};

Matrix2c u_minus(const IndefHamiltonianA& ih, Complex z, const Tolerances& tol = {});
Matrix2c u_plus(const IndefHamiltonianA& ih, Complex z, const MatrixSolution& v, const Tolerances& tol = {});
Matrix2c assemble_W(const IndefHamiltonianA& ih, Complex z, double t, const VSpec& spec = {},
                    const Tolerances& tol = {});
Matrix2c monodromy_matrix(const IndefHamiltonianA& ih, Complex z, const Tolerances& tol = {});

/// W2 - W1 - (p2 - p1)(z) M(z) W1 at t, for problems sharing both Hamiltonians.
Matrix2c compare_discrete(const IndefHamiltonianA& ih1, const IndefHamiltonianA& ih2, Complex z, double t,
                          const Tolerances& tol = {});

Complex weyl_intermediate(const IndefHamiltonianA& ih, Complex z, const Tolerances& tol = {});

struct KernelSignature {
    std::vector<Complex> grid;
    Eigen::MatrixXcd gram;
    Eigen::VectorXd eigenvalues;
    int neg_count = 0;
    double min_eig = 0.0;
};

/// Block Gram matrix of K(z, w) = (W(z) J W(w)* - J) / (z - conj(w)) on the
/// points, Hermitised, with the number of eigenvalues below -tol_eig |G|.
KernelSignature kernel_gram(const std::function<Matrix2c(Complex)>& w_fun, const std::vector<Complex>& points,
                            double tol_eig = 1e-8);

/// `count` points with real part in [-3, 3] and |imaginary part| in [0.2, 3],
/// either half plane, from a seeded generator.
std::vector<Complex> random_kernel_grid(int count, unsigned seed);

}  // namespace canon

#endif  // CANONSYS_MONODROMY_HPP
