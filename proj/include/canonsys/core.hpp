#ifndef CANONSYS_CORE_HPP
#define CANONSYS_CORE_HPP

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace canon {

using Complex = std::complex<double>;

template <typename Scalar>
using Vector2T = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Matrix2T = Eigen::Matrix<Scalar, 2, 2>;

using Vector2 = Vector2T<double>;
using Matrix2 = Matrix2T<double>;
using Vector2c = Vector2T<Complex>;
using Matrix2c = Matrix2T<Complex>;

/// The symplectic unit J = [[0, -1], [1, 0]].
template <typename Scalar = double>
inline Matrix2T<Scalar> symplectic_j() {
    Matrix2T<Scalar> j;
    j << Scalar(0), Scalar(-1), Scalar(1), Scalar(0);
    return j;
}

/// Unit vector (cos phi, sin phi).
inline Vector2 xi(double phi) { return Vector2(std::cos(phi), std::sin(phi)); }

/// Upper unitriangular [[1, p], [0, 1]].
template <typename Scalar>
inline Matrix2T<Scalar> unitriangular(const Scalar& p) {
    Matrix2T<Scalar> m;
    m << Scalar(1), p, Scalar(0), Scalar(1);
    return m;
}

/// Max-modulus entry, the norm used for all entrywise tolerances.
template <typename Derived>
inline double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

enum class Side { minus, plus };

inline const char* to_string(Side s) { return s == Side::minus ? "minus" : "plus"; }

enum class EndpointKind { limit_circle, limit_point };

enum class Endpoint { lower, upper };

}  // namespace canon

#endif  // CANONSYS_CORE_HPP
