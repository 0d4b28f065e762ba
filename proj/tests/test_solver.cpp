#include <doctest.h>

#include <random>

#include "canonsys/errors.hpp"
#include "canonsys/solver.hpp"

#include "oracles.hpp"

using namespace canon;

TEST_SUITE("solver") {

TEST_CASE("solve_row for H = I") {
    const Hamiltonian id = Hamiltonian::identity(0.0, 2.0);
    for (Complex z : {Complex(1.0, 0.0), Complex(0.5, -1.5), Complex(3.0, 2.0)}) {
        const SolutionSampler y = solve_row(id, z, 0.0, Vector2c(1.0, 0.0));
        for (double t : {0.0, 0.7, 1.3, 2.0}) {
            CHECK(std::abs(y(t)(0) - std::cos(z * t)) < 1e-8 * std::max(1.0, std::abs(std::cos(z * t))));
            CHECK(std::abs(y(t)(1) - std::sin(z * t)) < 1e-8 * std::max(1.0, std::abs(std::sin(z * t))));
        }
    }
}

TEST_CASE("z = 0 solutions are constant") {
    const Hamiltonian ex = Hamiltonian::builtin("example", 0.0, 1.0);
    const Vector2c y0(Complex(1.0, 2.0), -3.0);
    const SolutionSampler y = solve_row(ex, 0.0, 0.0, y0);
    for (double t : {0.2, 0.5, 0.99}) CHECK((y(t) - y0).norm() == 0.0);
}

TEST_CASE("indivisible side matches its closed form") {
    // diag(0, (t-1)^-2) on (1, 2) from t = 2: (c1 + z c2 (1/(t-1) - 1), c2)
    const Hamiltonian h = Hamiltonian::builtin("example_indivisible", 1.0, 2.0)
                              .with_endpoint_kinds(EndpointKind::limit_point, EndpointKind::limit_circle);
    const Complex z(1.5, 0.5);
    const Vector2c c(Complex(0.3, -1.0), Complex(2.0, 0.25));
    const SolutionSampler y = solve_row(h, z, 2.0, c);
    for (double t : {1.9, 1.5, 1.1, 1.01}) {
        const Vector2c ref(c(0) + z * c(1) * (1.0 / (t - 1.0) - 1.0), c(1));
        CHECK((y(t) - ref).norm() < 1e-8 * std::max(1.0, ref.norm()));
    }
}

TEST_CASE("fundamental") {
    const Hamiltonian ex = Hamiltonian::builtin("example", 0.0, 1.0)
                               .with_endpoint_kinds(EndpointKind::limit_circle, EndpointKind::limit_point);
    SUBCASE("z = 0 returns the initial matrix") {
        Matrix2c init;
        init << 1.0, 2.0, 3.0, 4.0;
        const MatrixSolution w = fundamental(ex, 0.0, {0.5}, init, 0.0);
        CHECK(w(0.5) == init);
    }
    SUBCASE("example against the closed form") {
        for (Complex z : {Complex(1.0, 0.0), Complex(0.0, 1.0), Complex(2.0, 3.0), Complex(M_PI, 0.0)}) {
            const MatrixSolution w = fundamental(ex, z, {0.25, 0.5, 0.75}, Matrix2c::Identity(), 0.0);
            for (double t : {0.25, 0.5, 0.75}) {
                CHECK(oracle::rel_err(w(t), oracle::example_W(t, z)) < 1e-8);
                CHECK(std::abs(w.det(t) - 1.0) < 1e-8);
            }
        }
    }
    SUBCASE("H = I") {
        const Hamiltonian id = Hamiltonian::identity(0.0, 3.0);
        const Complex z(0.7, -0.4);
        const MatrixSolution w = fundamental(id, z, {1.0, 3.0}, Matrix2c::Identity(), 0.0);
        CHECK(oracle::rel_err(w(1.0), oracle::identity_W(1.0, z)) < 1e-8);
        CHECK(oracle::rel_err(w(3.0), oracle::identity_W(3.0, z)) < 1e-8);
    }
    SUBCASE("piecewise determinant stays 1") {
        std::mt19937_64 gen(11);
        const Hamiltonian pw = oracle::random_piecewise(0.0, 1.0, 5, gen);
        const MatrixSolution w = fundamental(pw, Complex(2.0, -1.0), {0.4, 1.0}, Matrix2c::Identity(), 0.0);
        CHECK(std::abs(w.det(1.0) - 1.0) < 1e-8);
    }
}

TEST_CASE("Green identity residual is small") {
    const Hamiltonian id = Hamiltonian::identity(0.0, 1.0);
    const Complex z(1.0, 0.5), w(-0.5, 2.0);
    const SolutionSampler f = solve_row(id, z, 0.0, Vector2c(1.0, Complex(0.0, 1.0)));
    const SolutionSampler u = solve_row(id, w, 0.0, Vector2c(0.5, -2.0));
    CHECK(std::abs(greens_residual(id, u, f, 0.1, 0.9)) < 1e-8);

    const Hamiltonian ex = Hamiltonian::builtin("example", 0.0, 1.0);
    const SolutionSampler f2 = solve_row(ex, z, 0.0, Vector2c(1.0, 0.0));
    const SolutionSampler u2 = solve_row(ex, w, 0.0, Vector2c(0.0, 1.0));
    CHECK(std::abs(greens_residual(ex, u2, f2, 0.0, 0.8)) < 1e-7);
}

}
