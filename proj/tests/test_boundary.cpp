#include <doctest.h>

#include "canonsys/boundary.hpp"
#include "canonsys/example.hpp"
#include "canonsys/monodromy.hpp"

#include "oracles.hpp"

using namespace canon;

TEST_SUITE("boundary") {

TEST_CASE("limit nodes approach sigma geometrically") {
    const IndefHamiltonianA ih = example::make_problem();
    const auto nodes = limit_nodes(ih, Side::minus);
    REQUIRE(nodes.size() >= 10);
    CHECK(nodes[0] == doctest::Approx(0.9));
    for (std::size_t k = 1; k < nodes.size(); ++k) CHECK(1.0 - nodes[k] == doctest::Approx((1.0 - nodes[k - 1]) / 2));
    for (double x : limit_nodes(ih, Side::plus)) CHECK(x > 1.0);
}

TEST_CASE("boundary values of the example rows") {
    const IndefHamiltonianA ih = example::make_problem();
    const MonodromyPipeline pipe(ih);
    for (Complex z : {Complex(M_PI, 0.0), Complex(0.0, 1.0), Complex(2.0, 3.0)}) {
        const MatrixSolution wm = pipe.w_minus(z);
        const Matrix2c ref = oracle::example_Uminus(z);
        for (int i = 0; i < 2; ++i) {
            const RegularisedBoundary g = pipe.side(Side::minus).gamma(wm.row(i));
            CHECK(std::abs(g.gamma_s - ref(i, 0)) < 1e-7 * std::max(1.0, std::abs(ref(i, 0))));
            CHECK(std::abs(g.gamma_r - ref(i, 1)) < 1e-7 * std::max(1.0, std::abs(ref(i, 1))));
        }
        // Gamma_r of the second row is sin z / z
        const Complex gr = pipe.side(Side::minus).gamma_r(wm.row(1)).value;
        CHECK(std::abs(gr - std::sin(z) / z) < 1e-8 * std::max(1.0, std::abs(std::sin(z) / z)));
    }
    const Matrix2c up = u_minus(ih, M_PI);
    Matrix2c expect;
    expect << -2.0, 1.0 / M_PI, -M_PI, 0.0;
    CHECK(max_abs(up - expect) < 1e-7);
}

TEST_CASE("the zero solution has zero boundary values") {
    const IndefHamiltonianA ih = example::make_problem();
    const SideBoundary sb(ih, Side::minus);
    const SolutionSampler zero = solve_from_gamma(sb, Complex(1.0, 1.0), Vector2c::Zero());
    const RegularisedBoundary g = sb.gamma(zero);
    CHECK(std::abs(g.gamma_s) == 0.0);
    CHECK(std::abs(g.gamma_r) == 0.0);
}

TEST_CASE("solve_from_gamma round trip") {
    const IndefHamiltonianA ih = example::make_problem();
    for (Side side : {Side::minus, Side::plus}) {
        const SideBoundary sb(ih, side);
        const Vector2c c(Complex(0.5, -1.0), Complex(-2.0, 0.25));
        const SolutionSampler f = solve_from_gamma(sb, Complex(1.0, 2.0), c);
        CHECK((sb.gamma(f).vec() - c).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("indivisible side reads endpoint values") {
    const IndefHamiltonianA ih = make_indefinite(Hamiltonian::builtin("example", 0.0, 1.0),
                                                 Hamiltonian::builtin("example_indivisible", 1.0, 2.0), 1, {-2.0, 0.0});
    const SideBoundary sb(ih, Side::plus);
    CHECK(sb.indivisible());
    const MonodromyPipeline pipe(ih);
    const MatrixSolution v = pipe.v(Complex(1.0, 1.0));
    CHECK(max_abs(pipe.u_plus(v) - Matrix2c::Identity()) == 0.0);
}

TEST_CASE("interface residual") {
    const IndefHamiltonianA ih = example::make_problem();
    const MonodromyPipeline pipe(ih);
    const Complex z(1.0, 0.5);
    const MonodromyFactorisation f = pipe.factorise(z);
    // transposed row i of the plus-side solution left * V
    auto plus_row = [&](int i) {
        SolutionSampler s;
        s.z = z;
        s.lo = f.v.lo;
        s.hi = f.v.hi;
        s.t0 = f.v.t0;
        s.knots = f.v.knots;
        const Eigen::Matrix<Complex, 1, 2> l = f.left.row(i);
        const MatrixSolution v = f.v;
        s.eval = [l, v](double t) { return Vector2c((l * v(t)).transpose()); };
        s.y0 = s.eval(s.t0);
        return s;
    };
    for (int i = 0; i < 2; ++i) CHECK(max_abs(interface_residual(ih, f.w_minus.row(i), plus_row(i), z)) < 1e-6);

    // shifting d_0 by eps changes p by -eps z: residual becomes (-eps z Gamma_r, 0)
    const double eps = 0.5;
    const IndefHamiltonianA shifted = ih.with_discrete({ih.d[0] + eps, ih.d[1]}, 0, {});
    const Vector2c r = interface_residual(shifted, f.w_minus.row(1), plus_row(1), z);
    const Complex gr = pipe.side(Side::minus).gamma_r(f.w_minus.row(1)).value;
    CHECK(std::abs(r(0) - eps * z * gr) < 1e-6);
    CHECK(std::abs(r(1)) < 1e-6);
}

}
