#include <doctest.h>

#include <random>

#include "canonsys/errors.hpp"
#include "canonsys/example.hpp"
#include "canonsys/monodromy.hpp"

#include "oracles.hpp"

using namespace canon;

TEST_SUITE("monodromy") {

TEST_CASE("z = 0 gives the identity") {
    const IndefHamiltonianA ih = example::make_problem();
    CHECK(max_abs(monodromy_matrix(ih, 0.0) - Matrix2c::Identity()) < 1e-12);
    CHECK(max_abs(assemble_W(ih, 0.0, 1.5) - Matrix2c::Identity()) < 1e-12);
}

TEST_CASE("W(s_plus, pi) matches the closed form") {
    const IndefHamiltonianA ih = example::make_problem();
    Matrix2c expect;
    expect << -1.0, -2.0 / M_PI, 0.0, -1.0;
    CHECK(max_abs(monodromy_matrix(ih, M_PI) - expect) < 1e-6);
    CHECK(oracle::rel_err(assemble_W(ih, Complex(2.0, 3.0), 1.5), oracle::example_W(1.5, Complex(2.0, 3.0))) < 1e-6);
}

/// det W - 1 relative to the cancellation scale |W|^2 of w11 w22 - w12 w21.
TEST_CASE("determinant of the monodromy matrix is 1") {
    const IndefHamiltonianA ih = example::make_problem();
    const MonodromyPipeline pipe(ih);
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> r(0.0, 10.0), a(0.0, 2 * M_PI);
    for (int k = 0; k < 50; ++k) {
        const Complex z = std::polar(r(gen), a(gen));
        const Matrix2c w = pipe.factorise(z, {}, {2.0}).w(2.0);
        const double scale = std::max(1.0, max_abs(w) * max_abs(w));
        CHECK_MESSAGE(std::abs(w.determinant() - 1.0) <= 1e-7 * scale, z);
    }
}

TEST_CASE("u_plus against the closed form") {
    const IndefHamiltonianA ih = example::make_problem();
    const MonodromyPipeline pipe(ih);
    for (Complex z : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
        const VSpec closed{VChoice::custom, [](Complex w) { return oracle::example_W(2.0, w); }};
        const Matrix2c up = pipe.u_plus(pipe.v(z, closed));
        CHECK(oracle::rel_err(up.inverse(), oracle::example_Uplus_inv(z)) < 1e-6);
    }
}

TEST_CASE("M equals the closed N") {
    const MonodromyPipeline pipe(example::make_problem());
    const Complex z(0.5, 1.0);
    CHECK(max_abs(pipe.m_matrix(z) - oracle::example_N(z)) < 1e-8);
}

TEST_CASE("compare_discrete") {
    const IndefHamiltonianA ih = example::make_problem();
    CHECK(max_abs(compare_discrete(ih, ih, Complex(1.0, 1.0), 1.5)) < 1e-12);
    const IndefHamiltonianA other = ih.with_discrete({-1.0, 0.5}, 1, {2.0});
    CHECK(max_abs(compare_discrete(ih, other, Complex(1.0, -0.5), 2.0)) < 1e-6);
}

TEST_CASE("Weyl coefficient") {
    const IndefHamiltonianA ih = example::make_problem();
    const Complex q = weyl_intermediate(ih, Complex(0.0, 1.0));
    CHECK(std::abs(q.real()) < 1e-8);
    CHECK(q.imag() == doctest::Approx(0.31303).epsilon(1e-4));
    const Complex z(1.0, 2.0);
    CHECK(std::abs(weyl_intermediate(ih, std::conj(z)) - std::conj(weyl_intermediate(ih, z))) < 1e-8);
    CHECK_THROWS_AS(weyl_intermediate(ih, 1.0), Error);
}

TEST_CASE("kernel Gram matrix") {
    const auto pts = random_kernel_grid(6, 1);
    REQUIRE(pts.size() == 6);
    for (Complex z : pts) {
        CHECK(std::abs(z.real()) <= 3.0);
        CHECK(std::abs(z.imag()) >= 0.2);
        CHECK(std::abs(z.imag()) <= 3.0);
    }
    const KernelSignature none = kernel_gram([](Complex) { return Matrix2c::Identity().eval(); }, pts);
    CHECK(none.neg_count == 0);
    CHECK(none.gram.cwiseAbs().maxCoeff() == 0.0);

    // H = I on (0, 1): a positive kernel
    const KernelSignature pos = kernel_gram([](Complex z) { return oracle::identity_W(1.0, z); }, pts);
    CHECK(pos.neg_count == 0);

    CHECK_THROWS_AS(kernel_gram([](Complex) { return Matrix2c::Identity().eval(); }, {1.0}), Error);
    CHECK_THROWS_AS(kernel_gram([](Complex) { return Matrix2c::Identity().eval(); },
                                {Complex(1.0, 1.0), Complex(1.0, -1.0)}),
                    Error);
}

TEST_CASE("indefinite example has one negative square") {
    const MonodromyPipeline pipe(example::make_problem());
    const KernelSignature ks =
        kernel_gram([&](Complex z) { return pipe.factorise(z, {}, {2.0}).w(2.0); }, random_kernel_grid(8, 3));
    CHECK(ks.neg_count == 1);
}

}
