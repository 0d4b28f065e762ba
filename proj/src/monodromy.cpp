#include "canonsys/monodromy.hpp"

#include <random>
#include <sstream>

#include "canonsys/errors.hpp"

namespace canon {

Matrix2c MonodromyFactorisation::w(double t) const {
    if (t < sigma) return w_minus(t);
    if (t == sigma) throw Error(ErrorKind::domain, "monodromy", "W_h is not defined at the singularity");
    return left * v(t);
}

MonodromyPipeline::MonodromyPipeline(IndefHamiltonianA ih, Tolerances tol)
    : ih_(std::move(ih)), tol_(tol) {
    ih_.validate(tol_.tol_indiv);
    minus_ = std::make_shared<const SideBoundary>(ih_, Side::minus, tol_);
    plus_ = std::make_shared<const SideBoundary>(ih_, Side::plus, tol_);
}

MatrixSolution MonodromyPipeline::w_minus(Complex z, const std::vector<double>& t_grid) const {
    const SideBoundary& sb = *minus_;
    return fundamental(ih_.h_minus, z, t_grid, Matrix2c::Identity(), sb.anchor(), sb.solve_options());
}

MatrixSolution MonodromyPipeline::v(Complex z, const VSpec& spec, const std::vector<double>& t_grid) const {
    const SideBoundary& sb = *plus_;
    Matrix2c init = Matrix2c::Identity();
    if (spec.choice == VChoice::custom) {
        if (!spec.anchor) throw Error(ErrorKind::precondition, "monodromy", "custom V choice without an anchor");
        init = spec.anchor(z);
    }
    return fundamental(ih_.h_plus, z, t_grid, init, sb.anchor(), sb.solve_options());
}

namespace {

Matrix2c rows_gamma(const SideBoundary& sb, const MatrixSolution& m, double* err) {
    Matrix2c u;
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
        const RegularisedBoundary rb = sb.gamma(m.row(i));
        u.row(i) = rb.vec().transpose();
        worst = std::max(worst, rb.err_est);
    }
    if (err) *err = worst;
    return u;
}

}  // namespace

Matrix2c MonodromyPipeline::u_minus(const MatrixSolution& w_minus, double* err) const {
    return rows_gamma(*minus_, w_minus, err);
}

Matrix2c MonodromyPipeline::u_minus(Complex z) const { return u_minus(w_minus(z)); }

Matrix2c MonodromyPipeline::u_plus(const MatrixSolution& v, double* err) const {
    const Complex det_v = v.det(v.t0);
    if (!(std::abs(det_v) >= tol_.tol_det))
        throw Error(ErrorKind::precondition, "monodromy", "V(., z) is singular");
    return rows_gamma(*plus_, v, err);
}

MonodromyFactorisation MonodromyPipeline::factorise(Complex z, const VSpec& spec,
                                                    const std::vector<double>& t_grid) const {
    MonodromyFactorisation f;
    f.z = z;
    f.sigma = ih_.sigma();
    f.w_minus = w_minus(z, t_grid);
    f.v = v(z, spec, t_grid);
    double em = 0.0, ep = 0.0;
    f.u_minus = u_minus(f.w_minus, &em);
    f.u_plus = u_plus(f.v, &ep);
    f.err_est = std::max(em, ep);
    f.r = build_R(ih_, z);
    const Eigen::JacobiSVD<Matrix2c> svd(f.u_plus);
    const double smin = svd.singularValues()(1);
    if (!(smin > 0.0) || svd.singularValues()(0) / smin > tol_.max_condition)
        throw ConditioningError("monodromy", "U+(z) is too ill-conditioned to invert", f.u_plus);
    f.left = f.u_minus * f.r.transpose() * f.u_plus.inverse();
    f.det_report = {f.u_minus.determinant(), f.u_plus.determinant(), f.v.det(f.v.t0)};
    return f;
}

Matrix2c MonodromyPipeline::m_matrix(const MatrixSolution& wm) const {
    const auto& nodes = minus_->nodes();
    std::array<std::vector<Complex>, 4> s;
    for (double x : nodes) {
        const Matrix2c w = wm(x);
        const Vector2c a(w(0, 1), w(1, 1));
        const Vector2c b(w(1, 1), -w(0, 1));
        const Matrix2c m = a * b.transpose();
        for (int k = 0; k < 4; ++k) s[k].push_back(m(k / 2, k % 2));
    }
    Matrix2c out;
    for (int k = 0; k < 4; ++k) out(k / 2, k % 2) = limit_at_sigma(nodes, ih_.sigma(), s[k], tol_, "M(z)").value;
    return out;
}

LimitEstimate<Complex> MonodromyPipeline::weyl_intermediate(Complex z) const {
    if (z.imag() == 0.0)
        throw Error(ErrorKind::precondition, "monodromy", "the intermediate Weyl coefficient needs Im z != 0");
    const MatrixSolution wm = w_minus(z);
    const auto& nodes = minus_->nodes();
    std::vector<Complex> s;
    for (double x : nodes) {
        const Matrix2c w = wm(x);
        s.push_back(w(0, 1) / w(1, 1));
    }
    return limit_at_sigma(nodes, ih_.sigma(), s, tol_, "q_sigma");
}

Matrix2c u_minus(const IndefHamiltonianA& ih, Complex z, const Tolerances& tol) {
    return MonodromyPipeline(ih, tol).u_minus(z);
}

Matrix2c u_plus(const IndefHamiltonianA& ih, Complex, const MatrixSolution& v, const Tolerances& tol) {
    return MonodromyPipeline(ih, tol).u_plus(v);
}

Matrix2c assemble_W(const IndefHamiltonianA& ih, Complex z, double t, const VSpec& spec, const Tolerances& tol) {
    return MonodromyPipeline(ih, tol).factorise(z, spec, {t}).w(t);
}

Matrix2c monodromy_matrix(const IndefHamiltonianA& ih, Complex z, const Tolerances& tol) {
    return assemble_W(ih, z, ih.s_plus(), {}, tol);
}

Matrix2c compare_discrete(const IndefHamiltonianA& ih1, const IndefHamiltonianA& ih2, Complex z, double t,
                          const Tolerances& tol) {
    if (!ih1.h_minus.same_as(ih2.h_minus) || !ih1.h_plus.same_as(ih2.h_plus) || ih1.delta != ih2.delta ||
        ih1.omega_minus != ih2.omega_minus || ih1.omega_plus != ih2.omega_plus)
        throw Error(ErrorKind::precondition, "monodromy", "compare_discrete needs identical Hamiltonians");
    const MonodromyPipeline p1(ih1, tol), p2(ih2, tol);
    const MonodromyFactorisation f1 = p1.factorise(z, {}, {t});
    const MonodromyFactorisation f2 = p2.factorise(z, {}, {t});
    const Matrix2c w1 = f1.w(t);
    const Complex dp = (build_p(ih2) - build_p(ih1))(z);
    return f2.w(t) - w1 - dp * p1.m_matrix(f1.w_minus) * w1;
}

Complex weyl_intermediate(const IndefHamiltonianA& ih, Complex z, const Tolerances& tol) {
    return MonodromyPipeline(ih, tol).weyl_intermediate(z).value;
}

KernelSignature kernel_gram(const std::function<Matrix2c(Complex)>& w_fun, const std::vector<Complex>& points,
                            double tol_eig) {
    const int m = static_cast<int>(points.size());
    for (int i = 0; i < m; ++i) {
        if (points[i].imag() == 0.0)
            throw Error(ErrorKind::precondition, "monodromy", "kernel points must be non-real");
        for (int j = 0; j < m; ++j) {
            const double scale = std::max(1.0, std::abs(points[i]));
            if (i != j && (std::abs(points[i] - points[j]) <= 1e-12 * scale ||
                           std::abs(points[i] - std::conj(points[j])) <= 1e-12 * scale))
                throw Error(ErrorKind::precondition, "monodromy", "kernel points coincide or are conjugate");
        }
    }
    const Matrix2c j = symplectic_j<Complex>();
    std::vector<Matrix2c> w;
    for (const Complex& z : points) w.push_back(w_fun(z));
    KernelSignature ks;
    ks.grid = points;
    ks.gram.resize(2 * m, 2 * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            ks.gram.block<2, 2>(2 * a, 2 * b) =
                (w[a] * j * w[b].adjoint() - j) / (points[a] - std::conj(points[b]));
    const Eigen::MatrixXcd herm = 0.5 * (ks.gram + ks.gram.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
    ks.eigenvalues = es.eigenvalues();
    const double norm = ks.eigenvalues.size() ? ks.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    ks.min_eig = ks.eigenvalues.size() ? ks.eigenvalues(0) : 0.0;
    for (int k = 0; k < ks.eigenvalues.size(); ++k)
        if (ks.eigenvalues(k) < -tol_eig * norm) ++ks.neg_count;
    return ks;
}

std::vector<Complex> random_kernel_grid(int count, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.2, 3.0);
    std::bernoulli_distribution upper(0.5);
    std::vector<Complex> pts;
    for (int i = 0; i < count; ++i) {
        const double r = re(gen);
        const double s = im(gen);
        pts.emplace_back(r, upper(gen) ? s : -s);
    }
    return pts;
}

}  // namespace canon
