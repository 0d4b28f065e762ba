#ifndef CANONSYS_QUADRATURE_HPP
#define CANONSYS_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "canonsys/core.hpp"
#include "canonsys/errors.hpp"

namespace canon {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const Complex& v) { return std::abs(v); }
template <typename Derived>
inline double magnitude(const Eigen::MatrixBase<Derived>& v) {
    return v.cwiseAbs().maxCoeff();
}

template <typename T>
inline T zero_like() {
    if constexpr (std::is_arithmetic_v<T> || std::is_same_v<T, Complex>) return T(0);
    else return T::Zero();
}

template <typename T>
struct QuadResult {
    T value;
    double error = 0.0;
    double abs_integral = 0.0;  // integral of |f|, sets the roundoff floor
};

namespace detail {

// Gauss-Kronrod 7-15 abscissae and weights on [-1, 1].
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T, typename F>
QuadResult<T> gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    const T fc = f(c);
    T kron = fc * kWgk[7];
    T gauss = fc * kWg[3];
    double resabs = magnitude(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = r * kXgk[j];
        const T f1 = f(c - dx), f2 = f(c + dx);
        const T sum = f1 + f2;
        kron = kron + sum * kWgk[j];
        resabs += (magnitude(f1) + magnitude(f2)) * kWgk[j];
        if (j % 2 == 1) gauss = gauss + sum * kWg[j / 2];
    }
    return {kron * r, magnitude((kron - gauss) * r), resabs * std::abs(r)};
}

struct Segment {
    double a, b;
    int depth;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7, 15) quadrature of f over the oriented
/// interval [a, b]: the subinterval with the largest error estimate is
/// bisected until the summed estimate meets max(abs_tol, rel_tol |I|), falls
/// to the roundoff level, or bisection stops improving it. Throws IntegrationError with the worst
/// subintervals when `max_segments` or `max_depth` bisections do not suffice.
template <typename T, typename F>
QuadResult<T> integrate(F&& f, double a, double b, double abs_tol, double rel_tol = 1e-13, int max_depth = 30,
                        int max_segments = 2000) {
    if (a == b) return {zero_like<T>(), 0.0};
    std::vector<detail::Segment> segs;
    std::vector<QuadResult<T>> parts;  // parts[k] belongs to segs[k]
    auto eval = [&](double lo, double hi, int depth) {
        const QuadResult<T> r = detail::gk15<T>(f, lo, hi);
        if (!std::isfinite(r.error))
            throw IntegrationError("quadrature", "non-finite integrand", {{lo, hi}});
        parts.push_back(r);
        segs.push_back({lo, hi, depth, r.error});
    };
    eval(a, b, 0);
    T total = parts[0].value;
    double err = parts[0].error, absint = parts[0].abs_integral;
    // Max-heap on the error estimate, carrying each segment's result index.
    std::vector<std::pair<detail::Segment, std::size_t>> open{{segs[0], 0}};
    auto cmp = [](const auto& x, const auto& y) { return x.first < y.first; };
    const double eps = std::numeric_limits<double>::epsilon();
    while (true) {
        const double tol = std::max(abs_tol, rel_tol * magnitude(total));
        if (err <= std::max(tol, 50.0 * eps * absint)) break;
        if (open.empty()) break;  // only roundoff-limited pieces remain
        if (static_cast<int>(parts.size()) >= max_segments || open.front().first.depth >= max_depth) {
            std::vector<std::pair<double, double>> trace;
            for (std::size_t k = 0; k < open.size() && k < 8; ++k) trace.emplace_back(open[k].first.a, open[k].first.b);
            throw IntegrationError("quadrature", "adaptive quadrature did not converge", std::move(trace));
        }
        std::pop_heap(open.begin(), open.end(), cmp);
        const auto [seg, idx] = open.back();
        open.pop_back();
        const QuadResult<T> old = parts[idx];
        const double m = 0.5 * (seg.a + seg.b);
        const std::size_t i1 = parts.size();
        eval(seg.a, m, seg.depth + 1);
        eval(m, seg.b, seg.depth + 1);
        total = total - old.value + parts[i1].value + parts[i1 + 1].value;
        const double child_err = parts[i1].error + parts[i1 + 1].error;
        err += child_err - old.error;
        absint += parts[i1].abs_integral + parts[i1 + 1].abs_integral - old.abs_integral;
        // Value stable but error not shrinking: the estimate is at the
        // roundoff level of the integrand and further bisection is futile.
        const T child_val = parts[i1].value + parts[i1 + 1].value;
        if (child_err >= 0.99 * old.error && magnitude(child_val - old.value) <= 1e-5 * magnitude(child_val)) continue;
        for (std::size_t k : {i1, i1 + 1}) {
            open.push_back({segs[k], k});
            std::push_heap(open.begin(), open.end(), cmp);
        }
    }
    return {total, err, absint};
}

/// Chebyshev points of the first kind on [-1, 1] with the matrices needed
/// for barycentric interpolation and cumulative (spectral) integration.
class ChebyshevRule {
public:
    explicit ChebyshevRule(int n);

    int size() const noexcept { return n_; }
    const Eigen::VectorXd& nodes() const noexcept { return nodes_; }
    /// weights() . f = integral of the interpolant over [-1, 1].
    const Eigen::VectorXd& weights() const noexcept { return weights_; }
    /// (cumulative() * f)_i = integral of the interpolant over [-1, x_i].
    const Eigen::MatrixXd& cumulative() const noexcept { return cumulative_; }
    const Eigen::VectorXd& barycentric() const noexcept { return bary_; }

    /// Interpolant of node values evaluated at s in [-1, 1].
    template <typename T>
    T interpolate(const std::vector<T>& values, double s) const {
        T num = zero_like<T>();
        double den = 0.0;
        for (int j = 0; j < n_; ++j) {
            const double d = s - nodes_(j);
            if (d == 0.0) return values[j];
            const double w = bary_(j) / d;
            num = num + values[j] * w;
            den += w;
        }
        return num * (1.0 / den);
    }

private:
    int n_;
    Eigen::VectorXd nodes_, weights_, bary_;
    Eigen::MatrixXd cumulative_;
};

const ChebyshevRule& chebyshev_rule(int n);

/// One oriented panel [start, end]; `end` is closer to the singular point.
struct Panel {
    double start;
    double end;
    double half() const { return 0.5 * (end - start); }
    double at(double s) const { return start + (s + 1.0) * half(); }
    bool contains(double t) const { return (t - start) * (t - end) <= 0.0; }
};

/// Panels covering [regular, singular) with geometric refinement toward the
/// singular point: boundaries at distance L/2^k from it, plus any breakpoints.
class PanelGrid {
public:
    PanelGrid(double regular, double singular, const std::vector<double>& breakpoints, int geometric_levels,
              int nodes_per_panel);

    double regular() const noexcept { return regular_; }
    double singular() const noexcept { return singular_; }
    double direction() const noexcept { return singular_ > regular_ ? 1.0 : -1.0; }
    const std::vector<Panel>& panels() const noexcept { return panels_; }
    const ChebyshevRule& rule() const noexcept { return *rule_; }
    /// Index of the panel containing t (t between regular and singular).
    std::size_t locate(double t) const;
    /// Position of node j of panel p.
    double node(std::size_t p, int j) const { return panels_[p].at(rule_->nodes()(j)); }
    /// Index of the first panel whose end is within `distance` of the singular point.
    std::size_t first_panel_within(double distance) const;

private:
    double regular_;
    double singular_;
    std::vector<Panel> panels_;
    const ChebyshevRule* rule_;
};

/// Node values of a function on a PanelGrid, plus its value at each panel
/// start; evaluated by per-panel barycentric interpolation.
template <typename T>
class PanelFunction {
public:
    PanelFunction() = default;
    using GridPtr = std::shared_ptr<const PanelGrid>;

    PanelFunction(GridPtr grid, std::vector<std::vector<T>> values, std::vector<T> starts)
        : grid_(std::move(grid)), values_(std::move(values)), starts_(std::move(starts)) {}

    /// Samples g at every node.
    template <typename G>
    static PanelFunction sample(const GridPtr& gp, G&& g) {
        const PanelGrid& grid = *gp;
        const auto& panels = grid.panels();
        std::vector<std::vector<T>> values(panels.size());
        std::vector<T> starts(panels.size());
        const int n = grid.rule().size();
        for (std::size_t p = 0; p < panels.size(); ++p) {
            values[p].reserve(n);
            for (int j = 0; j < n; ++j) values[p].push_back(g(grid.node(p, j)));
            starts[p] = g(panels[p].start);
        }
        return PanelFunction(gp, std::move(values), std::move(starts));
    }

    /// F(t) = F(regular) + oriented integral of g from the regular point to t.
    static PanelFunction cumulative(const PanelFunction& g, const T& at_regular) {
        const PanelGrid& grid = *g.grid_;
        const auto& panels = grid.panels();
        const auto& rule = grid.rule();
        const int n = rule.size();
        std::vector<std::vector<T>> values(panels.size());
        std::vector<T> starts(panels.size());
        T running = at_regular;
        for (std::size_t p = 0; p < panels.size(); ++p) {
            starts[p] = running;
            const double h = panels[p].half();
            values[p].resize(n);
            for (int i = 0; i < n; ++i) {
                T acc = zero_like<T>();
                for (int j = 0; j < n; ++j) acc = acc + g.values_[p][j] * rule.cumulative()(i, j);
                values[p][i] = running + acc * h;
            }
            T total = zero_like<T>();
            for (int j = 0; j < n; ++j) total = total + g.values_[p][j] * rule.weights()(j);
            running = running + total * h;
        }
        return PanelFunction(g.grid_, std::move(values), std::move(starts));
    }

    /// F(t) = -(oriented integral of g from t to the singular point): the
    /// integral is accumulated from the singular end.
    static PanelFunction from_singular(const PanelFunction& g) {
        const PanelGrid& grid = *g.grid_;
        const auto& panels = grid.panels();
        const auto& rule = grid.rule();
        const int n = rule.size();
        std::vector<std::vector<T>> values(panels.size());
        std::vector<T> starts(panels.size());
        T tail = zero_like<T>();  // integral from the end of panel p to the singular point
        for (std::size_t q = panels.size(); q-- > 0;) {
            const double h = panels[q].half();
            T total = zero_like<T>();
            for (int j = 0; j < n; ++j) total = total + g.values_[q][j] * rule.weights()(j);
            total = total * h;
            values[q].resize(n);
            for (int i = 0; i < n; ++i) {
                T head = zero_like<T>();
                for (int j = 0; j < n; ++j) head = head + g.values_[q][j] * rule.cumulative()(i, j);
                // integral from node i to the panel end = total - head
                values[q][i] = (tail + total - head * h) * -1.0;
            }
            tail = tail + total;
            starts[q] = tail * -1.0;
        }
        return PanelFunction(g.grid_, std::move(values), std::move(starts));
    }

    T operator()(double t) const {
        const std::size_t p = grid_->locate(t);
        const Panel& panel = grid_->panels()[p];
        if (t == panel.start) return starts_[p];
        const double s = 2.0 * (t - panel.start) / (panel.end - panel.start) - 1.0;
        return grid_->rule().interpolate(values_[p], s);
    }

    const T& at_regular() const { return starts_.front(); }
    const std::vector<std::vector<T>>& values() const noexcept { return values_; }
    const PanelGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const noexcept { return grid_; }
    bool empty() const noexcept { return !grid_; }

    /// Pointwise transform of the node data.
    template <typename U, typename G>
    PanelFunction<U> map(G&& g) const {
        std::vector<std::vector<U>> values(values_.size());
        std::vector<U> starts(starts_.size());
        for (std::size_t p = 0; p < values_.size(); ++p) {
            for (const T& v : values_[p]) values[p].push_back(g(v));
            starts[p] = g(starts_[p]);
        }
        return PanelFunction<U>(grid_, std::move(values), std::move(starts));
    }

    /// Pointwise transform g(t, value) of the node data.
    template <typename U, typename G>
    PanelFunction<U> transform(G&& g) const {
        const auto& panels = grid_->panels();
        std::vector<std::vector<U>> values(values_.size());
        std::vector<U> starts(starts_.size());
        for (std::size_t p = 0; p < values_.size(); ++p) {
            for (std::size_t j = 0; j < values_[p].size(); ++j)
                values[p].push_back(g(grid_->node(p, static_cast<int>(j)), values_[p][j]));
            starts[p] = g(panels[p].start, starts_[p]);
        }
        return PanelFunction<U>(grid_, std::move(values), std::move(starts));
    }

private:
    GridPtr grid_;
    std::vector<std::vector<T>> values_;
    std::vector<T> starts_;
};

/// Partial integrals of f from the regular point up to each geometric
/// boundary sigma -/+ L 2^-k, with a tail-convergence verdict.
struct TailReport {
    bool converges = false;
    double value = 0.0;                  // best estimate of the improper integral
    std::vector<double> partials;        // integral up to distance L 2^-k
    std::vector<double> increments;      // partials[k] - partials[k-1]
    double tail_estimate = 0.0;          // estimated remainder beyond the last boundary
};

/// Convergence verdict from the per-panel increments of an improper integral.
inline TailReport tail_from_increments(std::vector<double> increments, double tol_tail) {
    TailReport rep;
    double sum = 0.0;
    for (double inc : increments) {
        sum += inc;
        rep.partials.push_back(sum);
    }
    rep.increments = std::move(increments);
    rep.value = sum;
    const auto& inc = rep.increments;
    const std::size_t n = inc.size();
    if (n == 0) {
        rep.converges = true;
        return rep;
    }
    // A geometric fit of the last increments predicts the remainder.
    double ratio = 1.0;
    if (n >= 3 && inc[n - 2] != 0.0) ratio = std::abs(inc[n - 1] / inc[n - 2]);
    const double last = std::abs(inc.back());
    const double scale = std::max(1.0, std::abs(sum));
    if (last == 0.0) rep.tail_estimate = 0.0;
    else if (ratio < 0.99) rep.tail_estimate = last * ratio / (1.0 - ratio);
    else rep.tail_estimate = std::numeric_limits<double>::infinity();
    rep.converges = last <= tol_tail * scale && rep.tail_estimate <= tol_tail * scale;
    return rep;
}

/// Boundaries regular = b_0, b_1, ..., b_levels with b_k at distance L 2^-k
/// from the singular point.
inline std::vector<double> geometric_boundaries(double regular, double singular, int levels) {
    const double len = std::abs(singular - regular);
    const double dir = singular > regular ? 1.0 : -1.0;
    std::vector<double> b{regular};
    for (int k = 1; k <= levels; ++k) b.push_back(singular - dir * len * std::ldexp(1.0, -k));
    return b;
}

/// Improper integral of f over the segment between `regular` and `singular`
/// (as a positive-length integral), split at the geometric boundaries.
template <typename F>
TailReport improper_tail(F&& f, double regular, double singular, int levels, double tol_tail) {
    const auto b = geometric_boundaries(regular, singular, levels);
    std::vector<double> inc;
    for (std::size_t k = 1; k < b.size(); ++k) {
        const double lo = std::min(b[k - 1], b[k]), hi = std::max(b[k - 1], b[k]);
        inc.push_back(integrate<double>(f, lo, hi, 1e-300, 1e-12, 40).value);
    }
    return tail_from_increments(std::move(inc), tol_tail);
}

}  // namespace canon

#endif  // CANONSYS_QUADRATURE_HPP
