#include "canonsys/hamiltonian.hpp"

#include <algorithm>
#include <sstream>

#include "canonsys/errors.hpp"

namespace canon {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::domain: return "domain";
        case ErrorKind::evaluation: return "evaluation";
        case ErrorKind::indeterminate: return "indeterminate";
        case ErrorKind::configuration: return "configuration";
        case ErrorKind::unsupported: return "unsupported";
        case ErrorKind::integration: return "integration";
        case ErrorKind::singularity_proximity: return "singularity_proximity";
        case ErrorKind::limit_failure: return "limit_failure";
        case ErrorKind::conditioning: return "conditioning";
        case ErrorKind::precondition: return "precondition";
    }
    return "unknown";
}

double PowerTerm::operator()(double t) const {
    const double base = t - center;
    if (power == 0.0) return coef;
    if (power == std::round(power)) return coef * std::pow(base, power);
    return coef * std::pow(std::abs(base), power);
}

namespace {

double sum_terms(const std::vector<PowerTerm>& terms, double t) {
    double s = 0.0;
    for (const auto& term : terms) s += term(t);
    return s;
}

Entries builtin_entries(const std::string& name, double t) {
    const double u = t - 1.0;
    if (name == "example") return {u * u, 1.0 / (u * u), 0.0};
    if (name == "identity") return {1.0, 1.0, 0.0};
    if (name == "example_indivisible") return {0.0, 1.0 / (u * u), 0.0};
    throw Error(ErrorKind::configuration, "hamiltonian", "unknown builtin Hamiltonian '" + name + "'");
}

Entries piecewise_entries(const PiecewiseSpec& spec, double t) {
    const auto& pieces = spec.pieces;
    // Pieces are sorted and contiguous; a breakpoint belongs to the right piece.
    auto it = std::upper_bound(pieces.begin(), pieces.end(), t,
                               [](double v, const Piece& p) { return v < p.from; });
    const Piece& p = it == pieces.begin() ? pieces.front() : *std::prev(it);
    return {sum_terms(p.h1, t), sum_terms(p.h2, t), sum_terms(p.h3, t)};
}

Entries table_entries(const TableSpec& spec, double t) {
    const auto& ts = spec.t;
    if (t <= ts.front()) return {spec.h1.front(), spec.h2.front(), spec.h3.front()};
    if (t >= ts.back()) return {spec.h1.back(), spec.h2.back(), spec.h3.back()};
    const auto k = static_cast<std::size_t>(std::upper_bound(ts.begin(), ts.end(), t) - ts.begin());
    const double a = ts[k - 1], b = ts[k];
    const double w = (t - a) / (b - a);
    auto lerp = [&](const std::vector<double>& v) { return (1.0 - w) * v[k - 1] + w * v[k]; };
    if (t == a) return {spec.h1[k - 1], spec.h2[k - 1], spec.h3[k - 1]};
    return {lerp(spec.h1), lerp(spec.h2), lerp(spec.h3)};
}

void validate_spec(const HamiltonianSpec& spec, double lo, double hi) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw Error(ErrorKind::configuration, "hamiltonian", "interval must be finite with lo < hi");
    if (const auto* b = std::get_if<BuiltinSpec>(&spec)) {
        builtin_entries(b->name, 0.5 * (lo + hi));
    } else if (const auto* p = std::get_if<PiecewiseSpec>(&spec)) {
        if (p->pieces.empty())
            throw Error(ErrorKind::configuration, "hamiltonian", "piecewise Hamiltonian has no pieces");
        for (std::size_t i = 0; i < p->pieces.size(); ++i) {
            const auto& piece = p->pieces[i];
            if (!(piece.from < piece.to))
                throw Error(ErrorKind::configuration, "hamiltonian", "piece with from >= to");
            if (i > 0 && piece.from != p->pieces[i - 1].to)
                throw Error(ErrorKind::configuration, "hamiltonian", "pieces must be contiguous");
        }
        if (p->pieces.front().from > lo || p->pieces.back().to < hi)
            throw Error(ErrorKind::configuration, "hamiltonian", "pieces do not cover the interval");
    } else if (const auto* tb = std::get_if<TableSpec>(&spec)) {
        const auto n = tb->t.size();
        if (n < 2 || tb->h1.size() != n || tb->h2.size() != n || tb->h3.size() != n)
            throw Error(ErrorKind::configuration, "hamiltonian", "table columns must have equal length >= 2");
        for (std::size_t i = 1; i < n; ++i)
            if (!(tb->t[i - 1] < tb->t[i]))
                throw Error(ErrorKind::configuration, "hamiltonian", "table nodes must be strictly increasing");
        if (tb->t.front() > lo || tb->t.back() < hi)
            throw Error(ErrorKind::configuration, "hamiltonian", "table does not cover the interval");
    } else if (const auto* f = std::get_if<FunctionSpec>(&spec)) {
        if (!f->fn) throw Error(ErrorKind::configuration, "hamiltonian", "empty function Hamiltonian");
    }
}

}  // namespace

Hamiltonian::Hamiltonian(double lo, double hi, HamiltonianSpec spec, EndpointKind lower, EndpointKind upper)
    : lo_(lo), hi_(hi), lower_(lower), upper_(upper) {
    validate_spec(spec, lo, hi);
    spec_ = std::make_shared<const HamiltonianSpec>(std::move(spec));
}

Hamiltonian Hamiltonian::builtin(const std::string& name, double lo, double hi) {
    return Hamiltonian(lo, hi, BuiltinSpec{name});
}

Hamiltonian Hamiltonian::identity(double lo, double hi) { return builtin("identity", lo, hi); }

Hamiltonian Hamiltonian::from_function(double lo, double hi, std::function<Entries(double)> fn, bool diagonal,
                                       std::vector<double> breakpoints) {
    return Hamiltonian(lo, hi, FunctionSpec{std::move(fn), diagonal, std::move(breakpoints)});
}

Entries Hamiltonian::entries_unchecked(double t) const {
    return std::visit(
        [t](const auto& s) -> Entries {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, BuiltinSpec>) return builtin_entries(s.name, t);
            else if constexpr (std::is_same_v<S, PiecewiseSpec>) return piecewise_entries(s, t);
            else if constexpr (std::is_same_v<S, TableSpec>) return table_entries(s, t);
            else return s.fn(t);
        },
        *spec_);
}

Entries Hamiltonian::entries(double t) const {
    if (!(t > lo_ && t < hi_)) {
        std::ostringstream os;
        os << "t = " << t << " outside (" << lo_ << ", " << hi_ << ")";
        throw Error(ErrorKind::domain, "hamiltonian", os.str());
    }
    Entries e = entries_unchecked(t);
    if (!e.finite()) {
        std::ostringstream os;
        os << "non-finite Hamiltonian entry at t = " << t;
        throw Error(ErrorKind::evaluation, "hamiltonian", os.str());
    }
    return e;
}

bool Hamiltonian::is_diagonal() const {
    return std::visit(
        [](const auto& s) -> bool {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, BuiltinSpec>) return true;
            else if constexpr (std::is_same_v<S, PiecewiseSpec>) {
                return std::all_of(s.pieces.begin(), s.pieces.end(), [](const Piece& p) {
                    return std::all_of(p.h3.begin(), p.h3.end(), [](const PowerTerm& t) { return t.coef == 0.0; });
                });
            } else if constexpr (std::is_same_v<S, TableSpec>) {
                return std::all_of(s.h3.begin(), s.h3.end(), [](double v) { return v == 0.0; });
            } else {
                return s.diagonal;
            }
        },
        *spec_);
}

std::vector<double> Hamiltonian::breakpoints() const {
    std::vector<double> raw = std::visit(
        [](const auto& s) -> std::vector<double> {
            using S = std::decay_t<decltype(s)>;
            std::vector<double> out;
            if constexpr (std::is_same_v<S, PiecewiseSpec>) {
                for (std::size_t i = 1; i < s.pieces.size(); ++i) out.push_back(s.pieces[i].from);
            } else if constexpr (std::is_same_v<S, TableSpec>) {
                out.assign(s.t.begin(), s.t.end());
            } else if constexpr (std::is_same_v<S, FunctionSpec>) {
                out = s.breakpoints;
            }
            return out;
        },
        *spec_);
    std::vector<double> inside;
    for (double b : raw)
        if (b > lo_ && b < hi_) inside.push_back(b);
    std::sort(inside.begin(), inside.end());
    inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
    return inside;
}

Hamiltonian Hamiltonian::with_endpoint_kinds(EndpointKind lower, EndpointKind upper) const {
    Hamiltonian h = *this;
    h.lower_ = lower;
    h.upper_ = upper;
    return h;
}

Hamiltonian Hamiltonian::restricted(double a, double b) const {
    if (!(lo_ <= a && a < b && b <= hi_))
        throw Error(ErrorKind::domain, "hamiltonian", "restriction must be a subinterval");
    Hamiltonian h = *this;
    h.lo_ = a;
    h.hi_ = b;
    if (a > lo_) h.lower_ = EndpointKind::limit_circle;
    if (b < hi_) h.upper_ = EndpointKind::limit_circle;
    return h;
}

bool Hamiltonian::same_as(const Hamiltonian& other) const {
    if (lo_ != other.lo_ || hi_ != other.hi_) return false;
    if (spec_ == other.spec_) return true;
    const auto& a = *spec_;
    const auto& b = *other.spec_;
    if (a.index() != b.index()) return false;
    auto terms_equal = [](const std::vector<PowerTerm>& x, const std::vector<PowerTerm>& y) {
        return std::equal(x.begin(), x.end(), y.begin(), y.end(), [](const PowerTerm& p, const PowerTerm& q) {
            return p.coef == q.coef && p.center == q.center && p.power == q.power;
        });
    };
    if (const auto* x = std::get_if<BuiltinSpec>(&a)) return x->name == std::get<BuiltinSpec>(b).name;
    if (const auto* x = std::get_if<PiecewiseSpec>(&a)) {
        const auto& y = std::get<PiecewiseSpec>(b);
        return std::equal(x->pieces.begin(), x->pieces.end(), y.pieces.begin(), y.pieces.end(),
                          [&](const Piece& p, const Piece& q) {
                              return p.from == q.from && p.to == q.to && terms_equal(p.h1, q.h1) &&
                                     terms_equal(p.h2, q.h2) && terms_equal(p.h3, q.h3);
                          });
    }
    if (const auto* x = std::get_if<TableSpec>(&a)) {
        const auto& y = std::get<TableSpec>(b);
        return x->t == y.t && x->h1 == y.h1 && x->h2 == y.h2 && x->h3 == y.h3;
    }
    return false;  // distinct function Hamiltonians are never identified
}

Hamiltonian scaled(const Hamiltonian& h, double c) {
    if (!(c > 0.0)) throw Error(ErrorKind::domain, "hamiltonian", "scale factor must be positive");
    auto fn = [h, c](double t) {
        Entries e = h.entries_unchecked(t);
        return Entries{c * e.h1, c * e.h2, c * e.h3};
    };
    return Hamiltonian(h.lo(), h.hi(), FunctionSpec{fn, h.is_diagonal(), h.breakpoints(), "scaled"},
                       h.endpoint_kind(Endpoint::lower), h.endpoint_kind(Endpoint::upper));
}

Hamiltonian rotated(const Hamiltonian& h, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    Matrix2 q;
    q << c, -s, s, c;
    auto fn = [h, q](double t) {
        const Matrix2 m = q * h.entries_unchecked(t).matrix() * q.transpose();
        return Entries{m(0, 0), m(1, 1), 0.5 * (m(0, 1) + m(1, 0))};
    };
    return Hamiltonian(h.lo(), h.hi(), FunctionSpec{fn, false, h.breakpoints(), "rotated"},
                       h.endpoint_kind(Endpoint::lower), h.endpoint_kind(Endpoint::upper));
}

double min_relative_eigenvalue(const Hamiltonian& h, int samples) {
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double t = h.lo() + h.length() * (i + 0.5) / samples;
        const Matrix2 m = h(t);
        Eigen::SelfAdjointEigenSolver<Matrix2> es(m, Eigen::EigenvaluesOnly);
        const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        worst = std::min(worst, es.eigenvalues()(0) / scale);
    }
    return worst;
}

}  // namespace canon
