#include "canonsys/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace canon {

ChebyshevRule::ChebyshevRule(int n) : n_(n), nodes_(n), weights_(n), bary_(n), cumulative_(n, n) {
    const double pi = std::acos(-1.0);
    for (int j = 0; j < n; ++j) {
        const double theta = (2.0 * j + 1.0) * pi / (2.0 * n);
        nodes_(j) = -std::cos(theta);
        bary_(j) = ((j % 2 == 0) ? 1.0 : -1.0) * std::sin(theta);
    }
    auto cheb = [](int k, double x) { return std::cos(k * std::acos(std::clamp(x, -1.0, 1.0))); };
    // Antiderivative of T_k normalised to vanish at -1.
    auto anti = [&](int k, double x) {
        auto raw = [&](double y) {
            if (k == 0) return y;
            if (k == 1) return 0.5 * y * y;
            return cheb(k + 1, y) / (2.0 * (k + 1)) - cheb(k - 1, y) / (2.0 * (k - 1));
        };
        return raw(x) - raw(-1.0);
    };
    Eigen::MatrixXd vander(n, n), anti_at(n, n);
    Eigen::RowVectorXd total(n);
    for (int k = 0; k < n; ++k) {
        total(k) = (k % 2 == 1) ? 0.0 : 2.0 / (1.0 - double(k) * k);
        for (int i = 0; i < n; ++i) {
            vander(i, k) = cheb(k, nodes_(i));
            anti_at(i, k) = anti(k, nodes_(i));
        }
    }
    const Eigen::MatrixXd inv = vander.partialPivLu().inverse();
    cumulative_ = anti_at * inv;
    weights_ = (total * inv).transpose();
}

const ChebyshevRule& chebyshev_rule(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<ChebyshevRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<ChebyshevRule>(n);
    return *slot;
}

PanelGrid::PanelGrid(double regular, double singular, const std::vector<double>& breakpoints, int geometric_levels,
                     int nodes_per_panel)
    : regular_(regular), singular_(singular), rule_(&chebyshev_rule(nodes_per_panel)) {
    const double len = std::abs(singular - regular);
    const double dir = direction();
    // Work in distance from the regular point.
    std::vector<double> cuts{0.0};
    for (int k = 1; k <= geometric_levels; ++k) cuts.push_back(len - len * std::ldexp(1.0, -k));
    for (double b : breakpoints) {
        const double d = (b - regular) * dir;
        if (d > 0.0 && d < len) cuts.push_back(d);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> unique_cuts;
    for (double c : cuts)
        if (unique_cuts.empty() || c - unique_cuts.back() > 1e-14 * len) unique_cuts.push_back(c);
    unique_cuts.push_back(len);
    for (std::size_t i = 0; i + 1 < unique_cuts.size(); ++i) {
        const double a = regular + dir * unique_cuts[i];
        const double b = (i + 2 == unique_cuts.size()) ? singular : regular + dir * unique_cuts[i + 1];
        panels_.push_back({a, b});
    }
}

std::size_t PanelGrid::locate(double t) const {
    const double dir = direction();
    const double d = (t - regular_) * dir;
    std::size_t lo = 0, hi = panels_.size();
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if ((panels_[mid].start - regular_) * dir <= d) lo = mid;
        else hi = mid;
    }
    return lo;
}

std::size_t PanelGrid::first_panel_within(double distance) const {
    for (std::size_t p = 0; p < panels_.size(); ++p)
        if (std::abs(singular_ - panels_[p].end) <= distance) return p;
    return panels_.size() - 1;
}

}  // namespace canon
