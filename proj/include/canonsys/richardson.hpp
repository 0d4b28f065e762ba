#ifndef CANONSYS_RICHARDSON_HPP
#define CANONSYS_RICHARDSON_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "canonsys/quadrature.hpp"

namespace canon {

template <typename T>
struct LimitEstimate {
    T value;
    double error = std::numeric_limits<double>::infinity();
    int order = 0;   // polynomial degree of the chosen extrapolant
    int last = 0;    // index of the deepest sample it uses
};

/// Polynomial (Neville) extrapolation to distance 0 of samples taken at
/// distances `dist` (strictly decreasing). Every tableau entry is scored by
/// its disagreement with its neighbours of one lower order and one shallower
/// window; the entry with the smallest score wins. The score is returned as
/// the error estimate.
template <typename T>
LimitEstimate<T> extrapolate_to_zero(const std::vector<double>& dist, const std::vector<T>& samples,
                                     int max_order = 10) {
    const int n = static_cast<int>(samples.size());
    LimitEstimate<T> best{samples.empty() ? zero_like<T>() : samples.back()};
    if (n == 0) return best;
    if (n == 1) {
        best.error = std::numeric_limits<double>::infinity();
        return best;
    }
    std::vector<std::vector<T>> tab(n);
    for (int i = 0; i < n; ++i) {
        tab[i].push_back(samples[i]);
        for (int m = 1; m <= std::min(i, max_order); ++m) {
            const double a = dist[i - m], b = dist[i];
            tab[i].push_back((tab[i][m - 1] * a - tab[i - 1][m - 1] * b) * (1.0 / (a - b)));
        }
    }
    for (int i = 1; i < n; ++i) {
        for (int m = 0; m < static_cast<int>(tab[i].size()); ++m) {
            double score = 0.0;
            if (m > 0) score = magnitude(T(tab[i][m] - tab[i][m - 1]));
            if (m < static_cast<int>(tab[i - 1].size()))
                score = std::max(score, magnitude(T(tab[i][m] - tab[i - 1][m])));
            else if (m == 0)
                continue;
            if (score < best.error) {
                best.value = tab[i][m];
                best.error = score;
                best.order = m;
                best.last = i;
            }
        }
    }
    return best;
}

}  // namespace canon

#endif  // CANONSYS_RICHARDSON_HPP
