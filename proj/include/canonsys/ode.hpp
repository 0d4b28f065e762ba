#ifndef CANONSYS_ODE_HPP
#define CANONSYS_ODE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "canonsys/core.hpp"
#include "canonsys/errors.hpp"

namespace canon {

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-10;
    int max_rejections = 64;
    long max_steps = 2'000'000;
};

/// Accepted steps of an embedded Runge-Kutta run with their continuous
/// extension. Steps may come from two runs (backward and forward from an
/// interior anchor); they are kept sorted by position.
template <typename State>
class DenseTrajectory {
public:
    struct Step {
        double t0 = 0.0;
        double h = 0.0;
        State y0, y1, r3, r4, r5;

        double lo() const { return std::min(t0, t0 + h); }
        double hi() const { return std::max(t0, t0 + h); }
        double t1() const { return t0 + h; }
        State at(double t) const {
            if (t == t0) return y0;
            if (t == t0 + h) return y1;
            const double th = (t - t0) / h;
            const double th1 = 1.0 - th;
            return y0 + th * ((y1 - y0) + th1 * (r3 + th * (r4 + th1 * r5)));
        }
    };

    DenseTrajectory() = default;
    DenseTrajectory(double anchor_t, State anchor) : anchor_t_(anchor_t), anchor_(anchor) {}

    void append(std::vector<Step> steps) {
        for (auto& s : steps) steps_.push_back(std::move(s));
        std::sort(steps_.begin(), steps_.end(), [](const Step& a, const Step& b) { return a.lo() < b.lo(); });
    }

    double lo() const { return steps_.empty() ? anchor_t_ : steps_.front().lo(); }
    double hi() const { return steps_.empty() ? anchor_t_ : steps_.back().hi(); }
    std::size_t step_count() const { return steps_.size(); }
    const std::vector<Step>& steps() const { return steps_; }

    State operator()(double t) const {
        if (t == anchor_t_ || steps_.empty()) return anchor_;
        if (t < lo() || t > hi()) {
            std::ostringstream os;
            os << "t = " << t << " outside integrated range [" << lo() << ", " << hi() << "]";
            throw Error(ErrorKind::domain, "solver", os.str());
        }
        auto it = std::upper_bound(steps_.begin(), steps_.end(), t,
                                   [](double v, const Step& s) { return v < s.lo(); });
        if (it != steps_.begin()) --it;
        return it->at(t);
    }

private:
    double anchor_t_ = 0.0;
    State anchor_{};
    std::vector<Step> steps_;
};

namespace detail {

template <typename State>
double scaled_rms(const State& e, const State& y0, const State& y1, const OdeOptions& o) {
    const auto* pe = e.data();
    const auto* pa = y0.data();
    const auto* pb = y1.data();
    const int n = static_cast<int>(e.size());
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double sk = o.atol + o.rtol * std::max(std::abs(pa[i]), std::abs(pb[i]));
        const double r = std::abs(pe[i]) / sk;
        acc += r * r;
    }
    return std::sqrt(acc / n);
}

}  // namespace detail

/// Dormand-Prince 5(4) with PI step-size control, integrating y' = f(t, y)
/// from t0 to t_end (either direction). Every point in `stops` between the
/// two is hit exactly by a step boundary.
template <typename State, typename Rhs>
std::vector<typename DenseTrajectory<State>::Step> dopri5(Rhs&& f, double t0, const State& y0, double t_end,
                                                          std::vector<double> stops, const OdeOptions& opt) {
    using Step = typename DenseTrajectory<State>::Step;
    std::vector<Step> out;
    if (t_end == t0) return out;
    const double dir = t_end > t0 ? 1.0 : -1.0;

    stops.erase(std::remove_if(stops.begin(), stops.end(),
                               [&](double s) { return (s - t0) * dir <= 0.0 || (s - t_end) * dir >= 0.0; }),
                stops.end());
    stops.push_back(t_end);
    std::sort(stops.begin(), stops.end(), [dir](double a, double b) { return (a - b) * dir < 0.0; });
    stops.erase(std::unique(stops.begin(), stops.end(),
                            [](double a, double b) { return std::abs(a - b) <= 1e-14 * std::max(1.0, std::abs(a)); }),
                stops.end());
    if ((stops.back() - t_end) * dir < 0.0) stops.back() = t_end;

    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                     a76 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;
    constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                     d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                     d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

    constexpr double safe = 0.9, beta = 0.04, expo1 = 0.2 - beta * 0.75;
    constexpr double facc1 = 1.0 / 0.2, facc2 = 1.0 / 10.0;

    double t = t0;
    State y = y0;
    State k1 = f(t, y);

    // Initial step guess from the scaled size of y and y'.
    double h;
    {
        const State zero = State::Zero();
        const double dny = detail::scaled_rms<State>(y, y, zero, opt);
        const double dnf = detail::scaled_rms<State>(k1, y, zero, opt);
        h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * dny / dnf;
        h = std::min(h, std::abs(t_end - t0));
        const State y1 = y + (dir * h) * k1;
        const State f1 = f(t + dir * h, y1);
        const double der2 = detail::scaled_rms<State>(State(f1 - k1), y, zero, opt) / h;
        const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
        const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
        h = std::min({100.0 * h, h1, std::abs(t_end - t0)});
    }

    double facold = 1e-4;
    int rejections = 0;
    std::size_t next_stop = 0;
    long steps = 0;
    bool last_rejected = false;

    while (next_stop < stops.size()) {
        if (++steps > opt.max_steps) {
            throw SingularityProximityError(t, "step budget exhausted");
        }
        const double target = stops[next_stop];
        const double ulps = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(target));
        if (std::abs(target - t) <= ulps) {
            // Landed within rounding of the stop: treat it as reached.
            if (!out.empty()) out.back().h = target - out.back().t0;
            t = target;
            ++next_stop;
            continue;
        }
        double hs = dir * h;
        bool hits = false;
        if ((t + hs - target) * dir >= 0.0 || std::abs(target - t - hs) < 1e-8 * std::abs(hs) + ulps) {
            hs = target - t;
            hits = true;
        }
        if (std::abs(hs) <= 1e-15 * std::max(1.0, std::abs(t))) {
            std::ostringstream os;
            os.precision(17);
            os << "step size underflow at t = " << t << " (target " << target << ", h " << hs << ")";
            throw SingularityProximityError(t, os.str());
        }

        const State k2 = f(t + c2 * hs, State(y + hs * (a21 * k1)));
        const State k3 = f(t + c3 * hs, State(y + hs * (a31 * k1 + a32 * k2)));
        const State k4 = f(t + c4 * hs, State(y + hs * (a41 * k1 + a42 * k2 + a43 * k3)));
        const State k5 = f(t + c5 * hs, State(y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
        const double t_new = hits ? target : t + hs;
        // At a stop the coefficients are taken from inside the step, so a
        // jump there does not enter the error estimate.
        const double t_in = hits ? std::nextafter(t_new, t) : t_new;
        const State k6 = f(t_in, State(y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
        const State y_new = y + hs * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        const State k7 = f(t_in, y_new);
        const State err_vec = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double err = detail::scaled_rms<State>(err_vec, y, y_new, opt);

        const double fac11 = std::pow(std::max(err, 1e-300), expo1);
        if (err <= 1.0 && std::isfinite(err)) {
            Step s;
            s.t0 = t;
            s.h = t_new - t;
            s.y0 = y;
            s.y1 = y_new;
            const State ydiff = y_new - y;
            const State bspl = s.h * k1 - ydiff;
            s.r3 = bspl;
            s.r4 = ydiff - s.h * k7 - bspl;
            s.r5 = s.h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            out.push_back(std::move(s));

            double fac = fac11 / std::pow(facold, beta);
            fac = std::max(facc2, std::min(facc1, fac / safe));
            double h_new = std::abs(hs) / fac;
            if (last_rejected) h_new = std::min(h_new, std::abs(hs));
            facold = std::max(err, 1e-4);
            t = t_new;
            y = y_new;
            k1 = k7;
            if (hits) {
                ++next_stop;
                if (next_stop < stops.size()) k1 = f(std::nextafter(t, t + dir), y);
                // keep the step size that would have been used without the stop
                h_new = std::max(h_new, h);
            }
            h = h_new;
            rejections = 0;
            last_rejected = false;
        } else {
            if (++rejections > opt.max_rejections) {
                std::ostringstream os;
                os << "integration stalled after " << opt.max_rejections << " rejections at t = " << t;
                throw SingularityProximityError(t, os.str());
            }
            const double shrink = std::isfinite(err) ? std::max(2.0, std::min(facc1, fac11 / safe)) : 2.0;
            h = std::abs(hs) / shrink;
            last_rejected = true;
        }
    }
    return out;
}

}  // namespace canon

#endif  // CANONSYS_ODE_HPP
