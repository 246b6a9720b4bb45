#ifndef SIT_INTEGRATOR_HPP
#define SIT_INTEGRATOR_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sit/model.hpp"
#include "sit/types.hpp"

namespace sit {

template <std::size_t N>
using Vec = std::array<double, N>;

struct Event {
    double time;
    std::string label;
};

// One accepted integrator step with the quartic interpolation polynomial of
// the Dormand-Prince pair, valid on [t0, t1].
template <std::size_t N>
struct DenseStep {
    double t0 = 0.0, t1 = 0.0;
    Vec<N> y0{}, y1{};
    std::array<Vec<N>, 5> rcont{};

    Vec<N> eval(double t) const {
        const double h = t1 - t0;
        double th = h != 0.0 ? (t - t0) / h : 0.0;
        th = std::min(1.0, std::max(0.0, th));
        const double th1 = 1.0 - th;
        Vec<N> y;
        for (std::size_t i = 0; i < N; ++i) {
            y[i] = rcont[0][i]
                 + th * (rcont[1][i]
                         + th1 * (rcont[2][i] + th * (rcont[3][i] + th1 * rcont[4][i])));
        }
        return y;
    }
};

// Time-ordered solution samples with per-step dense interpolation. Stamps are
// strictly increasing; at a pulse stamp the stored state is the post-jump
// value and the pre-jump value is the preceding step's right endpoint.
template <std::size_t N>
struct BasicTrajectory {
    std::vector<double> times;
    std::vector<Vec<N>> states;
    std::vector<DenseStep<N>> steps;
    std::vector<Event> events;

    bool empty() const { return times.empty(); }
    double start_time() const { return times.front(); }
    double end_time() const { return times.back(); }
    const Vec<N>& final_state() const { return states.back(); }

    Vec<N> eval(double t) const {
        if (steps.empty()) return states.front();
        // Binary search for the step containing t.
        std::size_t lo = 0, hi = steps.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (t <= steps[mid].t1) hi = mid; else lo = mid + 1;
        }
        return steps[lo].eval(t);
    }
};

using Trajectory3 = BasicTrajectory<3>;
using Trajectory4 = BasicTrajectory<4>;

struct IntegrateOptions {
    double tol = 1e-8;
    double max_step = std::numeric_limits<double>::infinity();

    void validate() const {
        if (!(tol >= 1e-12 && tol <= 1e-3))
            throw SemanticError("integration tolerance must lie in [1e-12, 1e-3]");
        if (!(max_step > 0.0)) throw SemanticError("max step must be positive");
    }
};

enum class StepAction { Continue, Stop };

namespace detail {

// Dormand-Prince 5(4) coefficients, FSAL form, with the standard continuous
// extension.
inline constexpr double A21 = 1.0 / 5.0;
inline constexpr double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0;
inline constexpr double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0;
inline constexpr double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0,
                        A53 = 64448.0 / 6561.0, A54 = -212.0 / 729.0;
inline constexpr double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0,
                        A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0;
inline constexpr double A71 = 35.0 / 384.0, A73 = 500.0 / 1113.0, A74 = 125.0 / 192.0,
                        A75 = -2187.0 / 6784.0, A76 = 11.0 / 84.0;
inline constexpr double C2 = 1.0 / 5.0, C3 = 3.0 / 10.0, C4 = 4.0 / 5.0, C5 = 8.0 / 9.0;
inline constexpr double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0,
                        E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0;
inline constexpr double D1 = -12715105075.0 / 11282082432.0, D3 = 87487479700.0 / 32700410799.0,
                        D4 = -10690763975.0 / 1880347072.0, D5 = 701980252875.0 / 199316789632.0,
                        D6 = -1453857185.0 / 822651844.0, D7 = 69997945.0 / 29380423.0;

template <std::size_t N>
std::string state_to_string(const Vec<N>& y) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < N; ++i) os << (i ? ", " : "") << y[i];
    os << ")";
    return os.str();
}

}  // namespace detail

// Adaptive Dormand-Prince 4(5) loop with PI step control. Calls the observer
// once per accepted step; the observer may stop the run early. Components
// that undershoot zero by at most 10*tol are clamped to zero, larger
// undershoots abort.
template <std::size_t N, class RHS, class Observer>
void rk45_integrate(RHS&& rhs, Vec<N> y, double t0, double t1, const IntegrateOptions& opt,
                    Observer&& observe) {
    using namespace detail;
    opt.validate();
    if (!(t1 > t0)) throw SemanticError("integration span must be forward in time");

    const double atol = opt.tol, rtol = opt.tol;
    constexpr double safe = 0.9, beta = 0.04;
    constexpr double expo1 = 0.2 - beta * 0.75;
    constexpr double facc1 = 5.0;    // max step increase
    constexpr double facc2 = 0.1;    // max step decrease
    double facold = 1e-4;

    auto check_finite = [&](const Vec<N>& v, double t) {
        for (double c : v)
            if (!std::isfinite(c))
                throw NumericError("non-finite derivative/state at t=" + std::to_string(t));
    };

    double t = t0;
    Vec<N> k1;
    k1 = rhs(t, y);
    check_finite(k1, t);

    // Automatic initial step (standard hinit heuristic).
    double h;
    {
        double dnf = 0.0, dny = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sk = atol + rtol * std::abs(y[i]);
            dnf += (k1[i] / sk) * (k1[i] / sk);
            dny += (y[i] / sk) * (y[i] / sk);
        }
        double h0 = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
        h0 = std::min(h0, t1 - t0);
        Vec<N> y1e, k2;
        for (std::size_t i = 0; i < N; ++i) y1e[i] = y[i] + h0 * k1[i];
        k2 = rhs(t + h0, y1e);
        double der2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sk = atol + rtol * std::abs(y[i]);
            der2 += ((k2[i] - k1[i]) / sk) * ((k2[i] - k1[i]) / sk);
        }
        der2 = std::sqrt(der2) / h0;
        const double der12 = std::max(std::sqrt(dnf), der2);
        const double h1 = der12 <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                         : std::pow(0.01 / der12, 0.2);
        h = std::min(std::min(100.0 * h0, h1), std::min(opt.max_step, t1 - t0));
    }

    Vec<N> k2, k3, k4, k5, k6, k7, ynew, yerr;
    bool last = false;
    while (!last) {
        if (h > opt.max_step) h = opt.max_step;
        if (t + h >= t1) {
            h = t1 - t;
            last = true;
        }
        if (!(h > std::abs(t) * 1e-14) || !(t + h > t))
            throw NumericError("step size underflow at t=" + std::to_string(t) + ", state="
                               + detail::state_to_string<N>(y));

        Vec<N> tmp;
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * A21 * k1[i];
        k2 = rhs(t + C2 * h, tmp);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        k3 = rhs(t + C3 * h, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        k4 = rhs(t + C4 * h, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        k5 = rhs(t + C5 * h, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i]
                                 + A65 * k5[i]);
        k6 = rhs(t + h, tmp);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + h * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i]
                                  + A76 * k6[i]);
        k7 = rhs(t + h, ynew);
        check_finite(ynew, t + h);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            yerr[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i]
                           + E7 * k7[i]);
            const double sk = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err += (yerr[i] / sk) * (yerr[i] / sk);
        }
        err = std::sqrt(err / N);
        if (!std::isfinite(err))
            throw NumericError("non-finite error estimate at t=" + std::to_string(t));

        const double fac11 = std::pow(err, expo1);
        if (err <= 1.0) {
            // Accepted: build the dense step, clamp roundoff undershoots.
            DenseStep<N> step;
            step.t0 = t;
            step.t1 = t + h;
            step.y0 = y;
            bool clamped = false;
            for (std::size_t i = 0; i < N; ++i) {
                if (ynew[i] < 0.0) {
                    if (ynew[i] < -10.0 * opt.tol)
                        throw NumericError(
                            "negative component beyond clamp threshold at t="
                            + std::to_string(t + h) + ", state="
                            + detail::state_to_string<N>(ynew));
                    ynew[i] = 0.0;
                    clamped = true;
                }
            }
            step.y1 = ynew;
            for (std::size_t i = 0; i < N; ++i) {
                const double ydiff = ynew[i] - y[i];
                const double bspl = h * k1[i] - ydiff;
                step.rcont[0][i] = y[i];
                step.rcont[1][i] = ydiff;
                step.rcont[2][i] = bspl;
                step.rcont[3][i] = ydiff - h * k7[i] - bspl;
                step.rcont[4][i] = h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i]
                                        + D6 * k6[i] + D7 * k7[i]);
            }

            t += h;
            y = ynew;
            k1 = clamped ? rhs(t, y) : k7;  // FSAL, recomputed if clamped

            facold = std::max(err, 1e-4);
            double fac = fac11 / std::pow(facold, beta);
            fac = std::max(facc2, std::min(facc1, safe / fac));
            h = h * fac;

            if (observe(step) == StepAction::Stop) return;
        } else {
            h = h / std::min(facc1, fac11 / safe);
            last = false;
        }
    }
}

// Scans dense steps for the first time every entry component drops strictly
// below the target, refined by bisection to 1e-6 day. With Dims=3 on a
// 4-component trajectory the sterile stock is ignored.
template <std::size_t N>
class EntryScanner {
  public:
    EntryScanner(const std::array<double, 3>& target) : target_(target) {}

    // Returns Stop once the entry has been located.
    StepAction operator()(const DenseStep<N>& step) {
        if (found_) return StepAction::Stop;
        auto gap = [&](double t) {
            const Vec<N> v = step.eval(t);
            double g = v[0] - target_[0];
            g = std::max(g, v[1] - target_[1]);
            g = std::max(g, v[2] - target_[2]);
            return g;
        };
        auto gap_of = [&](const Vec<N>& v) {
            double g = v[0] - target_[0];
            g = std::max(g, v[1] - target_[1]);
            g = std::max(g, v[2] - target_[2]);
            return g;
        };

        if (first_) {
            first_ = false;
            if (gap_of(step.y0) < 0.0) {
                found_ = true;
                time_ = step.t0;
                state_ = step.y0;
                return StepAction::Stop;
            }
        }

        constexpr int kSub = 8;
        double tprev = step.t0;
        double gprev = gap_of(step.y0);
        for (int s = 1; s <= kSub; ++s) {
            const double tc = s == kSub ? step.t1
                                        : step.t0 + (step.t1 - step.t0) * s / kSub;
            const double gc = s == kSub ? gap_of(step.y1) : gap(tc);
            if (gprev >= 0.0 && gc < 0.0) {
                double a = tprev, b = tc;
                while (b - a > 1e-6) {
                    const double mid = 0.5 * (a + b);
                    if (gap(mid) < 0.0) b = mid; else a = mid;
                }
                found_ = true;
                time_ = b;
                state_ = step.eval(b);
                return StepAction::Stop;
            }
            tprev = tc;
            gprev = gc;
        }
        return StepAction::Continue;
    }

    bool found() const { return found_; }
    double time() const { return time_; }
    const Vec<N>& state() const { return state_; }

  private:
    std::array<double, 3> target_;
    bool first_ = true;
    bool found_ = false;
    double time_ = 0.0;
    Vec<N> state_{};
};

// Observer that records every accepted step into a trajectory.
template <std::size_t N>
struct TrajectoryRecorder {
    BasicTrajectory<N>* traj;

    StepAction operator()(const DenseStep<N>& step) {
        if (traj->times.empty()) {
            traj->times.push_back(step.t0);
            traj->states.push_back(step.y0);
        }
        traj->times.push_back(step.t1);
        traj->states.push_back(step.y1);
        traj->steps.push_back(step);
        return StepAction::Continue;
    }
};

// Generic single-system integration with full dense recording.
template <class RHS>
Trajectory3 integrate(RHS&& rhs, const State& x0, double t0, double t1,
                      const IntegrateOptions& opt = {}) {
    Trajectory3 traj;
    TrajectoryRecorder<3> rec{&traj};
    auto sys = [&](double t, const Vec<3>& y) {
        const State d = rhs(t, State::from_array(y));
        return Vec<3>{d.a, d.m, d.f};
    };
    rk45_integrate<3>(sys, x0.to_array(), t0, t1, opt, rec);
    return traj;
}

// First time every component of the trajectory is simultaneously strictly
// below y; empty if that never happens within the recorded span.
template <std::size_t N>
std::optional<double> first_entry_time(const BasicTrajectory<N>& traj, const State& y) {
    static_assert(N >= 3);
    EntryScanner<N> scan(y.to_array());
    if (traj.steps.empty()) {
        if (!traj.states.empty()) {
            const auto& s = traj.states.front();
            if (s[0] < y.a && s[1] < y.m && s[2] < y.f) return traj.times.front();
        }
        return std::nullopt;
    }
    for (const auto& step : traj.steps)
        if (scan(step) == StepAction::Stop) break;
    if (scan.found()) return scan.time();
    return std::nullopt;
}

// Release schedule: either a constant sterile stock or periodic instantaneous
// additions of tau*lambda with exponential decay in between.
struct ReleasePolicy {
    enum class Mode { Constant, Impulsive };
    Mode mode = Mode::Constant;
    double level = 0.0;   // Constant: sterile stock
    double lambda = 0.0;  // Impulsive: release rate per day
    double tau = 7.0;     // Impulsive: period in days

    static ReleasePolicy constant(double lvl) {
        ReleasePolicy r;
        r.mode = Mode::Constant;
        r.level = lvl;
        return r;
    }
    static ReleasePolicy impulsive(double lambda, double tau) {
        ReleasePolicy r;
        r.mode = Mode::Impulsive;
        r.lambda = lambda;
        r.tau = tau;
        return r;
    }
    void validate() const {
        if (mode == Mode::Constant) {
            if (level < 0.0) throw SemanticError("constant release level must be >= 0");
        } else {
            if (lambda < 0.0) throw SemanticError("release rate lambda must be >= 0");
            if (!(tau > 0.0)) throw SemanticError("release period tau must be > 0");
        }
    }
};

// Periodic sterile-stock attractor: value of the limiting sawtooth at time t.
double periodic_mt(double t, double lambda, double tau, double mu_t);

// Convenience wrappers over the generic integrator (see src/integrate.cpp).
Trajectory3 integrate_wild(const Params& p, const State& x0, double t0, double t1,
                           const IntegrateOptions& opt = {});
Trajectory3 integrate_sit(const Params& p, double mt, const State& x0, double t0, double t1,
                          const IntegrateOptions& opt = {});

// Four-component pulse system: the sterile stock decays between pulses and
// jumps by exactly tau*lambda at every t = n*tau (the first pulse fires at
// the start time). Steps never straddle a pulse.
Trajectory4 integrate_impulsive(const Params& p, const ReleasePolicy& policy,
                                const ExtendedState& x0, double horizon,
                                const IntegrateOptions& opt = {});

// Streaming variant: no trajectory is kept; the observer sees every accepted
// step and may stop the run. Pulses fire at t_begin + n*tau, the first at
// t_begin itself. Returns the final state reached.
template <class Observer>
ExtendedState integrate_impulsive_streaming(const Params& p, const ReleasePolicy& policy,
                                            const ExtendedState& x0, double t_begin,
                                            double horizon, const IntegrateOptions& opt,
                                            Observer&& observe) {
    policy.validate();
    if (policy.mode != ReleasePolicy::Mode::Impulsive)
        throw SemanticError("impulsive integration requires an impulsive policy");
    if (!(horizon > t_begin)) throw SemanticError("horizon must exceed the start time");

    auto rhs4 = [&p](double, const Vec<4>& v) {
        const State d = sit_rhs(p, {v[0], v[1], v[2]}, v[3]);
        return Vec<4>{d.a, d.m, d.f, -p.mu_t * v[3]};
    };

    IntegrateOptions seg_opt = opt;
    seg_opt.max_step = std::min(opt.max_step, policy.tau / 4.0);

    Vec<4> y = x0.to_array();
    const double jump = policy.tau * policy.lambda;
    bool stopped = false;

    long n = 0;
    double t = t_begin;
    while (t < horizon && !stopped) {
        y[3] += jump;
        const double tend = std::min(t_begin + (n + 1) * policy.tau, horizon);
        if (tend > t) {
            rk45_integrate<4>(rhs4, y, t, tend, seg_opt, [&](const DenseStep<4>& step) {
                y = step.y1;
                const StepAction act = observe(step);
                if (act == StepAction::Stop) stopped = true;
                return act;
            });
        }
        t = t_begin + (n + 1) * policy.tau;
        ++n;
    }
    return ExtendedState::from_array(y);
}

}  // namespace sit

#endif
