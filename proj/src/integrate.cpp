#include "sit/integrator.hpp"

#include <cmath>

namespace sit {

double periodic_mt(double t, double lambda, double tau, double mu_t) {
    if (t < 0.0) throw SemanticError("periodic_mt requires t >= 0");
    const double phase = t - std::floor(t / tau) * tau;
    return tau * lambda / (1.0 - std::exp(-mu_t * tau)) * std::exp(-mu_t * phase);
}

Trajectory3 integrate_wild(const Params& p, const State& x0, double t0, double t1,
                           const IntegrateOptions& opt) {
    return integrate([&p](double, const State& x) { return wild_rhs(p, x); }, x0, t0, t1, opt);
}

Trajectory3 integrate_sit(const Params& p, double mt, const State& x0, double t0, double t1,
                          const IntegrateOptions& opt) {
    return integrate([&p, mt](double, const State& x) { return sit_rhs(p, x, mt); }, x0, t0, t1,
                     opt);
}

Trajectory4 integrate_impulsive(const Params& p, const ReleasePolicy& policy,
                                const ExtendedState& x0, double horizon,
                                const IntegrateOptions& opt) {
    policy.validate();
    if (policy.mode != ReleasePolicy::Mode::Impulsive)
        throw SemanticError("impulsive integration requires an impulsive policy");
    if (!(horizon > 0.0)) throw SemanticError("horizon must be positive");

    auto rhs4 = [&p](double, const Vec<4>& v) {
        const State d = sit_rhs(p, {v[0], v[1], v[2]}, v[3]);
        return Vec<4>{d.a, d.m, d.f, -p.mu_t * v[3]};
    };

    IntegrateOptions seg_opt = opt;
    seg_opt.max_step = std::min(opt.max_step, policy.tau / 4.0);

    Trajectory4 traj;
    TrajectoryRecorder<4> rec{&traj};
    Vec<4> y = x0.to_array();
    const double jump = policy.tau * policy.lambda;

    long n = 0;
    double t = 0.0;
    while (t < horizon) {
        // Pulse: only the sterile stock jumps, by exactly tau*lambda. The
        // stamp at the pulse time stores the post-jump value; the pre-jump
        // value stays recoverable from the preceding dense step.
        y[3] += jump;
        traj.events.push_back({t, "pulse"});
        if (traj.times.empty()) {
            traj.times.push_back(t);
            traj.states.push_back(y);
        } else {
            traj.states.back()[3] = y[3];
        }
        const double tend = std::min((n + 1) * policy.tau, horizon);
        if (tend > t) {
            rk45_integrate<4>(rhs4, y, t, tend, seg_opt, [&](const DenseStep<4>& step) {
                y = step.y1;
                return rec(step);
            });
        }
        t = (n + 1) * policy.tau;
        ++n;
    }
    return traj;
}

}  // namespace sit
