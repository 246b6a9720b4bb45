#include "sit/entry_time.hpp"

#include <cmath>
#include <string>

namespace sit {

TargetSpec target_point(const Params& p, double mt_small, double epsilon) {
    const Thresholds th = sit_thresholds(p);
    if (!(mt_small > 0.0) || mt_small >= th.mt1)
        throw SemanticError("sustained level must satisfy 0 < mt_small < MT1 = "
                            + std::to_string(th.mt1));
    if (!(epsilon > 0.0)) throw SemanticError("epsilon must be strictly positive");

    const EquilibriumAnalysis an = sit_equilibria(p, mt_small);
    const State e1 = *an.e1;
    TargetSpec t;
    t.mt_small = mt_small;
    t.epsilon = epsilon;
    t.y = {e1.a - epsilon, e1.m - epsilon, e1.f - epsilon};
    if (!(t.y.a > 0.0 && t.y.m > 0.0 && t.y.f > 0.0))
        throw SemanticError("epsilon too large: target would have a nonpositive component");
    return t;
}

double epsilon_ratio(const Params& p, double mt_level) {
    if (mt_level < 0.0) throw SemanticError("sterile level must be nonnegative");
    const auto estar = wild_equilibrium(p);
    if (!estar) throw SemanticError("R <= 1: wild equilibrium undefined");
    return estar->m / (estar->m + mt_level);
}

EntryResult minimal_entry_result(const Params& p, const ReleasePolicy& policy,
                                 const TargetSpec& target, const State& x0, double horizon,
                                 const IntegrateOptions& opt) {
    policy.validate();
    EntryResult res;

    if (policy.mode == ReleasePolicy::Mode::Constant) {
        EntryScanner<3> scan(target.y.to_array());
        auto rhs = [&](double, const Vec<3>& v) {
            const State d = sit_rhs(p, {v[0], v[1], v[2]}, policy.level);
            return Vec<3>{d.a, d.m, d.f};
        };
        rk45_integrate<3>(rhs, x0.to_array(), 0.0, horizon, opt, scan);
        if (scan.found()) {
            res.time = scan.time();
            res.state = State::from_array(scan.state());
        }
    } else {
        EntryScanner<4> scan(target.y.to_array());
        integrate_impulsive_streaming(p, policy, ExtendedState{x0, 0.0}, 0.0, horizon, opt,
                                      scan);
        if (scan.found()) {
            res.time = scan.time();
            const auto& s = scan.state();
            res.state = {s[0], s[1], s[2]};
        }
    }
    return res;
}

std::optional<double> minimal_entry_time(const Params& p, const ReleasePolicy& policy,
                                         const TargetSpec& target, const State& x0,
                                         double horizon, const IntegrateOptions& opt) {
    return minimal_entry_result(p, policy, target, x0, horizon, opt).time;
}

ComparisonModes comparison_modes(const Params& p, double mt_level) {
    const double R = basic_offspring_number(p);
    if (R <= 1.0) throw SemanticError("R <= 1: comparison system undefined");

    ComparisonModes m;
    m.eps_ratio = epsilon_ratio(p, mt_level);

    const double sig = p.gamma + p.mu_a1;
    m.upper_state.a = sig * R / p.mu_a2;
    m.upper_state.m = (1.0 - p.r) * p.gamma * m.upper_state.a / p.mu_m;
    m.upper_state.f = p.r * p.gamma * m.upper_state.a / p.mu_f;

    const double disc = (sig - p.mu_f) * (sig - p.mu_f)
                      + 4.0 * p.phi * p.r * p.gamma * m.eps_ratio;
    const double sq = std::sqrt(disc);
    m.kappa_plus = 0.5 * (-(sig + p.mu_f) + sq);
    m.kappa_minus = 0.5 * (-(sig + p.mu_f) - sq);
    m.x_plus = (sig - p.mu_f + sq) / (2.0 * p.phi);
    m.x_minus = (sig - p.mu_f - sq) / (2.0 * p.phi);

    const double den = m.x_minus - m.x_plus;  // = -sq/phi < 0
    m.a0_plus = (m.x_minus * m.upper_state.a - m.upper_state.f) / den;
    m.a0_minus = (-m.x_plus * m.upper_state.a + m.upper_state.f) / den;
    m.b0_plus = (m.x_plus * m.x_minus * m.upper_state.a - m.x_plus * m.upper_state.f) / den;
    m.b0_minus = (-m.x_plus * m.x_minus * m.upper_state.a + m.x_minus * m.upper_state.f) / den;
    return m;
}

AnalyticBound analytic_time_bound(const Params& p, double mt_level, const TargetSpec& target) {
    const double R = basic_offspring_number(p);
    const double sig = p.gamma + p.mu_a1;
    if (!(p.mu_f < std::min(p.mu_m, sig)))
        throw SemanticError("hypothesis violated: mu_f < min(mu_m, gamma + mu_a1) required");

    AnalyticBound b;
    b.modes = comparison_modes(p, mt_level);
    if (!(b.modes.eps_ratio * R < 1.0))
        throw SemanticError("hypothesis violated: eps_ratio * R = "
                            + std::to_string(b.modes.eps_ratio * R)
                            + " must be < 1 (raise the release level)");

    const double km_shift = b.modes.kappa_minus + p.mu_m;
    if (std::abs(km_shift) < 1e-12)
        throw SemanticError("degenerate case kappa_minus = -mu_m: bound formula inapplicable");

    const double c1 = (1.0 - p.r) * p.gamma;
    const double cp = c1 * b.modes.a0_plus / (p.mu_m + b.modes.kappa_plus);
    const double cm = c1 * b.modes.a0_minus / km_shift;
    if (km_shift > 0.0) {
        b.lambda_minus_branch = true;
        b.lambda_coef = b.modes.upper_state.m - cm + cp;
    } else {
        b.lambda_minus_branch = false;
        b.lambda_coef = b.modes.upper_state.m + cm + cp;
    }

    const double kp = b.modes.kappa_plus;
    b.t_a = std::log(target.y.a / b.modes.a0_plus) / kp;
    b.t_f = std::log(target.y.f / b.modes.upper_state.f) / kp;
    b.t_m = std::log(target.y.m / b.lambda_coef) / kp;
    b.bound = std::max(b.t_a, std::max(b.t_m, b.t_f));
    return b;
}

State comparison_solution(const Params& p, const ComparisonModes& m, double t) {
    const double ep = std::exp(m.kappa_plus * t);
    const double em = std::exp(m.kappa_minus * t);
    State x;
    x.a = m.a0_plus * ep + m.a0_minus * em;
    x.f = m.b0_plus * ep + m.b0_minus * em;
    const double c1 = (1.0 - p.r) * p.gamma;
    const double cp = c1 * m.a0_plus / (p.mu_m + m.kappa_plus);
    const double cm = c1 * m.a0_minus / (p.mu_m + m.kappa_minus);
    x.m = (m.upper_state.m - cp - cm) * std::exp(-p.mu_m * t) + cp * ep + cm * em;
    return x;
}

}  // namespace sit
