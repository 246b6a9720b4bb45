#ifndef SIT_ENTRY_TIME_HPP
#define SIT_ENTRY_TIME_HPP

#include <optional>

#include "sit/equilibria.hpp"
#include "sit/integrator.hpp"
#include "sit/types.hpp"

namespace sit {

// Entry target: the unstable equilibrium of the sustained-release system
// shrunk by epsilon in every component. Reaching [0, y) guarantees decay to
// extinction once the release drops to mt_small.
struct TargetSpec {
    double mt_small = 0.0;
    double epsilon = 0.0;
    State y;
};

TargetSpec target_point(const Params& p, double mt_small, double epsilon);

// Fraction M*/(M* + MT*): the mating-fraction ceiling entering the linear
// comparison system.
double epsilon_ratio(const Params& p, double mt_level);

// Outcome of an entry search: the first time all three components drop
// strictly below the target, and the state there.
struct EntryResult {
    std::optional<double> time;
    State state;  // state at entry (meaningful only when time is set)
};

EntryResult minimal_entry_result(const Params& p, const ReleasePolicy& policy,
                                 const TargetSpec& target, const State& x0, double horizon,
                                 const IntegrateOptions& opt = {});

// Spec surface: just the day count.
std::optional<double> minimal_entry_time(const Params& p, const ReleasePolicy& policy,
                                         const TargetSpec& target, const State& x0,
                                         double horizon, const IntegrateOptions& opt = {});

// Modal decomposition of the linear comparison system dX/dt = Z X from the
// overestimated start X_e^0. Valid for any sterile level; the time bounds on
// top of it additionally require eps_ratio * R < 1.
struct ComparisonModes {
    double eps_ratio = 0.0;
    State upper_state;                       // X_e^0
    double kappa_plus = 0.0, kappa_minus = 0.0;   // eigenvalues of the (A,F) block
    double x_plus = 0.0, x_minus = 0.0;           // eigenvector slopes
    double a0_plus = 0.0, a0_minus = 0.0;         // A-modal coefficients
    double b0_plus = 0.0, b0_minus = 0.0;         // F-modal coefficients
};

ComparisonModes comparison_modes(const Params& p, double mt_level);

// Sufficient time, from the linear comparison system, for the population
// started at E* under a constant level mt_level to be below the target in
// every component.
struct AnalyticBound {
    ComparisonModes modes;
    double lambda_coef = 0.0;  // lambda_- or lambda_+ depending on the kappa_-+mu_M sign
    bool lambda_minus_branch = false;
    double t_a = 0.0, t_m = 0.0, t_f = 0.0;
    double bound = 0.0;  // max of the three
};

AnalyticBound analytic_time_bound(const Params& p, double mt_level, const TargetSpec& target);

// Closed-form evaluation of the comparison solution X_e(t).
State comparison_solution(const Params& p, const ComparisonModes& m, double t);

}  // namespace sit

#endif
