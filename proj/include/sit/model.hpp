#ifndef SIT_MODEL_HPP
#define SIT_MODEL_HPP

#include <optional>

#include "sit/types.hpp"

namespace sit {

// Basic offspring number R = r*gamma*phi / (mu_f*(gamma+mu_a1)): expected
// females produced by one female over its lifetime at low density.
double basic_offspring_number(const Params& p);

// Positive steady state of the uncontrolled model. Empty when R <= 1
// (only the extinction equilibrium exists).
std::optional<State> wild_equilibrium(const Params& p);

// Right-hand side of the wild system.
State wild_rhs(const Params& p, const State& x);

// Right-hand side of the reduced constant-release system: identical to the
// wild system except the female recruitment carries the mating fraction
// M/(M+MT). The fraction is 0 when M = MT = 0 so the origin stays fixed.
State sit_rhs(const Params& p, const State& x, double mt);

// Jacobian of the wild system (mt absent) or the constant-release system
// (mt present). Off-diagonal entries are nonnegative for x >= 0 (Metzler).
Mat3 jacobian(const Params& p, const State& x, std::optional<double> mt = std::nullopt);

// A point b_m >= (m,m,m) at which the wild vector field is strictly negative,
// so the solution started there decreases. Built by taking the root of
// r*gamma - mu_f/(2*phi) * (gamma+mu_a1+mu_a2*A) = 0 and doubling A until
// every constraint holds strictly.
State dominating_point(const Params& p, double m);

}  // namespace sit

#endif
