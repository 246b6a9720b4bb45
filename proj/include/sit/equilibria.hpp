#ifndef SIT_EQUILIBRIA_HPP
#define SIT_EQUILIBRIA_HPP

#include <optional>
#include <string>
#include <vector>

#include "sit/model.hpp"
#include "sit/types.hpp"

namespace sit {

// Composite constant Q and the two roots of the discriminant of the
// alpha-quadratic. A constant sterile stock above mt1 makes extinction
// globally stable; below it the system is bistable.
struct Thresholds {
    double q;    // mu_a2*mu_m / ((gamma+mu_a1)*(1-r)*gamma)
    double mt1;  // (sqrt(R)-1)^2 / Q
    double mt2;  // (sqrt(R)+1)^2 / Q
};

Thresholds sit_thresholds(const Params& p);

enum class EquilibriumKind { NoPositive, Tangent, Pair };

// Full equilibrium picture of the constant-release system at a given sterile
// level: the alpha-quadratic roots (alpha = MT/M) and the reconstructed
// positive equilibria with E1 < E2 when the pair exists.
struct EquilibriumAnalysis {
    double mt_star = 0.0;
    double r_number = 0.0;
    double q = 0.0;
    double mt1 = 0.0;
    double mt2 = 0.0;
    double discriminant = 0.0;
    EquilibriumKind kind = EquilibriumKind::NoPositive;
    // Pair: alpha_minus < alpha_plus and e1 < e2. Tangent: only the dagger
    // members are set.
    std::optional<double> alpha_plus, alpha_minus, alpha_dagger;
    std::optional<State> e1, e2, e_dagger;
};

EquilibriumAnalysis sit_equilibria(const Params& p, double mt_star);

// Brute-force check of the equilibrium computation: scans
// f1(M) = M/(M+MT) against the line f2(M) on a geometric grid of 512 points
// over [1e-6*M*, 10*M*] and refines every sign change by bisection to
// relative tolerance 1e-10. Tangencies are caught by refining interior
// minima of |f1-f2| and accepting them below a residual threshold.
std::vector<double> verify_equilibrium_by_bisection(const Params& p, double mt_star);

enum class Stability { GloballyStable, LocallyStable, Stable, Unstable, Semistable };

struct EquilibriumLabel {
    std::string name;  // "0", "E1", "E2", "Edag", "E*"
    State point;
    Stability stability;
    std::string basin;  // basin-of-attraction note, empty for unstable points
};

// Determinant and slope diagnostics backing the classification of E1/E2.
struct StabilityReport {
    std::vector<EquilibriumLabel> labels;
    std::optional<double> det_j_e1, det_j_e2;
    std::optional<double> slope_e1, slope_e2;
};

StabilityReport classify_stability(const Params& p, const EquilibriumAnalysis& analysis);

// Pulse-release analogue of mt1: releasing tau*Lambda every tau days with
// tau*Lambda above this value makes extinction globally stable.
double periodic_threshold(const Params& p, double tau);

}  // namespace sit

#endif
