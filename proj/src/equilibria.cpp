#include "sit/equilibria.hpp"

#include <algorithm>
#include <cmath>

namespace sit {

namespace {

void require_supercritical(const Params& p) {
    if (basic_offspring_number(p) <= 1.0)
        throw SemanticError("R <= 1: no positive wild equilibrium, release thresholds undefined");
}

// f1(M) - f2(M): the mating fraction against the line whose intersections
// are the nonzero equilibrium male counts.
double graphical_gap(const Params& p, double mt_star, double m) {
    const double f1 = m / (m + mt_star);
    const double f2 = p.mu_f * (p.gamma + p.mu_a1) / (p.r * p.gamma * p.phi)
                    + p.mu_f * p.mu_a2 * p.mu_m / (p.r * p.phi * (1.0 - p.r) * p.gamma * p.gamma) * m;
    return f1 - f2;
}

State reconstruct_from_m(const Params& p, double m) {
    State e;
    e.m = m;
    e.a = p.mu_m * m / ((1.0 - p.r) * p.gamma);
    e.f = (p.gamma + p.mu_a1 + p.mu_a2 * e.a) * e.a / p.phi;
    return e;
}

}  // namespace

Thresholds sit_thresholds(const Params& p) {
    require_supercritical(p);
    const double R = basic_offspring_number(p);
    Thresholds t;
    t.q = p.mu_a2 * p.mu_m / ((p.gamma + p.mu_a1) * (1.0 - p.r) * p.gamma);
    const double s = std::sqrt(R);
    t.mt1 = (s - 1.0) * (s - 1.0) / t.q;
    t.mt2 = (s + 1.0) * (s + 1.0) / t.q;
    return t;
}

EquilibriumAnalysis sit_equilibria(const Params& p, double mt_star) {
    require_supercritical(p);
    if (mt_star < 0.0) throw SemanticError("sterile level must be nonnegative");

    const Thresholds th = sit_thresholds(p);
    const double R = basic_offspring_number(p);

    EquilibriumAnalysis an;
    an.mt_star = mt_star;
    an.r_number = R;
    an.q = th.q;
    an.mt1 = th.mt1;
    an.mt2 = th.mt2;

    const double qm = th.q * mt_star;
    const double s = std::sqrt(R);
    an.discriminant = ((s - 1.0) * (s - 1.0) - qm) * ((s + 1.0) * (s + 1.0) - qm);

    // Tangency within floating tolerance; otherwise the sign of the
    // discriminant decides.
    const double scale = (s - 1.0) * (s - 1.0) + qm;
    if (std::abs(an.discriminant) < 1e-9 * scale * scale) {
        an.kind = EquilibriumKind::Tangent;
        an.alpha_dagger = 0.5 * (R - 1.0 - qm);
        an.e_dagger = reconstruct_from_m(p, mt_star / *an.alpha_dagger);
        return an;
    }
    if (an.discriminant < 0.0) {
        an.kind = EquilibriumKind::NoPositive;
        return an;
    }

    an.kind = EquilibriumKind::Pair;
    // alpha^2 - (R-1-QMT)alpha + QMT = 0, solved in the cancellation-free
    // form: the larger root directly, the smaller from the product.
    const double b = R - 1.0 - qm;
    const double sq = std::sqrt(an.discriminant);
    an.alpha_plus = 0.5 * (b + sq);
    an.alpha_minus = qm / *an.alpha_plus;

    if (mt_star == 0.0) {
        // Degenerate wild case: alpha roots are R-1 and 0; E1 collapses to
        // the origin and E2 is the wild equilibrium.
        an.e1 = State{};
        an.e2 = *wild_equilibrium(p);
        return an;
    }
    an.e1 = reconstruct_from_m(p, mt_star / *an.alpha_plus);
    an.e2 = reconstruct_from_m(p, mt_star / *an.alpha_minus);
    return an;
}

std::vector<double> verify_equilibrium_by_bisection(const Params& p, double mt_star) {
    if (!(mt_star > 0.0)) throw SemanticError("bisection oracle requires mt_star > 0");
    require_supercritical(p);

    const State estar = *wild_equilibrium(p);
    const double lo = 1e-6 * estar.m;
    const double hi = 10.0 * estar.m;
    constexpr int kGridPoints = 512;

    std::vector<double> grid(kGridPoints);
    const double ratio = std::log(hi / lo) / (kGridPoints - 1);
    for (int i = 0; i < kGridPoints; ++i) grid[i] = lo * std::exp(ratio * i);

    auto gap = [&](double m) { return graphical_gap(p, mt_star, m); };

    auto bisect = [&](double a, double b) {
        double fa = gap(a);
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            if ((b - a) <= 1e-10 * mid) return mid;
            const double fm = gap(mid);
            if ((fa < 0.0) == (fm < 0.0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        return 0.5 * (a + b);
    };

    std::vector<double> roots;
    std::vector<double> vals(kGridPoints);
    for (int i = 0; i < kGridPoints; ++i) vals[i] = gap(grid[i]);

    for (int i = 0; i + 1 < kGridPoints; ++i) {
        if (vals[i] == 0.0) {
            roots.push_back(grid[i]);
        } else if ((vals[i] < 0.0) != (vals[i + 1] < 0.0)) {
            roots.push_back(bisect(grid[i], grid[i + 1]));
        }
    }

    // A double root never changes sign; look for interior extrema of the gap
    // that come back to zero and accept them below a residual threshold.
    if (roots.empty()) {
        for (int i = 1; i + 1 < kGridPoints; ++i) {
            const bool local_max = vals[i] > vals[i - 1] && vals[i] > vals[i + 1] && vals[i] < 0.0;
            const bool local_min = vals[i] < vals[i - 1] && vals[i] < vals[i + 1] && vals[i] > 0.0;
            if (!local_max && !local_min) continue;
            // Golden-section refinement of the extremum.
            double a = grid[i - 1], b = grid[i + 1];
            const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
            double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
            double f1 = std::abs(gap(x1)), f2 = std::abs(gap(x2));
            for (int it = 0; it < 200 && (b - a) > 1e-12 * b; ++it) {
                if (f1 < f2) {
                    b = x2; x2 = x1; f2 = f1;
                    x1 = b - phi * (b - a); f1 = std::abs(gap(x1));
                } else {
                    a = x1; x1 = x2; f1 = f2;
                    x2 = a + phi * (b - a); f2 = std::abs(gap(x2));
                }
            }
            const double m = 0.5 * (a + b);
            if (std::abs(gap(m)) < 1e-7) roots.push_back(m);
        }
    }

    std::sort(roots.begin(), roots.end());
    return roots;
}

StabilityReport classify_stability(const Params& p, const EquilibriumAnalysis& an) {
    StabilityReport rep;

    auto slope_at = [&](double m) {
        return an.mt_star / ((m + an.mt_star) * (m + an.mt_star))
             - p.mu_f * p.mu_a2 * p.mu_m
                   / (p.r * p.phi * (1.0 - p.r) * p.gamma * p.gamma);
    };

    if (an.mt_star == 0.0) {
        // Wild model: origin unstable, E* attracts everything off the M-axis.
        rep.labels.push_back({"0", State{}, Stability::Unstable, ""});
        rep.labels.push_back(
            {"E*", *wild_equilibrium(p), Stability::Stable, "D \\ {A=F=0}"});
        return rep;
    }

    switch (an.kind) {
        case EquilibriumKind::NoPositive:
            rep.labels.push_back({"0", State{}, Stability::GloballyStable, "D"});
            break;
        case EquilibriumKind::Tangent:
            rep.labels.push_back({"0", State{}, Stability::LocallyStable, "[0, Edag)"});
            rep.labels.push_back({"Edag", *an.e_dagger, Stability::Semistable, "{x >= Edag}"});
            break;
        case EquilibriumKind::Pair: {
            rep.slope_e1 = slope_at(an.e1->m);
            rep.slope_e2 = slope_at(an.e2->m);
            rep.det_j_e1 = det3(jacobian(p, *an.e1, an.mt_star));
            rep.det_j_e2 = det3(jacobian(p, *an.e2, an.mt_star));
            rep.labels.push_back({"0", State{}, Stability::LocallyStable, "[0, E1)"});
            rep.labels.push_back({"E1", *an.e1, Stability::Unstable, ""});
            rep.labels.push_back({"E2", *an.e2, Stability::Stable, "{x > E1}"});
            break;
        }
    }
    return rep;
}

double periodic_threshold(const Params& p, double tau) {
    if (!(tau > 0.0)) throw SemanticError("release period tau must be positive");
    return sit_thresholds(p).mt1 * (std::exp(p.mu_t * tau) - 1.0);
}

}  // namespace sit
