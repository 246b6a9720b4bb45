#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "sit/equilibria.hpp"

using namespace sit;

TEST_CASE("thresholds formulas and table values") {
    const Params p04 = baseline_params(0.04);
    const Thresholds t = sit_thresholds(p04);
    // Published 863.9 is the male-fraction-0.5 value; with r=0.49 the exact
    // formula gives 881.57.
    CHECK(t.mt1 == doctest::Approx(881.5714).epsilon(1e-5));
    CHECK(t.mt1 == doctest::Approx(863.9).epsilon(0.06));
    CHECK(sit_thresholds(baseline_params(0.1)).mt1 == doctest::Approx(5954.0).epsilon(0.06));
    CHECK(t.mt2 > t.mt1);

    // R -> 1+ collapses MT1 like (sqrt(R)-1)^2.
    Params near = p04;
    near.phi = p04.phi * (1.0 + 1e-9) / basic_offspring_number(p04);
    const Thresholds tn = sit_thresholds(near);
    CHECK(tn.mt1 < 1e-15 / tn.q);

    Params sub = p04;
    sub.phi *= 0.5 / basic_offspring_number(p04);
    CHECK_THROWS_AS(sit_thresholds(sub), SemanticError);
}

TEST_CASE("alpha quadratic roots satisfy Vieta and reconstruct equilibria") {
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> ug(0.04, 0.1);
    for (int i = 0; i < 50; ++i) {
        const Params p = baseline_params(ug(gen));
        const Thresholds t = sit_thresholds(p);
        std::uniform_real_distribution<double> um(1e-3 * t.mt1, 0.999 * t.mt1);
        const double mt = um(gen);
        const EquilibriumAnalysis an = sit_equilibria(p, mt);
        REQUIRE(an.kind == EquilibriumKind::Pair);
        const double R = an.r_number, qm = an.q * mt;
        CHECK(*an.alpha_plus * *an.alpha_minus == doctest::Approx(qm).epsilon(1e-10));
        CHECK(*an.alpha_plus + *an.alpha_minus == doctest::Approx(R - 1.0 - qm).epsilon(1e-10));
        CHECK(0.0 < *an.alpha_minus);
        CHECK(*an.alpha_minus < *an.alpha_plus);
        CHECK(all_less(*an.e1, *an.e2));

        // Both reconstructed points are fixed points of the release system.
        for (const State& e : {*an.e1, *an.e2}) {
            const State d = sit_rhs(p, e, mt);
            CHECK(max_abs(d) <= 1e-8 * std::max(1.0, max_abs(e)));
        }

        // Discriminant identity.
        const double lhs = (R - 1.0 - qm) * (R - 1.0 - qm) - 4.0 * qm;
        CHECK(an.discriminant == doctest::Approx(lhs).epsilon(1e-10));
    }
}

TEST_CASE("equilibria ordering against the wild equilibrium") {
    const Params p = baseline_params(0.06);
    const State estar = *wild_equilibrium(p);
    const Thresholds t = sit_thresholds(p);
    for (double f : {0.1, 0.5, 0.9}) {
        const EquilibriumAnalysis an = sit_equilibria(p, f * t.mt1);
        REQUIRE(an.kind == EquilibriumKind::Pair);
        CHECK(all_less(*an.e1, *an.e2));
        CHECK(all_less(*an.e2, estar));
    }
}

TEST_CASE("published E1 values, allowing the sex-ratio gap") {
    // gamma=0.06, mt=100 published (18.79, 4.03, 0.21).
    const EquilibriumAnalysis an = sit_equilibria(baseline_params(0.06), 100.0);
    CHECK(an.e1->a == doctest::Approx(18.79).epsilon(0.05));
    CHECK(an.e1->m == doctest::Approx(4.03).epsilon(0.05));
    CHECK(an.e1->f == doctest::Approx(0.21).epsilon(0.08));
}

TEST_CASE("mt = 0 degenerates to the wild picture") {
    const Params p = baseline_params(0.04);
    const EquilibriumAnalysis an = sit_equilibria(p, 0.0);
    const double R = basic_offspring_number(p);
    CHECK(*an.alpha_plus == doctest::Approx(R - 1.0).epsilon(1e-12));
    CHECK(*an.alpha_minus == 0.0);
    const State estar = *wild_equilibrium(p);
    CHECK(an.e2->a == doctest::Approx(estar.a).epsilon(1e-12));
    CHECK(an.e2->m == doctest::Approx(estar.m).epsilon(1e-12));
    CHECK(an.e2->f == doctest::Approx(estar.f).epsilon(1e-12));
    CHECK(max_abs(*an.e1) == 0.0);

    const StabilityReport rep = classify_stability(p, an);
    REQUIRE(rep.labels.size() == 2);
    CHECK(rep.labels[0].stability == Stability::Unstable);
    CHECK(rep.labels[1].name == "E*");
    CHECK(rep.labels[1].stability == Stability::Stable);
}

TEST_CASE("kind classification across the threshold") {
    const Params p = baseline_params(0.04);
    const Thresholds t = sit_thresholds(p);

    CHECK(sit_equilibria(p, 0.5 * t.mt1).kind == EquilibriumKind::Pair);
    CHECK(sit_equilibria(p, 2.0 * t.mt1).kind == EquilibriumKind::NoPositive);

    const EquilibriumAnalysis tang = sit_equilibria(p, t.mt1);
    CHECK(tang.kind == EquilibriumKind::Tangent);
    REQUIRE(tang.e_dagger.has_value());
    CHECK(max_abs(sit_rhs(p, *tang.e_dagger, t.mt1)) < 1e-6 * max_abs(*tang.e_dagger));

    // Tangency of the discriminant at both roots.
    for (double mtt : {t.mt1, t.mt2}) {
        const double qm = t.q * mtt;
        const double s = std::sqrt(basic_offspring_number(p));
        const double delta = ((s - 1) * (s - 1) - qm) * ((s + 1) * (s + 1) - qm);
        const double scale = (s - 1) * (s - 1) + qm;
        CHECK(std::abs(delta) < 1e-10 * scale * scale);
    }

    // Slightly off the tangency the sign decides.
    CHECK(sit_equilibria(p, t.mt1 * (1.0 - 1e-4)).kind == EquilibriumKind::Pair);
    CHECK(sit_equilibria(p, t.mt1 * (1.0 + 1e-4)).kind == EquilibriumKind::NoPositive);
}

TEST_CASE("bisection oracle agrees with the quadratic route") {
    const Params p = baseline_params(0.04);

    const EquilibriumAnalysis an = sit_equilibria(p, 800.0);
    const auto roots = verify_equilibrium_by_bisection(p, 800.0);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == doctest::Approx(an.e1->m).epsilon(1e-8));
    CHECK(roots[1] == doctest::Approx(an.e2->m).epsilon(1e-8));

    // Above the threshold: no intersections.
    const Thresholds t = sit_thresholds(p);
    CHECK(verify_equilibrium_by_bisection(p, 1.5 * t.mt1).empty());

    // At the tangency: one (double) root near the dagger point.
    const auto tang = verify_equilibrium_by_bisection(p, t.mt1);
    REQUIRE(tang.size() >= 1);
    const EquilibriumAnalysis an_t = sit_equilibria(p, t.mt1);
    CHECK(tang.front() == doctest::Approx(an_t.e_dagger->m).epsilon(1e-3));
}

TEST_CASE("stability classification in the bistable window") {
    const Params p = baseline_params(0.04);
    const EquilibriumAnalysis an = sit_equilibria(p, 800.0);
    const StabilityReport rep = classify_stability(p, an);
    REQUIRE(rep.labels.size() == 3);
    CHECK(rep.labels[0].stability == Stability::LocallyStable);
    CHECK(rep.labels[1].stability == Stability::Unstable);
    CHECK(rep.labels[2].stability == Stability::Stable);

    REQUIRE(rep.slope_e1.has_value());
    REQUIRE(rep.slope_e2.has_value());
    CHECK(*rep.slope_e1 > 0.0);
    CHECK(*rep.slope_e2 < 0.0);
    REQUIRE(rep.det_j_e1.has_value());
    CHECK(*rep.det_j_e1 > 0.0);
    CHECK(*rep.det_j_e2 < 0.0);

    // det(J_E1) = (1-r) r gamma^2 phi A1 * slope1.
    const double pref = (1.0 - p.r) * p.r * p.gamma * p.gamma * p.phi * an.e1->a;
    CHECK(*rep.det_j_e1 == doctest::Approx(pref * *rep.slope_e1).epsilon(1e-8));

    const StabilityReport gas =
        classify_stability(p, sit_equilibria(p, 2.0 * sit_thresholds(p).mt1));
    REQUIRE(gas.labels.size() == 1);
    CHECK(gas.labels[0].stability == Stability::GloballyStable);
}

TEST_CASE("periodic threshold") {
    const Params p04 = baseline_params(0.04);
    const double per = periodic_threshold(p04, 7.0);
    // Exact with mu_T = 0.14; the published 1484.5 used 1/7.
    CHECK(per == doctest::Approx(881.5714 * (std::exp(0.98) - 1.0)).epsilon(1e-6));
    CHECK(per == doctest::Approx(1484.5).epsilon(0.06));
    CHECK(periodic_threshold(baseline_params(0.1), 7.0) == doctest::Approx(10230.0).epsilon(0.06));

    // tau -> 0: the rate condition Lambda > mu_T * MT1.
    const double tau = 1e-8;
    CHECK(periodic_threshold(p04, tau) / tau ==
          doctest::Approx(p04.mu_t * sit_thresholds(p04).mt1).epsilon(1e-6));

    CHECK_THROWS_AS(periodic_threshold(p04, 0.0), SemanticError);
}
