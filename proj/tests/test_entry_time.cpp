#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>

#include "sit/entry_time.hpp"
#include "sit/equilibria.hpp"

using namespace sit;

namespace {

// Test-side oracle: scaling-and-squaring matrix exponential for the 3x3
// comparison matrix, independent of the closed-form modal solution.
Mat3 expm(Mat3 a, double t) {
    for (auto& row : a)
        for (double& v : row) v *= t;
    double norm = 0.0;
    for (const auto& row : a) {
        double s = 0.0;
        for (double v : row) s += std::abs(v);
        norm = std::max(norm, s);
    }
    int squarings = 0;
    while (norm > 0.5) {
        norm /= 2.0;
        ++squarings;
        for (auto& row : a)
            for (double& v : row) v /= 2.0;
    }
    auto matmul = [](const Mat3& x, const Mat3& y) {
        Mat3 r{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) r[i][j] += x[i][k] * y[k][j];
        return r;
    };
    Mat3 result{};
    for (int i = 0; i < 3; ++i) result[i][i] = 1.0;
    Mat3 term = result;
    for (int n = 1; n <= 20; ++n) {
        term = matmul(term, a);
        for (auto& row : term)
            for (double& v : row) v /= n;  // accumulate t^n A^n / n!
        bool tiny = true;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                result[i][j] += term[i][j];
                if (std::abs(term[i][j]) > 1e-18) tiny = false;
            }
        if (tiny) break;
    }
    for (int s = 0; s < squarings; ++s) result = matmul(result, result);
    return result;
}

Mat3 comparison_matrix(const Params& p, double eps_ratio) {
    const double sig = p.gamma + p.mu_a1;
    return Mat3{{{-sig, 0.0, p.phi},
                 {(1.0 - p.r) * p.gamma, -p.mu_m, 0.0},
                 {p.r * p.gamma * eps_ratio, 0.0, -p.mu_f}}};
}

State apply(const Mat3& m, const State& x) {
    return {m[0][0] * x.a + m[0][1] * x.m + m[0][2] * x.f,
            m[1][0] * x.a + m[1][1] * x.m + m[1][2] * x.f,
            m[2][0] * x.a + m[2][1] * x.m + m[2][2] * x.f};
}

}  // namespace

TEST_CASE("target point construction and rejections") {
    const Params p = baseline_params(0.04);
    const TargetSpec t = target_point(p, 800.0, 0.1);
    const EquilibriumAnalysis an = sit_equilibria(p, 800.0);
    CHECK(t.y.a == doctest::Approx(an.e1->a - 0.1).epsilon(1e-12));
    CHECK(t.y.m == doctest::Approx(an.e1->m - 0.1).epsilon(1e-12));
    CHECK(t.y.f == doctest::Approx(an.e1->f - 0.1).epsilon(1e-12));

    CHECK_THROWS_AS(target_point(p, 800.0, 0.0), SemanticError);
    const double mt1 = sit_thresholds(p).mt1;
    CHECK_THROWS_AS(target_point(p, 1.01 * mt1, 0.1), SemanticError);
    // Epsilon larger than the smallest component of E1.
    CHECK_THROWS_AS(target_point(p, 100.0, 1.0), SemanticError);
}

TEST_CASE("epsilon ratio") {
    const Params p = baseline_params(0.04);
    CHECK(epsilon_ratio(p, 0.0) == 1.0);
    const double mstar = wild_equilibrium(p)->m;
    const double mt1 = sit_thresholds(p).mt1;
    CHECK(epsilon_ratio(p, 5.0 * mt1) ==
          doctest::Approx(mstar / (mstar + 5.0 * mt1)).epsilon(1e-12));
    // Strictly decreasing in the release level.
    double prev = 1.0;
    for (double mt : {10.0, 100.0, 1e3, 1e4, 1e6}) {
        const double e = epsilon_ratio(p, mt);
        CHECK(e < prev);
        prev = e;
    }
    CHECK(prev < 1e-2);
}

TEST_CASE("minimal entry time, constant releases") {
    const Params p = baseline_params(0.04);
    const double mt1 = sit_thresholds(p).mt1;
    const State estar = *wild_equilibrium(p);

    // Published cells: k=2/mt_small=500 -> 169, k=10/800 -> 65.
    const TargetSpec t500 = target_point(p, 500.0, 0.1);
    const auto r1 =
        minimal_entry_time(p, ReleasePolicy::constant(2.0 * mt1), t500, estar, 4e4);
    REQUIRE(r1.has_value());
    CHECK(*r1 == doctest::Approx(169.0).epsilon(0.05));

    const TargetSpec t800 = target_point(p, 800.0, 0.1);
    const auto r2 =
        minimal_entry_time(p, ReleasePolicy::constant(10.0 * mt1), t800, estar, 4e4);
    REQUIRE(r2.has_value());
    CHECK(*r2 == doctest::Approx(65.0).epsilon(0.05));

    // Sub-threshold release from E*: never enters.
    const auto none =
        minimal_entry_time(p, ReleasePolicy::constant(0.5 * mt1), t500, estar, 5000.0);
    CHECK(!none.has_value());
}

TEST_CASE("minimal entry time, impulsive releases") {
    const Params p = baseline_params(0.04);
    const State estar = *wild_equilibrium(p);
    const double per = periodic_threshold(p, 7.0);
    const TargetSpec t500 = target_point(p, 500.0, 0.1);
    const auto r = minimal_entry_time(
        p, ReleasePolicy::impulsive(2.0 * per / 7.0, 7.0), t500, estar, 4e4);
    REQUIRE(r.has_value());
    CHECK(*r == doctest::Approx(120.0).epsilon(0.10));
}

TEST_CASE("entry-time monotonicity in the release ladder") {
    const Params p = baseline_params(0.06);
    const double mt1 = sit_thresholds(p).mt1;
    const State estar = *wild_equilibrium(p);
    const TargetSpec t = target_point(p, 500.0, 0.1);
    double prev = 1e18;
    for (double k : {1.2, 2.0, 5.0, 10.0}) {
        const auto r = minimal_entry_time(p, ReleasePolicy::constant(k * mt1), t, estar, 4e4);
        REQUIRE(r.has_value());
        CHECK(*r <= prev);
        prev = *r;
    }
}

TEST_CASE("comparison modes: sign structure") {
    const Params p = baseline_params(0.04);
    const double mt1 = sit_thresholds(p).mt1;
    // Sign pattern holds already at 5*MT1 even though the decay hypothesis
    // needs far larger levels.
    for (double k : {5.0, 35.0, 60.0}) {
        const ComparisonModes m = comparison_modes(p, k * mt1);
        CHECK(m.a0_plus > 0.0);
        CHECK(m.a0_minus < 0.0);
        CHECK(m.b0_plus > 0.0);
        CHECK(m.b0_minus > 0.0);
        CHECK(m.b0_minus == doctest::Approx(m.x_minus * m.a0_minus).epsilon(1e-10));
        CHECK(m.x_minus < 0.0);
        CHECK(m.x_plus > 0.0);
        CHECK(m.kappa_minus < m.kappa_plus);
        // Upper start dominates the wild equilibrium.
        const State estar = *wild_equilibrium(p);
        CHECK(all_leq(estar, m.upper_state));
    }
}

TEST_CASE("analytic bound rejects violated hypotheses") {
    const Params p = baseline_params(0.04);
    const double mt1 = sit_thresholds(p).mt1;
    const TargetSpec t = target_point(p, 800.0, 0.1);
    // eps_ratio * R >= 1 at 5*MT1.
    CHECK_THROWS_AS(analytic_time_bound(p, 5.0 * mt1, t), SemanticError);
    // mu_f >= mu_m violates the technical assumption.
    Params bad = p;
    bad.mu_f = 0.2;
    CHECK_THROWS_AS(analytic_time_bound(bad, 40.0 * mt1, target_point(bad, 400.0, 0.1)),
                    SemanticError);
}

TEST_CASE("analytic bound against the closed form and the matrix exponential") {
    const Params p = baseline_params(0.04);
    const double mt1 = sit_thresholds(p).mt1;
    const double level = 35.0 * mt1;
    const TargetSpec t = target_point(p, 800.0, 0.1);
    const AnalyticBound b = analytic_time_bound(p, level, t);

    CHECK(b.modes.eps_ratio * basic_offspring_number(p) < 1.0);
    CHECK(b.modes.kappa_plus < 0.0);
    CHECK(b.modes.kappa_minus < 0.0);
    CHECK(b.bound == std::max({b.t_a, b.t_m, b.t_f}));
    CHECK(b.lambda_coef > 0.0);

    // Modal closed form matches the matrix exponential along the run.
    const Mat3 z = comparison_matrix(p, b.modes.eps_ratio);
    for (double tt : {0.0, 10.0, 100.0, b.bound}) {
        const State direct = apply(expm(z, tt), b.modes.upper_state);
        const State modal = comparison_solution(p, b.modes, tt);
        CHECK(modal.a == doctest::Approx(direct.a).epsilon(1e-8));
        CHECK(modal.m == doctest::Approx(direct.m).epsilon(1e-8));
        CHECK(modal.f == doctest::Approx(direct.f).epsilon(1e-8));
    }

    // Every component is below its own target at its own time, and the
    // whole state is below Y at the bound.
    CHECK(comparison_solution(p, b.modes, b.t_a).a <= t.y.a * (1.0 + 1e-9));
    CHECK(comparison_solution(p, b.modes, b.t_m).m <= t.y.m * (1.0 + 1e-9));
    CHECK(comparison_solution(p, b.modes, b.t_f).f <= t.y.f * (1.0 + 1e-9));
    const State at_bound = comparison_solution(p, b.modes, b.bound);
    CHECK(at_bound.a < t.y.a);
    CHECK(at_bound.m < t.y.m);
    CHECK(at_bound.f < t.y.f);

    // First linear entry happens no later than the bound.
    const auto lin = integrate(
        [&](double, const State& x) { return apply(z, x); }, b.modes.upper_state, 0.0,
        b.bound * 1.5);
    const auto first = first_entry_time(lin, t.y);
    REQUIRE(first.has_value());
    CHECK(*first <= b.bound + 1e-3);
}

TEST_CASE("both lambda branches of the male bound are reachable") {
    const Params p = baseline_params(0.04);
    const double mt1 = sit_thresholds(p).mt1;
    const TargetSpec t = target_point(p, 800.0, 0.1);
    // Moderate hypothesis-satisfying level: kappa_- + mu_M < 0.
    const AnalyticBound b1 = analytic_time_bound(p, 35.0 * mt1, t);
    CHECK(!b1.lambda_minus_branch);
    // Extremely massive level: kappa_- approaches -(gamma+mu_a1) > -mu_M.
    const AnalyticBound b2 = analytic_time_bound(p, 2000.0 * mt1, t);
    CHECK(b2.lambda_minus_branch);
    CHECK(b2.lambda_coef > 0.0);
}

TEST_CASE("linear comparison dominates the nonlinear trajectory") {
    const Params p = baseline_params(0.04);
    const double mt1 = sit_thresholds(p).mt1;
    const State estar = *wild_equilibrium(p);
    for (double k : {5.0, 35.0}) {
        const ComparisonModes m = comparison_modes(p, k * mt1);
        const auto nonlinear = integrate_sit(p, k * mt1, estar, 0.0, 400.0);
        for (double tt = 0.0; tt <= 400.0; tt += 2.0) {
            const auto x = nonlinear.eval(tt);
            const State xe = comparison_solution(p, m, tt);
            CHECK(x[0] <= xe.a * (1.0 + 1e-9) + 1e-9);
            CHECK(x[1] <= xe.m * (1.0 + 1e-9) + 1e-9);
            CHECK(x[2] <= xe.f * (1.0 + 1e-9) + 1e-9);
        }
    }
}

TEST_CASE("post-switch containment and monotone decay") {
    const Params p = baseline_params(0.04);
    const double mt1 = sit_thresholds(p).mt1;
    const State estar = *wild_equilibrium(p);
    const TargetSpec t = target_point(p, 800.0, 0.1);
    const EntryResult entry =
        minimal_entry_result(p, ReleasePolicy::constant(5.0 * mt1), t, estar, 4e4);
    REQUIRE(entry.time.has_value());

    const State e1 = t.y + State{t.epsilon, t.epsilon, t.epsilon};
    const auto post = integrate_sit(p, 800.0, entry.state, 0.0, 1000.0);
    for (double tt = 0.0; tt <= 1000.0; tt += 5.0) {
        const auto v = post.eval(tt);
        CHECK(v[0] < e1.a);
        CHECK(v[1] < e1.m);
        CHECK(v[2] < e1.f);
    }
    const auto fin = post.final_state();
    CHECK(fin[0] < entry.state.a);
    CHECK(fin[1] < entry.state.m);
    CHECK(fin[2] < entry.state.f);
}

TEST_CASE("stopping the massive release early loses the gains") {
    // Dropping to the small level from a state still outside the box sends
    // the system to the positive stable equilibrium of the small level.
    const Params p = baseline_params(0.04);
    const double mt1 = sit_thresholds(p).mt1;
    const State estar = *wild_equilibrium(p);
    const TargetSpec t = target_point(p, 800.0, 0.1);
    const EntryResult entry =
        minimal_entry_result(p, ReleasePolicy::constant(5.0 * mt1), t, estar, 4e4);
    REQUIRE(entry.time.has_value());

    // Stop at 60% of the required time.
    const auto partial =
        integrate_sit(p, 5.0 * mt1, estar, 0.0, 0.6 * *entry.time);
    const State outside = State::from_array(partial.final_state());
    CHECK(!all_less(outside, t.y));

    const State e2 = *sit_equilibria(p, 800.0).e2;
    const auto resumed = integrate_sit(p, 800.0, outside, 0.0, 20000.0);
    const auto fin = resumed.final_state();
    double dist = 0.0;
    for (int c = 0; c < 3; ++c) dist = std::max(dist, std::abs(fin[c] - e2.to_array()[c]));
    CHECK(dist < 0.01 * max_abs(e2));
}
