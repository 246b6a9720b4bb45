#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "sit/csv.hpp"
#include "sit/equilibria.hpp"
#include "sit/integrator.hpp"

using namespace sit;

TEST_CASE("equilibrium is a fixed point of the integration") {
    const Params p = baseline_params(0.04);
    const State estar = *wild_equilibrium(p);
    const auto traj = integrate_wild(p, estar, 0.0, 100.0);
    const auto fin = traj.final_state();
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(fin[i] - estar.to_array()[i]) < 1e-6 * max_abs(estar));
}

TEST_CASE("relaxation toward the wild equilibrium from above") {
    const Params p = baseline_params(0.04);
    const State estar = *wild_equilibrium(p);
    const auto traj = integrate_wild(p, 1.5 * estar, 0.0, 2000.0);
    const auto fin = traj.final_state();
    double dist = 0.0;
    for (int i = 0; i < 3; ++i) dist = std::max(dist, std::abs(fin[i] - estar.to_array()[i]));
    CHECK(dist < 0.01 * max_abs(estar));
    // Distance shrinks along the early transient.
    auto dist_at = [&](double t) {
        const auto v = traj.eval(t);
        double d = 0.0;
        for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(v[i] - estar.to_array()[i]));
        return d;
    };
    CHECK(dist_at(100.0) < dist_at(10.0));
    CHECK(dist_at(10.0) < dist_at(1.0));
}

TEST_CASE("self-convergence: tighter tolerance, smaller error") {
    const Params p = baseline_params(0.06);
    const State x0 = 1.5 * *wild_equilibrium(p);
    IntegrateOptions ref_opt;
    ref_opt.tol = 1e-12;
    const auto ref = integrate_wild(p, x0, 0.0, 50.0, ref_opt).final_state();

    std::vector<double> errs;
    for (double tol : {1e-5, 1e-6, 1e-7, 1e-8, 1e-9}) {
        IntegrateOptions opt;
        opt.tol = tol;
        const auto fin = integrate_wild(p, x0, 0.0, 50.0, opt).final_state();
        double e = 0.0;
        for (int i = 0; i < 3; ++i) e = std::max(e, std::abs(fin[i] - ref[i]));
        errs.push_back(e);
    }
    for (std::size_t i = 1; i < errs.size(); ++i) CHECK(errs[i] <= errs[i - 1] * 1.5);
    CHECK(errs.back() < errs.front() / 10.0);
}

TEST_CASE("dense output coincides with stored samples") {
    const Params p = baseline_params(0.08);
    const auto traj = integrate_wild(p, {5000.0, 400.0, 600.0}, 0.0, 30.0);
    REQUIRE(traj.times.size() > 3);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto v = traj.eval(traj.times[i]);
        for (int c = 0; c < 3; ++c)
            CHECK(v[c] == doctest::Approx(traj.states[i][c]).epsilon(1e-9));
    }
    CHECK(std::is_sorted(traj.times.begin(), traj.times.end()));
}

TEST_CASE("determinism: identical inputs give bit-identical trajectories") {
    const Params p = baseline_params(0.04);
    const auto a = integrate_sit(p, 1500.0, {9350.0, 1362.0, 1832.0}, 0.0, 200.0);
    const auto b = integrate_sit(p, 1500.0, {9350.0, 1362.0, 1832.0}, 0.0, 200.0);
    REQUIRE(a.times.size() == b.times.size());
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        CHECK(a.times[i] == b.times[i]);
        for (int c = 0; c < 3; ++c) CHECK(a.states[i][c] == b.states[i][c]);
    }
}

TEST_CASE("tolerance bounds are enforced") {
    const Params p = baseline_params(0.04);
    IntegrateOptions opt;
    opt.tol = 1e-2;
    CHECK_THROWS_AS(integrate_wild(p, {1.0, 1.0, 1.0}, 0.0, 1.0, opt), SemanticError);
    opt.tol = 1e-13;
    CHECK_THROWS_AS(integrate_wild(p, {1.0, 1.0, 1.0}, 0.0, 1.0, opt), SemanticError);
}

TEST_CASE("non-finite derivatives are reported") {
    auto rhs = [](double t, const State& x) {
        return t > 0.5 ? State{std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0}
                       : State{-x.a, -x.m, -x.f};
    };
    CHECK_THROWS_AS(integrate(rhs, {1.0, 1.0, 1.0}, 0.0, 1.0), NumericError);
}

TEST_CASE("negative undershoot beyond the clamp threshold aborts") {
    // Constant negative drive pushes the first component far below zero.
    auto rhs = [](double, const State&) { return State{-1.0, 0.0, 0.0}; };
    CHECK_THROWS_AS(integrate(rhs, {1e-3, 1.0, 1.0}, 0.0, 10.0), NumericError);
}

TEST_CASE("roundoff undershoot clamps to zero") {
    // Exponential decay reaches ~0 without triggering the abort.
    auto rhs = [](double, const State& x) { return State{-2.0 * x.a, -x.m, -x.f}; };
    const auto traj = integrate(rhs, {1.0, 1.0, 1.0}, 0.0, 50.0);
    for (const auto& s : traj.states)
        for (int c = 0; c < 3; ++c) CHECK(s[c] >= 0.0);
}

TEST_CASE("periodic sterile stock: pulse value, minimum, mean") {
    const double lambda = 212.0, tau = 7.0, mu_t = 0.14;
    const double peak = tau * lambda / (1.0 - std::exp(-mu_t * tau));
    CHECK(periodic_mt(0.0, lambda, tau, mu_t) == doctest::Approx(peak).epsilon(1e-12));
    CHECK(periodic_mt(3 * tau, lambda, tau, mu_t) == doctest::Approx(peak).epsilon(1e-9));

    // Minimum over the period sits just before the next pulse.
    double mn = peak;
    for (int i = 0; i <= 10000; ++i)
        mn = std::min(mn, periodic_mt(tau * i / 10001.0, lambda, tau, mu_t));
    CHECK(mn == doctest::Approx(peak * std::exp(-mu_t * tau)).epsilon(1e-3));

    // Period mean equals Lambda/mu_t (composite Simpson quadrature).
    const int n = 4096;
    double sum = periodic_mt(0.0, lambda, tau, mu_t)
               + periodic_mt(tau * (1.0 - 1e-12), lambda, tau, mu_t);
    for (int i = 1; i < n; ++i)
        sum += periodic_mt(tau * i / n, lambda, tau, mu_t) * (i % 2 ? 4.0 : 2.0);
    const double mean = sum * (tau / n) / 3.0 / tau;
    CHECK(mean == doctest::Approx(lambda / mu_t).epsilon(1e-10));
}

TEST_CASE("impulsive integration: pulse bookkeeping and attractor") {
    const Params p = baseline_params(0.04);
    const ReleasePolicy pol = ReleasePolicy::impulsive(300.0, 7.0);
    const ExtendedState x0{{9350.0, 1362.4, 1832.6}, 0.0};
    const auto traj = integrate_impulsive(p, pol, x0, 170.0);

    // One event per pulse time n*tau in [0, horizon).
    REQUIRE(traj.events.size() == 25);
    for (std::size_t n = 0; n < traj.events.size(); ++n) {
        CHECK(traj.events[n].time == doctest::Approx(7.0 * n).epsilon(1e-12));
        CHECK(traj.events[n].label == "pulse");
    }

    // A, M, F are continuous across each jump; only MT moves, by tau*lambda.
    for (const Event& ev : traj.events) {
        if (ev.time == 0.0) continue;
        std::size_t idx = 0;
        while (traj.times[idx] != ev.time) ++idx;
        const auto& post = traj.states[idx];
        const auto pre = traj.steps[idx - 1].y1;
        for (int c = 0; c < 3; ++c) CHECK(post[c] == pre[c]);
        CHECK(post[3] == doctest::Approx(pre[3] + 2100.0).epsilon(1e-12));
    }

    // After 20 periods the pulse-time stock is on the attractor.
    const auto long_run = integrate_impulsive(p, pol, x0, 7.0 * 21);
    const double peak = 7.0 * 300.0 / (1.0 - std::exp(-p.mu_t * 7.0));
    std::size_t idx = 0;
    while (long_run.times[idx] != 7.0 * 20) ++idx;
    CHECK(long_run.states[idx][3] == doctest::Approx(peak).epsilon(1e-3));
}

TEST_CASE("zero release rate reduces to the wild model with decaying stock") {
    const Params p = baseline_params(0.04);
    const ReleasePolicy pol = ReleasePolicy::impulsive(0.0, 7.0);
    const ExtendedState x0{{4000.0, 500.0, 700.0}, 900.0};
    const auto traj = integrate_impulsive(p, pol, x0, 60.0);
    const auto wild = integrate_wild(p, x0.state, 0.0, 60.0);
    const auto a = traj.final_state();
    const auto b = wild.final_state();
    CHECK(a[3] == doctest::Approx(900.0 * std::exp(-p.mu_t * 60.0)).epsilon(1e-6));
    // The decaying residual stock only dilutes matings, so the run sits
    // below the wild one.
    for (int c = 0; c < 3; ++c) CHECK(a[c] <= b[c] * (1.0 + 1e-9));
    // With zero initial stock it is exactly the wild model.
    const auto traj0 = integrate_impulsive(p, pol, {x0.state, 0.0}, 60.0);
    const auto z = traj0.final_state();
    for (int c = 0; c < 3; ++c) CHECK(z[c] == doctest::Approx(b[c]).epsilon(1e-7));
}

TEST_CASE("frozen minimum stock dominates the pulse trajectory") {
    // The constant system at the periodic minimum kills less, so its F (and
    // the rest) runs above the pulsed trajectory started on the attractor.
    const Params p = baseline_params(0.04);
    const double tau = 7.0, lambda = 300.0;
    const double mt_lower = tau * lambda * std::exp(-p.mu_t * tau)
                          / (1.0 - std::exp(-p.mu_t * tau));
    const State x0{9350.0, 1362.4, 1832.6};
    const auto pulsed = integrate_impulsive(p, ReleasePolicy::impulsive(lambda, tau),
                                            {x0, mt_lower}, 300.0);
    const auto frozen = integrate_sit(p, mt_lower, x0, 0.0, 300.0);
    for (double t = 0.0; t <= 300.0; t += 1.0) {
        const auto a = pulsed.eval(t);
        const auto b = frozen.eval(t);
        for (int c = 0; c < 3; ++c) CHECK(a[c] <= b[c] * (1.0 + 1e-6) + 1e-9);
    }
}

TEST_CASE("kamke ordering for ordered initial states") {
    const Params p = baseline_params(0.06);
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        const State lo{u(gen) * 2e4, u(gen) * 3e3, u(gen) * 4e3};
        const State hi = lo + State{u(gen) * 1e3, u(gen) * 1e2, u(gen) * 1e2};
        const double mt = i % 2 ? 0.0 : 1200.0;
        const auto a = integrate_sit(p, mt, lo, 0.0, 150.0);
        const auto b = integrate_sit(p, mt, hi, 0.0, 150.0);
        for (double t = 0.0; t <= 150.0; t += 5.0) {
            const auto va = a.eval(t);
            const auto vb = b.eval(t);
            for (int c = 0; c < 3; ++c)
                CHECK(va[c] <= vb[c] + 1e-6 * std::max(1.0, vb[c]));
        }
    }
}

TEST_CASE("first entry time: inside, exponential oracle, never") {
    const State target{10.0, 10.0, 10.0};

    // Starting inside the box.
    auto decay = [](double, const State& x) { return State{-0.1 * x.a, -0.2 * x.m, -0.3 * x.f}; };
    const auto inside = integrate(decay, {1.0, 2.0, 3.0}, 0.0, 5.0);
    CHECK(first_entry_time(inside, target) == 0.0);

    // Pure exponential decay: the last component to cross decides, at
    // t_i = log(x0_i/y_i)/rate_i.
    const State x0{100.0, 40.0, 90.0};
    const auto traj = integrate(decay, x0, 0.0, 60.0);
    const double expected = std::max({std::log(x0.a / 10.0) / 0.1, std::log(x0.m / 10.0) / 0.2,
                                      std::log(x0.f / 10.0) / 0.3});
    const auto hit = first_entry_time(traj, target);
    REQUIRE(hit.has_value());
    CHECK(std::abs(*hit - expected) < 1e-6 + 1e-6 * expected);

    // Wild model from E* with a small target: never enters.
    const Params p = baseline_params(0.04);
    const State estar = *wild_equilibrium(p);
    const auto wild = integrate_wild(p, estar, 0.0, 2000.0);
    CHECK(!first_entry_time(wild, State{100.0, 100.0, 100.0}).has_value());
}

TEST_CASE("entry refinement lands on the crossing") {
    auto decay = [](double, const State& x) { return State{-0.05 * x.a, -0.3 * x.m, -0.3 * x.f}; };
    const auto traj = integrate(decay, {500.0, 300.0, 200.0}, 0.0, 200.0);
    const State y{50.0, 20.0, 20.0};
    const auto hit = first_entry_time(traj, y);
    REQUIRE(hit.has_value());
    const auto v = traj.eval(*hit);
    const double gap = std::max({v[0] - y.a, v[1] - y.m, v[2] - y.f});
    CHECK(std::abs(gap) < 1e-4);  // within interpolation error of the crossing
}
