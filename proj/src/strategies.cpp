#include "sit/strategies.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace sit {

Params mc_adjusted_params(const Params& p, double mc_percent) {
    if (!(mc_percent >= 0.0 && mc_percent < 100.0))
        throw SemanticError("mechanical-control percentage must lie in [0, 100)");
    const auto estar = wild_equilibrium(p);
    if (!estar) throw SemanticError("R <= 1: mechanical-control adjustment undefined");
    if (mc_percent == 0.0) return p;
    const double R = basic_offspring_number(p);
    Params q = p;
    q.mu_a2 = (p.gamma + p.mu_a1) * (R - 1.0) / ((1.0 - mc_percent / 100.0) * estar->a);
    return q;
}

State adulticide_pretreatment(const Params& p, double days, const IntegrateOptions& opt) {
    const auto estar = wild_equilibrium(p);
    if (!estar) throw SemanticError("R <= 1: no wild equilibrium to treat");
    const State killed{estar->a, 0.0, 0.0};
    if (days <= 0.0) return killed;
    const Trajectory3 traj = integrate_wild(p, killed, 0.0, days, opt);
    return State::from_array(traj.final_state());
}

void CampaignConfig::validate() const {
    base.validate();
    massive.validate();
    if (!(mc_percent >= 0.0 && mc_percent < 100.0))
        throw SemanticError("mechanical-control percentage must lie in [0, 100)");
    if (adulticide_days < 0.0) throw SemanticError("adulticide duration must be >= 0");
    if (!(epsilon > 0.0)) throw SemanticError("epsilon must be > 0");
    if (!(horizon > 0.0)) throw SemanticError("horizon must be > 0");
    const Params sit_phase =
        mc_scope == McScope::AllPhases ? mc_adjusted_params(base, mc_percent) : base;
    const Thresholds th = sit_thresholds(sit_phase);
    if (!(sustained_level > 0.0) || sustained_level >= th.mt1)
        throw SemanticError("sustained level must satisfy 0 < level < MT1 of the SIT-phase "
                            "parameters (MT1 = " + std::to_string(th.mt1) + ")");
}

namespace {

// Sustained phase: run post_window days from the switch state at the small
// release and check the trajectory stays in [0, E1) and ends below where it
// started.
struct ContainmentOutcome {
    bool ok = false;
    State final_state;
    std::optional<Trajectory3> traj3;
    std::optional<Trajectory4> traj4;
};

ContainmentOutcome check_containment(const Params& p, const CampaignConfig& cfg,
                                     const State& switch_state, double switch_time,
                                     double residual_mt, const State& e1) {
    ContainmentOutcome out;
    bool inside = true;
    auto check_state = [&](const State& s) {
        if (!all_less(s, e1)) inside = false;
    };

    if (cfg.massive.mode == ReleasePolicy::Mode::Constant) {
        Trajectory3 traj = integrate_sit(p, cfg.sustained_level, switch_state, switch_time,
                                         switch_time + cfg.post_window, cfg.integrate);
        for (const auto& s : traj.states) check_state(State::from_array(s));
        out.final_state = State::from_array(traj.final_state());
        if (cfg.record_trajectories) out.traj3 = std::move(traj);
    } else {
        const ReleasePolicy sustained =
            ReleasePolicy::impulsive(cfg.sustained_level / cfg.massive.tau, cfg.massive.tau);
        Trajectory4 traj;
        TrajectoryRecorder<4> rec{&traj};
        const ExtendedState x0{switch_state, residual_mt};
        const ExtendedState fin = integrate_impulsive_streaming(
            p, sustained, x0, switch_time, switch_time + cfg.post_window, cfg.integrate,
            [&](const DenseStep<4>& step) {
                check_state({step.y1[0], step.y1[1], step.y1[2]});
                return cfg.record_trajectories ? rec(step) : StepAction::Continue;
            });
        out.final_state = fin.state;
        if (cfg.record_trajectories) out.traj4 = std::move(traj);
    }
    out.ok = inside && all_less(out.final_state, switch_state);
    return out;
}

}  // namespace

CampaignResult run_campaign(const CampaignConfig& cfg) {
    cfg.validate();

    const Params adjusted = mc_adjusted_params(cfg.base, cfg.mc_percent);
    const Params sit_phase = cfg.mc_scope == McScope::AllPhases ? adjusted : cfg.base;

    CampaignResult res;
    res.params_used = sit_phase;
    res.initial_state = *wild_equilibrium(sit_phase);
    res.target = target_point(sit_phase, cfg.sustained_level, cfg.epsilon);

    if (cfg.pre_state_override) {
        res.pre_state = *cfg.pre_state_override;
    } else if (cfg.adulticide_days > 0.0) {
        res.pre_state = adulticide_pretreatment(adjusted, cfg.adulticide_days, cfg.integrate);
    } else {
        res.pre_state = res.initial_state;
    }

    // Massive phase: stream until the box is entered, recording on request.
    double residual_mt = 0.0;
    {
        EntryScanner<3> scan3(res.target.y.to_array());
        EntryScanner<4> scan4(res.target.y.to_array());
        if (cfg.massive.mode == ReleasePolicy::Mode::Constant) {
            Trajectory3 traj;
            TrajectoryRecorder<3> rec{&traj};
            auto rhs = [&](double, const Vec<3>& v) {
                const State d = sit_rhs(sit_phase, {v[0], v[1], v[2]}, cfg.massive.level);
                return Vec<3>{d.a, d.m, d.f};
            };
            rk45_integrate<3>(rhs, res.pre_state.to_array(), 0.0, cfg.horizon, cfg.integrate,
                              [&](const DenseStep<3>& step) {
                                  if (cfg.record_trajectories) rec(step);
                                  return scan3(step);
                              });
            if (scan3.found()) {
                res.entry_time = scan3.time();
                res.switch_state = State::from_array(scan3.state());
            }
            if (cfg.record_trajectories) res.massive_trajectory = std::move(traj);
        } else {
            Trajectory4 traj;
            TrajectoryRecorder<4> rec{&traj};
            const ExtendedState fin = integrate_impulsive_streaming(
                sit_phase, cfg.massive, ExtendedState{res.pre_state, 0.0}, 0.0, cfg.horizon,
                cfg.integrate, [&](const DenseStep<4>& step) {
                    if (cfg.record_trajectories) rec(step);
                    return scan4(step);
                });
            if (scan4.found()) {
                res.entry_time = scan4.time();
                const auto& s = scan4.state();
                res.switch_state = {s[0], s[1], s[2]};
                residual_mt = s[3];
            } else {
                residual_mt = fin.mt;
            }
            if (cfg.record_trajectories) res.massive_trajectory4 = std::move(traj);
        }
    }

    if (res.entry_time && cfg.post_window > 0.0) {
        const State e1 = res.target.y + State{cfg.epsilon, cfg.epsilon, cfg.epsilon};
        ContainmentOutcome out = check_containment(sit_phase, cfg, res.switch_state,
                                                   *res.entry_time, residual_mt, e1);
        res.containment_ok = out.ok;
        res.post_state = out.final_state;
        res.sustained_trajectory = std::move(out.traj3);
        res.sustained_trajectory4 = std::move(out.traj4);
    }
    return res;
}

std::vector<SweepCell> run_sweep(const SweepGrid& grid, unsigned threads) {
    std::vector<SweepCell> cells;
    for (double g : grid.gammas)
        for (double k : grid.ks)
            for (double ms : grid.mt_smalls) {
                SweepCell c;
                c.gamma = g;
                c.k = k;
                c.mt_small = ms;
                cells.push_back(c);
            }
    if (cells.empty()) return cells;

    auto run_cell = [&](SweepCell& cell) {
        try {
            Params base = baseline_params(cell.gamma);
            CampaignConfig cfg;
            cfg.base = base;
            cfg.mc_percent = grid.mc_percent;
            cfg.mc_scope = grid.mc_scope;
            cfg.adulticide_days = grid.adulticide_days;
            cfg.sustained_level = cell.mt_small;
            cfg.epsilon = grid.epsilon;
            cfg.horizon = grid.horizon;
            cfg.integrate = grid.integrate;
            cfg.post_window = 0.0;  // entry times only
            const Params sit_phase = grid.mc_scope == McScope::AllPhases
                                         ? mc_adjusted_params(base, grid.mc_percent)
                                         : base;
            if (grid.mode == ReleasePolicy::Mode::Constant) {
                cfg.massive = ReleasePolicy::constant(cell.k * sit_thresholds(sit_phase).mt1);
            } else {
                const double tau_lambda = cell.k * periodic_threshold(sit_phase, grid.tau);
                cfg.massive = ReleasePolicy::impulsive(tau_lambda / grid.tau, grid.tau);
            }
            for (const auto& [g, s] : grid.pre_states)
                if (g == cell.gamma) cfg.pre_state_override = s;
            const CampaignResult r = run_campaign(cfg);
            cell.entry_time = r.entry_time;
            cell.switch_state = r.switch_state;
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
    };

    unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    n = std::min<unsigned>(n, cells.size());
    if (n <= 1) {
        for (auto& c : cells) run_cell(c);
        return cells;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t idx = next.fetch_add(1);
                if (idx >= cells.size()) return;
                run_cell(cells[idx]);
            }
        });
    for (auto& th : pool) th.join();
    return cells;
}

}  // namespace sit
