#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sit/csv.hpp"
#include "sit/entry_time.hpp"
#include "sit/equilibria.hpp"
#include "sit/scenario.hpp"
#include "sit/strategies.hpp"
#include "sit/tables.hpp"

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string state_str(const sit::State& s) {
    return "(" + num(s.a) + ", " + num(s.m) + ", " + num(s.f) + ")";
}

const char* stability_name(sit::Stability s) {
    switch (s) {
        case sit::Stability::GloballyStable: return "globally asymptotically stable";
        case sit::Stability::LocallyStable: return "locally asymptotically stable";
        case sit::Stability::Stable: return "stable";
        case sit::Stability::Unstable: return "unstable";
        case sit::Stability::Semistable: return "semistable";
    }
    return "?";
}

void print_equilibria(double gamma, std::optional<double> mt) {
    const sit::Params p = sit::baseline_params(gamma);
    const double R = sit::basic_offspring_number(p);
    std::cout << "R = " << num(R) << "\n";
    if (const auto estar = sit::wild_equilibrium(p))
        std::cout << "E* = " << state_str(*estar) << "\n";
    else
        std::cout << "R <= 1: only the extinction equilibrium\n";
    if (!mt) return;
    const sit::EquilibriumAnalysis an = sit::sit_equilibria(p, *mt);
    std::cout << "MT1 = " << num(an.mt1) << ", MT2 = " << num(an.mt2)
              << ", discriminant = " << num(an.discriminant) << "\n";
    switch (an.kind) {
        case sit::EquilibriumKind::NoPositive:
            std::cout << "no positive equilibria (MT* > MT1)\n";
            break;
        case sit::EquilibriumKind::Tangent:
            std::cout << "tangent case: Edag = " << state_str(*an.e_dagger)
                      << " (alpha = " << num(*an.alpha_dagger) << ")\n";
            break;
        case sit::EquilibriumKind::Pair:
            std::cout << "E1 = " << state_str(*an.e1) << " (alpha+ = " << num(*an.alpha_plus)
                      << ")\n";
            std::cout << "E2 = " << state_str(*an.e2) << " (alpha- = " << num(*an.alpha_minus)
                      << ")\n";
            break;
    }
    const sit::StabilityReport rep = sit::classify_stability(p, an);
    for (const auto& lab : rep.labels) {
        std::cout << lab.name << " at " << state_str(lab.point) << ": "
                  << stability_name(lab.stability);
        if (!lab.basin.empty()) std::cout << ", basin contains " << lab.basin;
        std::cout << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Sterile-insect-technique control design toolkit"};
    app.require_subcommand(1);

    // equilibria
    double gamma = 0.04;
    std::optional<double> mt;
    auto* eq = app.add_subcommand("equilibria", "Wild and controlled equilibria");
    eq->add_option("--gamma", gamma, "maturation rate")->required();
    eq->add_option("--mt", mt, "constant sterile level MT*");

    // threshold
    double th_gamma = 0.04, th_tau = 7.0;
    auto* th = app.add_subcommand("threshold", "Release thresholds MT1/MT2/MT1per");
    th->add_option("--gamma", th_gamma, "maturation rate")->required();
    th->add_option("--tau", th_tau, "pulse period (days)");

    // simulate / entry-time / campaign share a scenario file
    std::string scen_path, out_path;
    double days = 365.0;
    auto* sim = app.add_subcommand("simulate", "Integrate the configured release system");
    sim->add_option("--scenario", scen_path, "scenario file")->required();
    sim->add_option("--days", days, "days to simulate");
    sim->add_option("--out", out_path, "trajectory CSV path");

    std::string et_path;
    auto* et = app.add_subcommand("entry-time", "Minimal entry time into the target box");
    et->add_option("--scenario", et_path, "scenario file")->required();
    bool with_bound = false;
    et->add_flag("--bound", with_bound, "also report the comparison-system guarantee time");

    std::string camp_path, camp_out;
    auto* camp = app.add_subcommand("campaign", "Full multi-phase campaign");
    camp->add_option("--scenario", camp_path, "scenario file")->required();
    camp->add_option("--out", camp_out, "trajectory CSV path");

    // sweep
    std::vector<double> sw_gammas, sw_ks, sw_mts;
    std::string sw_mode = "constant", sw_out;
    double sw_horizon = 2e6, sw_tol = 1e-8, sw_mc = 0.0, sw_adult = 0.0;
    unsigned sw_threads = 0;
    auto* sw = app.add_subcommand("sweep", "Entry-time table over a parameter grid");
    sw->add_option("--gammas", sw_gammas, "maturation rates")->required()->delimiter(',');
    sw->add_option("--ks", sw_ks, "release multipliers k")->required()->delimiter(',');
    sw->add_option("--mts", sw_mts, "sustained levels")->required()->delimiter(',');
    sw->add_option("--mode", sw_mode, "constant|impulsive");
    sw->add_option("--mc", sw_mc, "mechanical-control percentage");
    sw->add_option("--adulticide", sw_adult, "pretreatment days");
    sw->add_option("--horizon", sw_horizon, "search horizon (days)");
    sw->add_option("--tol", sw_tol, "integration tolerance");
    sw->add_option("--threads", sw_threads, "worker threads (0 = all)");
    sw->add_option("--out", sw_out, "CSV output path");

    // reproduce
    int table_id = 0;
    std::string rp_format = "pretty", rp_out;
    double rp_tol = 1e-8;
    unsigned rp_threads = 0;
    auto* rp = app.add_subcommand("reproduce", "Recompute a published table and diff it");
    rp->add_option("--table", table_id, "table id (3-14)")->required();
    rp->add_option("--format", rp_format, "pretty|csv")->check(CLI::IsMember({"pretty", "csv"}));
    rp->add_option("--out", rp_out, "write rendering to a file");
    rp->add_option("--tol", rp_tol, "integration tolerance");
    rp->add_option("--threads", rp_threads, "worker threads (0 = all)");

    CLI11_PARSE(app, argc, argv);

    if (eq->parsed()) {
        print_equilibria(gamma, mt);
        return 0;
    }

    if (th->parsed()) {
        const sit::Params p = sit::baseline_params(th_gamma);
        const sit::Thresholds t = sit::sit_thresholds(p);
        std::cout << "Q = " << num(t.q) << "\nMT1 = " << num(t.mt1) << "\nMT2 = " << num(t.mt2)
                  << "\nMT1per(tau=" << num(th_tau) << ") = "
                  << num(sit::periodic_threshold(p, th_tau)) << "\n";
        return 0;
    }

    if (sim->parsed()) {
        const sit::Scenario sc = sit::load_scenario(scen_path);
        const sit::Params p = sc.config.mc_scope == sit::McScope::AllPhases
                                  ? sit::mc_adjusted_params(sc.config.base, sc.config.mc_percent)
                                  : sc.config.base;
        const sit::State x0 = *sit::wild_equilibrium(p);
        std::string csv;
        if (sc.config.massive.mode == sit::ReleasePolicy::Mode::Constant) {
            const auto traj = sit::integrate_sit(p, sc.config.massive.level, x0, 0.0, days,
                                                 sc.config.integrate);
            csv = sit::trajectory_csv(traj);
            std::cout << "final state: " << state_str(sit::State::from_array(traj.final_state()))
                      << " after " << num(days) << " days\n";
        } else {
            const auto traj = sit::integrate_impulsive(p, sc.config.massive, {x0, 0.0}, days,
                                                       sc.config.integrate);
            csv = sit::trajectory_csv(traj);
            const auto& f = traj.final_state();
            std::cout << "final state: (" << num(f[0]) << ", " << num(f[1]) << ", " << num(f[2])
                      << ", MT=" << num(f[3]) << ") after " << num(days) << " days\n";
        }
        const std::string path = !out_path.empty() ? out_path : sc.output_path;
        if (!path.empty()) {
            sit::write_file(path, csv);
            std::cout << "trajectory written to " << path << "\n";
        }
        return 0;
    }

    if (et->parsed()) {
        const sit::Scenario sc = sit::load_scenario(et_path);
        const sit::Params p = sc.config.mc_scope == sit::McScope::AllPhases
                                  ? sit::mc_adjusted_params(sc.config.base, sc.config.mc_percent)
                                  : sc.config.base;
        const sit::TargetSpec target =
            sit::target_point(p, sc.config.sustained_level, sc.config.epsilon);
        std::cout << "target Y = " << state_str(target.y) << "\n";
        const sit::State x0 = *sit::wild_equilibrium(p);
        const sit::EntryResult res = sit::minimal_entry_result(
            p, sc.config.massive, target, x0, sc.config.horizon, sc.config.integrate);
        if (res.time)
            std::cout << "entry time: " << num(*res.time) << " days, state "
                      << state_str(res.state) << "\n";
        else
            std::cout << "no entry within " << num(sc.config.horizon) << " days\n";
        if (with_bound) {
            if (sc.config.massive.mode != sit::ReleasePolicy::Mode::Constant) {
                std::cout << "guarantee time: constant releases only\n";
            } else {
                const auto b = sit::analytic_time_bound(p, sc.config.massive.level, target);
                std::cout << "comparison-system guarantee time: " << num(b.bound)
                          << " days (tA=" << num(b.t_a) << ", tM=" << num(b.t_m)
                          << ", tF=" << num(b.t_f) << ")\n";
            }
        }
        return 0;
    }

    if (camp->parsed()) {
        sit::Scenario sc = sit::load_scenario(camp_path);
        const std::string path = !camp_out.empty() ? camp_out : sc.output_path;
        sc.config.record_trajectories = !path.empty();
        const sit::CampaignResult res = sit::run_campaign(sc.config);
        std::cout << "start state: " << state_str(res.pre_state) << "\n";
        if (res.entry_time) {
            std::cout << "entry time: " << num(*res.entry_time)
                      << " days (from the start of the releases)\n";
            std::cout << "switch state: " << state_str(res.switch_state) << "\n";
            std::cout << "containment: " << (res.containment_ok ? "ok" : "FAILED")
                      << ", state after the post window: " << state_str(res.post_state) << "\n";
        } else {
            std::cout << "no entry within " << num(sc.config.horizon) << " days\n";
        }
        if (!path.empty() && res.entry_time) {
            std::string csv;
            if (res.massive_trajectory && res.sustained_trajectory)
                csv = sit::campaign_csv(*res.massive_trajectory, *res.sustained_trajectory);
            else if (res.massive_trajectory4 && res.sustained_trajectory4)
                csv = sit::campaign_csv(*res.massive_trajectory4, *res.sustained_trajectory4);
            if (!csv.empty()) {
                sit::write_file(path, csv);
                std::cout << "trajectories written to " << path << "\n";
            }
        }
        return 0;
    }

    if (sw->parsed()) {
        sit::SweepGrid grid;
        grid.gammas = sw_gammas;
        grid.ks = sw_ks;
        grid.mt_smalls = sw_mts;
        if (sw_mode == "impulsive")
            grid.mode = sit::ReleasePolicy::Mode::Impulsive;
        else if (sw_mode != "constant")
            throw sit::ParseError("--mode must be constant or impulsive");
        grid.mc_percent = sw_mc;
        grid.adulticide_days = sw_adult;
        grid.horizon = sw_horizon;
        grid.integrate.tol = sw_tol;
        const auto cells = sit::run_sweep(grid, sw_threads);
        std::ostringstream os;
        os << "gamma,k,mt_small,entry_days\n";
        for (const auto& c : cells) {
            os << num(c.gamma) << "," << num(c.k) << "," << num(c.mt_small) << ",";
            if (!c.error.empty())
                os << "error: " << c.error;
            else if (c.entry_time)
                os << num(*c.entry_time);
            else
                os << "inf";
            os << "\n";
        }
        std::cout << os.str();
        if (!sw_out.empty()) sit::write_file(sw_out, os.str());
        return 0;
    }

    if (rp->parsed()) {
        sit::ReproduceOptions opt;
        opt.tol = rp_tol;
        opt.threads = rp_threads;
        const sit::TableArtifact t = sit::reproduce_table(table_id, opt);
        const std::string text = rp_format == "csv" ? sit::render_csv(t) : sit::render_pretty(t);
        std::cout << text;
        if (!rp_out.empty()) sit::write_file(rp_out, text);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const sit::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const sit::SemanticError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const sit::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
