#ifndef SIT_STRATEGIES_HPP
#define SIT_STRATEGIES_HPP

#include <optional>
#include <string>
#include <vector>

#include "sit/entry_time.hpp"
#include "sit/equilibria.hpp"
#include "sit/integrator.hpp"
#include "sit/types.hpp"

namespace sit {

// Mechanical control removes breeding sites: mu_a2 grows so the wild aquatic
// equilibrium shrinks by mc_percent. R is invariant under the change.
Params mc_adjusted_params(const Params& p, double mc_percent);

// Pretreatment model: one instantaneous total adult kill at t=0 (state
// (A*, 0, 0)), then free wild evolution for the given number of days.
State adulticide_pretreatment(const Params& p, double days,
                              const IntegrateOptions& opt = {});

// Whether the mechanical-control adjustment stays active during the SIT
// phases or only during the pretreatment week.
enum class McScope { AllPhases, PretreatmentOnly };

struct CampaignConfig {
    Params base;
    double mc_percent = 0.0;
    McScope mc_scope = McScope::AllPhases;
    double adulticide_days = 0.0;
    ReleasePolicy massive;
    double sustained_level = 0.0;  // small constant level (or tau*lambda for pulses)
    double epsilon = 0.1;
    double horizon = 2e6;
    double post_window = 1000.0;  // containment check length after the switch
    IntegrateOptions integrate;
    // Pretreatment end state taken from published data instead of the
    // reconstructed adulticide model.
    std::optional<State> pre_state_override;
    bool record_trajectories = false;

    void validate() const;
};

struct CampaignResult {
    Params params_used;   // parameters active during the SIT phases
    State initial_state;  // E* of the SIT-phase parameters
    State pre_state;      // state when the massive releases start
    std::optional<double> entry_time;  // measured from the start of the releases
    State switch_state;
    TargetSpec target;
    bool containment_ok = false;
    State post_state;  // state at the end of the containment window
    std::optional<Trajectory3> massive_trajectory;   // recorded on request,
    std::optional<Trajectory4> massive_trajectory4;  // 3-dim for constant mode,
    std::optional<Trajectory3> sustained_trajectory;  // 4-dim for pulses
    std::optional<Trajectory4> sustained_trajectory4;
};

// Multi-phase runner: mechanical-control adjustment, optional pretreatment,
// massive releases until the target box is entered, then sustained releases
// with a containment check.
CampaignResult run_campaign(const CampaignConfig& cfg);

// One cell of an entry-time table.
struct SweepCell {
    double gamma = 0.0;
    double k = 0.0;
    double mt_small = 0.0;
    std::optional<double> entry_time;  // empty: not entered within the horizon
    State switch_state;
    std::string error;  // nonempty when the cell failed
};

struct SweepGrid {
    std::vector<double> gammas;
    std::vector<double> ks;
    std::vector<double> mt_smalls;
    ReleasePolicy::Mode mode = ReleasePolicy::Mode::Constant;
    double tau = 7.0;
    double mc_percent = 0.0;
    McScope mc_scope = McScope::AllPhases;
    double adulticide_days = 0.0;
    double epsilon = 0.1;
    double horizon = 2e6;
    IntegrateOptions integrate;
    // Published pretreatment states, keyed like the grid; when present they
    // replace the reconstructed adulticide model.
    std::vector<std::pair<double, State>> pre_states;  // (gamma, state)
};

// Runs one campaign per (gamma, k, mt_small) cell, cells concurrently.
// Failed cells carry their error; the sweep always completes.
std::vector<SweepCell> run_sweep(const SweepGrid& grid, unsigned threads = 0);

}  // namespace sit

#endif
