#ifndef SIT_SCENARIO_HPP
#define SIT_SCENARIO_HPP

#include <string>

#include "sit/strategies.hpp"

namespace sit {

// A parsed scenario: the campaign configuration plus the run outputs.
struct Scenario {
    CampaignConfig config;
    std::string output_path;  // empty: no CSV requested
    // Release sizing as given in the file; k is resolved against the
    // SIT-phase thresholds at parse time.
    double k = 0.0;  // 0 when an explicit level/lambda was given
};

// Sectioned key/value text: [params], [release], [target], [pretreatment],
// [run]. Unknown sections or keys are rejected with line diagnostics; gamma,
// release mode/size and target mt_small are required, everything else
// defaults (baseline rates, epsilon=0.1, tau=7, tol=1e-8, horizon=2e6).
Scenario parse_scenario(const std::string& text);

Scenario load_scenario(const std::string& path);

}  // namespace sit

#endif
