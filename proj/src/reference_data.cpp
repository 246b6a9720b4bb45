#include "sit/reference_data.hpp"

#include <cmath>
#include <string>

namespace sit::reference {

State pretreatment_state(double gamma, double mc_percent) {
    int gi = -1;
    for (std::size_t i = 0; i < kGammas.size(); ++i)
        if (std::abs(kGammas[i] - gamma) < 1e-12) gi = static_cast<int>(i);
    if (gi < 0)
        throw SemanticError("no published pretreatment state for gamma="
                            + std::to_string(gamma));
    if (mc_percent == 0.0)
        return {kTable11[0][gi], kTable11[1][gi], kTable11[2][gi]};
    int off = -1;
    if (mc_percent == 20.0) off = 0;
    if (mc_percent == 40.0) off = 4;
    if (off < 0)
        throw SemanticError("no published pretreatment state for MC="
                            + std::to_string(mc_percent));
    return {kTable12[0][off + gi], kTable12[1][off + gi], kTable12[2][off + gi]};
}

std::string table_title(int id) {
    switch (id) {
        case 3: return "Wild equilibrium and release thresholds";
        case 4: return "Unstable equilibrium E1 by sustained release level";
        case 5: return "Entry times, constant releases near the threshold";
        case 6: return "Entry times, constant massive releases";
        case 7: return "Entry times, weekly pulse massive releases";
        case 8: return "Wild equilibrium under mechanical control";
        case 9: return "Entry times, weekly pulses below the nominal threshold";
        case 10: return "Entry times after one adulticide week";
        case 11: return "State after one adulticide week";
        case 12: return "State after one adulticide week combined with MC";
        case 13: return "Entry times after one adulticide + MC=20 week";
        case 14: return "Entry times after one adulticide + MC=40 week";
        default: throw SemanticError("unsupported table id " + std::to_string(id));
    }
}

std::string provenance_note(int id) {
    static const std::string kRatioNote =
        "Reference M*, MT1 and MT1per columns are internally consistent with a male "
        "fraction of 0.5 and a sterile decay of 1/7 per day; computed values use the "
        "declared r=0.49 and mu_T=0.14, which shifts them by roughly 1-2%.";
    switch (id) {
        case 3:
        case 8:
            return kRatioNote;
        case 4:
            return "Reference triples are consistent with a male fraction of 0.5; computed "
                   "values use r=0.49. The gamma=0.04, level-800 cell sits close to the "
                   "tangency threshold where this gap is amplified.";
        case 5:
        case 6:
            return "Cells are days from the start of the releases, computed with k times "
                   "the artifact's own MT1 so the relative margin over the threshold "
                   "matches the reference runs.";
        case 7:
            return "True pulse system (weekly jumps, exponential decay). Reference values "
                   "track the constant-release system at the period-mean stock Lambda/mu_T, "
                   "which is slightly stronger; computed times run a few percent longer.";
        case 9:
            return "True pulse system near its bistability boundary. The reference rows "
                   "match the constant-release system at the period-mean stock; the pulse "
                   "system is strictly weaker there (the mating fraction is convex in the "
                   "sterile stock), so sub-threshold cells that converge in the reference "
                   "may not converge here. 'inf' marks no entry within 1e6 days.";
        case 10:
        case 13:
        case 14:
            return "Initial states are the published pretreatment rows (tables 11/12); the "
                   "release phase runs with baseline parameters and thresholds. Cell times "
                   "include the 7 pretreatment days; gains are against the release-only "
                   "campaign. Pulse blocks inherit the table-7 caveat.";
        case 11:
            return "The reconstructed pretreatment model (single total adult kill at t=0, "
                   "then one free week) does not match these reference values; they are "
                   "kept as ground truth and injected into the campaign tables instead. "
                   "The diff below shows the reconstruction gap honestly.";
        case 12:
            return "Scaled variant of table 11 under mechanical control (rows scale by "
                   "1-MC/100 exactly); same reconstruction caveat.";
        default:
            throw SemanticError("unsupported table id " + std::to_string(id));
    }
}

}  // namespace sit::reference
