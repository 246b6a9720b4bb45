#ifndef SIT_REFERENCE_DATA_HPP
#define SIT_REFERENCE_DATA_HPP

#include <array>
#include <string>

#include "sit/types.hpp"

// Published reference values behind the `reproduce` command, embedded so the
// diff reports are self-contained. Each table carries a provenance note with
// the known internal inconsistencies of the source data (sex-ratio and
// sterile-decay ambiguities) that the computed columns do not inherit.
namespace sit::reference {

inline constexpr int kDataVersion = 1;

inline constexpr std::array<double, 4> kGammas{0.04, 0.06, 0.08, 0.1};
inline constexpr std::array<double, 3> kMtSmalls{100.0, 500.0, 800.0};
inline constexpr std::array<double, 2> kMtSmallsShort{100.0, 500.0};
inline constexpr double kTau = 7.0;
inline constexpr double kEpsilon = 0.1;
inline constexpr double kInf = 1e306;  // marker for "no entry within 1e6 days"

// Table 3: rows R, A*, M*, F*, MT1, MT1per over the gamma grid.
inline constexpr std::array<std::array<double, 4>, 6> kTable3{{
    {21.78, 26.73, 30.15, 32.67},
    {9350.0, 14150.0, 18950.0, 23750.0},
    {1335.0, 3031.0, 5412.0, 8479.0},
    {1834.0, 4160.0, 7428.0, 11637.0},
    {863.9, 2048.0, 3745.0, 5954.0},
    {1484.5, 3519.8, 6434.3, 10230.0},
}};

// Table 4: E1 triples, rows gamma, cols mt_small in {100, 500, 800}.
inline constexpr std::array<std::array<std::array<double, 3>, 3>, 4> kTable4{{
    {{{36.59, 5.2, 0.36}, {283.11, 40.43, 4.15}, {878.68, 125.48, 23.35}}},
    {{{18.79, 4.03, 0.21}, {109.67, 23.49, 1.45}, {201.11, 43.1, 3.02}}},
    {{{12.24, 3.5, 0.16}, {66.42, 18.97, 0.95}, {113.54, 32.4, 1.7}}},
    {{{8.95, 3.2, 0.14}, {47.1, 16.8, 0.75}, {78.4, 27.9, 1.3}}},
}};

// Table 5: constant releases, k in {1.001, 1.01, 1.1}, rows gamma in
// {0.04, 0.08}, cols (k, mt_small).
inline constexpr std::array<double, 3> kTable5Ks{1.001, 1.01, 1.1};
inline constexpr std::array<double, 2> kTable5Gammas{0.04, 0.08};
inline constexpr std::array<std::array<double, 9>, 2> kTable5{{
    {6959, 6889, 6719, 2159, 2090, 1929, 656, 592, 479},
    {7151, 7123, 7112, 2224, 2196, 2184, 685, 658, 647},
}};

// Tables 6/7: massive releases, k in {1.2, 2, 5, 10}, rows gamma, cols
// (k, mt_small). Table 6 constant, table 7 weekly pulses.
inline constexpr std::array<double, 4> kTable6Ks{1.2, 2.0, 5.0, 10.0};
inline constexpr std::array<std::array<double, 12>, 4> kTable6{{
    {460, 399, 311, 217, 169, 126, 141, 103, 76, 123, 88, 65},
    {476, 442, 426, 232, 201, 188, 155, 128, 117, 137, 111, 101},
    {485, 458, 447, 239, 214, 205, 162, 139, 131, 144, 122, 114},
    {489, 465, 457, 244, 221, 213, 167, 146, 139, 149, 129, 122},
}};
inline constexpr std::array<std::array<double, 12>, 4> kTable7{{
    {213, 166, 123, 166, 120, 88, 127, 91, 67, 117, 83, 61},
    {228, 195, 184, 175, 147, 135, 140, 114, 104, 130, 105, 95},
    {235, 210, 201, 183, 159, 150, 148, 125, 118, 138, 116, 108},
    {240, 218, 210, 187, 166, 159, 152, 132, 125, 142, 122, 115},
}};

// Table 8: wild equilibrium under mechanical control, blocks MC in
// {0, 20, 40}; rows mu_a2, A*, M*, F*, cols (MC, gamma).
inline constexpr std::array<double, 3> kTable8Mc{0.0, 20.0, 40.0};
inline constexpr std::array<std::array<double, 12>, 4> kTable8{{
    {2e-4, 2e-4, 2e-4, 2e-4, 2.5e-4, 2.5e-4, 2.5e-4, 2.5e-4,
     3.3333e-4, 3.3333e-4, 3.3333e-4, 3.3333e-4},
    {9350, 14150, 18950, 23750, 7480, 11320, 15160, 19000, 5610, 8490, 11370, 14250},
    {1335, 3031, 5412, 8479, 1068, 2425, 4330, 6783, 801, 1819, 3247, 5087},
    {1834, 4160, 7428, 11637, 1466, 3328, 5943, 9310, 1010, 2496, 4457, 6983},
}};

// Table 9: weekly pulses below the nominal threshold, k in {0.58, 0.6, 0.7}.
inline constexpr std::array<double, 3> kTable9Ks{0.58, 0.6, 0.7};
inline constexpr std::array<std::array<double, 9>, 4> kTable9{{
    {3073, 3003, 2827, 1065, 997, 852, 449, 388, 300},
    {3732, 3696, 3677, 1111, 1075, 1057, 467, 433, 416},
    {4322, 4294, 4282, 1137, 1109, 1098, 477, 450, 439},
    {kInf, kInf, kInf, 1215, 1191, 1182, 486, 462, 454},
}};

// Tables 10/13/14: campaigns with one pretreatment week, cells are entry
// times measured from the start of the pretreatment with the gain against
// the release-only campaign in brackets. Two stacked blocks (constant,
// pulse); k in {2, 5, 10}, mt_small in {100, 500}; rows gamma.
inline constexpr std::array<double, 3> kCampaignKs{2.0, 5.0, 10.0};
struct TimedCell {
    double time;
    double gain;
};
using CampaignBlock = std::array<std::array<TimedCell, 6>, 4>;

// Table 10: adulticide week only.
inline constexpr CampaignBlock kTable10Const{{
    {{{122, 95}, {74, 95}, {92, 49}, {54, 49}, {85, 38}, {50, 38}}},
    {{{137, 95}, {107, 94}, {106, 49}, {79, 49}, {98, 39}, {72, 39}}},
    {{{146, 93}, {121, 93}, {113, 49}, {90, 49}, {105, 39}, {83, 39}}},
    {{{150, 94}, {128, 93}, {118, 49}, {97, 49}, {110, 39}, {90, 39}}},
}};
inline constexpr CampaignBlock kTable10Pulse{{
    {{{101, 65}, {60, 60}, {87, 40}, {51, 40}, {82, 35}, {48, 35}}},
    {{{115, 60}, {87, 60}, {100, 40}, {74, 40}, {95, 35}, {70, 35}}},
    {{{123, 60}, {99, 60}, {107, 41}, {85, 40}, {103, 35}, {81, 35}}},
    {{{127, 60}, {106, 60}, {112, 40}, {91, 41}, {107, 35}, {87, 38}}},
}};

// Table 11: state after the one-week adulticide pretreatment (MC = 0),
// rows A7, M7, F7 over the gamma grid.
inline constexpr std::array<std::array<double, 4>, 3> kTable11{{
    {1897.9, 2645.1, 3387.1, 4114.0},
    {46.2, 98.3, 169.5, 258.6},
    {49.3, 105.4, 182.2, 278.2},
}};

// Table 12: same states when the pretreatment week combines the adulticide
// with mechanical control, blocks MC = 20 then MC = 40.
inline constexpr std::array<std::array<double, 8>, 3> kTable12{{
    {1518.4, 2116.0, 2709.7, 3291.2, 1138.9, 1587.2, 2032.5, 2468.6},
    {37.0, 78.6, 135.6, 206.9, 27.7, 59.0, 101.7, 155.2},
    {39.5, 84.3, 145.7, 222.5, 29.6, 63.2, 109.3, 166.9},
}};

// Table 13: adulticide week + MC = 20.
inline constexpr CampaignBlock kTable13Const{{
    {{{116, 101}, {68, 101}, {89, 52}, {50, 53}, {82, 41}, {47, 41}}},
    {{{131, 101}, {101, 100}, {102, 53}, {75, 53}, {95, 42}, {70, 41}}},
    {{{139, 100}, {114, 100}, {110, 52}, {87, 52}, {103, 41}, {80, 42}}},
    {{{144, 100}, {122, 99}, {115, 52}, {94, 52}, {107, 42}, {87, 42}}},
}};
inline constexpr CampaignBlock kTable13Pulse{{
    {{{97, 69}, {56, 64}, {84, 43}, {48, 43}, {80, 37}, {46, 37}}},
    {{{111, 64}, {83, 64}, {97, 43}, {71, 43}, {93, 37}, {68, 37}}},
    {{{119, 64}, {95, 64}, {104, 44}, {82, 43}, {100, 38}, {78, 38}}},
    {{{124, 63}, {102, 64}, {109, 43}, {89, 43}, {105, 37}, {85, 37}}},
}};

// Table 14: adulticide week + MC = 40.
inline constexpr CampaignBlock kTable14Const{{
    {{{107, 110}, {59, 110}, {85, 56}, {46, 57}, {79, 44}, {43, 45}}},
    {{{123, 109}, {93, 108}, {98, 57}, {71, 57}, {92, 45}, {66, 45}}},
    {{{132, 107}, {107, 107}, {106, 56}, {83, 56}, {99, 45}, {77, 45}}},
    {{{137, 107}, {114, 107}, {110, 57}, {90, 56}, {104, 45}, {84, 45}}},
}};
inline constexpr CampaignBlock kTable14Pulse{{
    {{{92, 74}, {50, 70}, {80, 47}, {44, 47}, {77, 40}, {42, 41}}},
    {{{106, 69}, {78, 69}, {93, 47}, {67, 47}, {90, 40}, {64, 41}}},
    {{{114, 69}, {90, 69}, {101, 47}, {78, 47}, {97, 41}, {75, 41}}},
    {{{118, 69}, {97, 69}, {105, 47}, {85, 47}, {102, 40}, {81, 41}}},
}};

// Pretreatment state for a (gamma, mc) pair, taken from tables 11/12.
State pretreatment_state(double gamma, double mc_percent);

// Per-table provenance note shown with every diff report.
std::string provenance_note(int table_id);

std::string table_title(int table_id);

}  // namespace sit::reference

#endif
