#ifndef SIT_CSV_HPP
#define SIT_CSV_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "sit/integrator.hpp"

namespace sit {

// Trajectory CSV: header t,A,M,F[,MT][,phase], one row per stored sample plus
// one row at each event time, 10 significant digits, LF line endings.
// Identical trajectories produce byte-identical output.
std::string trajectory_csv(const Trajectory3& traj, const std::string& phase_label = "");
std::string trajectory_csv(const Trajectory4& traj, const std::string& phase_label = "");

// Two-phase campaign output: massive then sustained, distinguished by the
// phase column.
std::string campaign_csv(const Trajectory3& massive, const Trajectory3& sustained);
std::string campaign_csv(const Trajectory4& massive, const Trajectory4& sustained);

void write_file(const std::string& path, const std::string& content);

// Parses a trajectory CSV back into rows (used by the round-trip check and
// by downstream tooling).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
CsvTable parse_csv(const std::string& text);

}  // namespace sit

#endif
