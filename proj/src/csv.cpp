#include "sit/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sit {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

template <std::size_t N>
std::string emit(const BasicTrajectory<N>& traj, const std::string& phase_label,
                 bool with_header) {
    const bool with_phase = !phase_label.empty() || !traj.events.empty();
    std::ostringstream os;
    if (with_header) {
        os << "t,A,M,F";
        if (N == 4) os << ",MT";
        if (with_phase) os << ",phase";
        os << "\n";
    }

    auto row = [&](double t, const Vec<N>& y, const std::string& label) {
        os << num(t);
        for (std::size_t i = 0; i < N; ++i) os << "," << num(y[i]);
        if (with_phase) os << "," << label;
        os << "\n";
    };

    std::size_t ev = 0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        const bool has_event = ev < traj.events.size() && traj.events[ev].time == t;
        if (has_event) {
            // Pre-jump sample from the preceding step, then the event row
            // with the stored post-jump state.
            if (i > 0) row(t, traj.steps[i - 1].y1, phase_label);
            row(t, traj.states[i], traj.events[ev].label);
            ++ev;
        } else {
            row(t, traj.states[i], phase_label);
        }
    }
    return os.str();
}

}  // namespace

std::string trajectory_csv(const Trajectory3& traj, const std::string& phase_label) {
    return emit<3>(traj, phase_label, true);
}

std::string trajectory_csv(const Trajectory4& traj, const std::string& phase_label) {
    return emit<4>(traj, phase_label, true);
}

std::string campaign_csv(const Trajectory3& massive, const Trajectory3& sustained) {
    std::string out = "t,A,M,F,phase\n";
    out += emit<3>(massive, "massive", false);
    out += emit<3>(sustained, "sustained", false);
    return out;
}

std::string campaign_csv(const Trajectory4& massive, const Trajectory4& sustained) {
    std::string out = "t,A,M,F,MT,phase\n";
    out += emit<4>(massive, "massive", false);
    out += emit<4>(sustained, "sustained", false);
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw NumericError("cannot open output file " + path);
    f << content;
    if (!f) throw NumericError("failed writing " + path);
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string cur;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char ch = line[i];
            if (quoted) {
                if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else if (ch == '"') {
                    quoted = false;
                } else {
                    cur += ch;
                }
            } else if (ch == '"') {
                quoted = true;
            } else if (ch == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        fields.push_back(cur);
        if (first) {
            table.header = fields;
            first = false;
        } else {
            table.rows.push_back(fields);
        }
    }
    return table;
}

}  // namespace sit
