#ifndef SIT_TABLES_HPP
#define SIT_TABLES_HPP

#include <optional>
#include <string>
#include <vector>

#include "sit/strategies.hpp"
#include "sit/types.hpp"

namespace sit {

// One table cell: a scalar or a (A, M, F) triple, the published counterpart,
// and the relative error of the reproduction. Entry-time cells may carry a
// gain against the release-only campaign.
struct TableCell {
    std::vector<double> computed;
    std::vector<double> reference;
    bool computed_inf = false;   // no entry within the sweep horizon
    bool reference_inf = false;  // published "greater than 1e6" marker
    std::optional<double> gain_computed, gain_reference;
    std::string error;  // per-cell failure, sweep keeps going

    // Max relative error across components; infinity on an inf mismatch.
    double rel_err() const;
};

struct TableArtifact {
    int id = 0;
    std::string title;
    std::vector<std::string> row_labels, col_labels;
    std::vector<std::vector<TableCell>> cells;  // [row][col]
    std::string note;

    double max_rel_err() const;
};

struct ReproduceOptions {
    double tol = 1e-8;
    double horizon = 2e6;
    double inf_cutoff = 1e6;  // entry-time cells report inf past this
    unsigned threads = 0;     // 0 = hardware concurrency
};

// Recomputes one published table and diffs it cell by cell.
TableArtifact reproduce_table(int table_id, const ReproduceOptions& opt = {});

// Aligned text rendering; the inf marker prints as the given string.
std::string render_pretty(const TableArtifact& t);
// RFC-4180-style CSV diff: one line per cell with computed, reference and
// relative error columns; inf cells print "inf".
std::string render_csv(const TableArtifact& t);

}  // namespace sit

#endif
