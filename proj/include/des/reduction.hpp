#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "des/synthesis.hpp"

namespace des {

// A partition of the supervisor state set (control congruence). Cells are
// nonempty, disjoint, and cover all states; every intra-cell pair satisfies
// the certified consistency relation, and cells are closed under transitions.
struct StatePartition {
    std::vector<int> cell_of;                 // state -> cell index
    std::vector<std::vector<State>> cells;    // sorted members per cell
    std::string relation_tag;                 // "R" or "R^k"
    std::optional<std::pair<State, State>> ecc_witness;

    static StatePartition identity(int n, std::string tag);
    int cell_count() const { return static_cast<int>(cells.size()); }

    // Re-asserts the partition shape; throws InputError on violation.
    void validate(int n) const;
};

using ConsistencyPredicate = std::function<bool(State, State)>;

// Control consistency (relation R): E(x) ∩ D(x') = E(x') ∩ D(x) = ∅ and
// T(x) = T(x') implies M(x) = M(x').
bool control_consistent(const ControlData& cd, State x, State y);

// Attempts to union the cells of x and y, propagating forced merges of
// successor cells under every event. Fails (nullopt) if a forced merge would
// put an inconsistent pair into one cell; the input partition is untouched.
std::optional<StatePartition> merge_closure(const StatePartition& p, State x, State y,
                                            const Generator& sup,
                                            const ConsistencyPredicate& consistent);

// Quotient generator: one state per cell, marked iff the cell meets the
// marked set, transition when some member moves into the target cell and all
// members with the event defined agree. Throws std::logic_error if the
// partition induces nondeterminism.
Generator induce(const Generator& sup, const StatePartition& p);

// Supervisor reduction under R: greedy congruence search over candidate pairs
// in ascending (min id, max id) order, then induce. The result is verified
// control equivalent to sup w.r.t. plant (throws std::logic_error otherwise).
Generator supreduce(const Generator& plant, const Generator& sup);

// Greedy congruence search shared by supreduce and localization.
StatePartition greedy_congruence(const Generator& sup, int n,
                                 const ConsistencyPredicate& consistent,
                                 StatePartition start);

}  // namespace des
