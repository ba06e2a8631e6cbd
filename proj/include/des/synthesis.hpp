#pragma once

#include <string>
#include <vector>

#include "des/ops.hpp"

namespace des {

// Per-supervisor-state control information extracted from the (supervisor,
// plant) pairing: enabled events E(x), disabled events D(x), marking flags
// M(x) / T(x), and the plant states reached in tandem with x.
struct ControlData {
    std::string sup_name;
    int sup_state_count = 0;
    std::vector<std::set<EventId>> enabled;      // E(x)
    std::vector<std::set<EventId>> disabled;     // D(x)
    std::vector<bool> sup_marked;                // M(x)
    std::vector<bool> plant_marked;              // T(x)
    std::vector<std::set<State>> plant_pairs;    // plant states paired with x
};

// Supremal controllable sublanguage of L_m(plant) ∩ L_m(spec): start from
// trim(meet(plant, spec)), iteratively delete states where an uncontrollable
// event is defined at the paired plant state but not in the candidate, and
// re-trim, to fixpoint. Spec alphabet must be contained in the plant's
// (self-loop missing events first). Empty result is the empty generator.
Generator supcon(const Generator& plant, const Generator& spec);

// E/D/M/T maps by synchronized forward reachability of (sup, plant) states.
// Throws InputError if some sup transition has no plant counterpart.
ControlData control_data(const Generator& plant, const Generator& sup);

// One row per state with nonempty D(x), ascending, events ascending.
std::string condat_table(const ControlData& cd);

}  // namespace des
