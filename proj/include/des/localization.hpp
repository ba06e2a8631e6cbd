#pragma once

#include <map>

#include "des/reduction.hpp"

namespace des {

// One component agent: its event set and controllable subset. Agent event
// sets are pairwise disjoint and union to the plant alphabet.
struct AgentSpec {
    std::string name;
    std::set<EventId> events;
    std::set<EventId> controllable_events;  // events ∩ Σ_c
};

AgentSpec make_agent(std::string name, std::set<EventId> events, const Alphabet& global);

// A per-agent local controller: the induced generator over the full alphabet,
// the events found self-looped at every state, and the event-reduced form.
struct LocalController {
    AgentSpec agent;
    Generator generator;                    // LOC^k over Σ
    std::set<EventId> selflooped_everywhere;
    Generator stripped;                     // over Σ \ selflooped_everywhere
    bool ecc_used = false;
    std::optional<std::pair<State, State>> ecc_witness;
};

struct LocalControllerSet {
    std::vector<LocalController> controllers;
};

struct EquivalenceReport {
    bool closed_ok = false;   // L(G) ∩ L(LOC) = L(SUP)
    bool marked_ok = false;   // L_m(G) ∩ L_m(LOC) = L_m(SUP)
    std::optional<StringTrace> counterexample;
    std::map<std::string, int> per_controller_event_counts;  // stripped alphabet sizes
    int rsup_event_count = 0;  // events labeling RSUP transitions, after self-loop strip
    bool event_reduction_ok = false;
};

// D^k(x) = D(x) ∩ Σ_c^k.
std::set<EventId> disabled_k(const ControlData& cd, State x, const AgentSpec& agent);

// Control consistency w.r.t. Σ_c^k (relation R^k).
bool control_consistent_k(const ControlData& cd, State x, State y, const AgentSpec& agent);

// Exclusive control consistency: (x,y) in R^k but not R, and for every event
// violating R and every tandem plant-state pair where it is defined, the
// plant successors differ.
bool is_ecc(const Generator& plant, const ControlData& cd, State x, State y,
            const AgentSpec& agent);

// Control congruence under R^k seeded with an ECC pair, then greedy merging;
// induced generator plus harmless self-loop completion and stripping. Every
// viable ECC seed is tried (capped on large instances) and the best outcome
// kept (fewest cells, then fewest remaining events, smallest seed on ties).
// If no ECC pair survives closure, plain localization is performed and
// ecc_used is false.
LocalController localize_agent(const Generator& plant, const Generator& sup,
                               const ControlData& cd, const AgentSpec& agent);

// One localize_agent per agent. Agent alphabets must partition the plant
// alphabet (InputError otherwise).
LocalControllerSet localize_all(const Generator& plant, const Generator& sup,
                                const std::vector<AgentSpec>& agents);

// Events defined somewhere and self-looped wherever defined, plus the
// generator with those events deleted from transitions and alphabet.
std::pair<std::set<EventId>, Generator> strip_selflooped(const Generator& loc);

// Checks control equivalence of the controller set against sup under the
// plant, and fills the event-reduction comparison against supreduce output.
EquivalenceReport verify_control_equivalence(const Generator& plant, const Generator& sup,
                                             const LocalControllerSet& locs);

// Distinct events labeling transitions of g after strip_selflooped.
int labeling_event_count_after_strip(const Generator& g);

// Tab-separated per-agent table with localizability and event-reduction flags.
std::string event_reduction_report(const LocalControllerSet& locs, const Generator& rsup);

}  // namespace des
