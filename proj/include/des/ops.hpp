#pragma once

#include <optional>
#include <set>
#include <vector>

#include "des/generator.hpp"

namespace des {

// A replayable event sequence, used as a counterexample witness.
struct StringTrace {
    std::vector<EventId> events;

    bool operator==(const StringTrace&) const = default;
};

struct LangCompareResult {
    bool closed_equal = true;
    bool marked_equal = true;
    // Shortest string on which the languages differ (closed or marked).
    std::optional<StringTrace> counterexample;

    bool equal() const { return closed_equal && marked_equal; }
};

// Synchronous product over the union alphabet: shared events fire jointly,
// private events interleave. Reachable part only.
Generator sync(const std::vector<Generator>& gens);

// Product where every event is treated as shared: a transition exists only
// when both generators define it. L(meet) = L(g1) ∩ L(g2) for equal alphabets.
Generator meet(const Generator& a, const Generator& b);

// Restriction to states both reachable and coreachable. Result is nonblocking
// or empty.
Generator trim(const Generator& g);

bool is_nonblocking(const Generator& g);

// Adds each event in evts as a self-loop at every state and extends the
// alphabet. Errors if an event already labels a non-self-loop transition.
// Controllability of new events: explicit set if given, else odd-id rule.
Generator selfloop(const Generator& g, const std::set<EventId>& evts,
                   const std::optional<std::set<EventId>>& controllable = std::nullopt);

// Natural projection onto `keep` (subset construction). Deterministic output
// with L = P(L(g)), L_m = P(L_m(g)).
Generator project(const Generator& g, const std::set<EventId>& keep);

// Decides L(a) = L(b) and L_m(a) = L_m(b) by synchronized traversal of the
// reachable parts, with a missing-side sink so one-sided strings are found.
LangCompareResult lang_compare(const Generator& a, const Generator& b);
bool lang_equal(const Generator& a, const Generator& b);

// States renumbered in breadth-first order from the initial state, exploring
// events in ascending id; unreachable states keep their relative order at the
// end. Output is isomorphic to the input.
Generator canonicalize(const Generator& g);

// Self-loops every event of `target` missing from g's alphabet, everywhere.
// Used to interpret a reduced or stripped supervisor over the full alphabet.
Generator lift(const Generator& g, const Alphabet& target);

// Normality of K w.r.t. (L(plant), P): P^-1 P(K̄) ∩ L(plant) = K̄, where P
// keeps exactly `observable`. K̄ is the closed behavior of trim(k).
bool is_normal(const Generator& plant, const Generator& k, const std::set<EventId>& observable);

}  // namespace des
