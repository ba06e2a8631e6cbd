#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace des {

using EventId = int;
using State = int;

// Event set with its controllable subset. Uncontrollable = events \ controllable.
struct Alphabet {
    std::set<EventId> events;
    std::set<EventId> controllable;

    bool contains(EventId e) const { return events.count(e) != 0; }
    bool is_controllable(EventId e) const { return controllable.count(e) != 0; }
    std::set<EventId> uncontrollable() const;

    // TCT convention: odd event ids are controllable.
    static Alphabet with_default_controllability(const std::set<EventId>& events);

    bool operator==(const Alphabet&) const = default;
};

// Throws ConflictingControllabilityError if an event is controllable in one
// alphabet and uncontrollable in the other.
Alphabet merge_alphabets(const Alphabet& a, const Alphabet& b);

// Deterministic finite-state generator. States are dense indices 0..n-1.
// The empty generator (no states, empty language) is representable.
struct Generator {
    std::string name;
    State initial = 0;
    std::set<State> marked;
    Alphabet alphabet;
    std::vector<std::map<EventId, State>> trans;  // trans[src][event] = dst

    int state_count() const { return static_cast<int>(trans.size()); }
    bool empty() const { return trans.empty(); }

    static Generator make(std::string name, int states, Alphabet alpha, State initial = 0);
    static Generator make_empty(std::string name, Alphabet alpha);

    // Throws InputError on a duplicate (src, event) pair, an out-of-range
    // state, or an event not in the alphabet.
    void add_transition(State src, EventId e, State dst);

    bool defined(State s, EventId e) const { return trans[s].count(e) != 0; }
    std::optional<State> target(State s, EventId e) const;
    const std::map<EventId, State>& out(State s) const { return trans[s]; }
    std::set<EventId> enabled(State s) const;
    bool is_marked(State s) const { return marked.count(s) != 0; }

    int transition_count() const;
    std::set<EventId> transition_labels() const;

    bool accepts_closed(const std::vector<EventId>& s) const;
    bool accepts_marked(const std::vector<EventId>& s) const;

    // Full structural validation; throws InputError.
    void validate() const;
};

// Structural equality ignoring the name label.
bool same_structure(const Generator& a, const Generator& b);

}  // namespace des
