#include "des/generator.hpp"

#include <algorithm>

#include "des/errors.hpp"

namespace des {

std::set<EventId> Alphabet::uncontrollable() const {
    std::set<EventId> u;
    std::set_difference(events.begin(), events.end(), controllable.begin(), controllable.end(),
                        std::inserter(u, u.end()));
    return u;
}

Alphabet Alphabet::with_default_controllability(const std::set<EventId>& events) {
    Alphabet a;
    a.events = events;
    for (EventId e : events)
        if (e % 2 != 0) a.controllable.insert(e);
    return a;
}

Alphabet merge_alphabets(const Alphabet& a, const Alphabet& b) {
    for (EventId e : a.events) {
        if (b.events.count(e) && a.is_controllable(e) != b.is_controllable(e))
            throw ConflictingControllabilityError(
                "event " + std::to_string(e) +
                " declared controllable in one generator and uncontrollable in another");
    }
    Alphabet m = a;
    m.events.insert(b.events.begin(), b.events.end());
    m.controllable.insert(b.controllable.begin(), b.controllable.end());
    return m;
}

Generator Generator::make(std::string name, int states, Alphabet alpha, State initial) {
    if (states <= 0) throw InputError("generator '" + name + "': state count must be positive");
    if (initial < 0 || initial >= states)
        throw InputError("generator '" + name + "': initial state out of range");
    Generator g;
    g.name = std::move(name);
    g.initial = initial;
    g.alphabet = std::move(alpha);
    g.trans.resize(states);
    return g;
}

Generator Generator::make_empty(std::string name, Alphabet alpha) {
    Generator g;
    g.name = std::move(name);
    g.initial = 0;
    g.alphabet = std::move(alpha);
    return g;
}

void Generator::add_transition(State src, EventId e, State dst) {
    if (src < 0 || src >= state_count() || dst < 0 || dst >= state_count())
        throw InputError("generator '" + name + "': transition state out of range");
    if (!alphabet.contains(e))
        throw InputError("generator '" + name + "': unknown event " + std::to_string(e));
    auto [it, inserted] = trans[src].emplace(e, dst);
    if (!inserted)
        throw InputError("generator '" + name + "': duplicate transition for state " +
                         std::to_string(src) + ", event " + std::to_string(e));
}

std::optional<State> Generator::target(State s, EventId e) const {
    auto it = trans[s].find(e);
    if (it == trans[s].end()) return std::nullopt;
    return it->second;
}

std::set<EventId> Generator::enabled(State s) const {
    std::set<EventId> es;
    for (const auto& [e, t] : trans[s]) es.insert(e);
    return es;
}

int Generator::transition_count() const {
    int n = 0;
    for (const auto& m : trans) n += static_cast<int>(m.size());
    return n;
}

std::set<EventId> Generator::transition_labels() const {
    std::set<EventId> labels;
    for (const auto& m : trans)
        for (const auto& [e, t] : m) labels.insert(e);
    return labels;
}

bool Generator::accepts_closed(const std::vector<EventId>& s) const {
    if (empty()) return false;
    State q = initial;
    for (EventId e : s) {
        auto t = target(q, e);
        if (!t) return false;
        q = *t;
    }
    return true;
}

bool Generator::accepts_marked(const std::vector<EventId>& s) const {
    if (empty()) return false;
    State q = initial;
    for (EventId e : s) {
        auto t = target(q, e);
        if (!t) return false;
        q = *t;
    }
    return is_marked(q);
}

void Generator::validate() const {
    if (empty()) {
        if (!marked.empty()) throw InputError("generator '" + name + "': marked state in empty generator");
        return;
    }
    if (initial < 0 || initial >= state_count())
        throw InputError("generator '" + name + "': initial state out of range");
    for (State m : marked)
        if (m < 0 || m >= state_count())
            throw InputError("generator '" + name + "': marked state out of range");
    for (EventId e : alphabet.controllable)
        if (!alphabet.contains(e))
            throw InputError("generator '" + name + "': controllable event not in alphabet");
    for (State s = 0; s < state_count(); ++s) {
        for (const auto& [e, t] : trans[s]) {
            if (!alphabet.contains(e))
                throw InputError("generator '" + name + "': transition event not in alphabet");
            if (t < 0 || t >= state_count())
                throw InputError("generator '" + name + "': transition target out of range");
        }
    }
}

bool same_structure(const Generator& a, const Generator& b) {
    return a.initial == b.initial && a.marked == b.marked && a.alphabet == b.alphabet &&
           a.trans == b.trans;
}

}  // namespace des
