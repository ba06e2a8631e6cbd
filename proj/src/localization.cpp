#include "des/localization.hpp"

#include <algorithm>
#include <sstream>

#include "des/errors.hpp"

namespace des {

AgentSpec make_agent(std::string name, std::set<EventId> events, const Alphabet& global) {
    AgentSpec a;
    a.name = std::move(name);
    a.events = std::move(events);
    for (EventId e : a.events)
        if (global.is_controllable(e)) a.controllable_events.insert(e);
    return a;
}

std::set<EventId> disabled_k(const ControlData& cd, State x, const AgentSpec& agent) {
    std::set<EventId> out;
    for (EventId e : cd.disabled[x])
        if (agent.controllable_events.count(e)) out.insert(e);
    return out;
}

bool control_consistent_k(const ControlData& cd, State x, State y, const AgentSpec& agent) {
    for (EventId e : cd.enabled[x])
        if (cd.disabled[y].count(e) && agent.controllable_events.count(e)) return false;
    for (EventId e : cd.enabled[y])
        if (cd.disabled[x].count(e) && agent.controllable_events.count(e)) return false;
    if (cd.plant_marked[x] == cd.plant_marked[y] && cd.sup_marked[x] != cd.sup_marked[y])
        return false;
    return true;
}

bool is_ecc(const Generator& plant, const ControlData& cd, State x, State y,
            const AgentSpec& agent) {
    if (control_consistent(cd, x, y)) return false;
    if (!control_consistent_k(cd, x, y, agent)) return false;

    // Events witnessing the R-violation.
    std::set<EventId> violating;
    for (EventId e : cd.enabled[x])
        if (cd.disabled[y].count(e)) violating.insert(e);
    for (EventId e : cd.enabled[y])
        if (cd.disabled[x].count(e)) violating.insert(e);

    // Universal reading: every tandem plant-state pair with the event defined
    // at both must move to distinct plant states.
    for (EventId e : violating) {
        for (State q : cd.plant_pairs[x]) {
            auto t1 = plant.target(q, e);
            if (!t1) continue;
            for (State q2 : cd.plant_pairs[y]) {
                auto t2 = plant.target(q2, e);
                if (!t2) continue;
                if (*t1 == *t2) return false;
            }
        }
    }
    return true;
}

namespace {

// Events witnessing the R-violation between x and y.
std::set<EventId> violating_events(const ControlData& cd, State x, State y) {
    std::set<EventId> v;
    for (EventId e : cd.enabled[x])
        if (cd.disabled[y].count(e)) v.insert(e);
    for (EventId e : cd.enabled[y])
        if (cd.disabled[x].count(e)) v.insert(e);
    return v;
}

// Completes harmless self-loops on an induced controller (cell index == state
// index). An event self-looped wherever defined gains self-loops at its
// undefined states: unconditionally if it is outside the agent's control
// authority (it cannot be disabled here, so enabling it locally never changes
// the joint closed-loop behavior — the owning agent's controller keeps every
// supervisor disablement); for the agent's own controllable events only at
// cells no member of which disables the event.
Generator complete_selfloops(Generator loc, const StatePartition& p, const ControlData& cd,
                             const AgentSpec& agent) {
    for (EventId e : loc.alphabet.events) {
        bool candidate = false;
        for (State z = 0; z < loc.state_count(); ++z) {
            auto t = loc.target(z, e);
            if (!t) continue;
            candidate = *t == z;
            if (!candidate) break;
        }
        if (!candidate) continue;
        bool own = agent.controllable_events.count(e) != 0;
        for (State z = 0; z < loc.state_count(); ++z) {
            if (loc.defined(z, e)) continue;
            bool harmless = true;
            if (own)
                for (State x : p.cells[z])
                    if (cd.disabled[x].count(e)) {
                        harmless = false;
                        break;
                    }
            if (harmless) loc.add_transition(z, e, z);
        }
    }
    return loc;
}

std::set<EventId> selflooped_at_all_states(const Generator& g) {
    std::set<EventId> out;
    for (EventId e : g.alphabet.events) {
        bool ok = !g.empty();
        for (State z = 0; z < g.state_count() && ok; ++z) {
            auto t = g.target(z, e);
            ok = t && *t == z;
        }
        if (ok) out.insert(e);
    }
    return out;
}

Generator strip_events(Generator g, const std::set<EventId>& events) {
    for (EventId e : events) {
        g.alphabet.events.erase(e);
        g.alphabet.controllable.erase(e);
        for (auto& m : g.trans) m.erase(e);
    }
    return g;
}

}  // namespace

LocalController localize_agent(const Generator& plant, const Generator& sup,
                               const ControlData& cd, const AgentSpec& agent) {
    LocalController lc;
    lc.agent = agent;
    if (sup.empty()) {
        lc.generator = sup;
        lc.stripped = sup;
        return lc;
    }

    const int n = sup.state_count();
    auto consistent = [&cd, &agent](State a, State b) {
        return control_consistent_k(cd, a, b, agent);
    };

    // One localization attempt: an optional ECC seed (condition (10)), then a
    // closure phase pulling each violating event of the seed toward self-loops
    // by merging states with their successors, then the plain greedy pass.
    auto attempt = [&](std::optional<std::pair<State, State>> seed)
        -> std::optional<StatePartition> {
        StatePartition p = StatePartition::identity(n, "R^k");
        if (seed) {
            auto merged = merge_closure(p, seed->first, seed->second, sup, consistent);
            if (!merged) return std::nullopt;
            p = std::move(*merged);
            auto selfloop_closure = [&](EventId e) {
                for (State x = 0; x < n; ++x) {
                    auto t = sup.target(x, e);
                    if (!t || p.cell_of[x] == p.cell_of[*t]) continue;
                    if (auto m = merge_closure(p, x, *t, sup, consistent)) p = std::move(*m);
                }
            };
            std::set<EventId> viol = violating_events(cd, seed->first, seed->second);
            for (EventId e : viol) selfloop_closure(e);
            for (EventId e : sup.alphabet.events)
                if (!viol.count(e) && !agent.controllable_events.count(e)) selfloop_closure(e);
        }
        p = greedy_congruence(sup, n, consistent, std::move(p));
        p.ecc_witness = seed;
        return p;
    };

    // Try every viable ECC seed (capped on large instances) and keep the best
    // outcome: fewest cells, then fewest remaining events after stripping,
    // preferring outcomes where all violating events of the seed end up
    // self-looped everywhere; ties go to the smallest seed.
    const int seed_cap = n <= 40 ? n * n : 8;
    int tried = 0;
    std::optional<StatePartition> best;
    Generator best_loc;
    std::set<EventId> best_selflooped;
    auto better = [](int wit_a, int cells_a, size_t ev_a, int wit_b, int cells_b, size_t ev_b) {
        return std::make_tuple(-wit_a, cells_a, ev_a) < std::make_tuple(-wit_b, cells_b, ev_b);
    };
    int best_wit = -1, best_cells = 0;
    for (State x = 0; x < n && tried < seed_cap; ++x)
        for (State y = x + 1; y < n && tried < seed_cap; ++y) {
            if (!is_ecc(plant, cd, x, y, agent)) continue;
            auto p = attempt(std::make_pair(x, y));
            if (!p) continue;
            ++tried;
            Generator loc = complete_selfloops(induce(sup, *p), *p, cd, agent);
            std::set<EventId> sl = selflooped_at_all_states(loc);
            std::set<EventId> viol = violating_events(cd, x, y);
            int wit = std::includes(sl.begin(), sl.end(), viol.begin(), viol.end()) ? 1 : 0;
            size_t ev = loc.alphabet.events.size() - sl.size();
            if (!best || better(wit, p->cell_count(), ev, best_wit, best_cells,
                                best_loc.alphabet.events.size() - best_selflooped.size())) {
                best = std::move(p);
                best_loc = std::move(loc);
                best_selflooped = std::move(sl);
                best_wit = wit;
                best_cells = best->cell_count();
            }
        }

    StatePartition p = StatePartition::identity(n, "R^k");
    Generator loc;
    if (best) {
        p = std::move(*best);
        loc = std::move(best_loc);
        lc.ecc_used = true;
        lc.ecc_witness = p.ecc_witness;
        lc.selflooped_everywhere = std::move(best_selflooped);
    } else {
        p = *attempt(std::nullopt);
        loc = complete_selfloops(induce(sup, p), p, cd, agent);
        lc.selflooped_everywhere = selflooped_at_all_states(loc);
    }

    lc.generator = canonicalize(loc);
    lc.generator.name = "LOC_" + agent.name;
    lc.stripped = strip_events(lc.generator, lc.selflooped_everywhere);
    lc.stripped.name = "LOC_" + agent.name + "_stripped";
    return lc;
}

LocalControllerSet localize_all(const Generator& plant, const Generator& sup,
                                const std::vector<AgentSpec>& agents) {
    std::set<EventId> covered;
    for (const AgentSpec& a : agents) {
        for (EventId e : a.events) {
            if (!covered.insert(e).second)
                throw InputError("localize: event " + std::to_string(e) +
                                 " owned by more than one agent");
            if (!plant.alphabet.contains(e))
                throw InputError("localize: agent event " + std::to_string(e) +
                                 " not in plant alphabet");
        }
    }
    if (covered != plant.alphabet.events)
        throw InputError("localize: agent alphabets do not partition the plant alphabet");

    ControlData cd = control_data(plant, sup);
    LocalControllerSet set;
    for (const AgentSpec& a : agents)
        set.controllers.push_back(localize_agent(plant, sup, cd, a));
    return set;
}

std::pair<std::set<EventId>, Generator> strip_selflooped(const Generator& loc) {
    std::set<EventId> everywhere;
    for (EventId e : loc.alphabet.events) {
        bool defined_somewhere = false, all_selfloops = true;
        for (State s = 0; s < loc.state_count(); ++s) {
            auto t = loc.target(s, e);
            if (!t) continue;
            defined_somewhere = true;
            if (*t != s) {
                all_selfloops = false;
                break;
            }
        }
        if (defined_somewhere && all_selfloops) everywhere.insert(e);
    }

    Generator stripped = loc;
    for (EventId e : everywhere) {
        stripped.alphabet.events.erase(e);
        stripped.alphabet.controllable.erase(e);
        for (auto& m : stripped.trans) m.erase(e);
    }
    return {everywhere, stripped};
}

int labeling_event_count_after_strip(const Generator& g) {
    auto [events, stripped] = strip_selflooped(g);
    return static_cast<int>(stripped.transition_labels().size());
}

EquivalenceReport verify_control_equivalence(const Generator& plant, const Generator& sup,
                                             const LocalControllerSet& locs) {
    EquivalenceReport rep;
    Generator joint = plant;
    for (const LocalController& lc : locs.controllers)
        joint = meet(joint, lift(lc.stripped, plant.alphabet));

    LangCompareResult cmp = lang_compare(joint, sup);
    rep.closed_ok = cmp.closed_equal;
    rep.marked_ok = cmp.marked_equal;
    rep.counterexample = cmp.counterexample;

    Generator rsup = supreduce(plant, sup);
    rep.rsup_event_count = labeling_event_count_after_strip(rsup);
    rep.event_reduction_ok = true;
    for (const LocalController& lc : locs.controllers) {
        int count = static_cast<int>(lc.stripped.alphabet.events.size());
        rep.per_controller_event_counts[lc.agent.name] = count;
        if (count >= rep.rsup_event_count) rep.event_reduction_ok = false;
    }
    return rep;
}

std::string event_reduction_report(const LocalControllerSet& locs, const Generator& rsup) {
    int rsup_events = labeling_event_count_after_strip(rsup);
    std::ostringstream os;
    os << "agent\tloc_states\trsup_states\tloc_events\trsup_events\tselflooped\n";
    bool localizable = true, event_reduction = true;
    for (const LocalController& lc : locs.controllers) {
        os << lc.agent.name << "\t" << lc.generator.state_count() << "\t" << rsup.state_count()
           << "\t" << lc.stripped.alphabet.events.size() << "\t" << rsup_events << "\t";
        bool first = true;
        for (EventId e : lc.selflooped_everywhere) {
            os << (first ? "" : ",") << e;
            first = false;
        }
        if (lc.selflooped_everywhere.empty()) os << "-";
        os << "\n";
        if (lc.generator.state_count() >= rsup.state_count()) localizable = false;
        if (static_cast<int>(lc.stripped.alphabet.events.size()) >= rsup_events)
            event_reduction = false;
        if (!lc.ecc_used) os << "# " << lc.agent.name << ": no ECC pair usable, plain localization\n";
    }
    os << "localizable\t" << (localizable ? "yes" : "no") << "\n";
    os << "event_reduction\t" << (event_reduction ? "yes" : "no") << "\n";
    return os.str();
}

}  // namespace des
