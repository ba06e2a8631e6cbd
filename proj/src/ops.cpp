#include "des/ops.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "des/errors.hpp"

namespace des {

namespace {

// Renumber g to the states in `keep` (sorted ascending), preserving order.
// Returns the empty generator if the initial state is dropped.
Generator restrict_states(const Generator& g, const std::vector<State>& keep) {
    if (g.empty()) return g;
    std::vector<int> remap(g.state_count(), -1);
    for (int i = 0; i < static_cast<int>(keep.size()); ++i) remap[keep[i]] = i;
    if (keep.empty() || remap[g.initial] < 0) return Generator::make_empty(g.name, g.alphabet);

    Generator out = Generator::make(g.name, static_cast<int>(keep.size()), g.alphabet,
                                    remap[g.initial]);
    for (State s : keep) {
        for (const auto& [e, t] : g.out(s))
            if (remap[t] >= 0) out.add_transition(remap[s], e, remap[t]);
    }
    for (State m : g.marked)
        if (remap[m] >= 0) out.marked.insert(remap[m]);
    return out;
}

std::vector<bool> reachable_states(const Generator& g) {
    std::vector<bool> seen(g.state_count(), false);
    if (g.empty()) return seen;
    std::deque<State> queue{g.initial};
    seen[g.initial] = true;
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        for (const auto& [e, t] : g.out(s)) {
            if (!seen[t]) {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    return seen;
}

std::vector<bool> coreachable_states(const Generator& g) {
    std::vector<std::vector<State>> pred(g.state_count());
    for (State s = 0; s < g.state_count(); ++s)
        for (const auto& [e, t] : g.out(s)) pred[t].push_back(s);
    std::vector<bool> seen(g.state_count(), false);
    std::deque<State> queue;
    for (State m : g.marked) {
        if (!seen[m]) {
            seen[m] = true;
            queue.push_back(m);
        }
    }
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        for (State p : pred[s]) {
            if (!seen[p]) {
                seen[p] = true;
                queue.push_back(p);
            }
        }
    }
    return seen;
}

}  // namespace

Generator sync(const std::vector<Generator>& gens) {
    if (gens.empty()) throw InputError("sync: at least one generator required");
    Alphabet merged = gens[0].alphabet;
    for (std::size_t i = 1; i < gens.size(); ++i) merged = merge_alphabets(merged, gens[i].alphabet);

    std::string name = "sync(";
    for (std::size_t i = 0; i < gens.size(); ++i) name += (i ? "," : "") + gens[i].name;
    name += ")";

    for (const Generator& g : gens)
        if (g.empty()) return Generator::make_empty(name, merged);

    const int k = static_cast<int>(gens.size());
    std::vector<State> start(k);
    for (int i = 0; i < k; ++i) start[i] = gens[i].initial;

    std::map<std::vector<State>, int> id;
    std::vector<std::vector<State>> tuples;
    std::deque<int> queue;
    id[start] = 0;
    tuples.push_back(start);
    queue.push_back(0);

    struct Edge {
        int src;
        EventId e;
        int dst;
    };
    std::vector<Edge> edges;

    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        std::vector<State> tup = tuples[cur];
        for (EventId e : merged.events) {
            std::vector<State> next = tup;
            bool ok = true;
            for (int i = 0; i < k && ok; ++i) {
                if (!gens[i].alphabet.contains(e)) continue;  // private elsewhere: stay put
                auto t = gens[i].target(tup[i], e);
                if (!t)
                    ok = false;
                else
                    next[i] = *t;
            }
            if (!ok) continue;
            auto [it, inserted] = id.emplace(next, static_cast<int>(tuples.size()));
            if (inserted) {
                tuples.push_back(next);
                queue.push_back(it->second);
            }
            edges.push_back({cur, e, it->second});
        }
    }

    Generator out = Generator::make(name, static_cast<int>(tuples.size()), merged, 0);
    for (const Edge& ed : edges) out.add_transition(ed.src, ed.e, ed.dst);
    for (int s = 0; s < out.state_count(); ++s) {
        bool all_marked = true;
        for (int i = 0; i < k; ++i)
            if (!gens[i].is_marked(tuples[s][i])) {
                all_marked = false;
                break;
            }
        if (all_marked) out.marked.insert(s);
    }
    return out;
}

Generator meet(const Generator& a, const Generator& b) {
    Alphabet merged = merge_alphabets(a.alphabet, b.alphabet);
    std::string name = "meet(" + a.name + "," + b.name + ")";
    if (a.empty() || b.empty()) return Generator::make_empty(name, merged);

    std::map<std::pair<State, State>, int> id;
    std::vector<std::pair<State, State>> pairs;
    std::deque<int> queue;
    id[{a.initial, b.initial}] = 0;
    pairs.push_back({a.initial, b.initial});
    queue.push_back(0);

    struct Edge {
        int src;
        EventId e;
        int dst;
    };
    std::vector<Edge> edges;

    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        auto [sa, sb] = pairs[cur];
        for (const auto& [e, ta] : a.out(sa)) {
            auto tb = b.target(sb, e);
            if (!tb) continue;
            auto [it, inserted] = id.emplace(std::make_pair(ta, *tb), static_cast<int>(pairs.size()));
            if (inserted) {
                pairs.push_back({ta, *tb});
                queue.push_back(it->second);
            }
            edges.push_back({cur, e, it->second});
        }
    }

    Generator out = Generator::make(name, static_cast<int>(pairs.size()), merged, 0);
    for (const Edge& ed : edges) out.add_transition(ed.src, ed.e, ed.dst);
    for (int s = 0; s < out.state_count(); ++s)
        if (a.is_marked(pairs[s].first) && b.is_marked(pairs[s].second)) out.marked.insert(s);
    return out;
}

Generator trim(const Generator& g) {
    if (g.empty()) return g;
    std::vector<bool> reach = reachable_states(g);
    std::vector<bool> coreach = coreachable_states(g);
    std::vector<State> keep;
    for (State s = 0; s < g.state_count(); ++s)
        if (reach[s] && coreach[s]) keep.push_back(s);
    return restrict_states(g, keep);
}

bool is_nonblocking(const Generator& g) {
    if (g.empty()) return true;
    std::vector<bool> reach = reachable_states(g);
    std::vector<bool> coreach = coreachable_states(g);
    for (State s = 0; s < g.state_count(); ++s)
        if (reach[s] && !coreach[s]) return false;
    return true;
}

Generator selfloop(const Generator& g, const std::set<EventId>& evts,
                   const std::optional<std::set<EventId>>& controllable) {
    Generator out = g;
    for (EventId e : evts) {
        bool ctrl = controllable ? controllable->count(e) != 0 : e % 2 != 0;
        if (out.alphabet.contains(e) && out.alphabet.is_controllable(e) != ctrl)
            throw ConflictingControllabilityError("selfloop: controllability of event " +
                                                  std::to_string(e) + " conflicts with alphabet");
        out.alphabet.events.insert(e);
        if (ctrl) out.alphabet.controllable.insert(e);
        for (State s = 0; s < out.state_count(); ++s) {
            auto t = out.target(s, e);
            if (t && *t != s)
                throw InputError("selfloop: event " + std::to_string(e) +
                                 " already labels a non-self-loop transition at state " +
                                 std::to_string(s));
            if (!t) out.trans[s].emplace(e, s);
        }
    }
    return out;
}

Generator project(const Generator& g, const std::set<EventId>& keep) {
    for (EventId e : keep)
        if (!g.alphabet.contains(e))
            throw InputError("project: kept event " + std::to_string(e) + " not in alphabet");

    Alphabet alpha;
    alpha.events = keep;
    for (EventId e : keep)
        if (g.alphabet.is_controllable(e)) alpha.controllable.insert(e);

    std::string name = "project(" + g.name + ")";
    if (g.empty()) return Generator::make_empty(name, alpha);

    auto closure = [&](std::vector<State> states) {
        std::deque<State> queue(states.begin(), states.end());
        std::set<State> seen(states.begin(), states.end());
        while (!queue.empty()) {
            State s = queue.front();
            queue.pop_front();
            for (const auto& [e, t] : g.out(s)) {
                if (keep.count(e)) continue;
                if (seen.insert(t).second) queue.push_back(t);
            }
        }
        return std::vector<State>(seen.begin(), seen.end());
    };

    std::map<std::vector<State>, int> id;
    std::vector<std::vector<State>> subsets;
    std::deque<int> queue;
    std::vector<State> start = closure({g.initial});
    id[start] = 0;
    subsets.push_back(start);
    queue.push_back(0);

    struct Edge {
        int src;
        EventId e;
        int dst;
    };
    std::vector<Edge> edges;

    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (EventId e : keep) {
            std::vector<State> moved;
            for (State s : subsets[cur]) {
                auto t = g.target(s, e);
                if (t) moved.push_back(*t);
            }
            if (moved.empty()) continue;
            std::vector<State> next = closure(std::move(moved));
            auto [it, inserted] = id.emplace(next, static_cast<int>(subsets.size()));
            if (inserted) {
                subsets.push_back(next);
                queue.push_back(it->second);
            }
            edges.push_back({cur, e, it->second});
        }
    }

    Generator out = Generator::make(name, static_cast<int>(subsets.size()), alpha, 0);
    for (const Edge& ed : edges) out.add_transition(ed.src, ed.e, ed.dst);
    for (int s = 0; s < out.state_count(); ++s) {
        for (State q : subsets[s]) {
            if (g.is_marked(q)) {
                out.marked.insert(s);
                break;
            }
        }
    }
    return out;
}

// Synchronized traversal with a missing-side sink (-1): a reachable pair with
// exactly one live side witnesses a closed-language difference; a pair whose
// sides disagree on marking witnesses a marked-language difference.
LangCompareResult lang_compare(const Generator& a, const Generator& b) {
    LangCompareResult res;
    constexpr State kDead = -1;

    State ia = a.empty() ? kDead : a.initial;
    State ib = b.empty() ? kDead : b.initial;
    if (ia == kDead && ib == kDead) return res;

    struct Node {
        State sa, sb;
        int parent;
        EventId via;
    };
    std::vector<Node> nodes;
    std::map<std::pair<State, State>, int> visited;
    std::deque<int> queue;
    nodes.push_back({ia, ib, -1, 0});
    visited[{ia, ib}] = 0;
    queue.push_back(0);

    auto path_to = [&](int idx) {
        std::vector<EventId> evs;
        for (int i = idx; nodes[i].parent >= 0; i = nodes[i].parent) evs.push_back(nodes[i].via);
        std::reverse(evs.begin(), evs.end());
        return StringTrace{std::move(evs)};
    };

    int first_closed = -1, first_marked = -1;

    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        auto [sa, sb] = std::pair(nodes[cur].sa, nodes[cur].sb);

        bool live_a = sa != kDead, live_b = sb != kDead;
        if (live_a != live_b && first_closed < 0) first_closed = cur;
        bool ma = live_a && a.is_marked(sa);
        bool mb = live_b && b.is_marked(sb);
        if (ma != mb && first_marked < 0) first_marked = cur;
        if (first_closed >= 0 && first_marked >= 0) break;

        std::set<EventId> evs;
        if (live_a)
            for (const auto& [e, t] : a.out(sa)) evs.insert(e);
        if (live_b)
            for (const auto& [e, t] : b.out(sb)) evs.insert(e);
        for (EventId e : evs) {
            State na = kDead, nb = kDead;
            if (live_a)
                if (auto t = a.target(sa, e)) na = *t;
            if (live_b)
                if (auto t = b.target(sb, e)) nb = *t;
            auto [it, inserted] = visited.emplace(std::make_pair(na, nb),
                                                  static_cast<int>(nodes.size()));
            if (inserted) {
                nodes.push_back({na, nb, cur, e});
                queue.push_back(it->second);
            }
        }
    }

    res.closed_equal = first_closed < 0;
    res.marked_equal = first_marked < 0;
    if (!res.closed_equal || !res.marked_equal) {
        int best = first_closed;
        if (best < 0 || (first_marked >= 0 && first_marked < best)) best = first_marked;
        res.counterexample = path_to(best);
    }
    return res;
}

bool lang_equal(const Generator& a, const Generator& b) { return lang_compare(a, b).equal(); }

Generator canonicalize(const Generator& g) {
    if (g.empty()) return g;
    std::vector<State> order;
    std::vector<bool> seen(g.state_count(), false);
    std::deque<State> queue{g.initial};
    seen[g.initial] = true;
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        order.push_back(s);
        for (const auto& [e, t] : g.out(s)) {  // ascending event id
            if (!seen[t]) {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    for (State s = 0; s < g.state_count(); ++s)
        if (!seen[s]) order.push_back(s);

    std::vector<int> remap(g.state_count());
    for (int i = 0; i < static_cast<int>(order.size()); ++i) remap[order[i]] = i;

    Generator out = Generator::make(g.name, g.state_count(), g.alphabet, remap[g.initial]);
    for (State s = 0; s < g.state_count(); ++s)
        for (const auto& [e, t] : g.out(s)) out.add_transition(remap[s], e, remap[t]);
    for (State m : g.marked) out.marked.insert(remap[m]);
    return out;
}

Generator lift(const Generator& g, const Alphabet& target) {
    std::set<EventId> missing;
    std::set<EventId> missing_ctrl;
    for (EventId e : target.events) {
        if (!g.alphabet.contains(e)) {
            missing.insert(e);
            if (target.is_controllable(e)) missing_ctrl.insert(e);
        }
    }
    if (missing.empty()) return g;
    if (g.empty()) {
        Generator out = g;
        out.alphabet = merge_alphabets(g.alphabet, target);
        return out;
    }
    return selfloop(g, missing, missing_ctrl);
}

bool is_normal(const Generator& plant, const Generator& k, const std::set<EventId>& observable) {
    Generator kt = trim(k);
    if (kt.empty()) return true;  // K̄ = ∅, both sides empty

    std::set<EventId> kept;
    std::set_intersection(observable.begin(), observable.end(), kt.alphabet.events.begin(),
                          kt.alphabet.events.end(), std::inserter(kept, kept.end()));
    Generator projected = project(kt, kept);

    std::set<EventId> erased, erased_ctrl;
    for (EventId e : plant.alphabet.events) {
        if (!observable.count(e) && !projected.alphabet.contains(e)) {
            erased.insert(e);
            if (plant.alphabet.is_controllable(e)) erased_ctrl.insert(e);
        }
    }
    Generator inverse = selfloop(projected, erased, erased_ctrl);
    Generator lhs = meet(plant, inverse);
    return lang_compare(lhs, kt).closed_equal;
}

}  // namespace des
