#include "des/synthesis.hpp"

#include <deque>
#include <map>
#include <sstream>

#include "des/errors.hpp"

namespace des {

namespace {

struct PairGraph {
    std::vector<std::pair<State, State>> pairs;  // (plant q, spec y)
    std::vector<std::map<EventId, int>> edges;
    std::vector<bool> marked;
};

PairGraph build_product(const Generator& plant, const Generator& spec) {
    PairGraph pg;
    if (plant.empty() || spec.empty()) return pg;
    std::map<std::pair<State, State>, int> id;
    std::deque<int> queue;
    id[{plant.initial, spec.initial}] = 0;
    pg.pairs.push_back({plant.initial, spec.initial});
    pg.edges.emplace_back();
    queue.push_back(0);
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        auto [q, y] = pg.pairs[cur];
        for (const auto& [e, qn] : plant.out(q)) {
            auto yn = spec.target(y, e);
            if (!yn) continue;
            auto [it, inserted] = id.emplace(std::make_pair(qn, *yn),
                                             static_cast<int>(pg.pairs.size()));
            if (inserted) {
                pg.pairs.push_back({qn, *yn});
                pg.edges.emplace_back();
                queue.push_back(it->second);
            }
            pg.edges[cur][e] = it->second;
        }
    }
    pg.marked.resize(pg.pairs.size());
    for (std::size_t i = 0; i < pg.pairs.size(); ++i)
        pg.marked[i] = plant.is_marked(pg.pairs[i].first) && spec.is_marked(pg.pairs[i].second);
    return pg;
}

// Reachable-and-coreachable restriction within the alive set.
void trim_alive(const PairGraph& pg, std::vector<bool>& alive) {
    const int n = static_cast<int>(pg.pairs.size());
    std::vector<bool> reach(n, false);
    if (alive[0]) {
        std::deque<int> queue{0};
        reach[0] = true;
        while (!queue.empty()) {
            int s = queue.front();
            queue.pop_front();
            for (const auto& [e, t] : pg.edges[s])
                if (alive[t] && !reach[t]) {
                    reach[t] = true;
                    queue.push_back(t);
                }
        }
    }
    std::vector<std::vector<int>> pred(n);
    for (int s = 0; s < n; ++s)
        if (alive[s])
            for (const auto& [e, t] : pg.edges[s])
                if (alive[t]) pred[t].push_back(s);
    std::vector<bool> coreach(n, false);
    std::deque<int> queue;
    for (int s = 0; s < n; ++s)
        if (alive[s] && pg.marked[s]) {
            coreach[s] = true;
            queue.push_back(s);
        }
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (int p : pred[s])
            if (!coreach[p]) {
                coreach[p] = true;
                queue.push_back(p);
            }
    }
    for (int s = 0; s < n; ++s) alive[s] = alive[s] && reach[s] && coreach[s];
}

}  // namespace

Generator supcon(const Generator& plant, const Generator& spec) {
    for (EventId e : spec.alphabet.events)
        if (!plant.alphabet.contains(e))
            throw InputError("supcon: spec event " + std::to_string(e) +
                             " not in plant alphabet (self-loop the spec first)");
    merge_alphabets(plant.alphabet, spec.alphabet);

    PairGraph pg = build_product(plant, spec);
    const int n = static_cast<int>(pg.pairs.size());
    if (n == 0) return Generator::make_empty("SUP", plant.alphabet);

    std::set<EventId> unc = plant.alphabet.uncontrollable();
    std::vector<bool> alive(n, true);
    trim_alive(pg, alive);

    // Delete states with an uncontrollable plant-defined event leading outside
    // the candidate, then re-trim, to fixpoint.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int s = 0; s < n; ++s) {
            if (!alive[s]) continue;
            State q = pg.pairs[s].first;
            for (EventId e : unc) {
                if (!plant.defined(q, e)) continue;
                auto it = pg.edges[s].find(e);
                if (it == pg.edges[s].end() || !alive[it->second]) {
                    alive[s] = false;
                    changed = true;
                    break;
                }
            }
        }
        if (changed) trim_alive(pg, alive);
    }

    if (!alive[0]) return Generator::make_empty("SUP", plant.alphabet);

    std::vector<int> remap(n, -1);
    int count = 0;
    for (int s = 0; s < n; ++s)
        if (alive[s]) remap[s] = count++;
    Generator out = Generator::make("SUP", count, plant.alphabet, remap[0]);
    for (int s = 0; s < n; ++s) {
        if (!alive[s]) continue;
        for (const auto& [e, t] : pg.edges[s])
            if (alive[t]) out.add_transition(remap[s], e, remap[t]);
        if (pg.marked[s]) out.marked.insert(remap[s]);
    }
    return canonicalize(out);
}

ControlData control_data(const Generator& plant, const Generator& sup) {
    ControlData cd;
    cd.sup_name = sup.name;
    cd.sup_state_count = sup.state_count();
    cd.enabled.resize(sup.state_count());
    cd.disabled.resize(sup.state_count());
    cd.sup_marked.resize(sup.state_count(), false);
    cd.plant_marked.resize(sup.state_count(), false);
    cd.plant_pairs.resize(sup.state_count());
    if (sup.empty()) return cd;
    if (plant.empty()) throw InputError("control_data: supervisor not contained in empty plant");

    // Synchronized forward reachability of (sup state, plant state); every sup
    // transition must have a plant counterpart.
    std::set<std::pair<State, State>> visited;
    std::deque<std::pair<State, State>> queue;
    visited.insert({sup.initial, plant.initial});
    queue.push_back({sup.initial, plant.initial});
    while (!queue.empty()) {
        auto [x, q] = queue.front();
        queue.pop_front();
        cd.plant_pairs[x].insert(q);
        for (const auto& [e, xn] : sup.out(x)) {
            auto qn = plant.target(q, e);
            if (!qn)
                throw InputError("control_data: supervisor transition on event " +
                                 std::to_string(e) + " has no plant counterpart (state " +
                                 std::to_string(x) + ")");
            if (visited.insert({xn, *qn}).second) queue.push_back({xn, *qn});
        }
    }

    for (State x = 0; x < sup.state_count(); ++x) {
        cd.enabled[x] = sup.enabled(x);
        cd.sup_marked[x] = sup.is_marked(x);
        for (State q : cd.plant_pairs[x]) {
            if (plant.is_marked(q)) cd.plant_marked[x] = true;
            for (const auto& [e, qn] : plant.out(q))
                if (!cd.enabled[x].count(e)) cd.disabled[x].insert(e);
        }
    }
    return cd;
}

std::string condat_table(const ControlData& cd) {
    std::ostringstream os;
    os << "# condat " << cd.sup_name << "\n";
    for (State x = 0; x < cd.sup_state_count; ++x) {
        if (cd.disabled[x].empty()) continue;
        os << x << "\t";
        bool first = true;
        for (EventId e : cd.disabled[x]) {
            os << (first ? "" : ",") << e;
            first = false;
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace des
