#include "des/reduction.hpp"

#include <algorithm>
#include <deque>

#include "des/errors.hpp"

namespace des {

StatePartition StatePartition::identity(int n, std::string tag) {
    StatePartition p;
    p.relation_tag = std::move(tag);
    p.cell_of.resize(n);
    p.cells.resize(n);
    for (int i = 0; i < n; ++i) {
        p.cell_of[i] = i;
        p.cells[i] = {i};
    }
    return p;
}

void StatePartition::validate(int n) const {
    if (static_cast<int>(cell_of.size()) != n)
        throw InputError("partition: cell_of size mismatch");
    std::vector<int> seen(n, 0);
    for (int c = 0; c < cell_count(); ++c) {
        if (cells[c].empty()) throw InputError("partition: empty cell");
        for (State s : cells[c]) {
            if (s < 0 || s >= n || cell_of[s] != c) throw InputError("partition: inconsistent cell map");
            ++seen[s];
        }
    }
    for (int s = 0; s < n; ++s)
        if (seen[s] != 1) throw InputError("partition: cells do not partition the state set");
}

bool control_consistent(const ControlData& cd, State x, State y) {
    for (EventId e : cd.enabled[x])
        if (cd.disabled[y].count(e)) return false;
    for (EventId e : cd.enabled[y])
        if (cd.disabled[x].count(e)) return false;
    if (cd.plant_marked[x] == cd.plant_marked[y] && cd.sup_marked[x] != cd.sup_marked[y])
        return false;
    return true;
}

std::optional<StatePartition> merge_closure(const StatePartition& p, State x, State y,
                                            const Generator& sup,
                                            const ConsistencyPredicate& consistent) {
    StatePartition w = p;  // copy; input untouched on failure
    std::deque<std::pair<State, State>> pending{{x, y}};

    while (!pending.empty()) {
        auto [a, b] = pending.front();
        pending.pop_front();
        int ca = w.cell_of[a], cb = w.cell_of[b];
        if (ca == cb) continue;

        for (State u : w.cells[ca])
            for (State v : w.cells[cb])
                if (!consistent(u, v)) return std::nullopt;

        for (State v : w.cells[cb]) w.cell_of[v] = ca;
        w.cells[ca].insert(w.cells[ca].end(), w.cells[cb].begin(), w.cells[cb].end());
        std::sort(w.cells[ca].begin(), w.cells[ca].end());
        w.cells[cb].clear();

        // Forced merges: σ-successors of the grown cell must share a cell.
        for (EventId e : sup.alphabet.events) {
            State first = -1;
            for (State u : w.cells[ca]) {
                auto t = sup.target(u, e);
                if (!t) continue;
                if (first < 0)
                    first = *t;
                else if (w.cell_of[*t] != w.cell_of[first])
                    pending.push_back({first, *t});
            }
        }
    }

    // Compact away emptied cells, ordering cells by smallest member.
    StatePartition out;
    out.relation_tag = w.relation_tag;
    out.ecc_witness = w.ecc_witness;
    out.cell_of.resize(w.cell_of.size());
    std::vector<std::vector<State>> nonempty;
    for (auto& c : w.cells)
        if (!c.empty()) nonempty.push_back(std::move(c));
    std::sort(nonempty.begin(), nonempty.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (int i = 0; i < static_cast<int>(nonempty.size()); ++i) {
        for (State s : nonempty[i]) out.cell_of[s] = i;
        out.cells.push_back(std::move(nonempty[i]));
    }
    return out;
}

Generator induce(const Generator& sup, const StatePartition& p) {
    if (sup.empty()) return sup;
    p.validate(sup.state_count());

    const int nc = p.cell_count();
    Generator out = Generator::make(sup.name + "_reduced", nc, sup.alphabet,
                                    p.cell_of[sup.initial]);
    for (int c = 0; c < nc; ++c) {
        for (EventId e : sup.alphabet.events) {
            int target_cell = -1;
            for (State x : p.cells[c]) {
                auto t = sup.target(x, e);
                if (!t) continue;
                int tc = p.cell_of[*t];
                if (target_cell < 0)
                    target_cell = tc;
                else if (target_cell != tc)
                    throw std::logic_error("induce: partition induces nondeterminism on event " +
                                           std::to_string(e));
            }
            if (target_cell >= 0) out.add_transition(c, e, target_cell);
        }
        for (State x : p.cells[c]) {
            if (sup.is_marked(x)) {
                out.marked.insert(c);
                break;
            }
        }
    }
    return out;
}

StatePartition greedy_congruence(const Generator& sup, int n,
                                 const ConsistencyPredicate& consistent, StatePartition start) {
    StatePartition p = std::move(start);
    for (State x = 0; x < n; ++x) {
        for (State y = x + 1; y < n; ++y) {
            if (p.cell_of[x] == p.cell_of[y]) continue;
            if (!consistent(x, y)) continue;
            if (auto merged = merge_closure(p, x, y, sup, consistent)) p = std::move(*merged);
        }
    }
    return p;
}

Generator supreduce(const Generator& plant, const Generator& sup) {
    if (sup.empty()) return sup;
    ControlData cd = control_data(plant, sup);
    auto consistent = [&cd](State a, State b) { return control_consistent(cd, a, b); };
    StatePartition p = greedy_congruence(sup, sup.state_count(), consistent,
                                         StatePartition::identity(sup.state_count(), "R"));
    Generator rsup = canonicalize(induce(sup, p));
    rsup.name = "RSUP";

    LangCompareResult check = lang_compare(meet(plant, lift(rsup, plant.alphabet)), sup);
    if (!check.equal())
        throw std::logic_error("supreduce: reduced supervisor is not control equivalent");
    return rsup;
}

}  // namespace des
