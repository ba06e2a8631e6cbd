#include "des/transfer_line.hpp"

#include "des/ops.hpp"

namespace des::transfer_line {

namespace {

Generator machine(std::string name, std::set<EventId> events, State work_start,
                  std::vector<EventId> finish_events) {
    Generator g = Generator::make(std::move(name), 2,
                                  Alphabet::with_default_controllability(std::move(events)));
    g.marked.insert(0);
    g.add_transition(0, work_start, 1);
    for (EventId e : finish_events) g.add_transition(1, e, 0);
    return g;
}

}  // namespace

Generator m1() { return machine("M1", {1, 2}, 1, {2}); }
Generator m2() { return machine("M2", {3, 4}, 3, {4}); }
Generator tu() { return machine("TU", {5, 6, 8}, 5, {6, 8}); }

Generator b1() {
    // Counter 0..3; events 2 and 8 fill, 3 empties. Empty state marked.
    Generator g = Generator::make("B1", 4, Alphabet::with_default_controllability({2, 3, 8}));
    g.marked.insert(0);
    for (State s = 0; s < 3; ++s) {
        g.add_transition(s, 2, s + 1);
        g.add_transition(s, 8, s + 1);
    }
    for (State s = 1; s < 4; ++s) g.add_transition(s, 3, s - 1);
    return g;
}

Generator b2() {
    // Capacity 1; event 4 fills, 5 empties. Empty state marked.
    Generator g = Generator::make("B2", 2, Alphabet::with_default_controllability({4, 5}));
    g.marked.insert(0);
    g.add_transition(0, 4, 1);
    g.add_transition(1, 5, 0);
    return g;
}

Generator plant() {
    Generator p = sync({m1(), m2(), tu()});
    p.name = "PLANT";
    return p;
}

Generator spec_full() {
    Generator s = meet(selfloop(b1(), {1, 4, 5, 6}), selfloop(b2(), {1, 2, 3, 6, 8}));
    s.name = "SPEC";
    return s;
}

std::vector<AgentSpec> agents() {
    Alphabet global = plant().alphabet;
    return {make_agent("M1", {1, 2}, global), make_agent("M2", {3, 4}, global),
            make_agent("TU", {5, 6, 8}, global)};
}

}  // namespace des::transfer_line
