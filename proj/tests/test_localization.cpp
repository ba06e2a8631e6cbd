#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <deque>
#include <random>

#include "des/errors.hpp"
#include "des/localization.hpp"
#include "des/oracle.hpp"
#include "des/transfer_line.hpp"
#include "support/testutil.hpp"

using namespace des;
namespace tl = des::transfer_line;
namespace tu = des::testutil;

namespace {

struct Fixture {
    Generator plant = tl::plant();
    Generator sup = supcon(plant, tl::spec_full());
    ControlData cd = control_data(plant, sup);
    std::vector<AgentSpec> agents = tl::agents();

    const AgentSpec& agent(const std::string& name) const {
        for (const AgentSpec& a : agents)
            if (a.name == name) return a;
        throw std::logic_error("no agent " + name);
    }
};

// A single local controller must never block supervised behavior on its own:
// meeting the supervisor with it changes nothing. (Which events it may block
// is covered jointly by the control-equivalence check; individually it can at
// most repeat disablements some controller is responsible for.)
bool never_blocks_supervised(const Generator& loc, const Generator& sup,
                             const Alphabet& full) {
    return lang_equal(meet(sup, lift(loc, full)), sup);
}

}  // namespace

TEST_CASE("make_agent and disabled_k fixture values") {
    Fixture f;
    CHECK(f.agent("M1").controllable_events == std::set<EventId>{1});
    CHECK(f.agent("M2").controllable_events == std::set<EventId>{3});
    CHECK(f.agent("TU").controllable_events == std::set<EventId>{5});

    CHECK(disabled_k(f.cd, 11, f.agent("M2")) == std::set<EventId>{3});
    CHECK(disabled_k(f.cd, 19, f.agent("M2")) == std::set<EventId>{3});
    CHECK(disabled_k(f.cd, 0, f.agent("TU")) == std::set<EventId>{5});
    CHECK(disabled_k(f.cd, 1, f.agent("M1")) == std::set<EventId>{});

    AgentSpec no_control = make_agent("N", {2, 4}, f.plant.alphabet);
    for (State x = 0; x < f.cd.sup_state_count; ++x)
        CHECK(disabled_k(f.cd, x, no_control).empty());
}

TEST_CASE("control_consistent_k: fixture pairs in R^k, reflexive") {
    Fixture f;
    CHECK(control_consistent_k(f.cd, 1, 2, f.agent("M1")));
    CHECK(control_consistent_k(f.cd, 11, 19, f.agent("M2")));
    CHECK(control_consistent_k(f.cd, 0, 3, f.agent("TU")));
    for (State x = 0; x < f.cd.sup_state_count; ++x)
        for (const AgentSpec& a : f.agents) CHECK(control_consistent_k(f.cd, x, x, a));
}

TEST_CASE("is_ecc: known witness pairs hold, diagonal never does") {
    Fixture f;
    CHECK(is_ecc(f.plant, f.cd, 1, 2, f.agent("M1")));
    CHECK(is_ecc(f.plant, f.cd, 11, 19, f.agent("M2")));
    CHECK(is_ecc(f.plant, f.cd, 0, 3, f.agent("TU")));
    for (State x = 0; x < f.cd.sup_state_count; ++x)
        for (const AgentSpec& a : f.agents) CHECK_FALSE(is_ecc(f.plant, f.cd, x, x, a));
}

TEST_CASE("is_ecc implies R^k minus R on every fixture pair") {
    Fixture f;
    for (const AgentSpec& a : f.agents)
        for (State x = 0; x < f.cd.sup_state_count; ++x)
            for (State y = x + 1; y < f.cd.sup_state_count; ++y)
                if (is_ecc(f.plant, f.cd, x, y, a)) {
                    CHECK(control_consistent_k(f.cd, x, y, a));
                    CHECK_FALSE(control_consistent(f.cd, x, y));
                }
}

TEST_CASE("localize_agent: expected self-looped events, state criterion, authority") {
    Fixture f;
    std::map<std::string, EventId> named = {{"M1", 3}, {"M2", 1}, {"TU", 3}};
    for (const AgentSpec& a : f.agents) {
        LocalController lc = localize_agent(f.plant, f.sup, f.cd, a);
        CHECK(lc.ecc_used);
        REQUIRE(lc.ecc_witness.has_value());
        CHECK(lc.selflooped_everywhere.count(named[a.name]));
        CHECK(lc.generator.state_count() < 8);
        CHECK(lc.generator.state_count() <= f.sup.state_count());
        CHECK(never_blocks_supervised(lc.generator, f.sup, f.plant.alphabet));

        // every selflooped event really self-loops at every state
        for (EventId e : lc.selflooped_everywhere)
            for (State z = 0; z < lc.generator.state_count(); ++z)
                CHECK(lc.generator.target(z, e) == std::optional<State>{z});

        // stripped = project(generator, remaining events), same state count
        std::set<EventId> keep = lc.generator.alphabet.events;
        for (EventId e : lc.selflooped_everywhere) keep.erase(e);
        Generator proj = project(lc.generator, keep);
        CHECK(proj.state_count() == lc.generator.state_count());
        CHECK(same_structure(canonicalize(proj), canonicalize(lc.stripped)));

        // The witness pair's conflicting events are foreign controllable, and
        // at least one of them ends up self-looped everywhere
        auto [x, y] = *lc.ecc_witness;
        std::set<EventId> viol;
        for (EventId e : f.cd.enabled[x])
            if (f.cd.disabled[y].count(e)) viol.insert(e);
        for (EventId e : f.cd.enabled[y])
            if (f.cd.disabled[x].count(e)) viol.insert(e);
        CHECK_FALSE(viol.empty());
        bool some_selflooped = false;
        for (EventId e : viol) {
            CHECK(f.plant.alphabet.is_controllable(e));
            CHECK_FALSE(a.events.count(e));
            some_selflooped |= lc.selflooped_everywhere.count(e) != 0;
        }
        CHECK(some_selflooped);
    }
}

TEST_CASE("localize_all: partition validation errors") {
    Fixture f;
    std::vector<AgentSpec> missing = {f.agent("M1"), f.agent("M2")};
    CHECK_THROWS_AS(localize_all(f.plant, f.sup, missing), InputError);

    std::vector<AgentSpec> overlapping = f.agents;
    overlapping[0].events.insert(3);
    CHECK_THROWS_AS(localize_all(f.plant, f.sup, overlapping), InputError);
}

TEST_CASE("single agent owning all controllable events degenerates toward supreduce") {
    Fixture f;
    AgentSpec all = make_agent("ALL", f.plant.alphabet.events, f.plant.alphabet);
    LocalController lc = localize_agent(f.plant, f.sup, f.cd, all);
    // R^k = R here, so the controller is control equivalent on its own
    Generator joint = meet(f.plant, lift(lc.stripped, f.plant.alphabet));
    CHECK(lang_equal(joint, f.sup));
}

TEST_CASE("verify_control_equivalence: fixture passes; dropping a controller breaks it") {
    Fixture f;
    LocalControllerSet locs = localize_all(f.plant, f.sup, f.agents);
    EquivalenceReport rep = verify_control_equivalence(f.plant, f.sup, locs);
    CHECK(rep.closed_ok);
    CHECK(rep.marked_ok);
    CHECK_FALSE(rep.counterexample.has_value());
    CHECK(rep.event_reduction_ok);
    CHECK(rep.rsup_event_count == 5);
    for (const auto& [name, count] : rep.per_controller_event_counts)
        CHECK(count < rep.rsup_event_count);

    // stripping soundness: unstripped controllers give the identical verdict
    Generator joint = f.plant;
    for (const LocalController& lc : locs.controllers)
        joint = meet(joint, lift(lc.generator, f.plant.alphabet));
    CHECK(lang_equal(joint, f.sup));

    LocalControllerSet partial = locs;
    partial.controllers.pop_back();
    EquivalenceReport broken = verify_control_equivalence(f.plant, f.sup, partial);
    CHECK_FALSE((broken.closed_ok && broken.marked_ok));
    REQUIRE(broken.counterexample.has_value());
    // witness replays as genuine: joint accepts it, sup does not (or marked mismatch)
    Generator pj = f.plant;
    for (const LocalController& lc : partial.controllers)
        pj = meet(pj, lift(lc.stripped, f.plant.alphabet));
    const auto& w = broken.counterexample->events;
    bool closed_diff = pj.accepts_closed(w) != f.sup.accepts_closed(w);
    bool marked_diff = pj.accepts_marked(w) != f.sup.accepts_marked(w);
    CHECK((closed_diff || marked_diff));
}

TEST_CASE("sup as its own single controller verifies trivially") {
    Fixture f;
    LocalController lc;
    lc.agent = make_agent("ALL", f.plant.alphabet.events, f.plant.alphabet);
    lc.generator = f.sup;
    lc.stripped = f.sup;
    LocalControllerSet locs;
    locs.controllers.push_back(lc);
    EquivalenceReport rep = verify_control_equivalence(f.plant, f.sup, locs);
    CHECK(rep.closed_ok);
    CHECK(rep.marked_ok);
}

TEST_CASE("strip_selflooped: no self-loops, all self-loops, fixture controllers") {
    Generator m = Generator::make("m", 2, Alphabet::with_default_controllability({1, 2}));
    m.add_transition(0, 1, 1);
    m.add_transition(1, 2, 0);
    auto [none, unchanged] = strip_selflooped(m);
    CHECK(none.empty());
    CHECK(same_structure(unchanged, m));

    Generator one = Generator::make("one", 1, Alphabet::with_default_controllability({1, 2}));
    one.add_transition(0, 1, 0);
    one.add_transition(0, 2, 0);
    auto [both, bare] = strip_selflooped(one);
    CHECK(both == std::set<EventId>{1, 2});
    CHECK(bare.state_count() == 1);
    CHECK(bare.transition_count() == 0);

    Fixture f;
    LocalControllerSet locs = localize_all(f.plant, f.sup, f.agents);
    for (const LocalController& lc : locs.controllers) {
        auto [events, stripped] = strip_selflooped(lc.generator);
        CHECK(events == lc.selflooped_everywhere);
        CHECK(stripped.state_count() == lc.generator.state_count());
    }
}

TEST_CASE("event_reduction_report: fixture flags and per-agent rows") {
    Fixture f;
    LocalControllerSet locs = localize_all(f.plant, f.sup, f.agents);
    Generator rsup = supreduce(f.plant, f.sup);
    std::string rep = event_reduction_report(locs, rsup);
    CHECK(rep.find("localizable\tyes") != std::string::npos);
    CHECK(rep.find("event_reduction\tyes") != std::string::npos);
    CHECK(rep.find("M1\t") != std::string::npos);
    CHECK(rep.find("M2\t") != std::string::npos);
    CHECK(rep.find("TU\t") != std::string::npos);
}

TEST_CASE("random instances: localization control equivalent by decision and by oracle") {
    std::mt19937 rng(404);
    for (int i = 0; i < 30; ++i) {
        tu::RandomInstance inst = tu::random_instance(rng);
        Generator sup = supcon(inst.plant, inst.spec_lifted);
        if (sup.empty()) continue;
        LocalControllerSet locs = localize_all(inst.plant, sup, inst.agents);
        EquivalenceReport rep = verify_control_equivalence(inst.plant, sup, locs);
        CHECK(rep.closed_ok);
        CHECK(rep.marked_ok);
        Generator joint = inst.plant;
        for (const LocalController& lc : locs.controllers) {
            CHECK(lc.generator.state_count() <= sup.state_count());
            joint = meet(joint, lift(lc.stripped, inst.plant.alphabet));
        }
        OracleResult r = oracle_equal(joint, sup, 10);
        CHECK(r.equal);
    }
}
