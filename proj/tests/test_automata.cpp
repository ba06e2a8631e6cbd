#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "des/errors.hpp"
#include "des/ops.hpp"
#include "des/oracle.hpp"
#include "des/transfer_line.hpp"
#include "support/testutil.hpp"

using namespace des;
namespace tl = des::transfer_line;
namespace tu = des::testutil;

namespace {

Generator two_state_machine(EventId start, EventId finish) {
    Alphabet a = Alphabet::with_default_controllability({start, finish});
    Generator g = Generator::make("m", 2, a);
    g.add_transition(0, start, 1);
    g.add_transition(1, finish, 0);
    g.marked = {0};
    return g;
}

}  // namespace

TEST_CASE("alphabet: odd default controllability and merge conflicts") {
    Alphabet a = Alphabet::with_default_controllability({1, 2, 3, 8});
    CHECK(a.controllable == std::set<EventId>{1, 3});
    CHECK(a.uncontrollable() == std::set<EventId>{2, 8});

    Alphabet b;
    b.events = {2, 5};
    b.controllable = {2};  // conflicts with a
    CHECK_THROWS_AS(merge_alphabets(a, b), ConflictingControllabilityError);

    Alphabet c;
    c.events = {2, 9};
    c.controllable = {9};
    Alphabet m = merge_alphabets(a, c);
    CHECK(m.events == std::set<EventId>{1, 2, 3, 8, 9});
    CHECK(m.controllable == std::set<EventId>{1, 3, 9});
}

TEST_CASE("generator: determinism and validation") {
    Alphabet a = Alphabet::with_default_controllability({1, 2});
    Generator g = Generator::make("g", 2, a);
    g.add_transition(0, 1, 1);
    CHECK_THROWS_AS(g.add_transition(0, 1, 0), InputError);
    CHECK_THROWS_AS(g.add_transition(0, 7, 0), InputError);
    CHECK_THROWS_AS(g.add_transition(2, 1, 0), InputError);
    g.validate();

    Generator e = Generator::make_empty("e", a);
    CHECK(e.empty());
    e.validate();
    CHECK_FALSE(e.accepts_closed({}));
}

TEST_CASE("sync: disjoint alphabets shuffle") {
    Generator m1 = two_state_machine(1, 2);
    Generator m2 = two_state_machine(3, 4);
    Generator s = sync({m1, m2});
    CHECK(s.state_count() == 4);
    CHECK(s.transition_count() == 8);
    CHECK(s.alphabet.events == std::set<EventId>{1, 2, 3, 4});

    Generator s3 = sync({tl::m1(), tl::m2(), tl::tu()});
    CHECK(s3.state_count() == 8);
}

TEST_CASE("sync: idempotent on one argument, conflicting controllability rejected") {
    Generator m = two_state_machine(1, 2);
    CHECK(lang_equal(sync({m, m}), m));

    Generator odd = two_state_machine(1, 2);
    odd.alphabet.controllable = {1, 2};
    CHECK_THROWS_AS(sync({m, odd}), ConflictingControllabilityError);
}

TEST_CASE("sync: associative and commutative up to language equality") {
    std::mt19937 rng(7);
    for (int i = 0; i < 25; ++i) {
        Alphabet a1 = Alphabet::with_default_controllability({1, 2});
        Alphabet a2 = Alphabet::with_default_controllability({2, 3});
        Alphabet a3 = Alphabet::with_default_controllability({3, 4});
        Generator g1 = tu::random_generator(rng, 3, a1);
        Generator g2 = tu::random_generator(rng, 3, a2);
        Generator g3 = tu::random_generator(rng, 3, a3);
        CHECK(lang_equal(sync({g1, g2}), sync({g2, g1})));
        CHECK(lang_equal(sync({sync({g1, g2}), g3}), sync({g1, sync({g2, g3})})));
    }
}

TEST_CASE("meet: idempotence and empty absorption") {
    Generator m = two_state_machine(1, 2);
    CHECK(lang_equal(meet(m, m), m));
    Generator e = Generator::make_empty("e", m.alphabet);
    CHECK(meet(m, e).empty());
}

TEST_CASE("meet of plant with self-looped SUP-as-spec has the SUP language") {
    Generator plant = tl::plant();
    Generator sup = des::supcon(plant, tl::spec_full());
    Generator again = meet(plant, sup);
    OracleResult r = oracle_equal(again, sup, 12);
    CHECK(r.equal);
}

TEST_CASE("trim: fixpoint, unreachable removal, coreachability") {
    Alphabet a = Alphabet::with_default_controllability({1, 2});
    Generator g = Generator::make("g", 3, a);
    g.add_transition(0, 1, 1);
    g.marked = {0, 2};  // state 2 unreachable, state 1 blocking
    Generator t = trim(g);
    CHECK(t.state_count() == 1);
    CHECK(lang_equal(trim(t), t));

    Generator tm = trim(meet(tl::plant(), tl::spec_full()));
    CHECK(is_nonblocking(tm));
}

TEST_CASE("is_nonblocking: cycle true, deadlock false") {
    Generator m = two_state_machine(1, 2);
    CHECK(is_nonblocking(m));
    Alphabet a = Alphabet::with_default_controllability({1});
    Generator d = Generator::make("d", 2, a);
    d.add_transition(0, 1, 1);
    d.marked = {0};
    CHECK_FALSE(is_nonblocking(d));
}

TEST_CASE("selfloop: counts, no-op, collision error") {
    Generator m = two_state_machine(1, 2);
    CHECK(same_structure(selfloop(m, {}), m));

    Alphabet a;
    a.events = {};
    Generator one = Generator::make("one", 1, a);
    Generator looped = selfloop(one, {1, 2});
    CHECK(looped.state_count() == 1);
    CHECK(looped.transition_count() == 2);

    Generator b1 = tl::b1();
    Generator lifted = selfloop(b1, {1, 4, 5, 6});
    CHECK(lifted.state_count() == b1.state_count());
    CHECK(lifted.transition_count() == b1.transition_count() + 4 * b1.state_count());

    CHECK_THROWS_AS(selfloop(m, {1}), InputError);  // 1 labels a real transition
}

TEST_CASE("project: identity, self-loop erasure, M1 controller") {
    Generator m = two_state_machine(1, 2);
    CHECK(lang_equal(project(m, {1, 2}), m));

    Generator looped = selfloop(m, {9});
    Generator erased = project(looped, {1, 2});
    CHECK(erased.state_count() == m.state_count());
    CHECK(lang_equal(erased, m));

    Generator plant = tl::plant();
    Generator sup = des::supcon(plant, tl::spec_full());
    LocalControllerSet locs = localize_all(plant, sup, tl::agents());
    for (const LocalController& lc : locs.controllers) {
        std::set<EventId> keep = lc.generator.alphabet.events;
        for (EventId e : lc.selflooped_everywhere) keep.erase(e);
        Generator p = project(lc.generator, keep);
        CHECK(p.state_count() == lc.generator.state_count());
        CHECK(same_structure(canonicalize(p), canonicalize(lc.stripped)));
    }
}

TEST_CASE("project composition: project(project(g,A),B) = project(g,B) for B within A") {
    std::mt19937 rng(11);
    Alphabet a = Alphabet::with_default_controllability({1, 2, 3, 4});
    for (int i = 0; i < 30; ++i) {
        Generator g = tu::random_generator(rng, 4, a);
        Generator lhs = project(project(g, {1, 2, 3}), {1, 3});
        Generator rhs = project(g, {1, 3});
        CHECK(lang_equal(lhs, rhs));
    }
}

TEST_CASE("lang_compare: reflexive, marking mismatch at epsilon, witnesses replay") {
    Generator m = two_state_machine(1, 2);
    CHECK(lang_equal(m, m));

    Alphabet a = Alphabet::with_default_controllability({1});
    Generator g1 = Generator::make("a", 1, a);
    g1.marked = {0};
    Generator g2 = Generator::make("b", 1, a);
    LangCompareResult r = lang_compare(g1, g2);
    CHECK_FALSE(r.marked_equal);
    REQUIRE(r.counterexample.has_value());
    CHECK(r.counterexample->events.empty());

    // closed-language witness must be accepted by exactly one side
    Generator g3 = two_state_machine(1, 2);
    Generator g4 = two_state_machine(1, 2);
    g4.trans[1].erase(2);
    LangCompareResult r2 = lang_compare(g3, g4);
    CHECK_FALSE(r2.closed_equal);
    REQUIRE(r2.counterexample.has_value());
    CHECK(g3.accepts_closed(r2.counterexample->events) !=
          g4.accepts_closed(r2.counterexample->events));
}

TEST_CASE("canonicalize: idempotent, language preserving, permutation invariant") {
    std::mt19937 rng(13);
    Alphabet a = Alphabet::with_default_controllability({1, 2, 3});
    for (int i = 0; i < 30; ++i) {
        Generator g = tu::random_generator(rng, 5, a);
        Generator c = canonicalize(g);
        CHECK(lang_equal(c, g));
        CHECK(same_structure(canonicalize(c), c));

        // permute states and recanonicalize
        int n = g.state_count();
        std::vector<State> perm(n);
        for (int s = 0; s < n; ++s) perm[s] = s;
        std::shuffle(perm.begin(), perm.end(), rng);
        Generator h = Generator::make(g.name, n, g.alphabet, perm[g.initial]);
        for (State s = 0; s < n; ++s)
            for (const auto& [e, t] : g.out(s)) h.add_transition(perm[s], e, perm[t]);
        for (State s : g.marked) h.marked.insert(perm[s]);
        // compare reachable parts (identity projection drops unreachable states)
        Generator gr = project(g, a.events), hr = project(h, a.events);
        CHECK(same_structure(canonicalize(gr), canonicalize(hr)));
    }
}

TEST_CASE("lift: self-loops exactly the missing alphabet events") {
    Generator m = two_state_machine(1, 2);
    Alphabet target = Alphabet::with_default_controllability({1, 2, 3, 4});
    Generator l = lift(m, target);
    CHECK(l.alphabet.events == target.events);
    CHECK(l.transition_count() == m.transition_count() + 2 * m.state_count());
    CHECK(lang_equal(project(l, {1, 2}), m));
}

TEST_CASE("is_normal: trivially normal when everything is observable") {
    Generator plant = tl::plant();
    Generator k = trim(meet(plant, tl::spec_full()));
    CHECK(is_normal(plant, k, plant.alphabet.events));
}
