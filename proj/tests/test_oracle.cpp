#include <algorithm>

#include "doctest.h"
#include "ogp/frontend.hpp"
#include "ogp/oracle.hpp"
#include "support/corpus.hpp"
#include "support/gen.hpp"
#include "support/suites.hpp"

using namespace ogp;
using ogptest::corpus;

namespace {

Expr pred(const Program& p, const char* text) { return parse_predicate(text, p); }

Program text(const char* src) { return parse(src).program; }

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("state spaces") {
    const Program p3 = corpus("double_increment_pc.ogp");
    const TransitionSystem ts = build_state_space(p3);
    CHECK(ts.size() == 4);
    CHECK(ts.transition_count() == 4);
    int terminals = 0;
    for (int s = 0; s < static_cast<int>(ts.size()); ++s)
        if (ts.terminal(s)) {
            ++terminals;
            CHECK(ts.render(s) == "x=2, pc.X=X.1, pc.Y=Y.1");
        }
    CHECK(terminals == 1);

    const Program one = text("program One\nvar b : bool\npre !b\ncomponent X\n skip\nend\n");
    const TransitionSystem t1 = build_state_space(one);
    CHECK(t1.size() == 2);
    CHECK(t1.transition_count() == 1);
    CHECK(t1.initial.size() == 1);
    CHECK(t1.terminal(1));

    const Program free = text("program Free\nvar b : bool\npre true\ncomponent X\n skip\nend\n");
    CHECK(build_state_space(free).initial.size() == 2);
}

TEST_CASE("builds are deterministic") {
    for (const char* name : ogptest::kCorpus) {
        CAPTURE(name);
        const Program p = corpus(name);
        const TransitionSystem a = build_state_space(p), b = build_state_space(p);
        REQUIRE(a.size() == b.size());
        CHECK(a.states == b.states);
        CHECK(a.initial == b.initial);
        for (std::size_t s = 0; s < a.size(); ++s) {
            REQUIRE(a.out[s].size() == b.out[s].size());
            for (std::size_t k = 0; k < a.out[s].size(); ++k) CHECK(a.out[s][k].target == b.out[s][k].target);
        }
    }
}

TEST_CASE("the cap") {
    const TransitionSystem full = build_state_space(corpus("init_refinement2.ogp"));
    Limits tight;
    tight.max_states = full.size() - 1;
    CHECK_THROWS_AS(build_state_space(corpus("init_refinement2.ogp"), tight), ResourceError);
    tight.max_states = full.size();
    CHECK(build_state_space(corpus("init_refinement2.ogp"), tight).size() == full.size());
}

TEST_CASE("deadlock") {
    const Program s = corpus("init_simplified.ogp");
    const TransitionSystem ts = build_state_space(s);
    const OracleResult r = oracle_deadlock_free(ts);
    CHECK_FALSE(r.holds);
    REQUIRE(r.witness);
    CHECK(r.witness->kind == "deadlock");
    const int last = r.witness->stem.back().state;
    CHECK_FALSE(ts.terminal(last));
    for (int c = 0; c < static_cast<int>(ts.components.size()); ++c) CHECK_FALSE(ts.enabled(last, c));
    CHECK(r.witness->stem.front().component == -1);

    CHECK(oracle_deadlock_free(build_state_space(corpus("init_refinement2.ogp"))).holds);
    const OracleResult lt = oracle_leadsto(ts, pred(s, "pc.X == 2"), pred(s, "pc.X == 3"));
    CHECK_FALSE(lt.holds);
    REQUIRE(lt.witness);
    CHECK(lt.witness->kind == "deadlock");
}

TEST_CASE("unless and invariants") {
    const Program r = corpus("init_y_resets.ogp");
    const TransitionSystem ts = build_state_space(r);
    const OracleResult un = oracle_unless(ts, pred(r, "pc.X == 2 && y"), pred(r, "pc.X == 3"));
    CHECK_FALSE(un.holds);
    REQUIRE(un.witness);
    CHECK(un.witness->kind == "transition");
    CHECK(un.witness->stem.back().action == "Y.3");

    const Program r2 = corpus("init_refinement2.ogp");
    const TransitionSystem t2 = build_state_space(r2);
    CHECK(oracle_unless(t2, pred(r2, "pc.X == 2 && y"), pred(r2, "pc.X == 3")).holds);
    CHECK(oracle_unless(t2, ex::truth(), pred(r2, "x")).holds);
    for (const Expr& inv : r2.invariants) CHECK(oracle_invariant(t2, inv).holds);
    const OracleResult bad = oracle_invariant(t2, pred(r2, "pc.X == 1"));
    CHECK_FALSE(bad.holds);
    CHECK(bad.witness->kind == "state");
}

TEST_CASE("leads-to under weak fairness") {
    const Program r2 = corpus("init_refinement2.ogp");
    const TransitionSystem ts = build_state_space(r2);
    CHECK(oracle_leadsto(ts, pred(r2, "pc.X == 2"), pred(r2, "pc.X == 3")).holds);
    CHECK(oracle_leadsto(ts, pred(r2, "pc.Y == 2"), pred(r2, "pc.Y == 3")).holds);
    CHECK(oracle_leadsto(ts, ex::truth(), ex::truth()).holds);
    CHECK_FALSE(oracle_leadsto(ts, ex::truth(), ex::falsity()).holds);

    // the waiter spins until the other component sets the flag: fair only
    const Program bw = corpus("loop_busywait.ogp");
    const TransitionSystem tb = build_state_space(bw);
    CHECK(oracle_leadsto(tb, pred(bw, "pc.X == 1"), pred(bw, "pc.X == 3")).holds);

    // a spin that is never released: the fair cycle is the witness
    const Program spin = text("program Spin\nvar f : bool\npre !f\n"
                              "component X\n do !f -> skip od\nend\ncomponent Y\n skip\nend\n");
    const TransitionSystem ts2 = build_state_space(spin);
    const OracleResult r = oracle_leadsto(ts2, pred(spin, "pc.X == 1"), pred(spin, "pc.X == 3"));
    CHECK_FALSE(r.holds);
    REQUIRE(r.witness);
    CHECK(r.witness->kind == "fair cycle");
    CHECK_FALSE(r.witness->cycle.empty());
    CHECK(cycle_is_fair(ts2, *r.witness));
    CHECK(oracle_deadlock_free(ts2).holds);  // spinning is not a deadlock
}

TEST_CASE("assertions and postconditions") {
    const Program p3 = corpus("double_increment_pc.ogp");
    const TransitionSystem ts = build_state_space(p3);
    CHECK(oracle_assertions(ts, p3).empty());
    CHECK(oracle_postcondition(ts, pred(p3, "x == 2")).holds);
    const OracleResult bad = oracle_postcondition(ts, pred(p3, "x == 1"));
    CHECK_FALSE(bad.holds);
    CHECK(bad.witness->kind == "terminal");

    const Program fa = corpus("init_failed_alternative.ogp");
    const auto v = oracle_assertions(build_state_space(fa), fa);
    CHECK(std::any_of(v.begin(), v.end(), [](const AssertionViolation& a) { return a.site == "Y.5"; }));
}

TEST_CASE("the pc projection and control states") {
    for (const char* name : ogptest::kCorpus) {
        CAPTURE(name);
        const Program p = corpus(name);
        const TransitionSystem ts = build_state_space(p);
        CHECK(check_pc_projection(ts, p) == "");
        CHECK(control_state_violations(ts, p).empty());
    }
    const ogptest::SuiteResult r = ogptest::control_state_suite(23, 60);
    CHECK_MESSAGE(r.ok(), r.first_failure);
}

}  // TEST_SUITE
