#include <algorithm>

#include "doctest.h"
#include "ogp/lang.hpp"
#include "ogp/safety.hpp"
#include "support/corpus.hpp"
#include "support/suites.hpp"

using namespace ogp;
using ogptest::corpus;

namespace {

Expr pred(const Program& p, const char* text) { return parse_predicate(text, p); }

bool equivalent(const Program& p, const Expr& a, const Expr& b) { return valid(ex::iff(a, b), p.vars).valid; }

std::string replace(std::string s, const std::string& from, const std::string& to) {
    s.replace(s.find(from), from.size(), to);
    return s;
}

const Obligation* find_gc(const std::vector<Obligation>& obs, const std::string& at, const std::string& by, bool invalid) {
    for (const Obligation& o : obs)
        if (o.kind == ObligationKind::GC && o.sites == std::vector<std::string>{at, by} &&
            (o.verdict == Verdict::Invalid) == invalid)
            return &o;
    return nullptr;
}

}  // namespace

TEST_SUITE("safety") {

TEST_CASE("action preconditions") {
    const Program r2 = corpus("init_refinement2.ogp");
    const auto r2acts = extract_actions(r2);
    CHECK(implies(action_precondition(r2, find_action(r2acts, "Y.2")), pred(r2, "pc.Y == 2 && x ==> pc.X != 1"), r2.vars).valid);

    const Program p2 = corpus("double_increment.ogp");
    const auto p2acts = extract_actions(p2);
    CHECK(equivalent(p2, action_precondition(p2, find_action(p2acts, "X.0")), pred(p2, "pc.X == 0")));

    const Program p3 = corpus("double_increment_pc.ogp");
    const auto p3acts = extract_actions(p3);
    CHECK(equivalent(p3, action_precondition(p3, find_action(p3acts, "X.0")),
                     pred(p3, "pc.X == 0 && ((x == 0 && pc.Y == 0) || (x == 1 && pc.Y == 1))")));
}

TEST_CASE("local correctness") {
    CHECK(all_valid(check_local(corpus("add_one_two_lc.ogp"))));
    CHECK(all_valid(check_local(corpus("double_increment_pc.ogp"))));

    const std::string text = ogp::load(ogptest::corpus_path("add_one_two_lc.ogp")).text;
    const Program wrong = parse(replace(text, "{x == 1}", "{x == 2}")).program;
    const auto obs = check_local(wrong);
    const auto bad = std::find_if(obs.begin(), obs.end(), [](const Obligation& o) { return o.verdict == Verdict::Invalid; });
    REQUIRE(bad != obs.end());
    CHECK(bad->sites == std::vector<std::string>{"X.1", "X.2"});
    REQUIRE(bad->counterexample);
    CHECK(wrong.vars.render(*bad->counterexample, bad->relevant).find("x=0") != std::string::npos);
}

TEST_CASE("global correctness") {
    CHECK(all_valid(check_global(corpus("double_increment_pc.ogp"))));
    CHECK(all_valid(check_global(corpus("add_one_two.ogp"))));
    CHECK_FALSE(all_valid(check_global(corpus("add_one_two_lc.ogp"))));

    const Program alt = corpus("init_failed_alternative.ogp");
    const auto obs = check_global(alt);
    const Obligation* o = find_gc(obs, "Y.5", "X.6", true);
    REQUIRE(o);
    REQUIRE(o->counterexample);
    CHECK(alt.vars.render(*o->counterexample, o->relevant).find("pc.X=X.6") != std::string::npos);

    const Program trivial = parse("program T\nvar x : bool\npre true\ncomponent X\n {true} x := true\n {true}\nend\n"
                                  "component Y\n {true} x := false\nend\n")
                                .program;
    CHECK(all_valid(check_global(trivial)));
    CHECK(check_global(trivial).size() == 3);
}

TEST_CASE("invariants") {
    Program r2 = corpus("init_refinement2.ogp");
    CHECK(all_valid(check_invariant(r2, pred(r2, "pc.Y == 5 ==> y && pc.X != 1"))));
    CHECK(all_valid(check_invariant(r2, ex::truth())));
    r2.invariants.clear();
    CHECK(all_valid(check_invariant(r2, pred(r2, "pc.Y == 5 ==> y && pc.X != 1"))));
    const auto weak = check_invariant(r2, pred(r2, "pc.Y == 5 ==> y"));
    const auto bad = std::find_if(weak.begin(), weak.end(), [](const Obligation& o) { return o.verdict == Verdict::Invalid; });
    REQUIRE(bad != weak.end());
    CHECK(bad->sites == std::vector<std::string>{"X.1"});
}

TEST_CASE("postconditions") {
    const Program p3 = corpus("double_increment_pc.ogp");
    CHECK(check_postcondition(p3, pred(p3, "x == 2")).verdict == Verdict::Valid);
    const Program p1 = corpus("add_one_two.ogp");
    CHECK(check_postcondition(p1, pred(p1, "x == 3")).verdict == Verdict::Valid);
    const Obligation f = check_postcondition(p3, ex::falsity());
    CHECK(f.verdict == Verdict::Invalid);
    CHECK(f.counterexample);
    const Program p2 = corpus("double_increment.ogp");
    CHECK(check_postcondition(p2, pred(p2, "x == 2")).verdict == Verdict::Pending);
}

TEST_CASE("staging") {
    const std::string text = ogp::load(ogptest::corpus_path("add_one_two_lc.ogp")).text + "property Post : postcondition x == 3\n";
    const SafetyReport r = check_safety(parse(text).program);
    CHECK_FALSE(r.annotation_ok);
    const auto post = std::find_if(r.obligations.begin(), r.obligations.end(),
                                   [](const Obligation& o) { return o.property == "Post"; });
    REQUIRE(post != r.obligations.end());
    CHECK(post->verdict == Verdict::Pending);

    const SafetyReport ok = check_safety(corpus("add_one_two.ogp"));
    CHECK(ok.annotation_ok);
    CHECK(ok.ok());
}

TEST_CASE("ids are stable") {
    const auto a = check_safety(corpus("init_refinement2.ogp")).obligations;
    const auto b = check_safety(corpus("init_refinement2.ogp")).obligations;
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].id == b[i].id);
    CHECK(a.front().id == "LC.1");
}

TEST_CASE("soundness against the oracle") {
    const ogptest::SuiteResult c = ogptest::checker_soundness_corpus();
    CHECK_MESSAGE(c.ok(), c.summary());
    const ogptest::SuiteResult r = ogptest::checker_soundness_random(21, 120);
    CHECK_MESSAGE(r.ok(), r.summary());
    CHECK(r.tally.at("annotation") > 0);
    CHECK(r.tally.at("postcondition") > 0);
}

}  // TEST_SUITE
