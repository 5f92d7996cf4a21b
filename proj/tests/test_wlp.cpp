#include "doctest.h"
#include "ogp/lang.hpp"
#include "ogp/wlp.hpp"
#include "support/corpus.hpp"
#include "support/suites.hpp"

using namespace ogp;
using ogptest::corpus;

namespace {

Program program_of(const std::string& body, const std::string& decls = "var x : int 0..2\nvar y : bool\n") {
    return parse("program T\n" + decls + "pre true\n" + body).program;
}

bool equivalent(const Program& p, const Expr& a, const Expr& b) { return valid(ex::iff(a, b), p.vars).valid; }

Expr pred(const Program& p, const char* text) { return parse_predicate(text, p); }

}  // namespace

TEST_SUITE("wlp") {

TEST_CASE("labelled statements") {
    SUBCASE("skip moves the counter") {
        const Program p = program_of("component X\n skip\nend\n");
        CHECK(valid(wlp(p, 0, p.components[0].body.kids[0], pred(p, "pc.X == 2")), p.vars).valid);
        CHECK_FALSE(valid(wlp(p, 0, p.components[0].body.kids[0], pred(p, "pc.X == 1")), p.vars).valid);
    }
    SUBCASE("an increment in the pc-annotated double increment") {
        const Program p = corpus("double_increment_pc.ogp");
        const auto acts = extract_actions(p);
        const Expr post = pred(p, "((x == 1 && pc.Y == 0) || (x == 2 && pc.Y == 1)) && pc.X == 1");
        CHECK(equivalent(p, wlp(p, find_action(acts, "Y.0"), post), pred(p, "x == 1 && pc.X == 1")));
    }
    SUBCASE("guarded skip") {
        const Program p = corpus("init_simplified.ogp");
        const auto acts = extract_actions(p);
        const Expr q = pred(p, "pc.X == 3 && !x");
        const Expr expected = pred(p, "y ==> X.3 == X.3 && !x");
        CHECK(equivalent(p, wlp(p, find_action(acts, "X.2"), q), expected));
    }
    SUBCASE("if moves to the branch, then on") {
        const Program p = program_of("component X\n if y -> x := 1 [] !y -> skip fi\nend\n");
        const Stmt& s = p.components[0].body.kids[0];
        CHECK(equivalent(p, wlp(p, 0, s, pred(p, "pc.X == 4")), ex::truth()));
        CHECK(equivalent(p, wlp(p, 0, s, pred(p, "x == 1")), pred(p, "!y ==> x == 1")));
    }
    SUBCASE("loops are refused") {
        const Program p = program_of("component X\n do y -> skip od\nend\n");
        CHECK_THROWS_AS(wlp(p, 0, p.components[0].body, ex::truth()), ContractError);
    }
}

TEST_CASE("wp of atomic bodies") {
    const Program p = program_of(
        "component X\n atomic if y -> skip fi end;\n atomic skip end;\n atomic x := 1; if x == 1 -> skip fi end\nend\n");
    const auto& kids = p.components[0].body.kids;
    const Expr q = pred(p, "x == 2 || y");
    CHECK(equivalent(p, wp_atomic(kids[0].kids[0], q), ex::land(pred(p, "y"), q)));
    CHECK(equivalent(p, wp_atomic(kids[1].kids[0], q), q));
    CHECK(equivalent(p, wp_atomic(kids[2].kids[0], q), pred(p, "1 == 2 || y")));
    // wlp of the guarded skip holds where the guard is false; wp does not
    CHECK(equivalent(p, wlp_body(kids[0].kids[0], ex::falsity()), pred(p, "!y")));
    CHECK(equivalent(p, wp_atomic(kids[0].kids[0], ex::falsity()), ex::falsity()));
}

TEST_CASE("loop invariant rule") {
    SUBCASE("trivial") {
        const Program p = program_of("component X\n do y -> skip od\nend\n");
        for (const DoObligation& o : check_do(p, 0, p.components[0].body.kids[0], ex::truth(), ex::truth()))
            CHECK(o.result.valid);
    }
    const Program p = program_of("component X\n do x < 2 -> x := x + 1 od\nend\n");
    const Stmt& loop = p.components[0].body.kids[0];
    SUBCASE("counting up") {
        const auto obs = check_do(p, 0, loop, pred(p, "0 <= x && x <= 2"), pred(p, "x == 2"));
        REQUIRE(obs.size() == 2);
        CHECK(obs[0].what == "branch 1");
        CHECK(obs[1].what == "exit");
        for (const DoObligation& o : obs) CHECK(o.result.valid);
    }
    SUBCASE("too strong an invariant") {
        const auto obs = check_do(p, 0, loop, pred(p, "x == 0"), pred(p, "x == 2"));
        CHECK_FALSE(obs[0].result.valid);
        REQUIRE(obs[0].result.counterexample);
        CHECK((*obs[0].result.counterexample)[static_cast<std::size_t>(p.vars.find("x"))] == 0);
    }
}

TEST_CASE("hoare triples") {
    const Program p = corpus("add_one_two_lc.ogp");
    const Stmt& inc = p.components[0].body.kids[0];
    CHECK(hoare_holds(p, 0, pred(p, "x == 0"), inc, pred(p, "x == 1")).valid);
    CHECK(hoare_holds(p, 0, ex::falsity(), inc, ex::falsity()).valid);

    // {P} i: skip j: {P} fails once P mentions the counter
    const Program s = program_of("component X\n skip\nend\n");
    const ValidityResult r = hoare_holds(s, 0, pred(s, "pc.X == 1"), s.components[0].body.kids[0], pred(s, "pc.X == 1"));
    CHECK_FALSE(r.valid);
    CHECK(r.counterexample);
}

TEST_CASE("random statements") {
    const ogptest::SuiteResult r = ogptest::wlp_suite(5, 150);
    CHECK_MESSAGE(r.ok(), r.summary());
}

}  // TEST_SUITE
