#include <algorithm>
#include <set>

#include "doctest.h"
#include "ogp/lang.hpp"
#include "support/corpus.hpp"

using namespace ogp;
using ogptest::corpus;

namespace {

Program program_of(const std::string& body, const std::string& decls = "var x, y : bool\n") {
    return parse("program T\n" + decls + "pre true\n" + body).program;
}

std::vector<std::string> sites(const Program& p, int component) {
    std::vector<std::string> out;
    for (const AtomicAction& a : extract_actions(p))
        if (a.component == component) out.push_back(a.label);
    return out;
}

bool has_code(const std::vector<Diagnostic>& ds, const std::string& code) {
    return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.code == code; });
}

}  // namespace

TEST_SUITE("lang") {

TEST_CASE("labelling") {
    SUBCASE("assignment then guarded skip") {
        const Program p = program_of("component X\n y := false;\n atomic if y -> skip fi end\nend\n");
        const Component& x = p.components[0];
        CHECK(x.labels == std::vector<std::string>{"1", "2", "3"});
        CHECK(x.initial == "1");
        CHECK(x.final == "3");
    }
    SUBCASE("single skip") {
        const Component& x = program_of("component X\n skip\nend\n").components[0];
        CHECK(x.initial != x.final);
        CHECK(x.labels.size() == 2);
    }
    SUBCASE("loop body ends at the loop head") {
        const Program p = program_of("component X\n do x -> x := false; y := true od\nend\n");
        const Stmt& loop = p.components[0].body.kids[0];
        REQUIRE(loop.kind == StmtKind::Do);
        CHECK(loop.kids[0].fin == loop.init);
        CHECK(loop.fin == p.components[0].final);
    }
    SUBCASE("branches share the final label") {
        const Program p = program_of("component X\n if x -> skip [] y -> x := true fi;\n skip\nend\n");
        const Stmt& iff = p.components[0].body.kids[0];
        CHECK(iff.kids[0].fin == iff.fin);
        CHECK(iff.kids[1].fin == iff.fin);
        CHECK(iff.fin == p.components[0].body.kids[1].init);
    }
    SUBCASE("explicit labels reserve their spelling") {
        const Program p = program_of("component X\n skip;\n 1: skip\nend\n");
        const auto& ls = p.components[0].labels;
        CHECK(std::set<std::string>(ls.begin(), ls.end()).size() == ls.size());
        CHECK(p.components[0].body.kids[1].init == "1");
    }
    SUBCASE("duplicate explicit label") {
        CHECK_THROWS_AS(program_of("component X\n 1: skip;\n 1: skip\nend\n"), LabelError);
    }
    SUBCASE("labels are unique on the corpus") {
        for (const char* name : ogptest::kCorpus) {
            const Program p = corpus(name);
            for (const Component& c : p.components) {
                CHECK(std::set<std::string>(c.labels.begin(), c.labels.end()).size() == c.labels.size());
                CHECK(c.labels.back() == c.final);
            }
        }
    }
}

TEST_CASE("instrumentation") {
    const Program p2 = corpus("double_increment.ogp");
    const std::string text = print(p2, {.counters = true});
    CHECK(text.find("x := x + 1 || pc.X := X.1") != std::string::npos);
    CHECK(text.find("x := x + 1 || pc.Y := Y.1") != std::string::npos);

    const Program once = instrument_counters(p2);
    const Program twice = instrument_counters(once);
    CHECK(same_ast(once, twice));
    CHECK(print(once, {.counters = true}) == print(twice, {.counters = true}));

    const Program loop = program_of("component X\n do x -> skip od\nend\n");
    const std::string lt = print(loop, {.counters = true});
    CHECK(lt.find("x -> pc.X := X.2") != std::string::npos);
    CHECK(lt.find("-> pc.X := X.3>") != std::string::npos);
}

TEST_CASE("action extraction") {
    const Program r2 = corpus("init_refinement2.ogp");
    CHECK(sites(r2, 0) == std::vector<std::string>{"1", "4", "2", "3"});
    CHECK(sites(r2, 1) == std::vector<std::string>{"1", "4", "2", "3"});

    const Program p1 = corpus("add_one_two.ogp");
    CHECK(extract_actions(p1).size() == 2);

    const Program empty = program_of("component X\nend\n");
    CHECK(extract_actions(empty).empty());

    const Program loop = program_of("component X\n do x -> skip [] y -> x := true od\nend\n");
    const std::vector<AtomicAction> actions = extract_actions(loop);
    const AtomicAction& head = find_action(actions, "X.1");
    CHECK(head.kind == ActionKind::DoEval);
    CHECK(head.branches.size() == 2);
    REQUIRE(head.exit);
    CHECK(head.exit->target == loop.components[0].final);
    CHECK_THROWS_AS(find_action(actions, "X.9"), ContractError);
}

TEST_CASE("well-formedness") {
    SUBCASE("local variable written by another component") {
        const Program p = program_of("component X\n t := true\nend\ncomponent Y\n t := false\nend\n",
                                     "var t : bool local X\n");
        CHECK(has_code(validate_wellformed(p), "scope"));
    }
    SUBCASE("repeated assignment target") {
        const Program p = program_of("component X\n x, x := true, false\nend\n");
        CHECK(has_code(validate_wellformed(p), "distinct"));
    }
    SUBCASE("auxiliary variable in a guard") {
        const Program p = program_of("component X\n if h -> skip fi\nend\n", "var h : bool aux\n");
        CHECK(has_code(validate_wellformed(p), "aux"));
    }
    SUBCASE("corpus is well formed") {
        for (const char* name : ogptest::kCorpus) CHECK_MESSAGE(validate_wellformed(corpus(name)).empty(), name);
    }
}

}  // TEST_SUITE
