#include <sstream>

#include "doctest.h"
#include "ogp/frontend.hpp"
#include "ogp/progress.hpp"
#include "ogp/report.hpp"
#include "support/corpus.hpp"

using namespace ogp;
using ogptest::corpus;

namespace {

// "x=false, pc.X=X.2" back to a valuation; unnamed slots at their lower bound.
Valuation read_valuation(const VarTable& vars, const std::string& text) {
    Valuation v(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) v[i] = vars[i].lo;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(' ');
        item = item.substr(b);
        const auto eq = item.find('=');
        const int slot = vars.find(item.substr(0, eq));
        REQUIRE(slot >= 0);
        const std::string value = item.substr(eq + 1);
        bool found = false;
        for (Value x = vars[static_cast<std::size_t>(slot)].lo; x <= vars[static_cast<std::size_t>(slot)].hi; ++x)
            if (vars.render(slot, x) == value) {
                v[static_cast<std::size_t>(slot)] = x;
                found = true;
            }
        REQUIRE(found);
    }
    return v;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("machine records decide again to the same verdict") {
    for (const char* name : ogptest::kCorpus) {
        CAPTURE(name);
        const Program p = corpus(name);
        const CheckReport report = check_program(p);
        const auto records = parse_records(render_obligations(p, report.obligations, Format::Machine));
        REQUIRE(records.size() == report.obligations.size());
        for (std::size_t i = 0; i < records.size(); ++i) {
            const Record& r = records[i];
            const Obligation& o = report.obligations[i];
            CAPTURE(r.at("id"));
            CHECK(r.at("id") == o.id);
            CHECK(r.at("kind") == to_string(o.kind));
            CHECK(r.at("verdict") == to_string(o.verdict));
            const Expr f = parse_predicate(r.at("formula"), p);
            if (o.verdict == Verdict::Pending) continue;
            const ValidityResult again = valid(f, p.vars);
            CHECK(again.valid == (o.verdict == Verdict::Valid));
            if (o.verdict == Verdict::Invalid) {
                REQUIRE(r.count("counterexample"));
                CHECK_FALSE(holds(f, read_valuation(p.vars, r.at("counterexample"))));
            }
        }
    }
}

TEST_CASE("ids are stable") {
    const Program p = corpus("init_refinement2.ogp");
    const CheckReport a = check_program(p), b = check_program(corpus("init_refinement2.ogp"));
    REQUIRE(a.obligations.size() == b.obligations.size());
    for (std::size_t i = 0; i < a.obligations.size(); ++i) CHECK(a.obligations[i].id == b.obligations[i].id);
    CHECK(a.obligations.front().id == "LC.1");
}

TEST_CASE("human form") {
    const Program p = corpus("init_simplified.ogp");
    const CheckReport r = check_program(p);
    const std::string text = render_obligations(p, r.obligations, Format::Human);
    std::size_t valid_count = 0;
    for (const Obligation& o : r.obligations) valid_count += o.verdict == Verdict::Valid;
    CHECK(text.find(std::to_string(valid_count) + "/" + std::to_string(r.obligations.size()) + " obligations valid") !=
          std::string::npos);
    CHECK(text.find("property P1") != std::string::npos);
    CHECK(text.find("counterexample: ") != std::string::npos);
}

TEST_CASE("oracle records") {
    const Program p = corpus("init_simplified.ogp");
    const TransitionSystem ts = build_state_space(p);
    const auto verdicts = oracle_properties(ts, p);
    const auto records = parse_records(render_oracle(ts, verdicts, oracle_assertions(ts, p), Format::Machine));
    REQUIRE(records.size() == verdicts.size() + 1);
    CHECK(records[0].at("states") == std::to_string(ts.size()));
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        CHECK(records[i + 1].at("property") == verdicts[i].property->name);
        CHECK(records[i + 1].at("holds") == (verdicts[i].result.holds ? "true" : "false"));
        if (!verdicts[i].result.holds) CHECK(records[i + 1].count("trace"));
    }
    CHECK(oracle_properties(ts, p, "NoDeadlock").size() == 1);
    CHECK_THROWS_AS(oracle_properties(ts, p, "Nope"), ContractError);
}

}  // TEST_SUITE
