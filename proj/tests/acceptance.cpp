// Acceptance runner: one line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "ogp/oracle.hpp"
#include "ogp/progress.hpp"
#include "ogp/transform.hpp"
#include "ogp/wlp.hpp"
#include "support/corpus.hpp"
#include "support/suites.hpp"

using namespace ogp;
using ogptest::corpus;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && pass) {
            pass = false;
            detail = what;
        }
    }
};

bool kind_valid(const std::vector<Obligation>& obs, ObligationKind k) {
    return std::all_of(obs.begin(), obs.end(), [&](const Obligation& o) { return o.kind != k || o.verdict == Verdict::Valid; });
}

std::vector<Obligation> of_property(const std::vector<Obligation>& obs, const std::string& name) {
    std::vector<Obligation> out;
    for (const Obligation& o : obs)
        if (o.property == name) out.push_back(o);
    return out;
}

Outcome criterion1() {
    Outcome r;
    const Program lc = corpus("add_one_two_lc.ogp");
    const Program gc = corpus("add_one_two.ogp");
    r.require(all_valid(check_local(lc)), "LC annotation is not locally correct");
    r.require(!all_valid(check_global(lc)), "LC-only annotation unexpectedly globally correct");
    r.require(all_valid(check_local(gc)), "weakened annotation is not locally correct");
    r.require(all_valid(check_global(gc)), "weakened annotation is not globally correct");
    r.require(check_postcondition(gc, parse_predicate("x == 3", gc)).verdict == Verdict::Valid,
              "postcondition x == 3 not proved");
    r.detail = r.pass ? "LC valid, weakened GC valid, postcondition x == 3 valid" : r.detail;
    return r;
}

Outcome criterion2() {
    Outcome r;
    const Program p3 = corpus("double_increment_pc.ogp");
    const Program p2 = corpus("double_increment.ogp");
    const SafetyReport s = check_safety(p3);
    r.require(s.ok(), "the pc-annotated double increment safety obligations not all valid");
    r.require(!of_property(s.obligations, "Safety").empty(), "no postcondition obligation");
    const Expr x2 = parse_predicate("x == 2", p3);
    const TransitionSystem ts3 = build_state_space(p3);
    r.require(oracle_postcondition(ts3, x2).holds, "oracle: the pc-annotated double increment postcondition fails");
    const TransitionSystem ts2 = build_state_space(p2);
    r.require(oracle_postcondition(ts2, parse_predicate("x == 2", p2)).holds, "oracle: the double increment postcondition fails");
    const RawSystem raw = build_raw_state_space(p2);
    const int x = p2.vars.find("x");
    bool raw_ok = false;
    for (std::size_t i = 0; i < raw.data.size(); ++i)
        if (raw.terminal[i]) {
            raw_ok = true;
            r.require(raw.data[i][static_cast<std::size_t>(x)] == 2, "raw semantics: terminal state with x != 2");
        }
    r.require(raw_ok, "raw semantics: no terminal state");
    r.require(check_pc_projection(ts2, p2).empty() && check_pc_projection(ts3, p3).empty(),
              "instrumented and raw systems differ");
    if (r.pass) r.detail = "checker proves x == 2; oracle agrees on instrumented and raw forms";
    return r;
}

Outcome criterion3() {
    Outcome r;
    const Program p = corpus("init_refinement2.ogp");
    const CheckReport report = check_program(p);
    r.require(report.ok(), "checker does not accept refinement 2");
    for (const char* name : {"P1", "P2"}) {
        const ProgressResult pr = check_script(p, *p.proof(name));
        r.require(pr.ok, std::string("script ") + name + " fails");
        const Property& prop = *p.property(name);
        r.require(oracle_leadsto(build_state_space(p), prop.p, prop.q).holds, std::string("oracle rejects ") + name);
    }
    const ProgressResult p1 = check_script(p, *p.proof("P1"));
    for (const char* site : {"X.2", "Y.1", "Y.2", "Y.4"}) {
        const bool used = std::any_of(p1.obligations.begin(), p1.obligations.end(), [&](const Obligation& o) {
            return o.kind == ObligationKind::IMM && o.rule.find(std::string(" ") + site + " ") != std::string::npos;
        });
        r.require(used, std::string("no immediate step at ") + site);
    }
    r.require(std::any_of(p1.obligations.begin(), p1.obligations.end(),
                          [](const Obligation& o) { return o.kind == ObligationKind::UN; }),
              "no unless obligations");
    r.require(std::any_of(p1.obligations.begin(), p1.obligations.end(),
                          [](const Obligation& o) { return o.rule.rfind("implication", 0) == 0; }),
              "no implication leaf");
    if (r.pass)
        r.detail = "P1 and P2 scripts valid (" + std::to_string(report.obligations.size()) +
                   " obligations); oracle confirms both";
    return r;
}

Outcome criterion4() {
    Outcome r;
    const Program s = corpus("init_simplified.ogp");
    const ProgressResult pr = check_script(s, *s.proof("P1"));
    r.require(!pr.ok, "simplified protocol: script accepted");
    const bool enabledness = std::any_of(pr.obligations.begin(), pr.obligations.end(), [](const Obligation& o) {
        return o.verdict == Verdict::Invalid && o.rule.rfind("clause 2b: Y.2", 0) == 0;
    });
    r.require(enabledness, "simplified protocol: enabledness at Y.2 not the failing clause");
    const OracleResult o = oracle_leadsto(build_state_space(s), s.property("P1")->p, s.property("P1")->q);
    r.require(!o.holds && o.witness && o.witness->kind == "deadlock", "simplified protocol: no deadlock counterexample");

    const Program f = corpus("init_failed_alternative.ogp");
    const std::vector<AtomicAction> acts = extract_actions(f);
    const Expr lhs = wlp(f, find_action(acts, "X.6"), parse_predicate("pc.X != 1", f));
    bool found = false;
    for (const Obligation& g : check_global(f))
        if (g.sites == std::vector<std::string>{"Y.5", "X.6"} && structurally_equal(g.formula->kids[1], lhs)) {
            found = true;
            r.require(g.verdict == Verdict::Invalid, "failed alternative: GC of {pc.X != 1} at Y.5 holds");
        }
    r.require(found, "failed alternative: no GC obligation for {pc.X != 1} at Y.5 against X.6");
    const auto violations = oracle_assertions(build_state_space(f), f);
    r.require(std::any_of(violations.begin(), violations.end(), [](const AssertionViolation& v) { return v.site == "Y.5"; }),
              "failed alternative: oracle finds no violation at Y.5");
    if (r.pass) r.detail = "enabledness fails at Y.2 with a deadlock trace; GC of {pc.X != 1} at Y.5 fails against X.6";
    return r;
}

Outcome criterion5() {
    Outcome r;
    int good = 0;
    auto split = [](const char* file, const char* site, const char* hoist) {
        const Program p = corpus(file);
        SplitResult s = guard_conjunction_split(p, {site, parse_predicate(hoist, p), ""});
        HarnessReport h = progress_equivalence(p, s.program);
        return std::make_pair(std::move(s), std::move(h));
    };
    for (auto [file, site, hoist] : {std::tuple{"gcl_demo.ogp", "A.i", "b"}, std::tuple{"gcl_chain.ogp", "A.2", "g"},
                                     std::tuple{"gcl_demo.ogp", "A.i", "true"}}) {
        const auto [s, h] = split(file, site, hoist);
        r.require(s.ok(), std::string(file) + ": side condition fails");
        r.require(h.equivalent(), std::string(file) + ": verdicts diverge after splitting off " + hoist);
        const bool leadsto = std::any_of(h.lines.begin(), h.lines.end(),
                                         [](const HarnessLine& l) { return l.what.find("leadsto") != std::string::npos; });
        r.require(leadsto, std::string(file) + ": no pc-to-pc comparisons");
        if (s.ok() && h.equivalent()) ++good;
    }
    const auto [bad, harness] = split("gcl_sabotaged.ogp", "A.1", "b");
    r.require(!bad.ok(), "sabotaged: side condition holds");
    const auto div = harness.divergences();
    r.require(std::any_of(div.begin(), div.end(), [](const HarnessLine& l) { return l.what.find("leadsto") != std::string::npos; }),
              "sabotaged: no progress divergence");
    if (r.pass)
        r.detail = std::to_string(good) + " valid splits with identical verdicts; sabotaged split diverges (" +
                   std::to_string(div.size()) + " verdicts)";
    return r;
}

Outcome criterion6() {
    Outcome r;
    std::string counts;
    std::uint64_t seed = 600;
    for (ogptest::DerivedRule rule : ogptest::kDerivedRules) {
        const ogptest::SuiteResult s = ogptest::derived_rule_suite(rule, ++seed, 200);
        r.require(s.ok(), std::string(to_string(rule)) + ": " + s.summary());
        counts += std::string(counts.empty() ? "" : ", ") + to_string(rule) + " " + std::to_string(s.cases);
    }
    if (r.pass) r.detail = "no violations; confirmed premisses: " + counts;
    return r;
}

Outcome criterion7() {
    Outcome r;
    const ogptest::SuiteResult c = ogptest::checker_soundness_corpus();
    r.require(c.ok(), "corpus: " + c.summary());
    const ogptest::SuiteResult s = ogptest::checker_soundness_random(700, 500);
    r.require(s.ok(), "random: " + s.summary());
    r.require(s.attempts == 500, "random programs: " + std::to_string(s.attempts));
    std::string tally;
    for (const auto& [kind, n] : s.tally) tally += " " + kind + " " + std::to_string(n);
    if (r.pass)
        r.detail = "corpus: " + std::to_string(c.cases) + " discharged; 500 random programs:" + tally +
                   "; all oracle-true";
    return r;
}

Outcome criterion8() {
    Outcome r;
    const ogptest::SuiteResult s = ogptest::wlp_suite(800, 500);
    r.require(s.ok(), s.summary());
    if (r.pass) r.detail = std::to_string(s.cases) + " random Do-free statements, no violations";
    return r;
}

Outcome criterion9() {
    Outcome r;
    const ogptest::SuiteResult s = ogptest::control_state_suite(900, 0);
    r.require(s.ok(), s.summary());
    if (r.pass)
        r.detail = std::to_string(s.attempts) + " corpus programs, " + std::to_string(s.cases) +
                   " reachable states, no violations";
    return r;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"shared counter annotation verdicts", criterion1},
        {"double increment postcondition", criterion2},
        {"refinement 2 progress proofs", criterion3},
        {"negative controls", criterion4},
        {"guard conjunction split", criterion5},
        {"derived-rule soundness", criterion6},
        {"checker vs oracle soundness", criterion7},
        {"wlp properties", criterion8},
        {"control-state facts", criterion9},
    };
    int failed = 0, n = 0;
    for (const auto& [name, run] : criteria) {
        ++n;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %d %s: %s (%.1fs) %s\n", n, o.pass ? "PASS" : "FAIL", name, secs, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
