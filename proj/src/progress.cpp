#include "ogp/progress.hpp"

#include <map>
#include <set>

#include "ogp/lang.hpp"
#include "ogp/wlp.hpp"

namespace ogp {

namespace {

Obligation make(ObligationKind kind, Expr formula, std::string rule, std::vector<std::string> sites,
                const Program& program, const Limits& limits) {
    if (mentions_params(formula)) throw ContractError("unbound template parameter in: " + to_string(formula));
    Obligation o;
    o.kind = kind;
    o.formula = std::move(formula);
    o.rule = std::move(rule);
    o.sites = std::move(sites);
    decide(o, program, limits);
    return o;
}

Expr invariants(const Program& program) { return ex::conj(program.invariants); }

}  // namespace

std::vector<Obligation> check_unless(const Program& program, const Expr& p, const Expr& q, const Limits& limits) {
    std::vector<Obligation> out;
    const Expr pre = ex::land(p, ex::lnot(q));
    const Expr post = ex::lor(p, q);
    for (const AtomicAction& a : extract_actions(program))
        out.push_back(make(ObligationKind::UN,
                           ex::implies(ex::land(pre, action_precondition(program, a)), wlp(program, a, post)),
                           "unless against " + a.site(), {a.site()}, program, limits));
    return out;
}

std::vector<Obligation> check_immediate(const Program& program, const Expr& p, const Expr& q, const std::string& site,
                                        const Limits& limits) {
    const auto actions = extract_actions(program);
    const AtomicAction& a = find_action(actions, site);
    std::vector<Obligation> out = check_unless(program, p, q, limits);
    const Expr pnq = ex::land(p, ex::lnot(q));
    auto imm = [&](Expr f, std::string rule) {
        out.push_back(make(ObligationKind::IMM, std::move(f), std::move(rule), {a.site()}, program, limits));
    };
    imm(ex::implies(ex::land(invariants(program), pnq), pc_at(program, a.component, a.label)),
        "clause 1: control is at " + a.site());
    const Expr u = ex::land(pnq, action_precondition(program, a));
    auto after = [&](const std::string& label) { return substitute(q, {pc_binding(program, a.component, label)}); };
    switch (a.kind) {
        case ActionKind::Skip:
        case ActionKind::Assign: imm(ex::implies(u, wlp(program, a, q)), "clause 2a: " + a.site() + " establishes Q"); break;
        case ActionKind::Atomic:
            imm(ex::implies(u, wp_atomic(*a.body, after(a.target))), "clause 2b: " + a.site() + " is enabled and establishes Q");
            break;
        case ActionKind::IfEval: {
            std::vector<Expr> guards;
            for (const Branch& b : a.branches) guards.push_back(b.guard);
            imm(ex::implies(u, ex::disj(guards)), "clause 2c(i): " + a.site() + " is enabled");
            for (std::size_t i = 0; i < a.branches.size(); ++i)
                imm(ex::implies(ex::land(u, a.branches[i].guard), after(a.branches[i].target)),
                    "clause 2c(ii): branch " + std::to_string(i + 1) + " of " + a.site() + " establishes Q");
            break;
        }
        case ActionKind::DoEval:
            for (std::size_t i = 0; i < a.branches.size(); ++i)
                imm(ex::implies(ex::land(u, a.branches[i].guard), after(a.branches[i].target)),
                    "clause 2d: branch " + std::to_string(i + 1) + " of " + a.site() + " establishes Q");
            imm(ex::implies(ex::land(u, a.exit->guard), after(a.exit->target)),
                "clause 2d: exit of " + a.site() + " establishes Q");
            break;
    }
    return out;
}

namespace {

Expr subst_param(const Expr& e, const std::string& param, Value v) { return e ? instantiate(e, param, v) : e; }

}  // namespace

ProofNode instantiate(const ProofNode& node, const std::string& param, Value v) {
    ProofNode n = node;
    if (n.rule == Rule::Induction) n.measure = subst_param(n.measure, param, v);
    // an inner binder of the same name shadows the outer one
    if ((n.rule == Rule::DisjunctionFor || n.rule == Rule::Induction) && n.param == param) return n;
    for (Expr& e : n.preds) e = subst_param(e, param, v);
    for (ProofNode& k : n.kids) k = instantiate(k, param, v);
    return n;
}

namespace {

struct Goal {
    Expr p, q;
};

class ScriptChecker {
public:
    ScriptChecker(const Program& program, const Limits& limits) : prog_(program), limits_(limits) {}

    bool property(const std::string& name, std::vector<Obligation>* sink) {
        const Property* prop = prog_.property(name);
        if (!prop || prop->kind != PropertyKind::LeadsTo)
            throw ContractError("no leads-to property named " + name);
        const ProofScript* script = prog_.proof(name);
        if (!script) throw ContractError("property " + name + " has no proof script");
        return run(*script, sink);
    }

    bool run(const ProofScript& script, std::vector<Obligation>* sink) {
        const Property* prop = prog_.property(script.property);
        if (!prop || prop->kind != PropertyKind::LeadsTo)
            throw ContractError("proof " + script.property + " does not name a leads-to property");
        if (auto it = done_.find(script.property); it != done_.end() && !sink) return it->second;
        if (active_.count(script.property)) throw ContractError("circular lemma use through " + script.property);
        active_.insert(script.property);
        std::vector<Obligation> local;
        std::vector<Obligation>* saved = out_;
        out_ = &local;
        const std::string saved_prop = prop_;
        prop_ = script.property;
        prove(script.root, {prop->p, prop->q}, "1");
        out_ = saved;
        prop_ = saved_prop;
        active_.erase(script.property);
        const bool ok = all_valid(local);
        done_[script.property] = ok;
        if (sink)
            for (Obligation& o : local) sink->push_back(std::move(o));
        return ok;
    }

private:
    const Program& prog_;
    const Limits& limits_;
    std::vector<Obligation>* out_ = nullptr;
    std::string prop_;
    std::map<std::string, bool> done_;
    std::set<std::string> active_;

    void emit(Obligation o, const std::string& node) {
        o.property = prop_;
        o.node = node;
        out_->push_back(std::move(o));
    }

    void rule(const Expr& f, const std::string& what, const std::string& node) {
        emit(make(ObligationKind::RULE, f, what, {}, prog_, limits_), node);
    }

    // Inv && a ==> b
    void entails(const Expr& a, const Expr& b, const std::string& what, const std::string& node) {
        rule(ex::implies(ex::land(invariants(prog_), a), b), what, node);
    }

    static std::string child(const std::string& node, std::size_t i) { return node + "." + std::to_string(i + 1); }

    void prove(const ProofNode& n, const Goal& g, const std::string& node) {
        switch (n.rule) {
            case Rule::Immediate:
                for (Obligation& o : check_immediate(prog_, g.p, g.q, n.target, limits_)) emit(std::move(o), node);
                return;
            case Rule::Implication: entails(g.p, g.q, "implication: P ==> Q", node); return;
            case Rule::Transitivity:
                prove(n.kids[0], {g.p, n.preds[0]}, child(node, 0));
                prove(n.kids[1], {n.preds[0], g.q}, child(node, 1));
                return;
            case Rule::Disjunction:
                entails(g.p, ex::disj(n.preds), "disjunction: the cases cover P", node);
                for (std::size_t i = 0; i < n.kids.size(); ++i) prove(n.kids[i], {n.preds[i], g.q}, child(node, i));
                return;
            case Rule::DisjunctionFor: {
                std::vector<Expr> cases;
                for (Value v = n.lo; v <= n.hi; ++v) cases.push_back(instantiate(n.preds[0], n.param, v));
                entails(g.p, ex::disj(cases), "disjunction: the cases cover P", node);
                std::size_t i = 0;
                for (Value v = n.lo; v <= n.hi; ++v, ++i)
                    prove(instantiate(n.kids[0], n.param, v), {cases[i], g.q}, child(node, i));
                return;
            }
            case Rule::Impossibility: prove(n.kids[0], {g.p, ex::falsity()}, child(node, 0)); return;
            case Rule::DisjunctionTheorem: {
                std::vector<Expr> ps, qs;
                for (std::size_t i = 0; i < n.kids.size(); ++i) {
                    ps.push_back(n.preds[2 * i]);
                    qs.push_back(n.preds[2 * i + 1]);
                }
                entails(g.p, ex::disj(ps), "disjunction theorem: the cases cover P", node);
                entails(ex::disj(qs), g.q, "disjunction theorem: the outcomes imply Q", node);
                for (std::size_t i = 0; i < n.kids.size(); ++i) prove(n.kids[i], {ps[i], qs[i]}, child(node, i));
                return;
            }
            case Rule::Cancellation: {
                const Expr& d = n.preds[0];
                prove(n.kids[0], {g.p, ex::lor(g.q, d)}, child(node, 0));
                prove(n.kids[1], {d, g.q}, child(node, 1));
                return;
            }
            case Rule::Psp: {
                const Expr& r = n.preds[0];
                const Expr& d = n.preds[1];
                const ProofNode& sub = n.kids[0];
                if (sub.rule != Rule::Show) throw ContractError("psp expects a show node stating P leadsto Q");
                const Expr& p = sub.preds[0];
                const Expr& q = sub.preds[1];
                entails(g.p, ex::land(p, r), "psp: goal P ==> P' && R", node);
                entails(ex::lor(ex::land(q, r), d), g.q, "psp: (Q' && R) || D ==> goal Q", node);
                for (Obligation& o : check_unless(prog_, r, d, limits_)) emit(std::move(o), node);
                prove(sub.kids[0], {p, q}, child(node, 0));
                return;
            }
            case Rule::Induction: {
                const Expr& m = n.measure;
                entails(g.p, ex::land(ex::binary(Op::Le, ex::lit(n.lo), m), ex::binary(Op::Le, m, ex::lit(n.hi))),
                        "induction: the measure is in range", node);
                std::size_t i = 0;
                for (Value v = n.lo; v <= n.hi; ++v, ++i) {
                    const Expr at = ex::land(g.p, ex::eq(m, ex::lit(v)));
                    const Expr below = ex::lor(ex::land(g.p, ex::binary(Op::Lt, m, ex::lit(v))), g.q);
                    prove(instantiate(n.kids[0], n.param, v), {at, below}, child(node, i));
                }
                return;
            }
            case Rule::Completion: {
                const Expr& d = n.preds[0];
                std::vector<Expr> ps, qs;
                for (std::size_t i = 0; i < n.kids.size(); ++i) {
                    ps.push_back(n.preds[1 + 2 * i]);
                    qs.push_back(n.preds[2 + 2 * i]);
                }
                entails(g.p, ex::conj(ps), "completion: P ==> every P.i", node);
                entails(ex::lor(ex::conj(qs), d), g.q, "completion: (all Q.i) || D ==> goal Q", node);
                for (std::size_t i = 0; i < n.kids.size(); ++i) {
                    for (Obligation& o : check_unless(prog_, qs[i], d, limits_)) emit(std::move(o), child(node, i));
                    prove(n.kids[i], {ps[i], ex::lor(qs[i], d)}, child(node, i));
                }
                return;
            }
            case Rule::Show:
                entails(g.p, n.preds[0], "show: goal P ==> stated P", node);
                entails(n.preds[1], g.q, "show: stated Q ==> goal Q", node);
                prove(n.kids[0], {n.preds[0], n.preds[1]}, child(node, 0));
                return;
            case Rule::Lemma: {
                const Property* lemma = prog_.property(n.target);
                if (!lemma || lemma->kind != PropertyKind::LeadsTo)
                    throw ContractError("lemma " + n.target + " is not a leads-to property");
                entails(g.p, lemma->p, "lemma " + n.target + ": goal P ==> lemma P", node);
                entails(lemma->q, g.q, "lemma " + n.target + ": lemma Q ==> goal Q", node);
                const ProofScript* script = prog_.proof(n.target);
                if (!script) throw ContractError("lemma " + n.target + " has no proof script");
                const bool ok = run(*script, nullptr);
                Obligation o;
                o.kind = ObligationKind::RULE;
                o.formula = ex::boolean(ok);
                o.rule = "lemma " + n.target + " is proved";
                o.verdict = ok ? Verdict::Valid : Verdict::Invalid;
                emit(std::move(o), node);
                return;
            }
        }
    }
};

}  // namespace

ProgressResult check_script(const Program& program, const ProofScript& script, const Limits& limits) {
    ScriptChecker c(program, limits);
    ProgressResult r;
    r.ok = c.run(script, &r.obligations);
    number(r.obligations);
    return r;
}

std::vector<Obligation> obligations_report(const Program& program, const std::string& name, const Limits& limits) {
    const Property* prop = program.property(name);
    if (!prop) throw ContractError("no property named " + name);
    std::vector<Obligation> out;
    switch (prop->kind) {
        case PropertyKind::Unless: out = check_unless(program, prop->p, prop->q, limits); break;
        case PropertyKind::LeadsTo: {
            ScriptChecker c(program, limits);
            c.property(name, &out);
            break;
        }
        case PropertyKind::Invariant: out = check_invariant(program, prop->p, limits); break;
        case PropertyKind::Postcondition: out.push_back(check_postcondition(program, prop->p, limits)); break;
        case PropertyKind::DeadlockFree: break;
    }
    for (Obligation& o : out) o.property = name;
    number(out);
    return out;
}

CheckReport check_program(const Program& program, const Limits& limits) {
    CheckReport r;
    SafetyReport safety = check_safety(program, limits);
    r.obligations = std::move(safety.obligations);
    ScriptChecker c(program, limits);
    for (const Property& prop : program.properties) {
        std::vector<Obligation> v;
        if (prop.kind == PropertyKind::Unless) {
            v = check_unless(program, prop.p, prop.q, limits);
        } else if (prop.kind == PropertyKind::LeadsTo) {
            if (!program.proof(prop.name)) {
                r.errors.push_back("property " + prop.name + " has no proof script");
                continue;
            }
            c.property(prop.name, &v);
        } else {
            continue;
        }
        for (Obligation& o : v) {
            o.property = prop.name;
            if (!safety.annotation_ok) {
                o.verdict = Verdict::Pending;
                o.counterexample.reset();
            }
        }
        r.obligations.insert(r.obligations.end(), v.begin(), v.end());
    }
    number(r.obligations);
    return r;
}

}  // namespace ogp
