#include "ogp/safety.hpp"

#include <algorithm>
#include <map>

#include "ogp/wlp.hpp"

namespace ogp {

const char* to_string(ObligationKind k) {
    switch (k) {
        case ObligationKind::LC: return "LC";
        case ObligationKind::GC: return "GC";
        case ObligationKind::INV: return "INV";
        case ObligationKind::POST: return "POST";
        case ObligationKind::UN: return "UN";
        case ObligationKind::IMM: return "IMM";
        case ObligationKind::RULE: return "RULE";
    }
    return "?";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Valid: return "valid";
        case Verdict::Invalid: return "invalid";
        case Verdict::Pending: return "pending";
    }
    return "?";
}

void decide(Obligation& o, const Program& program, const Limits& limits) {
    ValidityResult r = valid(o.formula, program.vars, limits);
    o.verdict = r.valid ? Verdict::Valid : Verdict::Invalid;
    o.counterexample = std::move(r.counterexample);
    o.relevant = std::move(r.relevant);
}

void number(std::vector<Obligation>& obligations) {
    std::map<ObligationKind, int> counts;
    for (Obligation& o : obligations) o.id = std::string(to_string(o.kind)) + "." + std::to_string(++counts[o.kind]);
}

bool all_valid(const std::vector<Obligation>& obligations) {
    for (const Obligation& o : obligations)
        if (o.verdict != Verdict::Valid) return false;
    return true;
}

namespace {

std::vector<Expr> assertions_at(const Annotation& ann, int component, const std::string& label) {
    auto it = ann.find({component, label});
    return it == ann.end() ? std::vector<Expr>{} : it->second;
}

std::string site(const Program& program, int component, const std::string& label) {
    return program.components[static_cast<std::size_t>(component)].name + "." + label;
}

std::vector<std::string> targets(const AtomicAction& a) {
    std::vector<std::string> out;
    if (a.kind == ActionKind::IfEval || a.kind == ActionKind::DoEval) {
        for (const Branch& b : a.branches) out.push_back(b.target);
        if (a.exit) out.push_back(a.exit->target);
    } else {
        out.push_back(a.target);
    }
    return out;
}

Obligation make(ObligationKind kind, Expr formula, std::string rule, std::vector<std::string> sites,
                const Program& program, const Limits& limits) {
    Obligation o;
    o.kind = kind;
    o.formula = std::move(formula);
    o.rule = std::move(rule);
    o.sites = std::move(sites);
    decide(o, program, limits);
    return o;
}

}  // namespace

Expr action_precondition(const Program& program, const AtomicAction& a) {
    std::vector<Expr> parts{pc_at(program, a.component, a.label)};
    const Annotation ann = annotation(program);
    for (const Expr& e : assertions_at(ann, a.component, a.label)) parts.push_back(e);
    for (const Expr& e : program.invariants) parts.push_back(e);
    return ex::conj(parts);
}

std::vector<Obligation> check_local(const Program& program, const Limits& limits) {
    const Annotation ann = annotation(program);
    const auto actions = extract_actions(program);
    const Expr pre = effective_pre(program);
    std::vector<Obligation> out;
    for (const auto& [key, asserts] : ann) {
        const auto& [c, label] = key;
        const Component& comp = program.components[static_cast<std::size_t>(c)];
        const std::string at = site(program, c, label);
        if (label == comp.initial)
            for (const Expr& p : asserts)
                out.push_back(make(ObligationKind::LC, ex::implies(pre, p), "Pre ==> assertion at " + at, {at},
                                   program, limits));
        for (const AtomicAction& a : actions) {
            if (a.component != c) continue;
            const auto ts = targets(a);
            if (std::find(ts.begin(), ts.end(), label) == ts.end()) continue;
            const Expr u = action_precondition(program, a);
            for (const Expr& p : asserts) {
                const Expr post = ex::implies(pc_at(program, c, label), p);
                out.push_back(make(ObligationKind::LC, ex::implies(u, wlp(program, a, post)),
                                   "{U} " + a.site() + " {assertion at " + at + "}", {a.site(), at}, program,
                                   limits));
            }
        }
    }
    return out;
}

std::vector<Obligation> check_global(const Program& program, const Limits& limits) {
    const Annotation ann = annotation(program);
    const auto actions = extract_actions(program);
    std::vector<Obligation> out;
    for (const auto& [key, asserts] : ann) {
        const auto& [c, label] = key;
        const std::string at = site(program, c, label);
        const Expr all = ex::conj(asserts);
        for (const AtomicAction& a : actions) {
            if (a.component == c) continue;
            const Expr u = action_precondition(program, a);
            for (const Expr& p : asserts)
                out.push_back(make(ObligationKind::GC, ex::implies(ex::land(all, u), wlp(program, a, p)),
                                   "assertion at " + at + " preserved by " + a.site(), {at, a.site()}, program,
                                   limits));
        }
    }
    return out;
}

std::vector<Obligation> check_invariant(const Program& program, const Expr& inv, const Limits& limits) {
    std::vector<Obligation> out;
    out.push_back(make(ObligationKind::INV, ex::implies(effective_pre(program), inv), "Pre ==> invariant", {},
                       program, limits));
    for (const AtomicAction& a : extract_actions(program))
        out.push_back(make(ObligationKind::INV,
                           ex::implies(ex::land(inv, action_precondition(program, a)), wlp(program, a, inv)),
                           "invariant preserved by " + a.site(), {a.site()}, program, limits));
    return out;
}

Obligation check_postcondition(const Program& program, const Expr& p, const Limits& limits) {
    const Annotation ann = annotation(program);
    std::vector<Expr> parts;
    bool have_facts = !program.invariants.empty();
    std::vector<std::string> sites;
    for (std::size_t c = 0; c < program.components.size(); ++c) {
        const Component& comp = program.components[c];
        const int ci = static_cast<int>(c);
        for (const Expr& e : assertions_at(ann, ci, comp.final)) {
            parts.push_back(e);
            have_facts = true;
        }
        parts.push_back(pc_at(program, ci, comp.final));
        sites.push_back(site(program, ci, comp.final));
    }
    for (const Expr& e : program.invariants) parts.push_back(e);
    Obligation o;
    o.kind = ObligationKind::POST;
    o.formula = ex::implies(ex::conj(parts), p);
    o.rule = "final assertions ==> postcondition";
    o.sites = std::move(sites);
    if (have_facts) decide(o, program, limits);
    return o;
}

SafetyReport check_safety(const Program& program, const Limits& limits) {
    SafetyReport r;
    auto append = [&](std::vector<Obligation> v) {
        for (Obligation& o : v) r.obligations.push_back(std::move(o));
    };
    append(check_local(program, limits));
    append(check_global(program, limits));
    for (const Expr& inv : program.invariants) append(check_invariant(program, inv, limits));
    r.annotation_ok = all_valid(r.obligations);
    for (const Property& prop : program.properties) {
        std::vector<Obligation> v;
        if (prop.kind == PropertyKind::Invariant) {
            v = check_invariant(program, prop.p, limits);
        } else if (prop.kind == PropertyKind::Postcondition) {
            v.push_back(check_postcondition(program, prop.p, limits));
        } else {
            continue;
        }
        for (Obligation& o : v) {
            o.property = prop.name;
            if (!r.annotation_ok) {
                o.verdict = Verdict::Pending;
                o.counterexample.reset();
            }
        }
        append(std::move(v));
    }
    number(r.obligations);
    return r;
}

}  // namespace ogp
