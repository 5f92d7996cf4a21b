#include "ogp/wlp.hpp"

namespace ogp {

namespace {

Bindings assignment_bindings(const std::vector<Assignment>& assigns) {
    Bindings b;
    for (const Assignment& a : assigns) {
        if (a.slot < 0) throw ContractError("unresolved assignment target " + a.target);
        b.emplace_back(a.slot, a.value);
    }
    return b;
}

Expr body_transform(const Stmt& s, const Expr& post, bool total) {
    switch (s.kind) {
        case StmtKind::Skip: return post;
        case StmtKind::Assign: return substitute(post, assignment_bindings(s.assigns));
        case StmtKind::Seq: {
            Expr p = post;
            for (auto it = s.kids.rbegin(); it != s.kids.rend(); ++it) p = body_transform(*it, p, total);
            return p;
        }
        case StmtKind::Atomic: return body_transform(s.kids.at(0), post, total);
        case StmtKind::If: {
            std::vector<Expr> parts;
            if (total) parts.push_back(ex::disj(s.guards));
            for (std::size_t i = 0; i < s.guards.size(); ++i)
                parts.push_back(ex::implies(s.guards[i], body_transform(s.kids[i], post, total)));
            return ex::conj(parts);
        }
        case StmtKind::Do: throw ContractError("loops are not allowed here; use the loop-invariant rule");
    }
    return post;
}

}  // namespace

std::pair<int, Expr> pc_binding(const Program& program, int component, const std::string& label) {
    const Component& c = program.components.at(static_cast<std::size_t>(component));
    for (std::size_t i = 0; i < c.labels.size(); ++i)
        if (c.labels[i] == label) return {c.pc_slot, ex::label(c.name, label, static_cast<Value>(i))};
    throw ContractError("no label " + c.name + "." + label);
}

Expr wlp_body(const Stmt& body, const Expr& post) { return body_transform(body, post, false); }

Expr wp_atomic(const Stmt& body, const Expr& post) { return body_transform(body, post, true); }

Expr wlp(const Program& program, int component, const Stmt& s, const Expr& post) {
    if (!program.labelled) throw ContractError("wlp needs a labelled program");
    auto pc_to = [&](const std::string& label, const Expr& p) {
        return substitute(p, {pc_binding(program, component, label)});
    };
    switch (s.kind) {
        case StmtKind::Skip: return pc_to(s.fin, post);
        case StmtKind::Assign: {
            Bindings b = assignment_bindings(s.assigns);
            b.push_back(pc_binding(program, component, s.fin));
            return substitute(post, b);
        }
        case StmtKind::Atomic: return wlp_body(s.kids.at(0), pc_to(s.fin, post));
        case StmtKind::Seq: {
            Expr p = post;
            for (auto it = s.kids.rbegin(); it != s.kids.rend(); ++it) p = wlp(program, component, *it, p);
            return p;
        }
        case StmtKind::If: {
            std::vector<Expr> parts;
            for (std::size_t i = 0; i < s.guards.size(); ++i)
                parts.push_back(
                    ex::implies(s.guards[i], pc_to(s.kids[i].init, wlp(program, component, s.kids[i], post))));
            return ex::conj(parts);
        }
        case StmtKind::Do: throw ContractError("wlp of a loop is not computed; use check_do");
    }
    return post;
}

Expr wlp(const Program& program, const AtomicAction& a, const Expr& post) {
    auto pc_to = [&](const std::string& label, const Expr& p) {
        return substitute(p, {pc_binding(program, a.component, label)});
    };
    switch (a.kind) {
        case ActionKind::Skip: return pc_to(a.target, post);
        case ActionKind::Assign: {
            Bindings b = assignment_bindings(a.assigns);
            b.push_back(pc_binding(program, a.component, a.target));
            return substitute(post, b);
        }
        case ActionKind::Atomic: return wlp_body(*a.body, pc_to(a.target, post));
        case ActionKind::IfEval:
        case ActionKind::DoEval: {
            std::vector<Expr> parts;
            for (const Branch& b : a.branches) parts.push_back(ex::implies(b.guard, pc_to(b.target, post)));
            if (a.exit) parts.push_back(ex::implies(a.exit->guard, pc_to(a.exit->target, post)));
            return ex::conj(parts);
        }
    }
    return post;
}

std::vector<DoObligation> check_do(const Program& program, int component, const Stmt& loop, const Expr& inv,
                                   const Expr& post, const Limits& limits) {
    if (loop.kind != StmtKind::Do) throw ContractError("check_do expects a loop");
    std::vector<DoObligation> out;
    for (std::size_t i = 0; i < loop.guards.size(); ++i) {
        const Stmt& body = loop.kids[i];
        Expr after = substitute(wlp(program, component, body, inv), {pc_binding(program, component, body.init)});
        Expr f = ex::implies(ex::land(inv, loop.guards[i]), after);
        out.push_back({"branch " + std::to_string(i + 1), f, valid(f, program.vars, limits)});
    }
    Expr f = ex::implies(ex::land(inv, ex::lnot(ex::disj(loop.guards))),
                         substitute(post, {pc_binding(program, component, loop.fin)}));
    out.push_back({"exit", f, valid(f, program.vars, limits)});
    return out;
}

ValidityResult hoare_holds(const Program& program, int component, const Expr& pre, const Stmt& stmt,
                           const Expr& post, const Limits& limits) {
    return implies(pre, wlp(program, component, stmt, post), program.vars, limits);
}

}  // namespace ogp
