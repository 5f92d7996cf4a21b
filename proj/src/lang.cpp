#include "ogp/lang.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ogp {

const char* to_string(ActionKind k) {
    switch (k) {
        case ActionKind::Skip: return "skip";
        case ActionKind::Assign: return "assign";
        case ActionKind::Atomic: return "atomic";
        case ActionKind::IfEval: return "if-eval";
        case ActionKind::DoEval: return "do-eval";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// labelling

namespace {

struct Labeller {
    std::string component;
    std::map<std::string, SourceLoc> explicit_sites;
    std::set<std::string> used;
    std::vector<std::string> order;
    long next = 1;

    void reserve(const std::string& id, SourceLoc loc) {
        auto [it, inserted] = explicit_sites.emplace(id, loc);
        if (!inserted)
            throw LabelError("duplicate label " + component + "." + id + " at " + it->second.str() + " and " +
                             loc.str());
    }

    void gather(const Stmt& s) {
        if (!s.explicit_label.empty()) reserve(s.explicit_label, s.label_loc);
        if (s.kind == StmtKind::Atomic) {
            check_unlabelled(s.kids.at(0));
            return;
        }
        for (const Stmt& k : s.kids) gather(k);
        if (!s.explicit_final.empty()) reserve(s.explicit_final, s.final_loc);
    }

    void check_unlabelled(const Stmt& s) {
        if (!s.explicit_label.empty() || !s.explicit_final.empty())
            throw LabelError("label inside atomic statement at " + s.label_loc.str() + " in component " + component);
        for (const Stmt& k : s.kids) check_unlabelled(k);
    }

    std::string fresh() {
        while (explicit_sites.count(std::to_string(next)) || used.count(std::to_string(next))) ++next;
        return std::to_string(next++);
    }

    void take(const std::string& id) {
        used.insert(id);
        order.push_back(id);
    }

    // Pre-order pass: initial labels of atomic-action statements.
    void initials(Stmt& s) {
        if (s.kind == StmtKind::Seq) {
            for (Stmt& k : s.kids) initials(k);
            return;
        }
        s.init = s.explicit_label.empty() ? fresh() : s.explicit_label;
        take(s.init);
        if (s.kind == StmtKind::If || s.kind == StmtKind::Do)
            for (Stmt& k : s.kids) initials(k);
    }

    // Top-down pass: final labels.
    static void finals(Stmt& s, const std::string& fin) {
        s.fin = fin;
        switch (s.kind) {
            case StmtKind::Seq:
                for (std::size_t i = 0; i < s.kids.size(); ++i) {
                    const std::string& next = i + 1 < s.kids.size() ? s.kids[i + 1].init : fin;
                    finals(s.kids[i], next);
                }
                s.init = s.kids.empty() ? fin : s.kids.front().init;
                break;
            case StmtKind::If:
                for (Stmt& k : s.kids) finals(k, fin);
                break;
            case StmtKind::Do:
                for (Stmt& k : s.kids) finals(k, s.init);
                break;
            default: break;
        }
    }
};

}  // namespace

Program auto_label(Program program) {
    for (Component& c : program.components) {
        Labeller l{.component = c.name};
        l.gather(c.body);
        l.initials(c.body);
        const std::string fin = c.body.explicit_final.empty() ? l.fresh() : c.body.explicit_final;
        l.take(fin);
        Labeller::finals(c.body, fin);
        c.labels = l.order;
        c.initial = c.body.init;
        c.final = fin;
    }
    program.labelled = true;
    resolve(program);
    return program;
}

Program instrument_counters(Program program) {
    if (!program.labelled) throw ContractError("instrument_counters requires a labelled program");
    program.instrumented = true;
    return program;
}

// ---------------------------------------------------------------------------
// resolution

namespace {

enum class TypeKind { Bool, Int, Label };

struct Type {
    TypeKind kind;
    std::string component;  // Label
    bool operator==(const Type&) const = default;
};

std::string describe(const Type& t) {
    switch (t.kind) {
        case TypeKind::Bool: return "bool";
        case TypeKind::Int: return "int";
        case TypeKind::Label: return "label of " + t.component;
    }
    return "?";
}

struct Resolver {
    const Program& program;
    std::vector<std::string> params;

    struct Typed {
        Expr e;
        Type t;
    };

    [[noreturn]] void fail(const std::string& msg, SourceLoc loc) const { throw ResolveError(msg, loc); }

    Expr with_kids(const Expr& e, std::vector<Expr> kids) const {
        Node n = *e;
        n.kids = std::move(kids);
        return std::make_shared<const Node>(std::move(n));
    }

    Typed label_literal(const std::string& comp, const std::string& id, SourceLoc loc) const {
        const int ci = program.component_index(comp);
        if (ci < 0) fail("unknown component '" + comp + "'", loc);
        const Component& c = program.components[static_cast<std::size_t>(ci)];
        for (std::size_t i = 0; i < c.labels.size(); ++i)
            if (c.labels[i] == id) {
                Node n = *ex::label(comp, id, static_cast<Value>(i));
                n.loc = loc;
                return {std::make_shared<const Node>(std::move(n)), {TypeKind::Label, comp}};
            }
        fail("unknown label " + comp + "." + id, loc);
    }

    Typed variable(const std::string& name, SourceLoc loc) const {
        const int slot = program.vars.find(name);
        if (slot < 0) fail("unresolved identifier '" + name + "'", loc);
        const VarDecl& d = program.vars[static_cast<std::size_t>(slot)];
        Node n = *ex::var(slot, name);
        n.loc = loc;
        Type t{d.is_bool ? TypeKind::Bool : TypeKind::Int, {}};
        if (d.is_pc) t = {TypeKind::Label, d.owner};
        return {std::make_shared<const Node>(std::move(n)), t};
    }

    Typed expect(const Expr& e, TypeKind k) {
        Typed r = run(e);
        if (r.t.kind != k) fail("expected " + describe(Type{k, {}}) + ", got " + describe(r.t) + " in '" +
                                    to_string(e) + "'",
                                e->loc);
        return r;
    }

    // `pc.X == 2` reads the integer as a label of X.
    Typed coerce_label(const Expr& raw, const Type& want) {
        if (raw->op == Op::IntLit) return label_literal(want.component, std::to_string(raw->value), raw->loc);
        Typed r = run(raw);
        if (!(r.t == want)) fail("cannot compare " + describe(want) + " with " + describe(r.t), raw->loc);
        return r;
    }

    Typed run(const Expr& e) {
        switch (e->op) {
            case Op::IntLit: return {e, {TypeKind::Int, {}}};
            case Op::BoolLit: return {e, {TypeKind::Bool, {}}};
            case Op::Label:
            case Op::Dotted: {
                if (e->name == "pc") return variable("pc." + e->member, e->loc);
                return label_literal(e->name, e->member, e->loc);
            }
            case Op::Var: return variable(e->name, e->loc);
            case Op::Param:
            case Op::Name: {
                if (std::find(params.begin(), params.end(), e->name) != params.end()) {
                    Node n = *ex::param(e->name);
                    n.loc = e->loc;
                    return {std::make_shared<const Node>(std::move(n)), {TypeKind::Int, {}}};
                }
                if (e->op == Op::Param) fail("unbound parameter '" + e->name + "'", e->loc);
                return variable(e->name, e->loc);
            }
            case Op::Not: return {with_kids(e, {expect(e->kids[0], TypeKind::Bool).e}), {TypeKind::Bool, {}}};
            case Op::Neg: return {with_kids(e, {expect(e->kids[0], TypeKind::Int).e}), {TypeKind::Int, {}}};
            case Op::Add:
            case Op::Sub:
            case Op::Mul:
                return {with_kids(e, {expect(e->kids[0], TypeKind::Int).e, expect(e->kids[1], TypeKind::Int).e}),
                        {TypeKind::Int, {}}};
            case Op::Lt:
            case Op::Le:
            case Op::Gt:
            case Op::Ge:
                return {with_kids(e, {expect(e->kids[0], TypeKind::Int).e, expect(e->kids[1], TypeKind::Int).e}),
                        {TypeKind::Bool, {}}};
            case Op::And:
            case Op::Or:
            case Op::Implies:
            case Op::Iff:
                return {with_kids(e, {expect(e->kids[0], TypeKind::Bool).e, expect(e->kids[1], TypeKind::Bool).e}),
                        {TypeKind::Bool, {}}};
            case Op::Eq:
            case Op::Ne: {
                const Expr& a = e->kids[0];
                const Expr& b = e->kids[1];
                if (a->op != Op::IntLit) {
                    Typed l = run(a);
                    Typed r = l.t.kind == TypeKind::Label ? coerce_label(b, l.t) : run(b);
                    if (!(l.t == r.t))
                        fail("cannot compare " + describe(l.t) + " with " + describe(r.t) + " in '" + to_string(e) +
                                 "'",
                             e->loc);
                    return {with_kids(e, {l.e, r.e}), {TypeKind::Bool, {}}};
                }
                Typed r = run(b);
                Typed l = r.t.kind == TypeKind::Label ? coerce_label(a, r.t) : run(a);
                if (!(l.t == r.t))
                    fail("cannot compare " + describe(l.t) + " with " + describe(r.t) + " in '" + to_string(e) + "'",
                         e->loc);
                return {with_kids(e, {l.e, r.e}), {TypeKind::Bool, {}}};
            }
            case Op::Forall:
            case Op::Exists: {
                if (program.vars.find(e->name) >= 0)
                    fail("quantified variable '" + e->name + "' shadows a program variable", e->loc);
                if (e->lo > e->hi) fail("empty quantifier range", e->loc);
                params.push_back(e->name);
                Typed body = expect(e->kids[0], TypeKind::Bool);
                params.pop_back();
                return {with_kids(e, {body.e}), {TypeKind::Bool, {}}};
            }
        }
        fail("bad expression", e->loc);
    }
};

void resolve_stmt(Resolver& r, Stmt& s, const Component& owner) {
    for (Expr& a : s.asserts) a = r.expect(a, TypeKind::Bool).e;
    for (Expr& a : s.post_asserts) a = r.expect(a, TypeKind::Bool).e;
    for (Expr& g : s.guards) g = r.expect(g, TypeKind::Bool).e;
    for (Assignment& a : s.assigns) {
        const int slot = r.program.vars.find(a.target);
        if (slot < 0) throw ResolveError("unresolved assignment target '" + a.target + "'", a.loc);
        const VarDecl& d = r.program.vars[static_cast<std::size_t>(slot)];
        if (d.is_pc) throw ResolveError("program counter " + a.target + " cannot be assigned", a.loc);
        a.slot = slot;
        a.value = r.expect(a.value, d.is_bool ? TypeKind::Bool : TypeKind::Int).e;
    }
    for (Stmt& k : s.kids) resolve_stmt(r, k, owner);
}

Expr resolve_pred(Resolver& r, const Expr& e) { return r.expect(e, TypeKind::Bool).e; }

void resolve_node(Resolver& r, ProofNode& n) {
    const bool binds = n.rule == Rule::DisjunctionFor || n.rule == Rule::Induction;
    if (n.rule == Rule::Induction) {
        n.measure = r.expect(n.measure, TypeKind::Int).e;
    }
    if (binds) {
        if (n.lo > n.hi) throw ResolveError("empty parameter range", n.loc);
        if (r.program.vars.find(n.param) >= 0)
            throw ResolveError("parameter '" + n.param + "' shadows a program variable", n.loc);
        r.params.push_back(n.param);
    }
    for (Expr& p : n.preds) p = resolve_pred(r, p);
    for (ProofNode& k : n.kids) resolve_node(r, k);
    if (binds) r.params.pop_back();
}

}  // namespace

void resolve(Program& program) {
    if (!program.labelled) throw ContractError("resolve requires a labelled program");
    // Rebuild the pc declarations after the user variables.
    auto& decls = program.vars.decls();
    decls.erase(std::remove_if(decls.begin(), decls.end(), [](const VarDecl& d) { return d.is_pc; }), decls.end());
    for (Component& c : program.components) {
        VarDecl pc;
        pc.name = "pc." + c.name;
        pc.is_pc = true;
        pc.auxiliary = true;
        pc.scope = Scope::Local;
        pc.owner = c.name;
        pc.labels = c.labels;
        pc.lo = 0;
        pc.hi = static_cast<Value>(c.labels.size()) - 1;
        pc.loc = c.loc;
        c.pc_slot = static_cast<int>(decls.size());
        decls.push_back(std::move(pc));
    }

    Resolver r{program, {}};
    if (program.pre) program.pre = resolve_pred(r, program.pre);
    for (Component& c : program.components) resolve_stmt(r, c.body, c);
    for (Expr& i : program.invariants) i = resolve_pred(r, i);
    for (Property& p : program.properties) {
        if (p.p) p.p = resolve_pred(r, p.p);
        if (p.q) p.q = resolve_pred(r, p.q);
    }
    for (ProofScript& s : program.proofs) resolve_node(r, s.root);
}

Expr resolve_predicate(const Program& program, const Expr& raw, const std::vector<std::string>& params) {
    Resolver r{program, params};
    return resolve_pred(r, raw);
}

Expr resolve_integer(const Program& program, const Expr& raw, const std::vector<std::string>& params) {
    Resolver r{program, params};
    return r.expect(raw, TypeKind::Int).e;
}

// ---------------------------------------------------------------------------
// actions

namespace {

void extract(const Stmt& s, const Component& c, int ci, std::vector<AtomicAction>& out) {
    AtomicAction a;
    a.component = ci;
    a.component_name = c.name;
    a.label = s.init;
    a.pc_slot = c.pc_slot;
    a.loc = s.loc;
    switch (s.kind) {
        case StmtKind::Seq:
            for (const Stmt& k : s.kids) extract(k, c, ci, out);
            return;
        case StmtKind::Skip:
            a.kind = ActionKind::Skip;
            a.target = s.fin;
            out.push_back(std::move(a));
            return;
        case StmtKind::Assign:
            a.kind = ActionKind::Assign;
            a.target = s.fin;
            a.assigns = s.assigns;
            out.push_back(std::move(a));
            return;
        case StmtKind::Atomic:
            a.kind = ActionKind::Atomic;
            a.target = s.fin;
            a.body = s.kids.at(0);
            out.push_back(std::move(a));
            return;
        case StmtKind::If:
        case StmtKind::Do: {
            a.kind = s.kind == StmtKind::If ? ActionKind::IfEval : ActionKind::DoEval;
            for (std::size_t i = 0; i < s.guards.size(); ++i) a.branches.push_back({s.guards[i], s.kids[i].init});
            if (s.kind == StmtKind::Do) a.exit = Branch{ex::lnot(ex::disj(s.guards)), s.fin};
            out.push_back(std::move(a));
            for (const Stmt& k : s.kids) extract(k, c, ci, out);
            return;
        }
    }
}

}  // namespace

std::vector<AtomicAction> extract_actions(const Program& program) {
    if (!program.labelled) throw ContractError("extract_actions requires a labelled program");
    std::vector<AtomicAction> out;
    for (std::size_t ci = 0; ci < program.components.size(); ++ci) {
        const Component& c = program.components[ci];
        std::vector<AtomicAction> mine;
        extract(c.body, c, static_cast<int>(ci), mine);
        // label order, which is textual order of initial actions
        std::stable_sort(mine.begin(), mine.end(), [&](const AtomicAction& x, const AtomicAction& y) {
            auto pos = [&](const std::string& l) { return std::find(c.labels.begin(), c.labels.end(), l); };
            return pos(x.label) < pos(y.label);
        });
        for (AtomicAction& a : mine) out.push_back(std::move(a));
    }
    return out;
}

const AtomicAction& find_action(const std::vector<AtomicAction>& actions, const std::string& site) {
    for (const AtomicAction& a : actions)
        if (a.site() == site) return a;
    throw ContractError("no atomic action labelled " + site);
}

std::string describe(const AtomicAction& a) {
    std::string s = a.site() + ": ";
    switch (a.kind) {
        case ActionKind::Skip: s += "skip"; break;
        case ActionKind::Assign: {
            std::string lhs, rhs;
            for (const Assignment& as : a.assigns) {
                lhs += (lhs.empty() ? "" : ", ") + as.target;
                rhs += (rhs.empty() ? "" : ", ") + to_string(as.value);
            }
            s += lhs + " := " + rhs;
            break;
        }
        case ActionKind::Atomic: s += "atomic ... end"; break;
        case ActionKind::IfEval:
        case ActionKind::DoEval:
            s += a.kind == ActionKind::IfEval ? "if" : "do";
            for (std::size_t i = 0; i < a.branches.size(); ++i)
                s += std::string(i ? " []" : "") + " " + to_string(a.branches[i].guard) + " -> " + a.component_name +
                     "." + a.branches[i].target;
            if (a.exit) s += " [] " + to_string(a.exit->guard) + " -> " + a.component_name + "." + a.exit->target;
            s += a.kind == ActionKind::IfEval ? " fi" : " od";
            break;
    }
    if (!a.target.empty()) s += " " + a.component_name + "." + a.target + ":";
    return s;
}

// ---------------------------------------------------------------------------
// well-formedness

namespace {

struct Validator {
    const Program& program;
    std::vector<Diagnostic> out;

    const VarDecl& decl(int slot) const { return program.vars[static_cast<std::size_t>(slot)]; }

    void reads(const Expr& e, const Component& c, SourceLoc loc, const char* what) {
        for (int slot : free_slots(e)) {
            const VarDecl& d = decl(slot);
            if (d.scope == Scope::Local && d.owner != c.name)
                out.push_back({loc, "scope",
                               "component " + c.name + " reads " + d.name + ", which is local to " + d.owner + " (" +
                                   what + ")"});
        }
    }

    void aux_in_guard(const Expr& g, SourceLoc loc) {
        for (int slot : free_slots(g))
            if (decl(slot).auxiliary)
                out.push_back({loc, "aux", "auxiliary variable " + decl(slot).name + " appears in a guard"});
    }

    void stmt(const Stmt& s, const Component& c, bool in_atomic) {
        switch (s.kind) {
            case StmtKind::Assign: {
                std::set<std::string> seen;
                for (const Assignment& a : s.assigns) {
                    if (!seen.insert(a.target).second)
                        out.push_back({a.loc, "distinct", "assignment target " + a.target + " is assigned twice"});
                    const VarDecl& d = decl(a.slot);
                    if ((d.scope == Scope::Local || d.scope == Scope::Private) && d.owner != c.name)
                        out.push_back({a.loc, "scope",
                                       "component " + c.name + " writes " + d.name + ", which is " +
                                           (d.scope == Scope::Local ? "local" : "private") + " to " + d.owner});
                    reads(a.value, c, a.loc, "assignment");
                    if (!d.auxiliary)
                        for (int slot : free_slots(a.value))
                            if (decl(slot).auxiliary)
                                out.push_back({a.loc, "aux",
                                               "auxiliary variable " + decl(slot).name +
                                                   " flows into non-auxiliary " + d.name});
                }
                break;
            }
            case StmtKind::Atomic:
                if (in_atomic) out.push_back({s.loc, "atomic", "nested atomic statement"});
                break;
            case StmtKind::Do:
                if (in_atomic) out.push_back({s.loc, "atomic", "loop inside an atomic statement"});
                [[fallthrough]];
            case StmtKind::If:
                for (const Expr& g : s.guards) {
                    reads(g, c, s.loc, "guard");
                    aux_in_guard(g, s.loc);
                }
                break;
            default: break;
        }
        const bool inner = in_atomic || s.kind == StmtKind::Atomic;
        for (const Stmt& k : s.kids) stmt(k, c, inner);
    }

    void labels(const Component& c) {
        std::set<std::string> seen;
        for (const std::string& l : c.labels)
            if (!seen.insert(l).second)
                out.push_back({c.loc, "label", "label " + c.name + "." + l + " is not unique"});
    }
};

}  // namespace

std::vector<Diagnostic> validate_wellformed(const Program& program) {
    Validator v{program, {}};
    if (!program.labelled) throw ContractError("validate_wellformed requires a labelled program");
    std::set<std::string> names;
    for (const VarDecl& d : program.vars.decls()) {
        if (!names.insert(d.name).second) v.out.push_back({d.loc, "decl", "variable " + d.name + " declared twice"});
        if (d.lo > d.hi) v.out.push_back({d.loc, "decl", "empty domain for " + d.name});
        if (!d.is_pc && (d.scope != Scope::Shared) && program.component_index(d.owner) < 0)
            v.out.push_back({d.loc, "decl", "owner " + d.owner + " of " + d.name + " is not a component"});
    }
    for (const Component& c : program.components) {
        v.labels(c);
        v.stmt(c.body, c, false);
    }
    try {
        if (valid(ex::lnot(effective_pre(program)), program.vars).valid)
            v.out.push_back({{}, "pre", "precondition is unsatisfiable together with the initial program counters"});
    } catch (const ResourceError&) {
        // too large to decide here; the oracle reports it
    }
    return v.out;
}

}  // namespace ogp
