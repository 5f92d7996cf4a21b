#include "ogp/transform.hpp"

#include <algorithm>
#include <set>

#include "ogp/lang.hpp"
#include "ogp/oracle.hpp"

namespace ogp {

namespace {

void conjuncts(const Expr& e, std::vector<Expr>& out) {
    if (e->op == Op::And) {
        conjuncts(e->kids[0], out);
        conjuncts(e->kids[1], out);
    } else {
        out.push_back(e);
    }
}

bool is_true(const Expr& e) { return e->op == Op::BoolLit && e->value != 0; }

// Freezes the current labels as explicit ones so relabelling keeps them.
void pin_labels(Stmt& s) {
    if (s.kind != StmtKind::Seq && s.explicit_label.empty()) s.explicit_label = s.init;
    if (s.kind == StmtKind::Atomic) return;
    for (Stmt& k : s.kids) pin_labels(k);
}

Stmt atomic_if(Expr guard, Stmt body) {
    Stmt branch;
    branch.kind = StmtKind::Seq;
    branch.kids.push_back(std::move(body));
    Stmt iff;
    iff.kind = StmtKind::If;
    iff.guards.push_back(std::move(guard));
    iff.kids.push_back(std::move(branch));
    Stmt inner;
    inner.kind = StmtKind::Seq;
    inner.kids.push_back(std::move(iff));
    Stmt a;
    a.kind = StmtKind::Atomic;
    a.kids.push_back(std::move(inner));
    return a;
}

// Finds the Seq holding the statement labelled `label`, and its position.
Stmt* parent_of(Stmt& s, const std::string& label, std::size_t& pos) {
    if (s.kind == StmtKind::Atomic) return nullptr;
    if (s.kind == StmtKind::Seq)
        for (std::size_t i = 0; i < s.kids.size(); ++i)
            if (s.kids[i].kind != StmtKind::Seq && s.kids[i].init == label) {
                pos = i;
                return &s;
            }
    for (Stmt& k : s.kids)
        if (Stmt* p = parent_of(k, label, pos)) return p;
    return nullptr;
}

}  // namespace

SplitResult guard_conjunction_split(const Program& program, const SplitRequest& req, const Limits& limits) {
    if (!program.labelled) throw ContractError("the split needs a labelled program");
    const auto dot = req.site.find('.');
    if (dot == std::string::npos) throw ContractError("expected a site such as A.1, got '" + req.site + "'");
    const std::string comp_name = req.site.substr(0, dot);
    const std::string label = req.site.substr(dot + 1);
    const int ci = program.component_index(comp_name);
    if (ci < 0) throw ContractError("no component " + comp_name);

    Program p = program;
    Component& comp = p.components[static_cast<std::size_t>(ci)];
    std::size_t pos = 0;
    Stmt* seq = parent_of(comp.body, label, pos);
    if (!seq) throw ContractError("no statement labelled " + req.site);
    const Stmt target = seq->kids[pos];
    if (target.kind != StmtKind::Atomic || target.kids[0].kids.size() != 1 ||
        target.kids[0].kids[0].kind != StmtKind::If || target.kids[0].kids[0].guards.size() != 1)
        throw ContractError(req.site + " is not of the form atomic if B && C -> S fi end");
    const Stmt& iff = target.kids[0].kids[0];

    std::vector<Expr> rest;
    conjuncts(iff.guards[0], rest);
    if (!is_true(req.hoist)) {
        std::vector<Expr> hoisted;
        conjuncts(req.hoist, hoisted);
        for (const Expr& h : hoisted) {
            auto it = std::find_if(rest.begin(), rest.end(), [&](const Expr& e) { return structurally_equal(e, h); });
            if (it == rest.end())
                throw ContractError("'" + to_string(h) + "' is not a conjunct of the guard of " + req.site);
            rest.erase(it);
        }
    }
    Expr c = rest.empty() ? ex::truth() : rest.front();
    for (std::size_t i = 1; i < rest.size(); ++i) c = ex::land(c, rest[i]);

    std::string fresh = req.fresh;
    const std::set<std::string> taken(comp.labels.begin(), comp.labels.end());
    if (taken.count(fresh)) throw ContractError("label " + comp_name + "." + fresh + " is already in use");
    if (fresh.empty()) {
        const bool numeric = std::all_of(taken.begin(), taken.end(), [](const std::string& l) {
            return std::all_of(l.begin(), l.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
        });
        for (long n = 1; fresh.empty(); ++n) {
            const std::string cand = numeric ? std::to_string(n) : n == 1 ? "k" : "k" + std::to_string(n);
            if (!taken.count(cand)) fresh = cand;
        }
    }

    for (Component& k : p.components) {
        pin_labels(k.body);
        if (k.body.explicit_final.empty()) k.body.explicit_final = k.final;
    }
    Stmt skip;
    skip.kind = StmtKind::Skip;
    Stmt first = atomic_if(req.hoist, skip);
    first.explicit_label = label;
    first.asserts = target.asserts;
    first.loc = target.loc;
    Stmt second = atomic_if(c, iff.kids[0]);
    second.explicit_label = fresh;
    second.asserts = {req.hoist};
    second.loc = target.loc;
    seq->kids[pos] = std::move(first);
    seq->kids.insert(seq->kids.begin() + static_cast<std::ptrdiff_t>(pos) + 1, std::move(second));

    SplitResult r;
    r.program = auto_label(std::move(p));
    r.inserted = comp_name + "." + fresh;
    const std::string at = r.inserted;
    for (Obligation& o : check_global(r.program, limits))
        if (!o.sites.empty() && o.sites[0] == at) r.side_conditions.push_back(std::move(o));
    number(r.side_conditions);
    return r;
}

std::vector<HarnessLine> HarnessReport::divergences() const {
    std::vector<HarnessLine> out;
    for (const HarnessLine& l : lines)
        if (l.before != l.after) out.push_back(l);
    return out;
}

HarnessReport progress_equivalence(const Program& before, const Program& after, const Limits& limits) {
    const TransitionSystem a = build_state_space(before, limits);
    const TransitionSystem b = build_state_space(after, limits);
    HarnessReport r;
    r.lines.push_back({"deadlock freedom", oracle_deadlock_free(a).holds, oracle_deadlock_free(b).holds});

    std::set<std::string> bad_before, bad_after;
    for (const AssertionViolation& v : oracle_assertions(a, before)) bad_before.insert(v.site);
    for (const AssertionViolation& v : oracle_assertions(b, after)) bad_after.insert(v.site);
    for (const auto& [key, asserts] : annotation(before)) {
        const std::string site = before.components[static_cast<std::size_t>(key.first)].name + "." + key.second;
        r.lines.push_back({"assertions at " + site, !bad_before.count(site), !bad_after.count(site)});
    }

    for (const Property& prop : before.properties) {
        const Property* other = after.property(prop.name);
        if (!other) continue;
        auto verdict = [](const TransitionSystem& ts, const Property& pr) {
            switch (pr.kind) {
                case PropertyKind::Unless: return oracle_unless(ts, pr.p, pr.q).holds;
                case PropertyKind::LeadsTo: return oracle_leadsto(ts, pr.p, pr.q).holds;
                case PropertyKind::Invariant: return oracle_invariant(ts, pr.p).holds;
                case PropertyKind::Postcondition: return oracle_postcondition(ts, pr.p).holds;
                case PropertyKind::DeadlockFree: return oracle_deadlock_free(ts).holds;
            }
            return false;
        };
        r.lines.push_back({"property " + prop.name, verdict(a, prop), verdict(b, *other)});
    }

    for (std::size_t c = 0; c < before.components.size(); ++c) {
        const Component& x = before.components[c];
        const int other = after.component_index(x.name);
        if (other < 0) continue;
        const Component& y = after.components[static_cast<std::size_t>(other)];
        for (const std::string& ii : x.labels)
            for (const std::string& jj : x.labels) {
                if (ii == jj) continue;
                if (std::find(y.labels.begin(), y.labels.end(), ii) == y.labels.end() ||
                    std::find(y.labels.begin(), y.labels.end(), jj) == y.labels.end())
                    continue;
                const int ci = static_cast<int>(c);
                const bool va = oracle_leadsto(a, pc_at(before, ci, ii), pc_at(before, ci, jj)).holds;
                const bool vb = oracle_leadsto(b, pc_at(after, other, ii), pc_at(after, other, jj)).holds;
                r.lines.push_back({"pc." + x.name + " == " + x.name + "." + ii + " leadsto pc." + x.name +
                                       " == " + x.name + "." + jj,
                                   va, vb});
            }
    }
    return r;
}

}  // namespace ogp
