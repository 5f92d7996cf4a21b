#include "ogp/expr.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace ogp {

namespace ex {

namespace {
Expr make(Node n) { return std::make_shared<const Node>(std::move(n)); }
}  // namespace

Expr lit(Value v) { return make(Node{.op = Op::IntLit, .value = v}); }
Expr boolean(bool b) { return make(Node{.op = Op::BoolLit, .value = b ? 1 : 0}); }
Expr truth() {
    static const Expr t = boolean(true);
    return t;
}
Expr falsity() {
    static const Expr f = boolean(false);
    return f;
}
Expr var(int slot, std::string name) {
    return make(Node{.op = Op::Var, .slot = slot, .name = std::move(name)});
}
Expr label(std::string component, std::string id, Value index) {
    return make(Node{.op = Op::Label, .value = index, .name = std::move(component), .member = std::move(id)});
}
Expr param(std::string name) { return make(Node{.op = Op::Param, .name = std::move(name)}); }
Expr unary(Op op, Expr a) { return make(Node{.op = op, .kids = {std::move(a)}}); }
Expr binary(Op op, Expr a, Expr b) { return make(Node{.op = op, .kids = {std::move(a), std::move(b)}}); }
Expr quant(Op op, std::string bound, Value lo, Value hi, Expr body) {
    return make(Node{.op = op, .name = std::move(bound), .lo = lo, .hi = hi, .kids = {std::move(body)}});
}
Expr lnot(Expr a) { return unary(Op::Not, std::move(a)); }
Expr land(Expr a, Expr b) { return binary(Op::And, std::move(a), std::move(b)); }
Expr lor(Expr a, Expr b) { return binary(Op::Or, std::move(a), std::move(b)); }
Expr implies(Expr a, Expr b) { return binary(Op::Implies, std::move(a), std::move(b)); }
Expr iff(Expr a, Expr b) { return binary(Op::Iff, std::move(a), std::move(b)); }
Expr eq(Expr a, Expr b) { return binary(Op::Eq, std::move(a), std::move(b)); }

Expr conj(const std::vector<Expr>& parts) {
    if (parts.empty()) return truth();
    Expr acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = land(acc, parts[i]);
    return acc;
}

Expr disj(const std::vector<Expr>& parts) {
    if (parts.empty()) return falsity();
    Expr acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = lor(acc, parts[i]);
    return acc;
}

}  // namespace ex

int VarTable::find(const std::string& name) const {
    for (std::size_t i = 0; i < decls_.size(); ++i)
        if (decls_[i].name == name) return static_cast<int>(i);
    return -1;
}

std::string VarTable::render(int slot, Value v) const {
    const VarDecl& d = decls_[static_cast<std::size_t>(slot)];
    if (d.is_bool) return v ? "true" : "false";
    if (d.is_pc && v >= 0 && v < static_cast<Value>(d.labels.size()))
        return d.owner + "." + d.labels[static_cast<std::size_t>(v)];
    return std::to_string(v);
}

std::string VarTable::render(const Valuation& v, const std::vector<int>& slots) const {
    std::string out;
    for (int s : slots) {
        if (!out.empty()) out += ", ";
        out += decls_[static_cast<std::size_t>(s)].name + "=" + render(s, v[static_cast<std::size_t>(s)]);
    }
    return out;
}

std::string VarTable::render(const Valuation& v) const {
    std::vector<int> all(decls_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return render(v, all);
}

// ---------------------------------------------------------------------------
// substitution

namespace {

Expr rebuild(const Expr& e, std::vector<Expr> kids) {
    Node n = *e;
    n.kids = std::move(kids);
    return std::make_shared<const Node>(std::move(n));
}

Expr subst_rec(const Expr& e, const Bindings& b) {
    if (e->op == Op::Var) {
        for (const auto& [slot, rep] : b)
            if (slot == e->slot) return rep;
        return e;
    }
    if (e->kids.empty()) return e;
    std::vector<Expr> kids;
    kids.reserve(e->kids.size());
    bool changed = false;
    for (const Expr& k : e->kids) {
        kids.push_back(subst_rec(k, b));
        changed |= kids.back() != k;
    }
    return changed ? rebuild(e, std::move(kids)) : e;
}

Expr inst_rec(const Expr& e, const std::string& name, const Expr& rep) {
    if (e->op == Op::Param) return e->name == name ? rep : e;
    if ((e->op == Op::Forall || e->op == Op::Exists) && e->name == name) return e;  // shadowed
    if (e->kids.empty()) return e;
    std::vector<Expr> kids;
    bool changed = false;
    for (const Expr& k : e->kids) {
        kids.push_back(inst_rec(k, name, rep));
        changed |= kids.back() != k;
    }
    return changed ? rebuild(e, std::move(kids)) : e;
}

}  // namespace

Expr substitute(const Expr& p, const Bindings& bindings) {
    for (std::size_t i = 0; i < bindings.size(); ++i)
        for (std::size_t j = i + 1; j < bindings.size(); ++j)
            if (bindings[i].first == bindings[j].first)
                throw ContractError("substitution has duplicate target (slot " +
                                    std::to_string(bindings[i].first) + ")");
    if (bindings.empty()) return p;
    return subst_rec(p, bindings);
}

Expr instantiate(const Expr& p, const std::string& name, Value v) { return inst_rec(p, name, ex::lit(v)); }

// ---------------------------------------------------------------------------
// evaluation

namespace {

using Env = std::vector<std::pair<std::string, Value>>;

Value checked(Op op, Value a, Value b) {
    Value r = 0;
    bool overflow = false;
    switch (op) {
        case Op::Add: overflow = __builtin_add_overflow(a, b, &r); break;
        case Op::Sub: overflow = __builtin_sub_overflow(a, b, &r); break;
        case Op::Mul: overflow = __builtin_mul_overflow(a, b, &r); break;
        default: break;
    }
    if (overflow) throw EvalError("arithmetic overflow");
    return r;
}

Value eval_rec(const Node& n, std::span<const Value> v, Env& env) {
    switch (n.op) {
        case Op::IntLit:
        case Op::BoolLit:
        case Op::Label: return n.value;
        case Op::Var:
            if (n.slot < 0 || static_cast<std::size_t>(n.slot) >= v.size())
                throw EvalError("variable '" + n.name + "' outside valuation");
            return v[static_cast<std::size_t>(n.slot)];
        case Op::Param:
            for (auto it = env.rbegin(); it != env.rend(); ++it)
                if (it->first == n.name) return it->second;
            throw EvalError("unbound parameter '" + n.name + "'");
        case Op::Name:
        case Op::Dotted: throw EvalError("unresolved identifier '" + n.name + "'");
        case Op::Not: return eval_rec(*n.kids[0], v, env) ? 0 : 1;
        case Op::Neg: return checked(Op::Sub, 0, eval_rec(*n.kids[0], v, env));
        case Op::Add:
        case Op::Sub:
        case Op::Mul: return checked(n.op, eval_rec(*n.kids[0], v, env), eval_rec(*n.kids[1], v, env));
        case Op::Eq: return eval_rec(*n.kids[0], v, env) == eval_rec(*n.kids[1], v, env);
        case Op::Ne: return eval_rec(*n.kids[0], v, env) != eval_rec(*n.kids[1], v, env);
        case Op::Lt: return eval_rec(*n.kids[0], v, env) < eval_rec(*n.kids[1], v, env);
        case Op::Le: return eval_rec(*n.kids[0], v, env) <= eval_rec(*n.kids[1], v, env);
        case Op::Gt: return eval_rec(*n.kids[0], v, env) > eval_rec(*n.kids[1], v, env);
        case Op::Ge: return eval_rec(*n.kids[0], v, env) >= eval_rec(*n.kids[1], v, env);
        case Op::And: return eval_rec(*n.kids[0], v, env) && eval_rec(*n.kids[1], v, env);
        case Op::Or: return eval_rec(*n.kids[0], v, env) || eval_rec(*n.kids[1], v, env);
        case Op::Implies: return !eval_rec(*n.kids[0], v, env) || eval_rec(*n.kids[1], v, env);
        case Op::Iff: return (eval_rec(*n.kids[0], v, env) != 0) == (eval_rec(*n.kids[1], v, env) != 0);
        case Op::Forall:
        case Op::Exists: {
            const bool forall = n.op == Op::Forall;
            env.emplace_back(n.name, 0);
            Value result = forall ? 1 : 0;
            for (Value i = n.lo; i <= n.hi; ++i) {
                env.back().second = i;
                const bool b = eval_rec(*n.kids[0], v, env) != 0;
                if (forall && !b) { result = 0; break; }
                if (!forall && b) { result = 1; break; }
            }
            env.pop_back();
            return result;
        }
    }
    throw EvalError("bad expression node");
}

}  // namespace

Value evaluate(const Expr& p, std::span<const Value> v) {
    Env env;
    return eval_rec(*p, v, env);
}

bool holds(const Expr& p, std::span<const Value> v) { return evaluate(p, v) != 0; }

// ---------------------------------------------------------------------------
// folding

namespace {

bool is_const(const Expr& e) {
    return e->op == Op::IntLit || e->op == Op::BoolLit || e->op == Op::Label;
}
bool is_true(const Expr& e) { return e->op == Op::BoolLit && e->value != 0; }
bool is_false(const Expr& e) { return e->op == Op::BoolLit && e->value == 0; }

bool boolean_valued(Op op) {
    switch (op) {
        case Op::Not:
        case Op::Eq:
        case Op::Ne:
        case Op::Lt:
        case Op::Le:
        case Op::Gt:
        case Op::Ge:
        case Op::And:
        case Op::Or:
        case Op::Implies:
        case Op::Iff:
        case Op::Forall:
        case Op::Exists: return true;
        default: return false;
    }
}

}  // namespace

Expr fold(const Expr& p) {
    if (p->kids.empty()) return p;
    std::vector<Expr> kids;
    for (const Expr& k : p->kids) kids.push_back(fold(k));
    switch (p->op) {
        case Op::And:
            if (is_false(kids[0]) || is_false(kids[1])) return ex::falsity();
            if (is_true(kids[0])) return kids[1];
            if (is_true(kids[1])) return kids[0];
            break;
        case Op::Or:
            if (is_true(kids[0]) || is_true(kids[1])) return ex::truth();
            if (is_false(kids[0])) return kids[1];
            if (is_false(kids[1])) return kids[0];
            break;
        case Op::Implies:
            if (is_false(kids[0]) || is_true(kids[1])) return ex::truth();
            if (is_true(kids[0])) return kids[1];
            if (is_false(kids[1])) return fold(ex::lnot(kids[0]));
            break;
        case Op::Not:
            if (kids[0]->op == Op::Not) return kids[0]->kids[0];
            break;
        default: break;
    }
    const bool quantifier = p->op == Op::Forall || p->op == Op::Exists;
    if (!quantifier && std::all_of(kids.begin(), kids.end(), is_const)) {
        try {
            Node n = *p;
            n.kids = kids;
            const Value v = evaluate(std::make_shared<const Node>(std::move(n)), {});
            return boolean_valued(p->op) ? ex::boolean(v != 0) : ex::lit(v);
        } catch (const EvalError&) {
            // leave overflowing constants for evaluation to report
        }
    }
    if (quantifier && is_const(kids[0])) return ex::boolean(kids[0]->value != 0);
    return rebuild(p, std::move(kids));
}

// ---------------------------------------------------------------------------
// inspection

namespace {
void collect(const Expr& e, std::vector<int>& out) {
    if (e->op == Op::Var) out.push_back(e->slot);
    for (const Expr& k : e->kids) collect(k, out);
}
}  // namespace

std::vector<int> free_slots(const Expr& p) {
    std::vector<int> out;
    collect(p, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> free_slots(const std::vector<Expr>& ps) {
    std::vector<int> out;
    for (const Expr& p : ps) collect(p, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool mentions_params(const Expr& p) {
    if (p->op == Op::Param) return true;
    return std::any_of(p->kids.begin(), p->kids.end(), [](const Expr& k) { return mentions_params(k); });
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a == b) return true;
    if (a->op != b->op || a->kids.size() != b->kids.size()) return false;
    switch (a->op) {
        case Op::IntLit:
        case Op::BoolLit:
            if (a->value != b->value) return false;
            break;
        case Op::Label:
            if (a->name != b->name || a->member != b->member) return false;
            break;
        case Op::Var:
        case Op::Param:
        case Op::Name:
            if (a->name != b->name) return false;
            break;
        case Op::Dotted:
            if (a->name != b->name || a->member != b->member) return false;
            break;
        case Op::Forall:
        case Op::Exists:
            if (a->name != b->name || a->lo != b->lo || a->hi != b->hi) return false;
            break;
        default: break;
    }
    for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!structurally_equal(a->kids[i], b->kids[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// printing

namespace {

int precedence(Op op) {
    switch (op) {
        case Op::Forall:
        case Op::Exists: return 0;
        case Op::Iff: return 1;
        case Op::Implies: return 2;
        case Op::Or: return 3;
        case Op::And: return 4;
        case Op::Eq:
        case Op::Ne:
        case Op::Lt:
        case Op::Le:
        case Op::Gt:
        case Op::Ge: return 5;
        case Op::Add:
        case Op::Sub: return 6;
        case Op::Mul: return 7;
        case Op::Not:
        case Op::Neg: return 8;
        default: return 9;
    }
}

const char* symbol(Op op) {
    switch (op) {
        case Op::Add: return " + ";
        case Op::Sub: return " - ";
        case Op::Mul: return " * ";
        case Op::Eq: return " == ";
        case Op::Ne: return " != ";
        case Op::Lt: return " < ";
        case Op::Le: return " <= ";
        case Op::Gt: return " > ";
        case Op::Ge: return " >= ";
        case Op::And: return " && ";
        case Op::Or: return " || ";
        case Op::Implies: return " ==> ";
        case Op::Iff: return " <=> ";
        default: return " ? ";
    }
}

void print(const Expr& e, std::ostream& os);

void print_child(const Expr& k, int min_prec, std::ostream& os) {
    if (precedence(k->op) < min_prec) {
        os << '(';
        print(k, os);
        os << ')';
    } else {
        print(k, os);
    }
}

void print(const Expr& e, std::ostream& os) {
    switch (e->op) {
        case Op::IntLit: os << e->value; return;
        case Op::BoolLit: os << (e->value ? "true" : "false"); return;
        case Op::Label:
        case Op::Dotted: os << e->name << '.' << e->member; return;
        case Op::Var:
        case Op::Param:
        case Op::Name: os << e->name; return;
        case Op::Not:
            os << '!';
            print_child(e->kids[0], 9, os);
            return;
        case Op::Neg:
            os << '-';
            print_child(e->kids[0], 9, os);
            return;
        case Op::Forall:
        case Op::Exists:
            os << (e->op == Op::Forall ? "forall " : "exists ") << e->name << " in " << e->lo << ".." << e->hi
               << " : ";
            print(e->kids[0], os);
            return;
        default: break;
    }
    const int p = precedence(e->op);
    // Comparisons are non-associative; implication associates to the right;
    // the remaining binary operators associate to the left.
    int left = p, right = p + 1;
    if (p == 5) left = 6;
    if (e->op == Op::Implies) { left = p + 1; right = p; }
    if (e->op == Op::Iff) { left = p + 1; right = p + 1; }
    print_child(e->kids[0], left, os);
    os << symbol(e->op);
    print_child(e->kids[1], right, os);
}

}  // namespace

std::string to_string(const Expr& p) {
    std::ostringstream os;
    print(p, os);
    return os.str();
}

// ---------------------------------------------------------------------------
// validity

namespace {

std::uint64_t space_size(const VarTable& vars, const std::vector<int>& slots, const Limits& limits) {
    std::uint64_t total = 1;
    for (int s : slots) {
        const auto n = static_cast<std::uint64_t>(vars[static_cast<std::size_t>(s)].size());
        if (n == 0) throw ContractError("empty domain for '" + vars[static_cast<std::size_t>(s)].name + "'");
        if (total > limits.max_valuations / n)
            throw ResourceError("valuation cap exceeded (" + std::to_string(limits.max_valuations) +
                                ") while enumerating " + std::to_string(slots.size()) + " variables");
        total *= n;
    }
    return total;
}

Valuation lowest(const VarTable& vars) {
    Valuation v(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) v[i] = vars[i].lo;
    return v;
}

// Odometer over `slots`, first slot most significant, values ascending.
// Stops early when `visit` returns false.
void enumerate(const VarTable& vars, const std::vector<int>& slots, Valuation& v,
               const std::function<bool(const Valuation&)>& visit) {
    for (int s : slots) v[static_cast<std::size_t>(s)] = vars[static_cast<std::size_t>(s)].lo;
    while (true) {
        if (!visit(v)) return;
        int i = static_cast<int>(slots.size()) - 1;
        for (; i >= 0; --i) {
            auto& cell = v[static_cast<std::size_t>(slots[static_cast<std::size_t>(i)])];
            if (cell < vars[static_cast<std::size_t>(slots[static_cast<std::size_t>(i)])].hi) {
                ++cell;
                break;
            }
            cell = vars[static_cast<std::size_t>(slots[static_cast<std::size_t>(i)])].lo;
        }
        if (i < 0) return;
    }
}

}  // namespace

ValidityResult valid(const Expr& p, const VarTable& vars, const Limits& limits) {
    ValidityResult r;
    r.relevant = free_slots(p);
    space_size(vars, r.relevant, limits);
    Valuation v = lowest(vars);
    enumerate(vars, r.relevant, v, [&](const Valuation& cur) {
        if (!holds(p, cur)) {
            r.valid = false;
            r.counterexample = cur;
            return false;
        }
        return true;
    });
    return r;
}

ValidityResult implies(const Expr& p, const Expr& q, const VarTable& vars, const Limits& limits) {
    return valid(ex::implies(p, q), vars, limits);
}

std::vector<Valuation> models(const Expr& p, const VarTable& vars, const Limits& limits) {
    std::vector<int> all(vars.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    space_size(vars, all, limits);
    std::vector<Valuation> out;
    Valuation v = lowest(vars);
    enumerate(vars, all, v, [&](const Valuation& cur) {
        if (holds(p, cur)) out.push_back(cur);
        return true;
    });
    return out;
}

}  // namespace ogp
