#include "ogp/frontend.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ogp/lang.hpp"

namespace ogp {

// ---------------------------------------------------------------------------
// lexer

namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    Value value = 0;
    SourceLoc loc;
};

std::vector<Token> lex(std::string_view src) {
    static const char* const puncts[] = {"<=>", "==>", ":=", "..", "[]", "->", "==", "!=", "<=", ">=", "&&", "||",
                                         ":",   ";",   ",",  ".",  "(",  ")",  "{",  "}",  "<",  ">",  "+",  "-",
                                         "*",   "!"};
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (src.substr(i, 2) == "--") {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.loc = {line, col};
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            t.kind = Tok::Ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            t.kind = Tok::Int;
            t.text = std::string(src.substr(i, j - i));
            try {
                t.value = std::stoll(t.text);
            } catch (const std::out_of_range&) {
                throw SyntaxError("integer literal out of range", t.loc);
            }
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        bool matched = false;
        for (const char* p : puncts) {
            const std::string_view pv(p);
            if (src.substr(i, pv.size()) == pv) {
                t.kind = Tok::Punct;
                t.text = std::string(pv);
                advance(pv.size());
                out.push_back(std::move(t));
                matched = true;
                break;
            }
        }
        if (!matched) throw SyntaxError(std::string("unexpected character '") + c + "'", t.loc);
    }
    Token end;
    end.loc = {line, col};
    out.push_back(end);
    return out;
}

const std::set<std::string>& keywords() {
    static const std::set<std::string> k = {
        "program", "pre", "var", "bool", "int", "component", "skip", "if", "fi", "do", "od", "atomic", "end",
        "assert", "invariant", "property", "unless", "leadsto", "proof", "true", "false", "forall", "exists", "in",
        "local", "private", "shared", "aux", "postcondition", "deadlockfree", "immediate", "implication",
        "transitivity", "disjunction", "disjunction_theorem", "impossibility", "cancellation", "psp", "induction",
        "completion", "show", "by", "lemma", "case", "for", "as"};
    return k;
}

// ---------------------------------------------------------------------------
// parser

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    Program program() {
        Program p;
        expect_kw("program");
        p.name = ident("program name");
        while (!at_end()) {
            if (accept_kw("var")) {
                declarations(p);
            } else if (accept_kw("pre")) {
                if (p.pre) fail("duplicate precondition");
                p.pre = expr();
            } else if (is_kw("component")) {
                p.components.push_back(component());
            } else if (accept_kw("invariant")) {
                p.invariants.push_back(expr());
            } else if (accept_kw("property")) {
                p.properties.push_back(property());
            } else if (is_kw("proof")) {
                p.proofs.push_back(proof());
            } else {
                fail("expected a declaration, component, invariant, property or proof");
            }
        }
        if (p.components.empty()) fail("program has no components");
        return p;
    }

    std::vector<ProofScript> proofs() {
        std::vector<ProofScript> out;
        while (!at_end()) out.push_back(proof());
        return out;
    }

    Expr lone_expr() {
        Expr e = expr();
        if (!at_end()) fail("unexpected trailing input");
        return e;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at_end() const { return peek().kind == Tok::End; }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    SourceLoc loc() const { return peek().loc; }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw SyntaxError(msg + (t.kind == Tok::End ? " (at end of input)" : " (found '" + t.text + "')"), t.loc);
    }

    bool is_punct(const char* p, std::size_t k = 0) const {
        return peek(k).kind == Tok::Punct && peek(k).text == p;
    }
    bool is_kw(const char* kw, std::size_t k = 0) const {
        return peek(k).kind == Tok::Ident && peek(k).text == kw;
    }
    bool accept(const char* p) {
        if (!is_punct(p)) return false;
        ++pos_;
        return true;
    }
    bool accept_kw(const char* kw) {
        if (!is_kw(kw)) return false;
        ++pos_;
        return true;
    }
    void expect(const char* p) {
        if (!accept(p)) fail(std::string("expected '") + p + "'");
    }
    void expect_kw(const char* kw) {
        if (!accept_kw(kw)) fail(std::string("expected '") + kw + "'");
    }
    std::string ident(const char* what) {
        if (peek().kind != Tok::Ident || keywords().count(peek().text)) fail(std::string("expected ") + what);
        return next().text;
    }
    std::string label_name() {
        if (peek().kind == Tok::Int || (peek().kind == Tok::Ident && !keywords().count(peek().text)))
            return next().text;
        fail("expected a label");
    }
    Value integer() {
        const bool neg = accept("-");
        if (peek().kind != Tok::Int) fail("expected an integer");
        const Value v = next().value;
        return neg ? -v : v;
    }

    // -- declarations -------------------------------------------------------

    void declarations(Program& p) {
        std::vector<std::pair<std::string, SourceLoc>> names;
        do {
            const SourceLoc l = loc();
            names.emplace_back(ident("variable name"), l);
        } while (accept(","));
        if (!accept(":")) throw ResolveError("variable '" + names.front().first + "' has no domain", loc());
        VarDecl d;
        if (accept_kw("bool")) {
            d.is_bool = true;
            d.lo = 0;
            d.hi = 1;
        } else if (accept_kw("int")) {
            if (peek().kind != Tok::Int && !is_punct("-"))
                throw ResolveError("variable '" + names.front().first + "' has no domain", loc());
            d.lo = integer();
            expect("..");
            d.hi = integer();
            if (d.lo > d.hi) throw ResolveError("empty domain for '" + names.front().first + "'", loc());
        } else {
            throw ResolveError("variable '" + names.front().first + "' has no domain", loc());
        }
        if (accept_kw("local")) {
            d.scope = Scope::Local;
            d.owner = ident("owning component");
        } else if (accept_kw("private")) {
            d.scope = Scope::Private;
            d.owner = ident("owning component");
        } else {
            accept_kw("shared");
        }
        if (accept_kw("aux")) d.auxiliary = true;
        for (auto& [n, l] : names) {
            if (n == "pc") throw ResolveError("'pc' is reserved for program counters", l);
            VarDecl v = d;
            v.name = n;
            v.loc = l;
            p.vars.decls().push_back(std::move(v));
        }
    }

    Property property() {
        Property pr;
        pr.loc = loc();
        pr.name = ident("property name");
        expect(":");
        if (accept_kw("postcondition")) {
            pr.kind = PropertyKind::Postcondition;
            pr.p = expr();
        } else if (accept_kw("invariant")) {
            pr.kind = PropertyKind::Invariant;
            pr.p = expr();
        } else if (accept_kw("deadlockfree")) {
            pr.kind = PropertyKind::DeadlockFree;
        } else {
            pr.p = expr();
            if (accept_kw("leadsto")) {
                pr.kind = PropertyKind::LeadsTo;
            } else if (accept_kw("unless")) {
                pr.kind = PropertyKind::Unless;
            } else {
                fail("expected 'leadsto' or 'unless'");
            }
            pr.q = expr();
        }
        return pr;
    }

    // -- statements ---------------------------------------------------------

    Component component() {
        Component c;
        c.loc = loc();
        expect_kw("component");
        c.name = ident("component name");
        if (c.name == "pc") fail("'pc' is reserved");
        c.body = seq(true);
        expect_kw("end");
        return c;
    }

    bool starts_stmt() const {
        if (is_kw("skip") || is_kw("if") || is_kw("do") || is_kw("atomic")) return true;
        return peek().kind == Tok::Ident && !keywords().count(peek().text) && (is_punct(":=", 1) || is_punct(",", 1));
    }
    bool starts_label() const {
        return (peek().kind == Tok::Int || (peek().kind == Tok::Ident && !keywords().count(peek().text))) &&
               is_punct(":", 1);
    }

    struct Prefix {
        std::vector<Expr> asserts;
        std::string label;
        SourceLoc label_loc;
    };

    Prefix prefixes() {
        Prefix p;
        while (true) {
            if (accept("{")) {
                p.asserts.push_back(expr());
                expect("}");
            } else if (accept_kw("assert")) {
                p.asserts.push_back(expr());
            } else if (starts_label()) {
                if (!p.label.empty()) fail("two labels on one statement");
                p.label_loc = loc();
                p.label = label_name();
                expect(":");
            } else {
                return p;
            }
        }
    }

    Stmt seq(bool top) {
        Stmt s;
        s.kind = StmtKind::Seq;
        s.loc = loc();
        while (true) {
            Prefix pre = prefixes();
            if (starts_stmt()) {
                Stmt item = stmt();
                item.asserts = std::move(pre.asserts);
                item.explicit_label = std::move(pre.label);
                item.label_loc = pre.label_loc;
                s.kids.push_back(std::move(item));
                if (accept(";")) continue;
                pre = prefixes();
            }
            s.post_asserts = std::move(pre.asserts);
            if (!pre.label.empty()) {
                if (!top) throw SyntaxError("a final label may only end a component", pre.label_loc);
                s.explicit_final = std::move(pre.label);
                s.final_loc = pre.label_loc;
            }
            break;
        }
        return s;
    }

    Stmt stmt() {
        Stmt s;
        s.loc = loc();
        if (accept_kw("skip")) {
            s.kind = StmtKind::Skip;
        } else if (accept_kw("atomic")) {
            s.kind = StmtKind::Atomic;
            Stmt body = seq(false);
            if (body.kids.empty()) fail("empty atomic statement");
            s.kids.push_back(std::move(body));
            expect_kw("end");
        } else if (is_kw("if") || is_kw("do")) {
            const bool is_if = is_kw("if");
            ++pos_;
            s.kind = is_if ? StmtKind::If : StmtKind::Do;
            do {
                s.guards.push_back(expr());
                expect("->");
                Stmt body = seq(false);
                if (body.kids.empty()) fail("empty guarded command");
                s.kids.push_back(std::move(body));
            } while (accept("[]"));
            expect_kw(is_if ? "fi" : "od");
        } else {
            s.kind = StmtKind::Assign;
            std::vector<std::pair<std::string, SourceLoc>> targets;
            do {
                const SourceLoc l = loc();
                targets.emplace_back(ident("assignment target"), l);
            } while (accept(","));
            expect(":=");
            std::vector<Expr> values;
            do values.push_back(expr());
            while (accept(","));
            if (values.size() != targets.size()) fail("assignment has unequal numbers of targets and expressions");
            for (std::size_t i = 0; i < targets.size(); ++i)
                s.assigns.push_back({targets[i].first, -1, values[i], targets[i].second});
        }
        return s;
    }

    // -- proofs -------------------------------------------------------------

    ProofScript proof() {
        ProofScript s;
        s.loc = loc();
        expect_kw("proof");
        s.property = ident("property name");
        s.root = node();
        expect_kw("end");
        return s;
    }

    Expr paren() {
        expect("(");
        Expr e = expr();
        expect(")");
        return e;
    }

    ProofNode block() {
        expect("{");
        ProofNode n = node();
        expect("}");
        return n;
    }

    ProofNode node() {
        ProofNode n;
        n.loc = loc();
        if (accept_kw("immediate")) {
            n.rule = Rule::Immediate;
            const std::string comp = ident("component");
            expect(".");
            n.target = comp + "." + label_name();
        } else if (accept_kw("implication")) {
            n.rule = Rule::Implication;
        } else if (accept_kw("transitivity")) {
            n.rule = Rule::Transitivity;
            n.preds.push_back(paren());
            n.kids.push_back(block());
            n.kids.push_back(block());
        } else if (accept_kw("disjunction")) {
            if (accept_kw("for")) {
                n.rule = Rule::DisjunctionFor;
                range(n);
                n.preds.push_back(paren());
                expect(":");
                n.kids.push_back(node());
            } else {
                n.rule = Rule::Disjunction;
                cases(n, 1);
            }
        } else if (accept_kw("disjunction_theorem")) {
            n.rule = Rule::DisjunctionTheorem;
            cases(n, 2);
        } else if (accept_kw("impossibility")) {
            n.rule = Rule::Impossibility;
            n.kids.push_back(block());
        } else if (accept_kw("cancellation")) {
            n.rule = Rule::Cancellation;
            n.preds.push_back(paren());
            n.kids.push_back(block());
            n.kids.push_back(block());
        } else if (accept_kw("psp")) {
            n.rule = Rule::Psp;
            n.preds.push_back(paren());
            n.preds.push_back(paren());
            n.kids.push_back(block());
        } else if (accept_kw("induction")) {
            n.rule = Rule::Induction;
            n.measure = paren();
            expect_kw("in");
            n.lo = integer();
            expect("..");
            n.hi = integer();
            expect_kw("as");
            n.param = ident("parameter");
            n.kids.push_back(block());
        } else if (accept_kw("completion")) {
            n.rule = Rule::Completion;
            n.preds.push_back(paren());
            cases(n, 2);
        } else if (accept_kw("show")) {
            n.rule = Rule::Show;
            n.preds.push_back(paren());
            expect_kw("leadsto");
            n.preds.push_back(paren());
            expect_kw("by");
            n.kids.push_back(node());
        } else if (accept_kw("lemma")) {
            n.rule = Rule::Lemma;
            n.target = ident("property name");
        } else {
            fail("expected a proof rule");
        }
        return n;
    }

    void range(ProofNode& n) {
        n.param = ident("parameter");
        expect_kw("in");
        n.lo = integer();
        expect("..");
        n.hi = integer();
    }

    void cases(ProofNode& n, int preds_per_case) {
        expect("{");
        do {
            expect_kw("case");
            for (int i = 0; i < preds_per_case; ++i) n.preds.push_back(paren());
            expect(":");
            n.kids.push_back(node());
        } while (is_kw("case"));
        expect("}");
    }

    // -- expressions --------------------------------------------------------

    Expr at(Expr e, SourceLoc l) {
        Node n = *e;
        n.loc = l;
        return std::make_shared<const Node>(std::move(n));
    }

    Expr expr() {
        if (is_kw("forall") || is_kw("exists")) return quantifier();
        return iff();
    }

    Expr quantifier() {
        const SourceLoc l = loc();
        const Op op = next().text == "forall" ? Op::Forall : Op::Exists;
        const std::string bound = ident("bound variable");
        expect_kw("in");
        const Value lo = integer();
        expect("..");
        const Value hi = integer();
        expect(":");
        return at(ex::quant(op, bound, lo, hi, expr()), l);
    }

    Expr iff() {
        Expr e = implication();
        while (is_punct("<=>")) {
            const SourceLoc l = loc();
            ++pos_;
            e = at(ex::binary(Op::Iff, e, implication()), l);
        }
        return e;
    }

    Expr implication() {
        Expr e = disjunction();
        if (is_punct("==>")) {
            const SourceLoc l = loc();
            ++pos_;
            return at(ex::binary(Op::Implies, e, implication()), l);
        }
        return e;
    }

    Expr disjunction() {
        Expr e = conjunction();
        while (is_punct("||")) {
            const SourceLoc l = loc();
            ++pos_;
            e = at(ex::binary(Op::Or, e, conjunction()), l);
        }
        return e;
    }

    Expr conjunction() {
        Expr e = comparison();
        while (is_punct("&&")) {
            const SourceLoc l = loc();
            ++pos_;
            e = at(ex::binary(Op::And, e, comparison()), l);
        }
        return e;
    }

    Expr comparison() {
        Expr e = additive();
        static const std::pair<const char*, Op> ops[] = {{"==", Op::Eq}, {"!=", Op::Ne}, {"<=", Op::Le},
                                                         {">=", Op::Ge}, {"<", Op::Lt},  {">", Op::Gt}};
        for (const auto& [sym, op] : ops)
            if (is_punct(sym)) {
                const SourceLoc l = loc();
                ++pos_;
                return at(ex::binary(op, e, additive()), l);
            }
        return e;
    }

    Expr additive() {
        Expr e = multiplicative();
        while (is_punct("+") || is_punct("-")) {
            const SourceLoc l = loc();
            const Op op = next().text == "+" ? Op::Add : Op::Sub;
            e = at(ex::binary(op, e, multiplicative()), l);
        }
        return e;
    }

    Expr multiplicative() {
        Expr e = unary();
        while (is_punct("*")) {
            const SourceLoc l = loc();
            ++pos_;
            e = at(ex::binary(Op::Mul, e, unary()), l);
        }
        return e;
    }

    Expr unary() {
        const SourceLoc l = loc();
        if (accept("!")) return at(ex::unary(Op::Not, unary()), l);
        if (accept("-")) return at(ex::unary(Op::Neg, unary()), l);
        return atom();
    }

    Expr atom() {
        const SourceLoc l = loc();
        if (peek().kind == Tok::Int) return at(ex::lit(next().value), l);
        if (accept_kw("true")) return at(ex::truth(), l);
        if (accept_kw("false")) return at(ex::falsity(), l);
        if (is_kw("forall") || is_kw("exists")) return quantifier();
        if (accept("(")) {
            Expr e = expr();
            expect(")");
            return e;
        }
        if (is_kw("pc") && is_punct(".", 1)) {
            pos_ += 2;
            Node n{.op = Op::Dotted, .name = "pc", .member = ident("component"), .loc = l};
            return std::make_shared<const Node>(std::move(n));
        }
        const std::string name = ident("expression");
        if (accept(".")) {
            Node n{.op = Op::Dotted, .name = name, .member = label_name(), .loc = l};
            return std::make_shared<const Node>(std::move(n));
        }
        Node n{.op = Op::Name, .name = name, .loc = l};
        return std::make_shared<const Node>(std::move(n));
    }
};

}  // namespace

SourceFile parse(std::string_view text, std::string path) {
    Parser parser(text);
    Program raw = parser.program();
    SourceFile f;
    f.path = std::move(path);
    f.text = std::string(text);
    f.program = auto_label(std::move(raw));
    return f;
}

void parse_proofs(std::string_view text, Program& program) {
    Parser parser(text);
    std::vector<ProofScript> scripts = parser.proofs();
    for (ProofScript& s : scripts) program.proofs.push_back(std::move(s));
    resolve(program);
}

Expr parse_predicate(std::string_view text, const Program& program) {
    Parser parser(text);
    return resolve_predicate(program, parser.lone_expr());
}

Expr parse_integer(std::string_view text, const Program& program) {
    Parser parser(text);
    return resolve_integer(program, parser.lone_expr());
}

SourceFile load(const std::string& path) {
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        if (!in) throw Error("cannot read " + p.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    SourceFile f = parse(slurp(path), path);
    std::filesystem::path scripts(path);
    scripts.replace_extension(".ogpf");
    if (scripts.string() != path && std::filesystem::exists(scripts)) parse_proofs(slurp(scripts), f.program);
    return f;
}

// ---------------------------------------------------------------------------
// printer

namespace {

std::string paren(const Expr& e) { return "(" + to_string(e) + ")"; }

class Printer {
public:
    Printer(const Program& p, const PrintOptions& o) : prog_(p), opt_(o) {
        if (opt_.counters) opt_.all_labels = true;
    }

    std::string run() {
        os_ << "program " << prog_.name << "\n";
        for (const VarDecl& d : prog_.vars.decls()) {
            if (d.is_pc) continue;
            os_ << "var " << d.name << " : ";
            if (d.is_bool)
                os_ << "bool";
            else
                os_ << "int " << d.lo << ".." << d.hi;
            if (d.scope == Scope::Local) os_ << " local " << d.owner;
            if (d.scope == Scope::Private) os_ << " private " << d.owner;
            if (d.auxiliary) os_ << " aux";
            os_ << "\n";
        }
        if (prog_.pre) os_ << "pre " << to_string(prog_.pre) << "\n";
        for (const Component& c : prog_.components) component(c);
        for (const Expr& i : prog_.invariants) os_ << "invariant " << to_string(i) << "\n";
        for (const Property& p : prog_.properties) os_ << print(p) << "\n";
        for (const ProofScript& s : prog_.proofs) os_ << print(s);
        return os_.str();
    }

private:
    const Program& prog_;
    PrintOptions opt_;
    std::ostringstream os_;
    const Component* comp_ = nullptr;

    static std::string indent(int n) { return std::string(static_cast<std::size_t>(n) * 4, ' '); }

    std::string label_of(const Stmt& s) const {
        if (opt_.all_labels && !s.init.empty()) return s.init + ": ";
        return s.explicit_label.empty() ? "" : s.explicit_label + ": ";
    }

    std::string pc_to(const std::string& target) const {
        return "pc." + comp_->name + " := " + comp_->name + "." + target;
    }

    void component(const Component& c) {
        comp_ = &c;
        os_ << "component " << c.name << "\n";
        block(c.body, 1, true);
        os_ << "end\n";
    }

    void block(const Stmt& seq, int depth, bool top) {
        for (std::size_t i = 0; i < seq.kids.size(); ++i) {
            const Stmt& s = seq.kids[i];
            for (const Expr& a : s.asserts) os_ << indent(depth) << "{" << to_string(a) << "}\n";
            os_ << indent(depth) << label_of(s);
            statement(s, depth);
            os_ << (i + 1 < seq.kids.size() ? ";\n" : "\n");
        }
        for (const Expr& a : seq.post_asserts) os_ << indent(depth) << "{" << to_string(a) << "}\n";
        if (top) {
            const std::string fin = opt_.all_labels && !seq.fin.empty() ? seq.fin : seq.explicit_final;
            if (!fin.empty()) os_ << indent(depth) << fin << ":\n";
        }
    }

    void statement(const Stmt& s, int depth) {
        switch (s.kind) {
            case StmtKind::Skip:
                os_ << (opt_.counters ? "atomic skip; " + pc_to(s.fin) + " end" : "skip");
                return;
            case StmtKind::Assign:
                os_ << assignment(s);
                if (opt_.counters) os_ << " || " << pc_to(s.fin);
                return;
            case StmtKind::Atomic:
                os_ << "atomic " << inline_seq(s.kids[0]);
                if (opt_.counters) os_ << "; " << pc_to(s.fin);
                os_ << " end";
                return;
            case StmtKind::If:
            case StmtKind::Do: {
                const bool is_if = s.kind == StmtKind::If;
                os_ << (is_if ? "if " : "do ");
                for (std::size_t i = 0; i < s.guards.size(); ++i) {
                    if (i) os_ << indent(depth) << "[] ";
                    if (opt_.counters)
                        os_ << "<" << to_string(s.guards[i]) << " -> " << pc_to(s.kids[i].init) << ">\n";
                    else
                        os_ << to_string(s.guards[i]) << " ->\n";
                    block(s.kids[i], depth + 1, false);
                }
                if (!is_if && opt_.counters)
                    os_ << indent(depth) << "[] <" << to_string(ex::lnot(ex::disj(s.guards))) << " -> "
                        << pc_to(s.fin) << ">\n";
                os_ << indent(depth) << (is_if ? "fi" : "od");
                return;
            }
            case StmtKind::Seq: os_ << inline_seq(s); return;
        }
    }

    static std::string assignment(const Stmt& s) {
        std::string lhs, rhs;
        for (const Assignment& a : s.assigns) {
            lhs += (lhs.empty() ? "" : ", ") + a.target;
            rhs += (rhs.empty() ? "" : ", ") + to_string(a.value);
        }
        return lhs + " := " + rhs;
    }

    // Atomic bodies carry no labels and print on one line.
    static std::string inline_seq(const Stmt& seq) {
        std::string out;
        for (std::size_t i = 0; i < seq.kids.size(); ++i) {
            if (i) out += "; ";
            for (const Expr& a : seq.kids[i].asserts) out += "{" + to_string(a) + "} ";
            out += inline_stmt(seq.kids[i]);
        }
        for (const Expr& a : seq.post_asserts) out += " {" + to_string(a) + "}";
        return out;
    }

    static std::string inline_stmt(const Stmt& s) {
        switch (s.kind) {
            case StmtKind::Skip: return "skip";
            case StmtKind::Assign: return assignment(s);
            case StmtKind::Atomic: return "atomic " + inline_seq(s.kids[0]) + " end";
            case StmtKind::Seq: return inline_seq(s);
            case StmtKind::If:
            case StmtKind::Do: {
                std::string out = s.kind == StmtKind::If ? "if " : "do ";
                for (std::size_t i = 0; i < s.guards.size(); ++i) {
                    if (i) out += " [] ";
                    out += to_string(s.guards[i]) + " -> " + inline_seq(s.kids[i]);
                }
                return out + (s.kind == StmtKind::If ? " fi" : " od");
            }
        }
        return {};
    }
};

void print_node(const ProofNode& n, int depth, std::ostringstream& os) {
    const std::string pad(static_cast<std::size_t>(depth) * 4, ' ');
    auto sub = [&](const ProofNode& k) {
        os << " {\n";
        print_node(k, depth + 1, os);
        os << pad << "}";
    };
    auto case_list = [&](std::size_t per_case) {
        os << " {\n";
        for (std::size_t i = 0; i < n.kids.size(); ++i) {
            os << pad << "    case";
            for (std::size_t j = 0; j < per_case; ++j)
                os << " " << paren(n.preds[n.preds.size() - n.kids.size() * per_case + i * per_case + j]);
            os << " :\n";
            print_node(n.kids[i], depth + 2, os);
        }
        os << pad << "}";
    };
    os << pad;
    switch (n.rule) {
        case Rule::Immediate: os << "immediate " << n.target; break;
        case Rule::Implication: os << "implication"; break;
        case Rule::Transitivity:
            os << "transitivity " << paren(n.preds[0]);
            sub(n.kids[0]);
            sub(n.kids[1]);
            break;
        case Rule::Disjunction:
            os << "disjunction";
            case_list(1);
            break;
        case Rule::DisjunctionFor:
            os << "disjunction for " << n.param << " in " << n.lo << ".." << n.hi << " " << paren(n.preds[0])
               << " :\n";
            print_node(n.kids[0], depth + 1, os);
            return;
        case Rule::Impossibility:
            os << "impossibility";
            sub(n.kids[0]);
            break;
        case Rule::DisjunctionTheorem:
            os << "disjunction_theorem";
            case_list(2);
            break;
        case Rule::Cancellation:
            os << "cancellation " << paren(n.preds[0]);
            sub(n.kids[0]);
            sub(n.kids[1]);
            break;
        case Rule::Psp:
            os << "psp " << paren(n.preds[0]) << " " << paren(n.preds[1]);
            sub(n.kids[0]);
            break;
        case Rule::Induction:
            os << "induction " << paren(n.measure) << " in " << n.lo << ".." << n.hi << " as " << n.param;
            sub(n.kids[0]);
            break;
        case Rule::Completion:
            os << "completion " << paren(n.preds[0]);
            case_list(2);
            break;
        case Rule::Show:
            os << "show " << paren(n.preds[0]) << " leadsto " << paren(n.preds[1]) << " by\n";
            print_node(n.kids[0], depth + 1, os);
            return;
        case Rule::Lemma: os << "lemma " << n.target; break;
    }
    os << "\n";
}

}  // namespace

std::string print(const Program& program, const PrintOptions& options) { return Printer(program, options).run(); }

std::string print(const ProofScript& script) {
    std::ostringstream os;
    os << "proof " << script.property << "\n";
    print_node(script.root, 1, os);
    os << "end\n";
    return os.str();
}

std::string print(const Property& p) {
    std::string out = "property " + p.name + " : ";
    switch (p.kind) {
        case PropertyKind::Unless: return out + paren(p.p) + " unless " + paren(p.q);
        case PropertyKind::LeadsTo: return out + paren(p.p) + " leadsto " + paren(p.q);
        case PropertyKind::Postcondition: return out + "postcondition " + to_string(p.p);
        case PropertyKind::Invariant: return out + "invariant " + to_string(p.p);
        case PropertyKind::DeadlockFree: return out + "deadlockfree";
    }
    return out;
}

// ---------------------------------------------------------------------------
// structural equality

namespace {

bool eq_expr(const Expr& a, const Expr& b) {
    if (!a || !b) return !a && !b;
    return structurally_equal(a, b);
}

bool eq_exprs(const std::vector<Expr>& a, const std::vector<Expr>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!eq_expr(a[i], b[i])) return false;
    return true;
}

bool eq_stmt(const Stmt& a, const Stmt& b) {
    if (a.kind != b.kind || a.explicit_label != b.explicit_label || a.explicit_final != b.explicit_final ||
        a.init != b.init || a.fin != b.fin || !eq_exprs(a.asserts, b.asserts) ||
        !eq_exprs(a.post_asserts, b.post_asserts) || !eq_exprs(a.guards, b.guards) ||
        a.assigns.size() != b.assigns.size() || a.kids.size() != b.kids.size())
        return false;
    for (std::size_t i = 0; i < a.assigns.size(); ++i)
        if (a.assigns[i].target != b.assigns[i].target || !eq_expr(a.assigns[i].value, b.assigns[i].value))
            return false;
    for (std::size_t i = 0; i < a.kids.size(); ++i)
        if (!eq_stmt(a.kids[i], b.kids[i])) return false;
    return true;
}

bool eq_node(const ProofNode& a, const ProofNode& b) {
    if (a.rule != b.rule || a.target != b.target || a.param != b.param || a.lo != b.lo || a.hi != b.hi ||
        !eq_expr(a.measure, b.measure) || !eq_exprs(a.preds, b.preds) || a.kids.size() != b.kids.size())
        return false;
    for (std::size_t i = 0; i < a.kids.size(); ++i)
        if (!eq_node(a.kids[i], b.kids[i])) return false;
    return true;
}

}  // namespace

bool same_ast(const Program& a, const Program& b) {
    if (a.name != b.name || !eq_expr(a.pre, b.pre) || a.vars.size() != b.vars.size() ||
        a.components.size() != b.components.size() || !eq_exprs(a.invariants, b.invariants) ||
        a.properties.size() != b.properties.size() || a.proofs.size() != b.proofs.size())
        return false;
    for (std::size_t i = 0; i < a.vars.size(); ++i) {
        const VarDecl &x = a.vars[i], &y = b.vars[i];
        if (x.name != y.name || x.is_bool != y.is_bool || x.lo != y.lo || x.hi != y.hi || x.scope != y.scope ||
            x.owner != y.owner || x.auxiliary != y.auxiliary || x.labels != y.labels)
            return false;
    }
    for (std::size_t i = 0; i < a.components.size(); ++i)
        if (a.components[i].name != b.components[i].name || a.components[i].labels != b.components[i].labels ||
            !eq_stmt(a.components[i].body, b.components[i].body))
            return false;
    for (std::size_t i = 0; i < a.properties.size(); ++i) {
        const Property &x = a.properties[i], &y = b.properties[i];
        if (x.name != y.name || x.kind != y.kind || !eq_expr(x.p, y.p) || !eq_expr(x.q, y.q)) return false;
    }
    for (std::size_t i = 0; i < a.proofs.size(); ++i)
        if (a.proofs[i].property != b.proofs[i].property || !eq_node(a.proofs[i].root, b.proofs[i].root))
            return false;
    return true;
}

}  // namespace ogp
