#pragma once

// Finite-domain predicates: expression trees over data variables, program
// counters and label literals, with simultaneous substitution, evaluation
// and validity by exhaustive enumeration.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ogp/error.hpp"

namespace ogp {

using Value = std::int64_t;

enum class Op {
    IntLit,
    BoolLit,
    Label,   // label literal `X.2`; value is the label's index in X's pc domain
    Var,     // program variable (data or pc); slot indexes the valuation
    Param,   // quantifier-bound or proof-template parameter
    Name,    // unresolved identifier (parser output only)
    Dotted,  // unresolved `a.b` (parser output only)
    Not,
    Neg,
    Add,
    Sub,
    Mul,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
    Implies,
    Iff,
    Forall,
    Exists,
};

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
    Op op;
    Value value = 0;     // literal value, label index
    int slot = -1;       // Var
    std::string name;    // Var/Param/Name/bound variable; component for Label/Dotted
    std::string member;  // label id for Label, rhs of Dotted
    Value lo = 0, hi = 0;  // quantifier range
    std::vector<Expr> kids;
    SourceLoc loc;
};

namespace ex {
Expr lit(Value v);
Expr boolean(bool b);
Expr truth();
Expr falsity();
Expr var(int slot, std::string name);
Expr label(std::string component, std::string id, Value index);
Expr param(std::string name);
Expr unary(Op op, Expr a);
Expr binary(Op op, Expr a, Expr b);
Expr quant(Op op, std::string bound, Value lo, Value hi, Expr body);
Expr lnot(Expr a);
Expr land(Expr a, Expr b);
Expr lor(Expr a, Expr b);
Expr implies(Expr a, Expr b);
Expr iff(Expr a, Expr b);
Expr eq(Expr a, Expr b);
Expr conj(const std::vector<Expr>& parts);
Expr disj(const std::vector<Expr>& parts);
}  // namespace ex

enum class Scope { Local, Private, Shared };

struct VarDecl {
    std::string name;
    bool is_bool = false;
    Value lo = 0, hi = 1;
    Scope scope = Scope::Shared;
    std::string owner;  // component for local/private
    bool auxiliary = false;
    bool is_pc = false;
    std::vector<std::string> labels;  // pc domain, in order
    SourceLoc loc;

    Value size() const { return hi - lo + 1; }
};

using Valuation = std::vector<Value>;

/// Total map from declared variables (pc variables included) to values.
class VarTable {
public:
    VarTable() = default;
    explicit VarTable(std::vector<VarDecl> decls) : decls_(std::move(decls)) {}

    const std::vector<VarDecl>& decls() const { return decls_; }
    std::vector<VarDecl>& decls() { return decls_; }
    std::size_t size() const { return decls_.size(); }
    const VarDecl& operator[](std::size_t i) const { return decls_[i]; }
    int find(const std::string& name) const;

    /// Renders a value of variable `slot` (`true`, `3`, `X.2`).
    std::string render(int slot, Value v) const;
    std::string render(const Valuation& v) const;
    std::string render(const Valuation& v, const std::vector<int>& slots) const;

private:
    std::vector<VarDecl> decls_;
};

using Bindings = std::vector<std::pair<int, Expr>>;

/// Simultaneous substitution p[x1,...,xn := E1,...,En]. Targets must be distinct.
Expr substitute(const Expr& p, const Bindings& bindings);

/// Replaces free occurrences of parameter `name` by literal `v`.
Expr instantiate(const Expr& p, const std::string& name, Value v);

/// Constant folding only; the result is logically equivalent.
Expr fold(const Expr& p);

Value evaluate(const Expr& p, std::span<const Value> v);
bool holds(const Expr& p, std::span<const Value> v);

/// Sorted, deduplicated program-variable slots occurring in `p`.
std::vector<int> free_slots(const Expr& p);
std::vector<int> free_slots(const std::vector<Expr>& ps);
bool mentions_params(const Expr& p);

bool structurally_equal(const Expr& a, const Expr& b);

std::string to_string(const Expr& p);

struct Limits {
    std::uint64_t max_valuations = 10'000'000;
    std::uint64_t max_states = 1'000'000;
};

struct ValidityResult {
    bool valid = true;
    std::optional<Valuation> counterexample;  // full valuation; irrelevant slots at `lo`
    std::vector<int> relevant;                // slots the verdict depends on
};

/// Decides validity over the declared finite domains. The counterexample is
/// the lexicographically least falsifying valuation in declaration order.
ValidityResult valid(const Expr& p, const VarTable& vars, const Limits& limits = {});
ValidityResult implies(const Expr& p, const Expr& q, const VarTable& vars, const Limits& limits = {});

/// Every valuation of `vars` satisfying `p`, in lexicographic order.
std::vector<Valuation> models(const Expr& p, const VarTable& vars, const Limits& limits = {});

}  // namespace ogp
