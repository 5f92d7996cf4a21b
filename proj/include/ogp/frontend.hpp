#pragma once

// Text format for programs (.ogp) and proof scripts (.ogpf).

#include <string>
#include <string_view>

#include "ogp/ast.hpp"

namespace ogp {

struct SourceFile {
    std::string path;
    std::string text;
    Program program;  // labelled and resolved
};

/// Parses a program; labels it and resolves every identifier.
SourceFile parse(std::string_view text, std::string path = {});

/// Parses `proof NAME ... end` blocks and appends them to `program`.
void parse_proofs(std::string_view text, Program& program);

/// Parses a predicate over the variables, counters and labels of `program`.
Expr parse_predicate(std::string_view text, const Program& program);

/// Parses an integer expression over the variables of `program`.
Expr parse_integer(std::string_view text, const Program& program);

/// Reads `path` and parses it (and a sibling `.ogpf`, if present).
SourceFile load(const std::string& path);

struct PrintOptions {
    bool all_labels = false;     // print generated labels, not only explicit ones
    bool counters = false;       // print pc updates explicitly (implies all_labels)
};

std::string print(const Program& program, const PrintOptions& options = {});
std::string print(const ProofScript& script);
std::string print(const Property& property);

/// Structural equality of the parsed form (ignores source locations).
bool same_ast(const Program& a, const Program& b);

}  // namespace ogp
