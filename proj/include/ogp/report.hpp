#pragma once

// Report rendering. The machine format is line-oriented `key: value`
// records separated by blank lines.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ogp/oracle.hpp"
#include "ogp/safety.hpp"
#include "ogp/transform.hpp"

namespace ogp {

enum class Format { Human, Machine };

std::string render_obligations(const Program& program, const std::vector<Obligation>& obligations, Format format);

struct PropertyVerdict {
    const Property* property = nullptr;
    OracleResult result;
};

/// Oracle verdicts for the declared properties, or only `only` if non-empty.
/// Throws ContractError if `only` names no property.
std::vector<PropertyVerdict> oracle_properties(const TransitionSystem& ts, const Program& program,
                                               const std::string& only = {});

std::string render_oracle(const TransitionSystem& ts, const std::vector<PropertyVerdict>& verdicts,
                          const std::vector<AssertionViolation>& violations, Format format);

std::string render_split(const SplitResult& split, const HarnessReport& harness, Format format);

using Record = std::map<std::string, std::string>;

/// Reads the machine format back.
std::vector<Record> parse_records(std::string_view text);

}  // namespace ogp
