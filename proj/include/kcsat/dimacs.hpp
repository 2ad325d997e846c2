#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kcsat/cnf.hpp"
#include "kcsat/csp.hpp"

namespace kcsat {

/// Variable-map comment line "c map <boolean> <csp variable> <value>".
struct DimacsMapEntry {
    int boolean_var;
    std::string variable;
    Value value;
};

/// Standard DIMACS CNF: "p cnf <vars> <clauses>" then 0-terminated clause
/// lines. Map entries, when given, are written as comments before the header.
std::string write_dimacs(const CnfFormula&, std::span<const DimacsMapEntry> map = {});

struct ParsedDimacs {
    CnfFormula cnf;
    std::vector<DimacsMapEntry> map;
};

/// Accepts arbitrary whitespace and ignores comments other than "c map".
/// Throws ParseError (with line number) on a malformed header, a literal out
/// of the declared range, a clause count mismatch, tautological clauses, or
/// an unterminated final clause.
ParsedDimacs parse_dimacs(std::string_view text);

/// Map comments for an encoding of this instance.
std::vector<DimacsMapEntry> map_entries_for(const CspInstance&, const VarMap&);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

} // namespace kcsat
