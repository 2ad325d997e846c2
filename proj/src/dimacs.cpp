#include "kcsat/dimacs.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "kcsat/error.hpp"

namespace kcsat {

std::string write_dimacs(const CnfFormula& cnf, std::span<const DimacsMapEntry> map) {
    std::ostringstream out;
    for (const DimacsMapEntry& e : map)
        out << "c map " << e.boolean_var << ' ' << e.variable << ' ' << e.value << '\n';
    out << "p cnf " << cnf.num_vars() << ' ' << cnf.size() << '\n';
    for (const Clause& c : cnf.clauses()) {
        for (int lit : c.lits()) out << lit << ' ';
        out << "0\n";
    }
    return out.str();
}

ParsedDimacs parse_dimacs(std::string_view text) {
    ParsedDimacs result;
    int declared_vars = -1;
    long declared_clauses = -1;
    long parsed_clauses = 0;
    std::vector<int> lits;
    bool clause_open = false;
    int line_no = 0;
    int last_content_line = 0;

    std::istringstream stream{std::string(text)};
    std::string line;
    while (std::getline(stream, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue; // blank line
        if (first == "c") {
            std::string kind;
            if (ls >> kind && kind == "map") {
                DimacsMapEntry e;
                if (!(ls >> e.boolean_var >> e.variable >> e.value))
                    throw ParseError(line_no, "malformed map comment");
                result.map.push_back(std::move(e));
            }
            continue;
        }
        if (first == "p") {
            std::string fmt;
            if (declared_vars >= 0)
                throw ParseError(line_no, "duplicate header");
            if (!(ls >> fmt >> declared_vars >> declared_clauses) || fmt != "cnf" ||
                declared_vars < 0 || declared_clauses < 0)
                throw ParseError(line_no, "malformed header; expected \"p cnf <vars> <clauses>\"");
            std::string extra;
            if (ls >> extra) throw ParseError(line_no, "trailing tokens after header");
            result.cnf.ensure_num_vars(declared_vars);
            continue;
        }
        if (declared_vars < 0)
            throw ParseError(line_no, "clause data before header");

        // Literal tokens; the first token was already consumed.
        std::string tok = first;
        do {
            int lit;
            try {
                std::size_t used = 0;
                lit = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ParseError(line_no, "not a literal: \"" + tok + "\"");
            }
            last_content_line = line_no;
            if (lit == 0) {
                ++parsed_clauses;
                try {
                    result.cnf.add(Clause(lits));
                } catch (const Error& e) {
                    throw ParseError(line_no, e.what());
                }
                lits.clear();
                clause_open = false;
            } else {
                if (lit_var(lit) > declared_vars)
                    throw ParseError(line_no, "literal " + tok + " out of range; header declares " +
                                                  std::to_string(declared_vars) + " variables");
                lits.push_back(lit);
                clause_open = true;
            }
        } while (ls >> tok);
    }
    if (clause_open)
        throw ParseError(last_content_line, "clause not terminated by 0 before end of input");
    if (declared_vars < 0)
        throw ParseError(line_no, "missing header");
    if (parsed_clauses != declared_clauses)
        throw ParseError(line_no == 0 ? 1 : line_no,
                         "header declares " + std::to_string(declared_clauses) +
                             " clauses, found " + std::to_string(parsed_clauses));
    return result;
}

std::vector<DimacsMapEntry> map_entries_for(const CspInstance& inst, const VarMap& map) {
    std::vector<DimacsMapEntry> entries;
    entries.reserve(map.booleans());
    for (int v = 0; v < map.csp_variables(); ++v)
        for (int i = 0; i < map.domain_size(v); ++i)
            entries.push_back({map.boolean(v, i), inst.variables[v], inst.domains[v][i]});
    return entries;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write \"" + path + "\"");
    out << text;
}

} // namespace kcsat
