#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "clausecut/formula.hpp"

namespace clausecut {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ParsedDimacs {
  CnfFormula formula;
  std::vector<std::string> comments;  // comment bodies, 'c ' prefix stripped
};

// DIMACS CNF. The header clause count is enforced; a SATLIB-style '%' line
// ends the clause section early. Comments are collected on read and dropped
// on write.
ParsedDimacs parse_dimacs_cnf_full(std::istream& in);
CnfFormula parse_dimacs_cnf(std::istream& in);
CnfFormula parse_dimacs_cnf(const std::string& text);
std::string serialize_dimacs_cnf(const CnfFormula& f);

// WCNF, 2023 style: "h <lits> 0" hard, "<weight> <lits> 0" soft. The legacy
// "p wcnf <vars> <clauses> <top>" header is accepted on read (weight >= top
// means hard); writing always produces the 2023 style.
WcnfInstance parse_wcnf(std::istream& in);
WcnfInstance parse_wcnf(const std::string& text);
std::string serialize_wcnf(const WcnfInstance& w);

// CNFOPT text format: a DIMACS CNF body plus one "c obj <var> <coef>" comment
// line per nonzero objective coefficient (written before the header,
// ascending by variable). A plain CNF parses as an all-zero objective.
CnfOptInstance parse_cnfopt(std::istream& in);
CnfOptInstance parse_cnfopt(const std::string& text);
std::string serialize_cnfopt(const CnfOptInstance& p);

CnfFormula load_cnf_file(const std::filesystem::path& path);
WcnfInstance load_wcnf_file(const std::filesystem::path& path);
CnfOptInstance load_cnfopt_file(const std::filesystem::path& path);
void save_cnfopt_file(const CnfOptInstance& p,
                      const std::filesystem::path& path);

}  // namespace clausecut
