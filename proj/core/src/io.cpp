#include "clausecut/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace clausecut {

namespace {

bool parse_ll(const std::string& tok, long long& out) {
  if (tok.empty()) return false;
  size_t pos = 0;
  try {
    out = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == tok.size();
}

bool parse_int(const std::string& tok, int& out) {
  long long v;
  if (!parse_ll(tok, v)) return false;
  if (v < -2147483647LL || v > 2147483647LL) return false;
  out = static_cast<int>(v);
  return true;
}

Clause make_clause(std::vector<Lit> lits, int line_no) {
  try {
    return Clause(std::move(lits));
  } catch (const std::invalid_argument& e) {
    throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
  }
}

// Splits one line into whitespace-separated tokens.
std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

}  // namespace

ParsedDimacs parse_dimacs_cnf_full(std::istream& in) {
  ParsedDimacs out;
  bool have_header = false;
  int declared_vars = 0, declared_clauses = 0;
  std::vector<Lit> pending;
  bool done = false;

  std::string line;
  int line_no = 0;
  while (!done && std::getline(in, line)) {
    ++line_no;
    size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos) continue;
    if (line[i] == 'c') {
      size_t body = line.find_first_not_of(" \t", i + 1);
      out.comments.push_back(body == std::string::npos ? ""
                                                       : line.substr(body));
      continue;
    }
    if (line[i] == '%') {  // SATLIB trailer: clause section ends here
      done = true;
      break;
    }
    if (line[i] == 'p') {
      auto toks = tokens_of(line);
      if (have_header || toks.size() != 4 || toks[1] != "cnf" ||
          !parse_int(toks[2], declared_vars) ||
          !parse_int(toks[3], declared_clauses) || declared_vars < 0 ||
          declared_clauses < 0)
        throw ParseError("line " + std::to_string(line_no) +
                         ": malformed DIMACS header");
      have_header = true;
      out.formula = CnfFormula(declared_vars);
      continue;
    }
    if (!have_header)
      throw ParseError("line " + std::to_string(line_no) +
                       ": clause before DIMACS header");
    for (const std::string& tok : tokens_of(line)) {
      int v;
      if (!parse_int(tok, v))
        throw ParseError("line " + std::to_string(line_no) +
                         ": bad literal '" + tok + "'");
      if (v == 0) {
        out.formula.add_clause(make_clause(std::move(pending), line_no));
        pending.clear();
        continue;
      }
      if (std::abs(v) > declared_vars)
        throw ParseError("line " + std::to_string(line_no) + ": literal " +
                         tok + " exceeds declared variable count");
      if (static_cast<int>(out.formula.clauses().size()) >= declared_clauses)
        throw ParseError("line " + std::to_string(line_no) +
                         ": more clauses than declared");
      pending.push_back(Lit(v));
    }
  }
  if (!have_header) throw ParseError("missing DIMACS header");
  if (!pending.empty())
    throw ParseError("unterminated clause at end of input (missing 0)");
  if (static_cast<int>(out.formula.clauses().size()) != declared_clauses)
    throw ParseError("header declares " + std::to_string(declared_clauses) +
                     " clauses, found " +
                     std::to_string(out.formula.clauses().size()));
  return out;
}

CnfFormula parse_dimacs_cnf(std::istream& in) {
  return parse_dimacs_cnf_full(in).formula;
}

CnfFormula parse_dimacs_cnf(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs_cnf(in);
}

std::string serialize_dimacs_cnf(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_variables() << ' ' << f.clauses().size() << '\n';
  for (const Clause& c : f.clauses()) {
    for (Lit l : c.literals()) out << l.dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

WcnfInstance parse_wcnf(std::istream& in) {
  WcnfInstance w;
  bool legacy = false;
  bool have_legacy_top = false;
  int legacy_vars = 0;
  long long legacy_top = 0;
  bool saw_clause = false;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos) continue;
    if (line[i] == 'c') continue;
    if (line[i] == '%') break;
    auto toks = tokens_of(line);
    if (line[i] == 'p') {
      if (saw_clause || (toks.size() != 4 && toks.size() != 5) ||
          toks[1] != "wcnf" || !parse_int(toks[2], legacy_vars))
        throw ParseError("line " + std::to_string(line_no) +
                         ": malformed wcnf header");
      if (toks.size() == 5) {
        if (!parse_ll(toks[4], legacy_top) || legacy_top < 1)
          throw ParseError("line " + std::to_string(line_no) +
                           ": malformed wcnf header top");
        have_legacy_top = true;
      }
      legacy = true;
      w.num_variables = legacy_vars;
      continue;
    }

    bool hard = false;
    long long weight = 0;
    size_t first_lit = 1;
    if (toks[0] == "h") {
      hard = true;
    } else {
      if (!parse_ll(toks[0], weight))
        throw ParseError("line " + std::to_string(line_no) +
                         ": bad clause weight '" + toks[0] + "'");
      if (legacy && have_legacy_top && weight >= legacy_top) {
        hard = true;
      } else if (weight < 1) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": clause weight must be >= 1");
      }
    }

    std::vector<Lit> lits;
    bool terminated = false;
    for (size_t k = first_lit; k < toks.size(); ++k) {
      int v;
      if (!parse_int(toks[k], v))
        throw ParseError("line " + std::to_string(line_no) +
                         ": bad literal '" + toks[k] + "'");
      if (v == 0) {
        if (k + 1 != toks.size())
          throw ParseError("line " + std::to_string(line_no) +
                           ": tokens after clause terminator");
        terminated = true;
        break;
      }
      if (legacy && std::abs(v) > legacy_vars)
        throw ParseError("line " + std::to_string(line_no) + ": literal " +
                         toks[k] + " exceeds declared variable count");
      lits.push_back(Lit(v));
    }
    if (!terminated)
      throw ParseError("line " + std::to_string(line_no) +
                       ": missing clause terminator 0");
    saw_clause = true;
    Clause c = make_clause(std::move(lits), line_no);
    if (hard)
      w.add_hard(std::move(c));
    else
      w.add_soft(std::move(c), weight);
  }
  if (legacy) w.num_variables = legacy_vars;
  return w;
}

WcnfInstance parse_wcnf(const std::string& text) {
  std::istringstream in(text);
  return parse_wcnf(in);
}

std::string serialize_wcnf(const WcnfInstance& w) {
  std::ostringstream out;
  for (const Clause& c : w.hard) {
    out << 'h';
    for (Lit l : c.literals()) out << ' ' << l.dimacs();
    out << " 0\n";
  }
  for (const SoftClause& s : w.soft) {
    out << s.weight;
    for (Lit l : s.clause.literals()) out << ' ' << l.dimacs();
    out << " 0\n";
  }
  return out.str();
}

CnfOptInstance parse_cnfopt(std::istream& in) {
  ParsedDimacs parsed = parse_dimacs_cnf_full(in);
  CnfOptInstance p(std::move(parsed.formula));
  for (const std::string& comment : parsed.comments) {
    auto toks = tokens_of(comment);
    if (toks.size() != 3 || toks[0] != "obj") continue;
    int var;
    long long coef;
    if (!parse_int(toks[1], var) || !parse_ll(toks[2], coef))
      throw ParseError("bad objective comment 'c " + comment + "'");
    if (var < 1 || var > p.formula.num_variables())
      throw ParseError("objective variable " + std::to_string(var) +
                       " out of range");
    p.set_coefficient(var, coef);
  }
  return p;
}

CnfOptInstance parse_cnfopt(const std::string& text) {
  std::istringstream in(text);
  return parse_cnfopt(in);
}

std::string serialize_cnfopt(const CnfOptInstance& p) {
  std::ostringstream out;
  for (int v = 1; v < static_cast<int>(p.objective.size()); ++v)
    if (p.objective[v] != 0)
      out << "c obj " << v << ' ' << p.objective[v] << '\n';
  out << serialize_dimacs_cnf(p.formula);
  return out.str();
}

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

}  // namespace

CnfFormula load_cnf_file(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_dimacs_cnf(in);
}

WcnfInstance load_wcnf_file(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_wcnf(in);
}

CnfOptInstance load_cnfopt_file(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_cnfopt(in);
}

void save_cnfopt_file(const CnfOptInstance& p,
                      const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out << serialize_cnfopt(p);
}

}  // namespace clausecut
