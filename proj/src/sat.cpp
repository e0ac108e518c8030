#include "pinwheel/sat.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace pinwheel {

int CnfFormula::occurrences(int var) const {
  int n = 0;
  for (const auto& c : clauses)
    for (int lit : c)
      if (std::abs(lit) == var) {
        ++n;
        break;
      }
  return n;
}

CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula f;
  long declared_clauses = -1;
  bool header_seen = false;
  std::string line;
  long line_no = 0;
  std::vector<int> current;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      long nv, nc;
      if (!(ls >> p >> fmt >> nv >> nc) || fmt != "cnf")
        throw ParseError("malformed problem line", line_no);
      f.num_vars = (int)nv;
      declared_clauses = nc;
      header_seen = true;
      continue;
    }
    if (!header_seen) throw ParseError("clause before problem line", line_no);
    long lit;
    while (ls >> lit) {
      if (lit == 0) {
        f.clauses.push_back(current);
        current.clear();
      } else {
        if (std::abs(lit) > f.num_vars) throw ParseError("literal out of range", line_no);
        current.push_back((int)lit);
      }
    }
  }
  if (!header_seen) throw ParseError("missing problem line", 0);
  if (!current.empty()) throw ParseError("clause not terminated by 0", line_no);
  if (declared_clauses >= 0 && (long)f.clauses.size() != declared_clauses)
    throw ParseError("clause count does not match the header", line_no);
  return f;
}

CnfFormula parse_dimacs_text(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

std::string format_dimacs(const CnfFormula& f) {
  std::ostringstream os;
  os << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
  for (const auto& c : f.clauses) {
    for (int lit : c) os << lit << " ";
    os << "0\n";
  }
  return os.str();
}

bool is_34sat(const CnfFormula& f) {
  std::vector<int> occ((size_t)f.num_vars + 1, 0);
  for (const auto& c : f.clauses) {
    std::set<int> lits(c.begin(), c.end());
    if (lits.size() != c.size() || c.empty() || c.size() > 3) return false;
    std::set<int> vars;
    for (int lit : c) {
      if (lits.count(-lit)) return false;
      vars.insert(std::abs(lit));
    }
    for (int v : vars)
      if (++occ[(size_t)v] > 4) return false;
  }
  return true;
}

bool satisfies(const CnfFormula& f, const std::vector<bool>& assignment) {
  for (const auto& c : f.clauses) {
    bool ok = false;
    for (int lit : c) {
      bool val = assignment[(size_t)(std::abs(lit) - 1)];
      if ((lit > 0) == val) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

SatResult brute_force_sat(const CnfFormula& f, int var_limit) {
  if (f.num_vars > var_limit) throw std::length_error("variable count exceeds the exhaustive-search limit");
  std::vector<bool> assignment((size_t)f.num_vars, false);
  for (std::uint64_t mask = 0; mask < (1ull << f.num_vars); ++mask) {
    for (int v = 0; v < f.num_vars; ++v) assignment[(size_t)v] = (mask >> v) & 1;
    if (satisfies(f, assignment)) return {true, assignment};
  }
  return {false, {}};
}

CnfFormula gen_random_34sat(int n, int m, std::uint64_t seed) {
  if (n < 3 || 3 * m > 4 * n) throw std::invalid_argument("infeasible 3,4-SAT shape");
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    std::mt19937_64 rng(seed * 1000003 + attempt);
    CnfFormula f;
    f.num_vars = n;
    std::vector<int> budget((size_t)n + 1, 4);
    bool stuck = false;
    for (int j = 0; j < m && !stuck; ++j) {
      std::vector<int> avail;
      for (int v = 1; v <= n; ++v)
        if (budget[(size_t)v] > 0) avail.push_back(v);
      if (avail.size() < 3) {
        stuck = true;
        break;
      }
      std::vector<int> clause;
      for (int k = 0; k < 3; ++k) {
        size_t pick = (size_t)(rng() % avail.size());
        int v = avail[pick];
        avail.erase(avail.begin() + (long)pick);
        --budget[(size_t)v];
        clause.push_back(rng() % 2 ? v : -v);
      }
      f.clauses.push_back(std::move(clause));
    }
    if (!stuck) return f;
  }
  throw std::invalid_argument("could not draw a 3,4-SAT formula of the requested shape");
}

std::vector<bool> parse_assignment_text(const std::string& text, int num_vars) {
  std::vector<bool> out((size_t)num_vars, false);
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "v" || tok == "0") continue;
    long lit = std::stol(tok);
    if (lit == 0) continue;
    if (std::abs(lit) > num_vars) throw std::invalid_argument("assignment literal out of range");
    out[(size_t)(std::abs(lit) - 1)] = lit > 0;
  }
  return out;
}

}  // namespace pinwheel
