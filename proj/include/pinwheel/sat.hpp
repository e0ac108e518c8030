#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pinwheel {

// Clause literals are signed 1-based variable indices (DIMACS convention).
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  int occurrences(int var) const;  // clauses containing the variable, either sign
};

struct ParseError : std::runtime_error {
  long line;
  ParseError(std::string msg, long line_no) : std::runtime_error(std::move(msg)), line(line_no) {}
};

CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs_text(const std::string& text);
std::string format_dimacs(const CnfFormula& f);

// at most 3 distinct literals per clause, no clause with x and not-x,
// every variable in at most 4 clauses
bool is_34sat(const CnfFormula& f);

struct SatResult {
  bool satisfiable = false;
  std::vector<bool> assignment;  // indexed by variable - 1 when satisfiable
};

// exhaustive truth-table search; refuses more than `var_limit` variables
SatResult brute_force_sat(const CnfFormula& f, int var_limit = 24);

bool satisfies(const CnfFormula& f, const std::vector<bool>& assignment);

// Seed-deterministic random formula with exactly three distinct variables per
// clause and every variable in at most four clauses. Requires 3*m <= 4*n.
CnfFormula gen_random_34sat(int n, int m, std::uint64_t seed);

std::vector<bool> parse_assignment_text(const std::string& text, int num_vars);

}  // namespace pinwheel
