#pragma once

#include "pinwheel/instance.hpp"
#include "pinwheel/offsets.hpp"
#include "pinwheel/sat.hpp"

#include <map>

namespace pinwheel {

struct Not34Sat : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SplitFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WitnessFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DensityExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotDivisibleChain : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// first `count` primes strictly greater than v, ascending
std::vector<Int> primes_above(const Int& v, int count);

// Prime representatives for the literals of a formula: each literal gets one
// of the first 2n primes above max(m, n); job periods derive from these.
struct LiteralReps {
  int n = 0, m = 0;
  Int v;
  std::vector<Int> pos, neg;  // rep1 per variable, 1-based var - 1

  const Int& rep1(int lit) const { return lit > 0 ? pos[(size_t)(lit - 1)] : neg[(size_t)(-lit - 1)]; }
  Int rep2(int lit) const { return 2 * n * rep1(lit) * rep1(lit); }
  Int b(int lit) const { return rep1(lit) * rep1(lit) - rep1(lit); }
  Int f(int var) const { return 2 * n * pos[(size_t)(var - 1)] * neg[(size_t)(var - 1)]; }
  Int clause_rep2(const CnfFormula& f, int j) const;
  Rat clause_sum(const CnfFormula& f) const;
};
LiteralReps make_reps(const CnfFormula& f);

// job multiset encoding a 3-SAT formula as exact-period scheduling
PinwheelInstance red_eps(const CnfFormula& f);

// red_eps padded to density exactly 1 with binary-encoded filler multiplicity
PinwheelInstance red_concise(const CnfFormula& f);

// the ladder of n allowed job periods for one variable of a 3,4-SAT formula
std::vector<Int> allowed_periods(int ind, const CnfFormula& f);

// chain jobs as counts per ladder level
using LevelCounts = std::map<long, Int>;

Rat level_density(const LevelCounts& jobs, const std::vector<Int>& periods);

// fills density d (0 <= d <= 1/n, d*P integral) with ladder periods, greedily
// from the shortest; the sum comes out exactly d
LevelCounts greedy_jobs(int ind, const Rat& d, const CnfFormula& f);

// same, but with a fixed warm start on levels 2..n-1 and the greedy pass
// starting from level 1; requires d >= periods[0] / (n * periods[1])
LevelCounts warm_greedy_jobs(int ind, const Rat& d, const CnfFormula& f);

// the full density-1 reduction from 3,4-SAT; jobs carry role tags
PinwheelInstance red_ps(const CnfFormula& f);

// saturating flow that routes each variable's spare density to its own or the
// next variable's subschedule; all values stay within [0, clause_sum]
struct FlowAssignment {
  std::vector<Rat> d4, d5;  // index i-1 holds the values for variable i, i in [1, n-1]
};
FlowAssignment flow_construct(const std::vector<Rat>& d3, const Rat& clause_sum);

// merges ladder jobs downward: whole groups of periods[i] collapse into
// periods[i-1] while the level index stays above `level`; density is preserved
LevelCounts combine_jobs(const LevelCounts& jobs, const std::vector<Int>& periods, long level);

// Splits one variable's warm jobs between its own ladder (kept) and the next
// variable's ladder (converted), consuming the auxiliary list g entirely.
// `rate` is periods_i[0] / (2n). Conversions are recorded for callers that
// need to map converted jobs back to their sources.
struct ConversionRecord {
  long g_level;   // level in the next variable's ladder
  Int count;      // converted jobs of that level
  long wg_level;  // source level in this variable's ladder
  Int rate;       // source jobs consumed per converted job
};
struct SplitResult {
  LevelCounts kept;       // levels of periods_i
  LevelCounts converted;  // levels of periods_{i+1}
  std::vector<ConversionRecord> conversions;
};
SplitResult split_jobs(const std::vector<Int>& periods_i, const std::vector<Int>& periods_next,
                       LevelCounts wg, LevelCounts g, const Int& rate);

// equisatisfiable 3,4-SAT: one fresh variable per occurrence, equality forced
// by a cycle of two-literal clauses
CnfFormula tovey_transform(const CnfFormula& f);

// Extends a valid exact-period assignment for `a` with a divisible chain `b`
// (periods multiples of lcm(a), each dividing the next), placing the chain in
// the idle steps. Returns the combined instance (a's groups then b's).
struct EpsFillResult {
  PinwheelInstance combined;
  OffsetAssignment offsets;
};
EpsFillResult eps_fill(const PinwheelInstance& a, const OffsetAssignment& a_offsets,
                       const PinwheelInstance& b);

// Builds residue classes for every job of red_ps(f) from a satisfying
// assignment; the result passes validate_offsets.
struct WitnessResult {
  PinwheelInstance instance;  // red_ps(f)
  OffsetAssignment offsets;
};
WitnessResult build_eps_witness(const CnfFormula& f, const std::vector<bool>& assignment);

}  // namespace pinwheel
