#pragma once

#include "pinwheel/repr.hpp"

#include <vector>

namespace pinwheel {

struct FoldJob {
  int id;
  Rat period;
};

struct FoldStep {
  enum class Kind { Merge, Monotone };
  Kind kind;
  int result_id;
  int source_a;       // Merge: the longer-period source (scheduled first); Monotone: the replaced job
  int source_b = -1;  // Merge only
  Rat result_period;
};

struct FoldResult {
  std::vector<FoldJob> folded;
  std::vector<FoldStep> steps;  // in application order
  int next_id;
};

// Repeatedly merges the two longest periods (or clamps the longest down to
// theta) until no period exceeds theta. Ties break toward the lowest id.
FoldResult fold(std::vector<FoldJob> jobs, const Rat& theta, int first_free_id);
FoldResult fold(const PinwheelInstance& inst, const Rat& theta);  // ids 0..N-1 over expanded jobs

// Rewrites a schedule of the folded jobs into one for the original jobs by
// replaying the fold steps backwards as substitution directives.
Repr unfold_schedule(Repr repr_of_folded, const std::vector<FoldStep>& steps);

struct DensityTooHigh : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConstructionFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Schedules any instance (rational periods allowed) with density at most 1/2:
// folding with theta = 2 leaves a single job, which then runs every slot.
Repr schedule_density_half(const PinwheelInstance& inst);

// Carves the occurrence stream of `host_job` into round-robin shares: `q` new
// jobs whose effective period is q times the host's. Returns the new ids.
std::pair<Repr, std::vector<int>> partition_substitute(Repr repr, int host_job, long q,
                                                       int first_free_id);

// Scheduler for instances whose periods are all at least f1 and whose density
// clears 1 - (1+ln 2)/(1+sqrt(f1)) - 3/(2 f1). Construction: divisible chains
// are carved directly; otherwise periods are rounded down onto a dyadic grid
// (keeping the top bits above sqrt(f1)) and packed class by class into
// power-of-two slot streams. The result is validated by the caller; failure
// to place every job raises ConstructionFailed.
Repr schedule_small_jobs(const PinwheelInstance& inst, const Int& f1);

}  // namespace pinwheel
