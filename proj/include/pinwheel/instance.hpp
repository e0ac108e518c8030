#pragma once

#include "pinwheel/numbers.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pinwheel {

// Role a job group plays when an instance was produced by a reduction.
// Plain instances leave this empty.
struct JobTag {
  std::string role;  // "rep2", "f", "clause", "greedy", "warm", "filler", ...
  long var = -1;     // variable index (1-based) where applicable
  long clause = -1;  // clause index (1-based) where applicable
  long level = -1;   // allowed-period level (0-based) for greedy/warm jobs
  bool negated = false;

  bool empty() const { return role.empty(); }
  std::string describe() const;
};

// One group of identical jobs: `multiplicity` jobs of the same period.
struct JobGroup {
  Rat period;         // >= 1
  Int multiplicity;   // >= 1
  JobTag tag;
};

// Multiset of periodic jobs. Groups are addressed by index (their stable id).
struct PinwheelInstance {
  std::vector<JobGroup> groups;

  void add(Rat period, Int multiplicity = 1, JobTag tag = {});
  Rat density() const;          // sum multiplicity/period, exact
  Int total_jobs() const;       // sum of multiplicities
  bool all_integer() const;
  Rat max_period() const;       // 0 for the empty instance
  Rat min_period() const;       // 0 for the empty instance
  bool empty() const { return groups.empty(); }
};

PinwheelInstance scale(const PinwheelInstance& inst, const Rat& alpha);   // alpha > 0
PinwheelInstance floor_periods(const PinwheelInstance& inst);             // error if a floor drops below 1

// A single job copy, produced by expanding multiplicities. Explicit schedules
// and the state-space solver address jobs through these handles.
struct ExpandedJob {
  int group = -1;  // index into PinwheelInstance::groups
  Int copy = 0;    // 0-based copy number within the group
  Rat period;
};

// Expands multiplicities into individual jobs. Throws if the total exceeds `limit`.
std::vector<ExpandedJob> expand_jobs(const PinwheelInstance& inst, std::uint64_t limit = 1u << 20);

// Text format: one job per line, "period[/denominator][ xMULT]". '#' starts a comment.
PinwheelInstance parse_instance(std::istream& in);
PinwheelInstance parse_instance_text(const std::string& text);
std::string format_instance(const PinwheelInstance& inst);

// Tag sidecar: one line per group, "index role [var=..] [clause=..] [level=..] [neg]".
std::string format_tags(const PinwheelInstance& inst);

}  // namespace pinwheel
