#pragma once

#include "pinwheel/offsets.hpp"
#include "pinwheel/schedule.hpp"

#include <cstdint>
#include <optional>

namespace pinwheel {

struct ExactOptions {
  std::uint64_t state_budget = 10'000'000;   // max states of the walk graph
  std::uint64_t search_budget = 1'000'000;   // max nodes for the residue search
};

ExactOptions exact_options_from_env();

struct StateBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SearchBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoCycle : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Walks the graph over states (time since each job last ran); a directed
// cycle yields a periodic schedule, exhaustion proves none exists.
// Integer periods only.
struct ExactResult {
  bool schedulable = false;
  std::optional<Schedule> schedule;  // passes validate_schedule when present
};
ExactResult solve_exact(const PinwheelInstance& inst, const ExactOptions& opts = {});

// Largest fraction of idle slots over all periodic schedules of the instance,
// computed as the maximum mean weight of a cycle in the state graph with idle
// transitions weighted 1. Throws NoCycle for unschedulable instances.
struct HolidayFraction {
  Rat fraction;
  Schedule cycle;  // a periodic schedule attaining the fraction
};
HolidayFraction max_holiday_fraction(const PinwheelInstance& inst, const ExactOptions& opts = {});

// Exact-period residues: one offset per expanded job, valid iff all pairwise
// congruence constraints modulo gcd(a_i, a_j) hold.
struct EpsSearchResult {
  bool found = false;
  OffsetAssignment assignment;  // per group, count-1 blocks
};
EpsSearchResult solve_eps_offsets(const PinwheelInstance& inst, const ExactOptions& opts = {});

}  // namespace pinwheel
