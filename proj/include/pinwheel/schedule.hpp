#pragma once

#include "pinwheel/instance.hpp"

#include <optional>
#include <vector>

namespace pinwheel {

inline constexpr int kHoliday = -1;

// One period of a periodic schedule. Slots hold indices into the expanded-job
// list of the instance the schedule is validated against, or kHoliday.
struct Schedule {
  std::vector<int> slots;

  long period() const { return (long)slots.size(); }
  long holidays() const;
  Rat holiday_fraction() const;
};

struct Violation {
  int job = kHoliday;        // expanded-job index, or kHoliday for malformed schedules
  Int window_start = 0;      // witness interval [start, start+length)
  Int window_length = 0;
  std::string message;
};

// Valid iff every window of length L contains at least floor(L / a_i)
// occurrences of job i, for every L and every start. For integer instances
// this reduces to: every job occurs, and every cyclic gap between consecutive
// occurrences is at most the period. For rational instances all window
// lengths up to p * (1 + ceil(max_period / p)) are checked, which bounds the
// per-period occurrence rate and is therefore conclusive.
std::optional<Violation> validate_schedule(const PinwheelInstance& inst, const Schedule& sched);

// Same criterion restricted to sub-windows of an explicit slot window
// [t0, t0 + slots.size()). Not conclusive for the infinite schedule; used for
// spot-checking expansions whose full period is out of reach.
std::optional<Violation> validate_window(const PinwheelInstance& inst,
                                         const std::vector<int>& slots, const Int& t0 = 0);

std::string format_schedule(const Schedule& sched);
Schedule parse_schedule_text(const std::string& text);

}  // namespace pinwheel
