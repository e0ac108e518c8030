// Test-only reference implementations, kept independent of the library's
// solver internals: these work on explicit slot sequences and recompute all
// bookkeeping from the prefix instead of walking an indexed state space.
#pragma once

#include "pinwheel/instance.hpp"
#include "pinwheel/schedule.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace pinwheel::testing {

// every integer instance with at most `max_m` jobs and periods in [1, max_period]
inline std::vector<PinwheelInstance> instance_catalog(int max_m, long max_period) {
  std::vector<PinwheelInstance> out;
  std::vector<long> periods;
  auto emit = [&] {
    PinwheelInstance inst;
    for (long p : periods) inst.add(Rat(p));
    out.push_back(inst);
  };
  std::function<void(long)> rec = [&](long low) {
    if (!periods.empty()) emit();
    if ((int)periods.size() == max_m) return;
    for (long p = low; p <= max_period; ++p) {
      periods.push_back(p);
      rec(p);
      periods.pop_back();
    }
  };
  rec(1);
  return out;
}

// waits[i] = slots since job i last ran in the explicit prefix (period if never)
inline std::vector<long> waits_from_prefix(const std::vector<long>& periods,
                                           const std::vector<int>& prefix) {
  std::vector<long> w(periods.size());
  for (size_t i = 0; i < periods.size(); ++i) {
    long wait = (long)prefix.size();
    for (long t = (long)prefix.size() - 1; t >= 0; --t)
      if (prefix[(size_t)t] == (int)i) {
        wait = (long)prefix.size() - 1 - t;
        break;
      }
    w[i] = std::min(wait, periods[i]);  // saturate: anything >= period is equally dead
  }
  return w;
}

// Brute-force schedulability by depth-first search over explicit sequences.
// A repeated wait profile along the current path closes a periodic schedule;
// exhausting all distinct profiles proves unschedulability.
inline std::optional<bool> sequence_search_schedulable(const PinwheelInstance& inst,
                                                       std::size_t node_budget = 5'000'000) {
  if (inst.empty()) return true;
  auto jobs = expand_jobs(inst);
  std::vector<long> periods;
  for (const auto& j : jobs) periods.push_back((long)num(j.period).convert_to<long>());
  const int m = (int)periods.size();

  std::set<std::vector<long>> visited;
  std::size_t nodes = 0;
  bool budget_hit = false;

  std::vector<int> prefix;
  std::function<bool(const std::vector<long>&, std::set<std::vector<long>>&)> dfs =
      [&](const std::vector<long>& w, std::set<std::vector<long>>& on_path) -> bool {
    if (++nodes > node_budget) {
      budget_hit = true;
      return false;
    }
    if (on_path.count(w)) return true;  // cycle of wait profiles
    if (visited.count(w)) return false;
    visited.insert(w);
    on_path.insert(w);
    for (int choice = -1; choice < m; ++choice) {
      bool dead = false;
      std::vector<long> next(w.size());
      for (int i = 0; i < m; ++i) {
        if (i == choice) {
          next[(size_t)i] = 0;
          continue;
        }
        next[(size_t)i] = w[(size_t)i] + 1;
        if (next[(size_t)i] >= periods[(size_t)i]) dead = true;  // would overshoot its period
      }
      if (dead) continue;
      if (dfs(next, on_path)) return true;
    }
    on_path.erase(w);
    return false;
  };

  // try every starting profile; saturated profiles subsume the rest
  std::vector<long> start(periods.size());
  std::function<bool(size_t)> all_starts = [&](size_t i) -> bool {
    if (i == periods.size()) {
      std::set<std::vector<long>> on_path;
      return dfs(start, on_path);
    }
    for (long v = 0; v < periods[i]; ++v) {
      start[i] = v;
      if (all_starts(i + 1)) return true;
      if (budget_hit) return false;
    }
    return false;
  };
  bool found = all_starts(0);
  if (budget_hit) return std::nullopt;
  return found;
}

// Max holiday fraction over all valid periodic schedules with period at most
// prod(periods), by plain enumeration of sequences with gap pruning. Only
// usable on tiny instances; returns nullopt on budget exhaustion or when no
// valid periodic schedule exists.
inline std::optional<std::optional<Rat>> enumerate_max_holiday(const PinwheelInstance& inst,
                                                               std::size_t node_budget = 20'000'000) {
  auto jobs = expand_jobs(inst);
  std::vector<long> periods;
  Int prod = 1;
  for (const auto& j : jobs) {
    periods.push_back((long)num(j.period).convert_to<long>());
    prod *= num(j.period);
  }
  long max_p = (long)prod.convert_to<long>();
  const int m = (int)periods.size();
  std::size_t nodes = 0;
  bool budget_hit = false;
  std::optional<Rat> best;

  std::vector<int> seq;
  std::function<void()> dfs = [&]() {
    if (++nodes > node_budget) {
      budget_hit = true;
      return;
    }
    long len = (long)seq.size();
    if (len > 0) {
      Schedule s;
      s.slots = seq;
      if (!validate_schedule(inst, s)) {
        Rat h = s.holiday_fraction();
        if (!best || h > *best) best = h;
      }
    }
    if (len == max_p || budget_hit) return;
    // prune: internal gap already exceeding a period can never recover
    auto w = waits_from_prefix(periods, seq);
    for (int i = 0; i < m; ++i)
      if (w[(size_t)i] >= periods[(size_t)i] &&
          std::find(seq.begin(), seq.end(), i) != seq.end())
        return;
    // prune: a first occurrence later than a_i - 1 cannot be fixed by the wrap
    for (int i = 0; i < m; ++i)
      if (std::find(seq.begin(), seq.end(), i) == seq.end() && len >= periods[(size_t)i])
        return;
    for (int choice = -1; choice < m && !budget_hit; ++choice) {
      seq.push_back(choice == -1 ? kHoliday : choice);
      dfs();
      seq.pop_back();
    }
  };
  dfs();
  if (budget_hit) return std::nullopt;
  return std::make_optional(best);
}

}  // namespace pinwheel::testing
