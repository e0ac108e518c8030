#pragma once

#include "pinwheel/schedule.hpp"

#include <memory>
#include <unordered_map>
#include <vector>

namespace pinwheel {

// Substitution directives layered on top of an explicit base schedule.
// Applying the directive list in order transforms the base, slot by slot,
// into the represented infinite schedule. Every rule is a function of the
// absolute time index, so overlapping windows always agree.
struct Repr;

struct Directive {
  enum class Kind { FoldMerge, FoldMonotone, HolidayInsert, PlaceInHolidays, Partition };
  Kind kind;

  // FoldMerge: occurrences of `merged` alternate job_a, job_b (job_a first).
  int merged = -1, job_a = -1, job_b = -1;
  // FoldMonotone: occurrences of `from` become `to`.
  int from = -1, to = -1;
  // HolidayInsert: a holiday after every `every` slots.
  Int every = 0;
  // PlaceInHolidays: holidays are filled with the inner schedule, in order.
  std::shared_ptr<const Repr> inner;
  // Partition: occurrences of `part_job` rotate through `part_ids`.
  int part_job = -1;
  std::vector<int> part_ids;

  static Directive fold_merge(int merged, int job_a, int job_b);
  static Directive fold_monotone(int from, int to);
  static Directive holiday_insert(Int every);
  static Directive place_in_holidays(Repr inner);
  static Directive partition(int job, std::vector<int> ids);
};

struct Repr {
  Schedule base;
  std::vector<Directive> directives;

  Int period() const;  // structural period of the represented schedule
};

// Evaluator with per-layer prefix caches. Costs are polynomial in the window
// length and the number of directives; positions may be arbitrarily large.
class Expander {
 public:
  explicit Expander(const Repr& repr);

  int slot_at(const Int& t) const;
  Int count_job(int job, const Int& t) const;       // occurrences in [0, t)
  Int count_holidays(const Int& t) const;           // holidays in [0, t)
  std::vector<int> window(const Int& t0, const Int& t1) const;

 private:
  struct Layer;
  const Repr& repr_;
  mutable std::unordered_map<const Repr*, std::unique_ptr<Expander>> inner_;
  mutable std::unordered_map<int, std::vector<long>> base_prefix_;
  std::vector<long> holiday_prefix_;
  // Counting recurses once per layer per queried job; the memo keeps repeated
  // (layer, job, time) lookups from multiplying across nested directives.
  mutable std::map<std::tuple<size_t, int, Int>, Int> job_memo_;
  mutable std::map<std::pair<size_t, Int>, Int> holiday_memo_;

  const Expander& inner_for(const Repr& r) const;
  int slot_at(size_t layers, const Int& t) const;
  Int count_job(size_t layers, int job, const Int& t) const;
  Int count_job_uncached(size_t layers, int job, const Int& t) const;
  Int count_holidays(size_t layers, const Int& t) const;
  Int count_holidays_uncached(size_t layers, const Int& t) const;
  const std::vector<long>& base_prefix(int job) const;
};

inline std::vector<int> expand_repr(const Repr& repr, const Int& t0, const Int& t1) {
  return Expander(repr).window(t0, t1);
}

// Expands one structural period (or `window` slots if the period is larger)
// and validates it. A full-period expansion uses the conclusive validator;
// otherwise all sub-windows of the expansion are checked.
std::optional<Violation> validate_repr(const PinwheelInstance& inst, const Repr& repr,
                                       const Int& window = 0);

std::string format_repr(const Repr& repr);
Repr parse_repr_text(const std::string& text);

}  // namespace pinwheel
