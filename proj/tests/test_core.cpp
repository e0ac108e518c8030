#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pinwheel/instance.hpp"
#include "pinwheel/repr.hpp"
#include "pinwheel/schedule.hpp"

#include <random>

using namespace pinwheel;

namespace {

PinwheelInstance make(std::initializer_list<const char*> periods) {
  PinwheelInstance inst;
  for (const char* p : periods) inst.add(parse_rational(p));
  return inst;
}

Schedule sched(std::initializer_list<int> slots) {
  Schedule s;
  s.slots = slots;
  return s;
}

// independent window counter: every start, every length up to `max_len`
bool counter_valid(const PinwheelInstance& inst, const Schedule& s, long max_len) {
  auto jobs = expand_jobs(inst);
  long p = s.period();
  for (size_t j = 0; j < jobs.size(); ++j) {
    for (long start = 0; start < p; ++start) {
      long count = 0;
      for (long len = 1; len <= max_len; ++len) {
        if (s.slots[(size_t)((start + len - 1) % p)] == (int)j) ++count;
        Int need = floor_div(Int(len) * den(jobs[j].period), num(jobs[j].period));
        if (count < need) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("density is an exact rational sum") {
  CHECK(make({"2", "4", "8"}).density() == Rat(7, 8));
  CHECK(PinwheelInstance{}.density() == 0);
  PinwheelInstance with_mult;
  with_mult.add(Rat(3), 2);
  with_mult.add(Rat(9), 3);
  CHECK(with_mult.density() == Rat(2, 3) + Rat(1, 3));
}

TEST_CASE("schedule validation on hand-checked instances") {
  CHECK_FALSE(validate_schedule(make({"2", "2"}), sched({0, 1})));
  CHECK_FALSE(validate_schedule(make({"2", "4", "4"}), sched({0, 1, 0, 2})));
  auto v = validate_schedule(make({"2", "3"}), sched({0, 1, kHoliday}));
  REQUIRE(v);
  CHECK(v->job == 0);
}

TEST_CASE("scaling and flooring periods") {
  auto one = make({"2"});
  CHECK(scale(one, Rat(5, 4)).groups[0].period == Rat(5, 2));
  CHECK(floor_periods(make({"5/2"})).groups[0].period == 2);
  CHECK_THROWS(floor_periods(make({"1/2, "})));  // parse failure is fine too
}

TEST_CASE("density commutes with scaling") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 200; ++it) {
    PinwheelInstance inst;
    int m = 1 + (int)(rng() % 6);
    for (int i = 0; i < m; ++i) inst.add(Rat(1 + (long)(rng() % 40), 1 + (long)(rng() % 7)) + 1);
    Rat alpha(1 + (long)(rng() % 9), 1 + (long)(rng() % 9));
    CHECK(scale(inst, alpha).density() == inst.density() / alpha);
  }
}

TEST_CASE("validator agrees with a brute-force interval counter") {
  std::mt19937_64 rng(12345);
  for (int it = 0; it < 400; ++it) {
    long p = 2 + (long)(rng() % 8);
    int m = 1 + (int)(rng() % 3);
    PinwheelInstance inst;
    for (int i = 0; i < m; ++i) {
      if (rng() % 2) {
        inst.add(Rat(1 + (long)(rng() % (4 * (unsigned long)p))));
      } else {
        long d = 2 + (long)(rng() % 2);
        inst.add(Rat(d + 1 + (long)(rng() % (2 * (unsigned long)d)), d));  // small numerators
      }
    }
    Schedule s;
    for (long t = 0; t < p; ++t) s.slots.push_back((int)(rng() % ((unsigned long)m + 1)) - 1);
    bool brute = counter_valid(inst, s, 4 * p);
    bool ours = !validate_schedule(inst, s).has_value();
    CAPTURE(format_instance(inst));
    CAPTURE(format_schedule(s));
    CHECK(ours == brute);
  }
}

TEST_CASE("gap criterion equals the counting criterion on integer instances") {
  // exhaustive: all instances with m <= 2, periods <= 6, all schedules with p <= 6
  std::vector<PinwheelInstance> catalog;
  for (long a = 1; a <= 6; ++a) {
    catalog.push_back(make({std::to_string(a).c_str()}));
    for (long b = a; b <= 6; ++b) {
      PinwheelInstance inst;
      inst.add(Rat(a));
      inst.add(Rat(b));
      catalog.push_back(inst);
    }
  }
  for (const auto& inst : catalog) {
    int m = (int)inst.groups.size();
    for (long p = 1; p <= 6; ++p) {
      long combos = 1;
      for (long i = 0; i < p; ++i) combos *= (m + 1);
      for (long code = 0; code < combos; ++code) {
        Schedule s;
        long c = code;
        for (long i = 0; i < p; ++i) {
          s.slots.push_back((int)(c % (m + 1)) - 1);
          c /= m + 1;
        }
        long bound = (long)(p * (1 + iceil(inst.max_period() / p)).convert_to<long>());
        bool counting = counter_valid(inst, s, bound);
        // asymptotic rate must also hold for the counting criterion
        if (counting) {
          auto jobs = expand_jobs(inst);
          for (size_t j = 0; j < jobs.size() && counting; ++j) {
            long occ = 0;
            for (int slot : s.slots)
              if (slot == (int)j) ++occ;
            if (Rat(occ) < Rat(p) / jobs[j].period) counting = false;
          }
        }
        bool gaps = !validate_schedule(inst, s).has_value();
        REQUIRE(gaps == counting);
      }
    }
  }
  // m = 3 randomized with longer periods
  std::mt19937_64 rng(777);
  for (int it = 0; it < 4000; ++it) {
    PinwheelInstance inst;
    for (int i = 0; i < 3; ++i) inst.add(Rat(1 + (long)(rng() % 6)));
    long p = 1 + (long)(rng() % 12);
    Schedule s;
    for (long t = 0; t < p; ++t) s.slots.push_back((int)(rng() % 4) - 1);
    long bound = (long)(p * (1 + iceil(inst.max_period() / p)).convert_to<long>());
    bool counting = counter_valid(inst, s, bound);
    if (counting) {
      auto jobs = expand_jobs(inst);
      for (size_t j = 0; j < jobs.size() && counting; ++j) {
        long occ = 0;
        for (int slot : s.slots)
          if (slot == (int)j) ++occ;
        if (Rat(occ) < Rat(p) / jobs[j].period) counting = false;
      }
    }
    bool gaps = !validate_schedule(inst, s).has_value();
    REQUIRE(gaps == counting);
  }
}

TEST_CASE("plain repr expansion repeats the base") {
  Repr r;
  r.base = sched({0, 1, kHoliday});
  auto w = expand_repr(r, 0, 6);
  CHECK(w == std::vector<int>({0, 1, kHoliday, 0, 1, kHoliday}));
  CHECK(r.period() == 3);
}

TEST_CASE("holiday insertion adds one idle slot per block") {
  Repr r;
  r.base = sched({0, 1, 0, 2});
  r.directives.push_back(Directive::holiday_insert(2));
  auto w = expand_repr(r, 0, 6);
  CHECK(w == std::vector<int>({0, 1, kHoliday, 0, 2, kHoliday}));
  CHECK(r.period() == 6);
}

TEST_CASE("fold-merge expansion alternates the two source jobs") {
  // merged job 2 on every third slot; sources have periods 6 and 10
  Repr r;
  r.base = sched({2, 0, 1});
  r.directives.push_back(Directive::fold_merge(3, 4, 5));
  // rename merged id 2 -> 3 first so the merge directive applies
  r.directives.insert(r.directives.begin(), Directive::fold_monotone(2, 3));
  auto w = expand_repr(r, 0, 12);
  CHECK(w == std::vector<int>({4, 0, 1, 5, 0, 1, 4, 0, 1, 5, 0, 1}));

  PinwheelInstance inst;
  inst.add(Rat(2));   // job 0
  inst.add(Rat(3));   // job 1
  inst.add(Rat(1));   // placeholder ids 2,3 never appear after expansion
  inst.add(Rat(6));   // job 4
  inst.add(Rat(10));  // job 5
  // check gaps of 4 and 5 in the expansion window directly
  std::vector<long> occ4, occ5;
  for (long t = 0; t < (long)w.size(); ++t) {
    if (w[(size_t)t] == 4) occ4.push_back(t);
    if (w[(size_t)t] == 5) occ5.push_back(t);
  }
  for (size_t i = 1; i < occ4.size(); ++i) CHECK(occ4[i] - occ4[i - 1] <= 6);
  for (size_t i = 1; i < occ5.size(); ++i) CHECK(occ5[i] - occ5[i - 1] <= 10);
}

TEST_CASE("expansions of overlapping windows agree") {
  std::mt19937_64 rng(4242);
  Repr r;
  r.base = sched({0, kHoliday, 1, kHoliday, 0, 2});
  r.directives.push_back(Directive::holiday_insert(3));
  Repr inner;
  inner.base = sched({3, 3, kHoliday});
  r.directives.push_back(Directive::place_in_holidays(inner));
  r.directives.push_back(Directive::partition(3, {4, 5}));
  for (int it = 0; it < 50; ++it) {
    long a = (long)(rng() % 200);
    long b = a + 1 + (long)(rng() % 60);
    long cut = a + (long)(rng() % (unsigned long)(b - a));
    auto whole = expand_repr(r, a, b);
    auto left = expand_repr(r, a, cut + 1);
    auto right = expand_repr(r, cut, b);
    for (long t = a; t <= cut; ++t) CHECK(whole[(size_t)(t - a)] == left[(size_t)(t - a)]);
    for (long t = cut; t < b; ++t) CHECK(whole[(size_t)(t - a)] == right[(size_t)(t - cut)]);
  }
}

TEST_CASE("instance and schedule text round-trips") {
  PinwheelInstance inst;
  inst.add(Rat(5, 2));
  inst.add(Rat(7), 3);
  auto parsed = parse_instance_text(format_instance(inst));
  REQUIRE(parsed.groups.size() == 2);
  CHECK(parsed.groups[0].period == Rat(5, 2));
  CHECK(parsed.groups[1].multiplicity == 3);

  Schedule s = sched({0, kHoliday, 1});
  CHECK(parse_schedule_text(format_schedule(s)).slots == s.slots);

  Repr r;
  r.base = s;
  r.directives.push_back(Directive::holiday_insert(5));
  Repr inner;
  inner.base = sched({2, kHoliday});
  r.directives.push_back(Directive::place_in_holidays(inner));
  r.directives.push_back(Directive::partition(2, {6, 7}));
  auto r2 = parse_repr_text(format_repr(r));
  CHECK(format_repr(r2) == format_repr(r));
  auto w1 = expand_repr(r, 0, 40);
  auto w2 = expand_repr(r2, 0, 40);
  CHECK(w1 == w2);
}
