#include "pinwheel/schedule.hpp"

#include <sstream>

namespace pinwheel {

long Schedule::holidays() const {
  long h = 0;
  for (int s : slots)
    if (s == kHoliday) ++h;
  return h;
}

Rat Schedule::holiday_fraction() const {
  if (slots.empty()) throw std::domain_error("holiday fraction of empty schedule");
  return Rat(holidays(), period());
}

namespace {

std::optional<Violation> bad(int job, Int start, Int len, std::string msg) {
  return Violation{job, std::move(start), std::move(len), std::move(msg)};
}

// occurrence positions of each expanded job within one period
std::vector<std::vector<long>> occurrence_lists(size_t njobs, const std::vector<int>& slots) {
  std::vector<std::vector<long>> occ(njobs);
  for (long t = 0; t < (long)slots.size(); ++t) {
    int s = slots[t];
    if (s == kHoliday) continue;
    occ[(size_t)s].push_back(t);
  }
  return occ;
}

// gap criterion, integer periods only
std::optional<Violation> validate_gaps(const std::vector<ExpandedJob>& jobs, const Schedule& sched,
                                       const std::vector<std::vector<long>>& occ) {
  long p = sched.period();
  for (size_t j = 0; j < jobs.size(); ++j) {
    Int a = num(jobs[j].period);
    if (occ[j].empty())
      return bad((int)j, 0, iceil(jobs[j].period), "job never scheduled");
    long prev = occ[j].back() - p;  // wrap
    for (long t : occ[j]) {
      if (Int(t - prev) > a)
        return bad((int)j, prev + 1, t - prev - 1, "cyclic gap exceeds period");
      prev = t;
    }
  }
  return std::nullopt;
}

// counting criterion for rational periods; checks every start and every
// length up to p * (1 + ceil(max_period / p)), plus the per-period rate
// c_i >= p / a_i that makes the bounded check conclusive for all lengths.
std::optional<Violation> validate_counting(const std::vector<ExpandedJob>& jobs, const Schedule& sched,
                                           const std::vector<std::vector<long>>& occ, const Rat& max_period) {
  const long p = sched.period();
  const Int bound = Int(p) * (1 + iceil(max_period / p));

  for (size_t j = 0; j < jobs.size(); ++j) {
    const Rat& a = jobs[j].period;
    const Int an = num(a), ad = den(a);
    const long c = (long)occ[j].size();
    // occurrence rate must keep up with the requirement rate
    if (Rat(c) < Rat(p) / a)
      return bad((int)j, 0, bound, "per-period occurrence count below p/a");

    // prefix counts over two periods
    std::vector<long> pre(2 * p + 1, 0);
    for (long t = 0; t < 2 * p; ++t) {
      int s = sched.slots[(size_t)(t % p)];
      pre[(size_t)(t + 1)] = pre[(size_t)t] + (s == (int)j ? 1 : 0);
    }
    // min over starts of occurrences within a window of length r, r in [0, p]
    std::vector<long> min_diff((size_t)p + 1, 0);
    for (long r = 1; r <= p; ++r) {
      long best = pre[(size_t)r] - pre[0];
      for (long s = 1; s < p; ++s) best = std::min(best, pre[(size_t)(s + r)] - pre[(size_t)s]);
      min_diff[(size_t)r] = best;
    }
    for (Int L = 1; L <= bound; ++L) {
      Int q = L / p;
      long r = (long)(L % p);
      Int have = q * c + min_diff[(size_t)r];
      Int need = floor_div(L * ad, an);
      if (have < need) {
        // recover a witness start
        for (long s = 0; s < p; ++s) {
          Int cnt = q * c + (pre[(size_t)(s + r)] - pre[(size_t)s]);
          if (cnt < need) return bad((int)j, s, L, "window occurrence count below floor(L/a)");
        }
        return bad((int)j, 0, L, "window occurrence count below floor(L/a)");
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> validate_schedule(const PinwheelInstance& inst, const Schedule& sched) {
  auto jobs = expand_jobs(inst);
  if (sched.slots.empty()) {
    if (jobs.empty()) return std::nullopt;
    return bad(0, 0, iceil(jobs[0].period), "empty schedule for non-empty instance");
  }
  for (int s : sched.slots)
    if (s != kHoliday && (s < 0 || s >= (int)jobs.size()))
      return bad(s, 0, 0, "slot references unknown job");
  auto occ = occurrence_lists(jobs.size(), sched.slots);
  if (inst.all_integer()) return validate_gaps(jobs, sched, occ);
  return validate_counting(jobs, sched, occ, inst.max_period());
}

std::optional<Violation> validate_window(const PinwheelInstance& inst,
                                         const std::vector<int>& slots, const Int& t0) {
  auto jobs = expand_jobs(inst);
  const long w = (long)slots.size();
  for (int s : slots)
    if (s != kHoliday && (s < 0 || s >= (int)jobs.size()))
      return bad(s, t0, 0, "slot references unknown job");
  for (size_t j = 0; j < jobs.size(); ++j) {
    const Int an = num(jobs[j].period), ad = den(jobs[j].period);
    std::vector<long> pre((size_t)w + 1, 0);
    for (long t = 0; t < w; ++t) pre[(size_t)(t + 1)] = pre[(size_t)t] + (slots[(size_t)t] == (int)j ? 1 : 0);
    for (long L = 1; L <= w; ++L) {
      Int need = floor_div(Int(L) * ad, an);
      if (need == 0) continue;
      for (long s = 0; s + L <= w; ++s) {
        if (Int(pre[(size_t)(s + L)] - pre[(size_t)s]) < need)
          return bad((int)j, t0 + s, L, "window occurrence count below floor(L/a)");
      }
    }
  }
  return std::nullopt;
}

std::string format_schedule(const Schedule& sched) {
  std::ostringstream os;
  os << "period " << sched.period() << "\n";
  os << "slots";
  for (int s : sched.slots) {
    if (s == kHoliday)
      os << " H";
    else
      os << " " << s;
  }
  os << "\n";
  return os.str();
}

Schedule parse_schedule_text(const std::string& text) {
  std::istringstream in(text);
  std::string key;
  Schedule sched;
  long period = -1;
  while (in >> key) {
    if (key == "period") {
      in >> period;
    } else if (key == "slots") {
      std::string tok;
      while (in >> tok) {
        if (tok == "H")
          sched.slots.push_back(kHoliday);
        else
          sched.slots.push_back(std::stoi(tok));
      }
    } else {
      throw std::invalid_argument("unknown schedule key: " + key);
    }
  }
  if (period >= 0 && period != sched.period())
    throw std::invalid_argument("schedule period/slots mismatch");
  return sched;
}

}  // namespace pinwheel
