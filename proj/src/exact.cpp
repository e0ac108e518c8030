#include "pinwheel/exact.hpp"

#include <algorithm>
#include <cstdlib>
#include <vector>

namespace pinwheel {

ExactOptions exact_options_from_env() {
  ExactOptions opts;
  if (const char* s = std::getenv("PINWHEEL_STATE_BUDGET")) opts.state_budget = std::strtoull(s, nullptr, 10);
  if (const char* s = std::getenv("PINWHEEL_SEARCH_BUDGET")) opts.search_budget = std::strtoull(s, nullptr, 10);
  return opts;
}

namespace {

// Mixed-radix state space over (j_1..j_m), j_i in [1, a_i], encoded 0-based.
struct StateSpace {
  std::vector<long> periods;       // integer periods of expanded jobs
  std::vector<std::uint64_t> stride;
  std::uint64_t size = 1;

  explicit StateSpace(const PinwheelInstance& inst, std::uint64_t budget) {
    auto jobs = expand_jobs(inst, budget);
    Int total = 1;
    for (const auto& j : jobs) {
      if (!is_integer(j.period)) throw std::domain_error("state search needs integer periods");
      total *= num(j.period);
      if (total > budget) throw StateBudgetExceeded("state space exceeds budget");
    }
    size = (std::uint64_t)total;
    periods.reserve(jobs.size());
    for (const auto& j : jobs) periods.push_back((long)num(j.period));
    stride.resize(jobs.size());
    std::uint64_t s = 1;
    for (size_t i = 0; i < jobs.size(); ++i) {
      stride[i] = s;
      s *= (std::uint64_t)periods[i];
    }
  }

  size_t jobs() const { return periods.size(); }

  long digit(std::uint64_t code, size_t i) const {
    return (long)(code / stride[i] % (std::uint64_t)periods[i]);
  }

  // successor when job `run` is scheduled (run == -1 for a holiday);
  // returns false if some job other than `run` is at its deadline.
  bool step(std::uint64_t code, int run, std::uint64_t& out) const {
    std::uint64_t next = 0;
    for (size_t i = 0; i < periods.size(); ++i) {
      long d = digit(code, i);
      if ((int)i == run) {
        // resets to 1 (digit 0)
        continue;
      }
      if (d + 1 >= periods[i]) return false;  // would exceed the period
      next += stride[i] * (std::uint64_t)(d + 1);
    }
    out = next;
    return true;
  }

  // successors ordered by slack (tightest job first), holiday last
  void successors(std::uint64_t code, std::vector<std::pair<int, std::uint64_t>>& out) const {
    out.clear();
    std::vector<std::pair<long, int>> order;
    for (size_t i = 0; i < periods.size(); ++i)
      order.push_back({periods[i] - 1 - digit(code, i), (int)i});
    std::sort(order.begin(), order.end());
    for (auto [slack, i] : order) {
      std::uint64_t next;
      if (step(code, i, next)) out.push_back({i, next});
    }
    std::uint64_t next;
    if (step(code, -1, next)) out.push_back({kHoliday, next});
  }
};

Schedule empty_instance_schedule() {
  Schedule s;
  s.slots.push_back(kHoliday);
  return s;
}

}  // namespace

ExactResult solve_exact(const PinwheelInstance& inst, const ExactOptions& opts) {
  if (inst.empty()) return {true, empty_instance_schedule()};
  StateSpace space(inst, opts.state_budget);

  // iterative DFS over the whole graph; a back edge closes a cycle
  std::vector<std::uint8_t> color(space.size, 0);  // 0 new, 1 on stack, 2 done
  struct Frame {
    std::uint64_t code;
    size_t next_succ;
    std::vector<std::pair<int, std::uint64_t>> succs;
  };
  std::vector<Frame> stack;
  std::vector<int> labels;  // slot label taken to reach stack[i+1] from stack[i]

  for (std::uint64_t start = 0; start < space.size; ++start) {
    if (color[start] != 0) continue;
    stack.push_back({start, 0, {}});
    space.successors(start, stack.back().succs);
    color[start] = 1;
    labels.clear();
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next_succ >= f.succs.size()) {
        color[f.code] = 2;
        stack.pop_back();
        if (!labels.empty()) labels.pop_back();
        continue;
      }
      auto [label, next] = f.succs[f.next_succ++];
      if (color[next] == 1) {
        // cycle: slice the stack from `next` to the top, then the closing edge;
        // labels[k] is the slot taken moving stack[k] -> stack[k+1]
        Schedule sched;
        size_t at = stack.size();
        while (at > 0 && stack[at - 1].code != next) --at;
        for (size_t i = at - 1; i + 1 < stack.size(); ++i) sched.slots.push_back(labels[i]);
        sched.slots.push_back(label);
        return {true, sched};
      }
      if (color[next] == 0) {
        color[next] = 1;
        labels.push_back(label);
        stack.push_back({next, 0, {}});
        space.successors(next, stack.back().succs);
      }
    }
  }
  return {false, std::nullopt};
}

namespace {

// edge enumeration shared by the mean-cycle passes
template <typename Fn>
void for_each_edge(const StateSpace& space, std::uint64_t code, Fn&& fn) {
  std::uint64_t next;
  for (size_t i = 0; i < space.jobs(); ++i)
    if (space.step(code, (int)i, next)) fn((int)i, next, 0);
  if (space.step(code, -1, next)) fn(kHoliday, next, 1);
}

}  // namespace

HolidayFraction max_holiday_fraction(const PinwheelInstance& inst, const ExactOptions& opts) {
  if (inst.empty()) {
    HolidayFraction h{Rat(1), empty_instance_schedule()};
    return h;
  }
  if (inst.density() > 1) throw NoCycle("density above one admits no schedule");
  StateSpace space(inst, opts.state_budget);
  const std::uint64_t n = space.size;
  // Walk values F_k(v): max holidays over k-edge walks from a virtual source
  // that reaches every state in one step. Two passes keep memory linear.
  const long NEG = -1;  // F uses -1 for "unreachable", counts are >= 0
  const std::uint64_t rounds = n + 1;

  std::vector<long> cur(n, 0), nxt(n, NEG);  // k = 1: every state reachable, 0 holidays
  auto relax_round = [&]() {
    std::fill(nxt.begin(), nxt.end(), NEG);
    for (std::uint64_t v = 0; v < n; ++v) {
      if (cur[v] == NEG) continue;
      for_each_edge(space, v, [&](int, std::uint64_t to, int w) {
        long cand = cur[v] + w;
        if (cand > nxt[to]) nxt[to] = cand;
      });
    }
    std::swap(cur, nxt);
  };

  // pass 1: F_rounds
  for (std::uint64_t k = 1; k < rounds; ++k) relax_round();
  std::vector<long> f_final = cur;

  // pass 2: stream k = 1..rounds-1, maintaining min_k (F_rounds - F_k)/(rounds-k)
  std::fill(cur.begin(), cur.end(), 0);
  std::vector<long> best_num(n, 0), best_den(n, 0);  // den 0 = unset
  for (std::uint64_t v = 0; v < n; ++v) {
    if (f_final[v] == NEG) continue;
    best_num[v] = f_final[v] - cur[v];
    best_den[v] = (long)rounds - 1;
  }
  for (std::uint64_t k = 2; k < rounds; ++k) {
    relax_round();
    for (std::uint64_t v = 0; v < n; ++v) {
      if (f_final[v] == NEG || cur[v] == NEG) continue;
      long cand_num = f_final[v] - cur[v];
      long cand_den = (long)(rounds - k);
      if (best_den[v] == 0 || Int(cand_num) * best_den[v] < Int(best_num[v]) * cand_den) {
        best_num[v] = cand_num;
        best_den[v] = cand_den;
      }
    }
  }

  bool any = false;
  Rat lambda = 0;
  for (std::uint64_t v = 0; v < n; ++v) {
    if (f_final[v] == NEG || best_den[v] == 0) continue;
    Rat cand(best_num[v], best_den[v]);
    if (!any || cand > lambda) {
      lambda = cand;
      any = true;
    }
  }
  if (!any) throw NoCycle("state graph is acyclic");

  // extract a cycle attaining lambda: reweight w -> q*w - p (max cycle mean 0),
  // stabilize longest-walk potentials, then pick a cycle of tight edges
  const long q = (long)den(lambda), pnum = (long)num(lambda);
  std::vector<long> psi(n, 0);
  for (std::uint64_t k = 0; k < rounds; ++k) {
    bool changed = false;
    for (std::uint64_t v = 0; v < n; ++v) {
      for_each_edge(space, v, [&](int, std::uint64_t to, int w) {
        long cand = psi[v] + q * w - pnum;
        if (cand > psi[to]) {
          psi[to] = cand;
          changed = true;
        }
      });
    }
    if (!changed) break;
  }
  // tight-edge DFS
  std::vector<std::uint8_t> color(n, 0);
  std::vector<std::uint64_t> stack;
  std::vector<int> labels;
  for (std::uint64_t start = 0; start < n; ++start) {
    if (color[start] != 0) continue;
    stack.push_back(start);
    labels.push_back(kHoliday);  // placeholder
    color[start] = 1;
    while (!stack.empty()) {
      std::uint64_t v = stack.back();
      bool advanced = false;
      std::uint64_t found_to = 0;
      int found_label = kHoliday;
      bool found_cycle = false;
      for_each_edge(space, v, [&](int label, std::uint64_t to, int w) {
        if (advanced || found_cycle) return;
        if (psi[v] + q * w - pnum != psi[to]) return;
        if (color[to] == 1) {
          found_cycle = true;
          found_to = to;
          found_label = label;
        } else if (color[to] == 0) {
          advanced = true;
          found_to = to;
          found_label = label;
        }
      });
      if (found_cycle) {
        // labels[i] is the slot taken moving stack[i-1] -> stack[i]
        Schedule sched;
        size_t at = stack.size();
        while (at > 0 && stack[at - 1] != found_to) --at;
        for (size_t i = at; i < stack.size(); ++i) sched.slots.push_back(labels[i]);
        sched.slots.push_back(found_label);
        if (sched.holiday_fraction() != lambda)
          throw std::logic_error("extracted cycle does not attain the maximum holiday fraction");
        return HolidayFraction{lambda, sched};
      }
      if (advanced) {
        color[found_to] = 1;
        stack.push_back(found_to);
        labels.push_back(found_label);
      } else {
        color[v] = 2;
        stack.pop_back();
        labels.pop_back();
      }
    }
  }
  throw std::logic_error("tight subgraph lost the optimal cycle");
}

EpsSearchResult solve_eps_offsets(const PinwheelInstance& inst, const ExactOptions& opts) {
  auto jobs = expand_jobs(inst, opts.search_budget);
  std::vector<Int> periods;
  for (const auto& j : jobs) {
    if (!is_integer(j.period)) throw std::domain_error("residue search needs integer periods");
    periods.push_back(num(j.period));
  }
  // longest period last: tight jobs placed first
  std::vector<size_t> order(jobs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return periods[a] < periods[b]; });

  std::vector<Int> offset(jobs.size(), -1);
  std::uint64_t nodes = 0;
  // depth-first over residues with pairwise congruence pruning
  std::vector<Int> trail;
  size_t depth = 0;
  std::vector<Int> next_try(jobs.size(), 0);
  while (true) {
    if (depth == jobs.size()) {
      OffsetAssignment a;
      a.blocks.resize(inst.groups.size());
      for (size_t i = 0; i < jobs.size(); ++i)
        a.blocks[(size_t)jobs[i].group].push_back(ResidueBlock{offset[i], periods[i], 1, 0});
      return {true, a};
    }
    size_t j = order[depth];
    bool placed = false;
    for (Int o = next_try[depth]; o < periods[j]; ++o) {
      if (++nodes > opts.search_budget) throw SearchBudgetExceeded("residue search budget exhausted");
      bool ok = true;
      for (size_t d = 0; d < depth; ++d) {
        size_t k = order[d];
        Int g = gcd(periods[j], periods[k]);
        if (mod_floor(o - offset[k], g) == 0) {
          ok = false;
          break;
        }
      }
      if (ok) {
        offset[j] = o;
        next_try[depth] = o + 1;
        ++depth;
        if (depth < jobs.size()) next_try[depth] = 0;
        placed = true;
        break;
      }
    }
    if (!placed) {
      offset[j] = -1;
      if (depth == 0) return {false, {}};
      --depth;
    }
  }
}

}  // namespace pinwheel
