#include "pinwheel/fold.hpp"

#include <algorithm>
#include <map>

namespace pinwheel {

namespace {

// argmax by period, ties toward the lowest id; skip = index to ignore
int pick_largest(const std::vector<FoldJob>& jobs, int skip = -1) {
  int best = -1;
  for (int i = 0; i < (int)jobs.size(); ++i) {
    if (i == skip) continue;
    if (best == -1 || jobs[(size_t)i].period > jobs[(size_t)best].period ||
        (jobs[(size_t)i].period == jobs[(size_t)best].period &&
         jobs[(size_t)i].id < jobs[(size_t)best].id))
      best = i;
  }
  return best;
}

}  // namespace

FoldResult fold(std::vector<FoldJob> jobs, const Rat& theta, int first_free_id) {
  if (theta <= 0) throw std::invalid_argument("fold threshold must be positive");
  FoldResult out;
  out.next_id = first_free_id;
  while (true) {
    int ia = pick_largest(jobs);
    if (ia < 0 || jobs[(size_t)ia].period <= theta) break;
    int ib = pick_largest(jobs, ia);
    if (ib >= 0 && jobs[(size_t)ib].period > theta) {
      FoldJob merged{out.next_id++, jobs[(size_t)ib].period / 2};
      out.steps.push_back(FoldStep{FoldStep::Kind::Merge, merged.id, jobs[(size_t)ia].id,
                                   jobs[(size_t)ib].id, merged.period});
      if (ia < ib) std::swap(ia, ib);
      jobs.erase(jobs.begin() + ia);
      jobs.erase(jobs.begin() + ib);
      jobs.push_back(merged);
    } else {
      FoldJob clamped{out.next_id++, theta};
      out.steps.push_back(
          FoldStep{FoldStep::Kind::Monotone, clamped.id, jobs[(size_t)ia].id, -1, theta});
      jobs.erase(jobs.begin() + ia);
      jobs.push_back(clamped);
    }
  }
  out.folded = std::move(jobs);
  return out;
}

FoldResult fold(const PinwheelInstance& inst, const Rat& theta) {
  auto expanded = expand_jobs(inst);
  std::vector<FoldJob> jobs;
  for (int i = 0; i < (int)expanded.size(); ++i) jobs.push_back(FoldJob{i, expanded[(size_t)i].period});
  return fold(std::move(jobs), theta, (int)expanded.size());
}

Repr unfold_schedule(Repr repr_of_folded, const std::vector<FoldStep>& steps) {
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    if (it->kind == FoldStep::Kind::Merge)
      repr_of_folded.directives.push_back(Directive::fold_merge(it->result_id, it->source_a, it->source_b));
    else
      repr_of_folded.directives.push_back(Directive::fold_monotone(it->result_id, it->source_a));
  }
  return repr_of_folded;
}

Repr schedule_density_half(const PinwheelInstance& inst) {
  if (inst.density() > Rat(1, 2)) throw DensityTooHigh("density above 1/2");
  if (inst.empty()) {
    Repr r;
    r.base.slots.push_back(kHoliday);
    return r;
  }
  auto fr = fold(inst, Rat(2));
  if (fr.folded.size() != 1)
    throw ConstructionFailed("folding with threshold 2 should leave exactly one job");
  Repr r;
  r.base.slots.push_back(fr.folded.front().id);
  return unfold_schedule(std::move(r), fr.steps);
}

std::pair<Repr, std::vector<int>> partition_substitute(Repr repr, int host_job, long q,
                                                       int first_free_id) {
  if (q < 1) throw std::invalid_argument("partition factor must be at least 1");
  std::vector<int> ids;
  for (long i = 0; i < q; ++i) ids.push_back(first_free_id + (int)i);
  repr.directives.push_back(Directive::partition(host_job, ids));
  return {std::move(repr), std::move(ids)};
}

namespace {

constexpr long kMaxPartitionFactor = 1 << 20;

struct Spare {
  int id;
  Int eff;       // effective period in host-occurrence units
  Int offset;    // first occurrence index within the host stream
};

struct ChainLevel {
  Int eff;
  std::vector<int> ids;
};

// Carves the uniformly spaced occurrence stream of `host` into jobs whose
// effective periods form a divisible chain. Appends directives to `r` and
// records each placed id's (offset, stride) in host-occurrence units.
void carve_chain(Repr& r, int host, std::vector<ChainLevel> levels, int& next_id,
                 std::map<int, std::pair<Int, Int>>& placement) {
  std::sort(levels.begin(), levels.end(),
            [](const ChainLevel& a, const ChainLevel& b) { return a.eff < b.eff; });
  Rat used = 0;
  for (const auto& lvl : levels) used += Rat((long)lvl.ids.size()) / Rat(lvl.eff);
  if (used > 1) throw ConstructionFailed("chain demand exceeds the host stream");

  std::vector<Spare> spares{Spare{host, 1, 0}};
  for (const auto& lvl : levels) {
    size_t placed = 0;
    while (placed < lvl.ids.size()) {
      // largest spare still dividing this level
      int pick = -1;
      for (int i = 0; i < (int)spares.size(); ++i) {
        if (lvl.eff % spares[(size_t)i].eff != 0) continue;
        if (pick == -1 || spares[(size_t)i].eff > spares[(size_t)pick].eff) pick = i;
      }
      if (pick < 0) throw ConstructionFailed("no spare stream divides the level period");
      Spare sp = spares[(size_t)pick];
      spares.erase(spares.begin() + pick);
      Int ratio = lvl.eff / sp.eff;
      if (ratio == 1) {
        int id = lvl.ids[placed++];
        r.directives.push_back(Directive::fold_monotone(sp.id, id));
        placement[id] = {sp.offset, sp.eff};
        continue;
      }
      if (ratio > kMaxPartitionFactor)
        throw ConstructionFailed("partition ratio beyond the supported range");
      long q = (long)ratio.convert_to<long>();
      long take = std::min<long>(q, (long)(lvl.ids.size() - placed));
      std::vector<int> ids;
      for (long k = 0; k < take; ++k) ids.push_back(lvl.ids[placed + (size_t)k]);
      std::vector<int> fresh;
      for (long k = take; k < q; ++k) {
        fresh.push_back(next_id);
        ids.push_back(next_id++);
      }
      r.directives.push_back(Directive::partition(sp.id, ids));
      for (long k = 0; k < take; ++k)
        placement[ids[(size_t)k]] = {sp.offset + k * sp.eff, lvl.eff};
      for (long k = take; k < q; ++k)
        spares.push_back(Spare{ids[(size_t)k], lvl.eff, sp.offset + k * sp.eff});
      placed += (size_t)take;
    }
  }
  // retire unused streams as holidays
  for (const auto& sp : spares) r.directives.push_back(Directive::partition(sp.id, {kHoliday}));
}

// density bound with rational brackets around ln 2
bool clears_small_density_bound(const Rat& density, const Int& f1) {
  const Rat ln2_hi(6931472, 10000000), ln2_lo(6931471, 10000000);
  Int s = isqrt(f1);
  Rat strict = 1 - (1 + ln2_hi) / Rat(1 + s) - Rat(3) / (2 * f1);
  if (density <= strict) return true;
  Rat loose = 1 - (1 + ln2_lo) / Rat(2 + s) - Rat(3) / (2 * f1);
  if (density > loose) return false;
  return true;  // inside the bracketing sliver: let construction decide
}

}  // namespace

Repr schedule_small_jobs(const PinwheelInstance& inst, const Int& f1) {
  if (!inst.all_integer()) throw std::domain_error("small-job scheduler needs integer periods");
  if (f1 < 1) throw std::invalid_argument("f1 must be at least 1");
  if (inst.empty()) {
    Repr r;
    r.base.slots.push_back(kHoliday);
    return r;
  }
  if (Rat(f1) > inst.min_period()) throw std::invalid_argument("instance has a period below f1");
  if (!clears_small_density_bound(inst.density(), f1)) throw DensityTooHigh("density above the large-period bound");

  auto jobs = expand_jobs(inst);
  int next_id = (int)jobs.size();
  std::map<int, std::pair<Int, Int>> placement;  // id -> (offset, stride), absolute slots
  Repr r;

  std::vector<std::pair<Int, int>> by_period;
  for (int i = 0; i < (int)jobs.size(); ++i) by_period.push_back({num(jobs[(size_t)i].period), i});
  std::sort(by_period.begin(), by_period.end());

  bool divisible_chain = true;
  for (size_t i = 1; i < by_period.size(); ++i)
    if (by_period[i].first % by_period[i - 1].first != 0) divisible_chain = false;

  if (divisible_chain && inst.density() <= 1) {
    int root = next_id++;
    r.base.slots.push_back(root);
    std::map<Int, ChainLevel> levels;
    for (auto& [p, id] : by_period) {
      levels[p].eff = p;
      levels[p].ids.push_back(id);
    }
    std::vector<ChainLevel> lv;
    for (auto& [p, l] : levels) lv.push_back(std::move(l));
    std::map<int, std::pair<Int, Int>> host_units;
    carve_chain(r, root, std::move(lv), next_id, host_units);
    placement = std::move(host_units);  // host spacing is 1 slot
  } else {
    // dyadic grid: period -> j * 2^e with j in [S, 2S), S = 2^floor(lg sqrt(f1))
    Int s = isqrt(f1);
    unsigned sigma = msb(s);
    std::map<Int, std::vector<std::pair<unsigned, int>>> classes;  // j -> (e, id)
    for (auto& [p, id] : by_period) {
      unsigned e = msb(p) - sigma;
      Int j = p >> e;
      classes[j].push_back({e, id});
    }
    // streams per class: capacity 1 in effective units, first-fit ascending
    struct Stream {
      unsigned spacing_log;  // b
      Int j;
      std::vector<std::pair<Int, int>> members;  // (effective period, id)
    };
    std::vector<Stream> streams;
    Rat master_usage = 0;
    for (auto& [j, members] : classes) {
      unsigned b = members.front().first;
      for (auto& [e, id] : members) b = std::min(b, e);
      std::sort(members.begin(), members.end());
      Stream cur{b, j, {}};
      Rat load = 0;
      for (auto& [e, id] : members) {
        Int eff = j << (e - b);
        Rat piece = Rat(1) / Rat(eff);
        if (load + piece > 1) {
          streams.push_back(cur);
          master_usage += Rat(1) / Rat(Int(1) << b);
          cur.members.clear();
          load = 0;
        }
        cur.members.push_back({eff, id});
        load += piece;
      }
      streams.push_back(cur);
      master_usage += Rat(1) / Rat(Int(1) << b);
    }
    if (master_usage > 1)
      throw ConstructionFailed("dyadic streams do not fit; density too close to the bound");

    int root = next_id++;
    r.base.slots.push_back(root);
    std::map<Int, ChainLevel> master_levels;
    std::vector<int> stream_ids;
    for (auto& st : streams) {
      int sid = next_id++;
      stream_ids.push_back(sid);
      Int spacing = Int(1) << st.spacing_log;
      master_levels[spacing].eff = spacing;
      master_levels[spacing].ids.push_back(sid);
    }
    std::vector<ChainLevel> mlv;
    for (auto& [p, l] : master_levels) mlv.push_back(std::move(l));
    std::map<int, std::pair<Int, Int>> stream_place;
    carve_chain(r, root, std::move(mlv), next_id, stream_place);

    for (size_t k = 0; k < streams.size(); ++k) {
      auto& st = streams[k];
      int sid = stream_ids[k];
      std::map<Int, ChainLevel> lvl;
      for (auto& [eff, id] : st.members) {
        lvl[eff].eff = eff;
        lvl[eff].ids.push_back(id);
      }
      std::vector<ChainLevel> lv;
      for (auto& [p, l] : lvl) lv.push_back(std::move(l));
      std::map<int, std::pair<Int, Int>> member_place;
      carve_chain(r, sid, std::move(lv), next_id, member_place);
      auto [soff, sstride] = stream_place.at(sid);
      for (auto& [id, pos] : member_place)
        placement[id] = {soff + pos.first * sstride, pos.second * sstride};
    }
  }

  // wiring check: every job sits on its computed progression, within period
  Expander ex(r);
  for (auto& [id, pos] : placement) {
    const auto& [off, stride] = pos;
    if (Rat(stride) > jobs[(size_t)id].period)
      throw ConstructionFailed("carved stride exceeds the job period");
    for (Int k : {Int(0), Int(1), Int(17)}) {
      if (ex.slot_at(off + k * stride) != id)
        throw ConstructionFailed("carved stream does not deliver the job where expected");
    }
    if (ex.count_job(id, off + 5 * stride) != 5)
      throw ConstructionFailed("carved stream repeats or drops occurrences");
  }
  if (placement.size() != jobs.size()) throw ConstructionFailed("not every job was placed");
  return r;
}

}  // namespace pinwheel
