#include "pinwheel/repr.hpp"

#include <sstream>

namespace pinwheel {

Directive Directive::fold_merge(int merged, int job_a, int job_b) {
  Directive d;
  d.kind = Kind::FoldMerge;
  d.merged = merged;
  d.job_a = job_a;
  d.job_b = job_b;
  return d;
}

Directive Directive::fold_monotone(int from, int to) {
  Directive d;
  d.kind = Kind::FoldMonotone;
  d.from = from;
  d.to = to;
  return d;
}

Directive Directive::holiday_insert(Int every) {
  if (every <= 0) throw std::invalid_argument("holiday_insert needs a positive interval");
  Directive d;
  d.kind = Kind::HolidayInsert;
  d.every = std::move(every);
  return d;
}

Directive Directive::place_in_holidays(Repr inner) {
  Directive d;
  d.kind = Kind::PlaceInHolidays;
  d.inner = std::make_shared<const Repr>(std::move(inner));
  return d;
}

Directive Directive::partition(int job, std::vector<int> ids) {
  if (ids.empty()) throw std::invalid_argument("partition needs at least one id");
  Directive d;
  d.kind = Kind::Partition;
  d.part_job = job;
  d.part_ids = std::move(ids);
  return d;
}

Int Repr::period() const {
  // replay the layers, tracking the structural period
  Expander ex(*this);
  Int p = base.period();
  if (p == 0) throw std::domain_error("repr with empty base");
  // recompute layer by layer using partial expanders
  Repr partial;
  partial.base = base;
  Int cur = base.period();
  for (const auto& d : directives) {
    Expander pex(partial);
    switch (d.kind) {
      case Directive::Kind::FoldMerge: {
        Int c = pex.count_job(d.merged, cur);
        if (c % 2 != 0) cur *= 2;
        break;
      }
      case Directive::Kind::FoldMonotone:
        break;
      case Directive::Kind::HolidayInsert: {
        Int x = cur / gcd(d.every, cur);
        cur = (d.every + 1) * x;
        break;
      }
      case Directive::Kind::PlaceInHolidays: {
        Int h = pex.count_holidays(cur);
        if (h > 0) {
          Int ip = d.inner->period();
          cur *= ip / gcd(h, ip);
        }
        break;
      }
      case Directive::Kind::Partition: {
        Int c = pex.count_job(d.part_job, cur);
        Int q = (long)d.part_ids.size();
        if (c > 0) cur *= q / gcd(c, q);
        break;
      }
    }
    partial.directives.push_back(d);
  }
  return cur;
}

Expander::Expander(const Repr& repr) : repr_(repr) {
  if (repr.base.slots.empty()) throw std::domain_error("repr with empty base");
  holiday_prefix_.assign(repr.base.slots.size() + 1, 0);
  for (size_t t = 0; t < repr.base.slots.size(); ++t)
    holiday_prefix_[t + 1] = holiday_prefix_[t] + (repr.base.slots[t] == kHoliday ? 1 : 0);
}

const Expander& Expander::inner_for(const Repr& r) const {
  auto it = inner_.find(&r);
  if (it == inner_.end()) it = inner_.emplace(&r, std::make_unique<Expander>(r)).first;
  return *it->second;
}

const std::vector<long>& Expander::base_prefix(int job) const {
  auto it = base_prefix_.find(job);
  if (it != base_prefix_.end()) return it->second;
  std::vector<long> pre(repr_.base.slots.size() + 1, 0);
  for (size_t t = 0; t < repr_.base.slots.size(); ++t)
    pre[t + 1] = pre[t] + (repr_.base.slots[t] == job ? 1 : 0);
  return base_prefix_.emplace(job, std::move(pre)).first->second;
}

int Expander::slot_at(const Int& t) const { return slot_at(repr_.directives.size(), t); }
Int Expander::count_job(int job, const Int& t) const { return count_job(repr_.directives.size(), job, t); }
Int Expander::count_holidays(const Int& t) const { return count_holidays(repr_.directives.size(), t); }

int Expander::slot_at(size_t layers, const Int& t) const {
  if (t < 0) throw std::domain_error("repr expansion at negative time");
  if (layers == 0) {
    long p = repr_.base.period();
    return repr_.base.slots[(size_t)(unsigned long)(t % p)];
  }
  const Directive& d = repr_.directives[layers - 1];
  switch (d.kind) {
    case Directive::Kind::FoldMerge: {
      int s = slot_at(layers - 1, t);
      if (s != d.merged) return s;
      Int k = count_job(layers - 1, d.merged, t);
      return (k % 2 == 0) ? d.job_a : d.job_b;
    }
    case Directive::Kind::FoldMonotone: {
      int s = slot_at(layers - 1, t);
      return s == d.from ? d.to : s;
    }
    case Directive::Kind::HolidayInsert: {
      Int block = t / (d.every + 1);
      Int pos = t % (d.every + 1);
      if (pos == d.every) return kHoliday;
      return slot_at(layers - 1, block * d.every + pos);
    }
    case Directive::Kind::PlaceInHolidays: {
      int s = slot_at(layers - 1, t);
      if (s != kHoliday) return s;
      Int h = count_holidays(layers - 1, t);
      return inner_for(*d.inner).slot_at(h);
    }
    case Directive::Kind::Partition: {
      int s = slot_at(layers - 1, t);
      if (s != d.part_job) return s;
      Int k = count_job(layers - 1, d.part_job, t);
      return d.part_ids[(size_t)(unsigned long)(k % (long)d.part_ids.size())];
    }
  }
  throw std::logic_error("unreachable");
}

Int Expander::count_job(size_t layers, int job, const Int& t) const {
  if (t <= 0) return 0;
  if (layers > 0) {
    auto key = std::make_tuple(layers, job, t);
    auto it = job_memo_.find(key);
    if (it != job_memo_.end()) return it->second;
    if (job_memo_.size() > 4'000'000) job_memo_.clear();
    Int value = count_job_uncached(layers, job, t);
    job_memo_.emplace(std::move(key), value);
    return value;
  }
  long p = repr_.base.period();
  const auto& pre = base_prefix(job);
  Int full = t / p;
  long rem = (long)(unsigned long)(t % p);
  return full * pre[(size_t)p] + pre[(size_t)rem];
}

Int Expander::count_job_uncached(size_t layers, int job, const Int& t) const {
  const Directive& d = repr_.directives[layers - 1];
  switch (d.kind) {
    case Directive::Kind::FoldMerge: {
      if (job == d.merged) return 0;
      Int c = count_job(layers - 1, job, t);
      if (job == d.job_a) c += ceil_div(count_job(layers - 1, d.merged, t), 2);
      if (job == d.job_b) c += count_job(layers - 1, d.merged, t) / 2;
      return c;
    }
    case Directive::Kind::FoldMonotone: {
      if (job == d.from) return 0;
      Int c = count_job(layers - 1, job, t);
      if (job == d.to) c += count_job(layers - 1, d.from, t);
      return c;
    }
    case Directive::Kind::HolidayInsert: {
      Int block = t / (d.every + 1);
      Int pos = t % (d.every + 1);
      if (pos > d.every) throw std::logic_error("unreachable");
      Int inner_t = block * d.every + std::min(pos, d.every);
      return count_job(layers - 1, job, inner_t);
    }
    case Directive::Kind::PlaceInHolidays: {
      Int c = count_job(layers - 1, job, t);
      Int h = count_holidays(layers - 1, t);
      return c + inner_for(*d.inner).count_job(job, h);
    }
    case Directive::Kind::Partition: {
      if (job == d.part_job) return 0;
      Int c = count_job(layers - 1, job, t);
      long q = (long)d.part_ids.size();
      for (long r = 0; r < q; ++r) {
        if (d.part_ids[(size_t)r] != job) continue;
        Int cv = count_job(layers - 1, d.part_job, t);
        if (cv > r) c += (cv - r - 1) / q + 1;
      }
      return c;
    }
  }
  throw std::logic_error("unreachable");
}

Int Expander::count_holidays(size_t layers, const Int& t) const {
  if (t <= 0) return 0;
  if (layers > 0) {
    auto key = std::make_pair(layers, t);
    auto it = holiday_memo_.find(key);
    if (it != holiday_memo_.end()) return it->second;
    if (holiday_memo_.size() > 4'000'000) holiday_memo_.clear();
    Int value = count_holidays_uncached(layers, t);
    holiday_memo_.emplace(std::move(key), value);
    return value;
  }
  long p = repr_.base.period();
  Int full = t / p;
  long rem = (long)(unsigned long)(t % p);
  return full * holiday_prefix_[(size_t)p] + holiday_prefix_[(size_t)rem];
}

Int Expander::count_holidays_uncached(size_t layers, const Int& t) const {
  const Directive& d = repr_.directives[layers - 1];
  switch (d.kind) {
    case Directive::Kind::FoldMerge:
    case Directive::Kind::FoldMonotone:
      return count_holidays(layers - 1, t);
    case Directive::Kind::Partition: {
      Int h = count_holidays(layers - 1, t);
      long q = (long)d.part_ids.size();
      for (long r = 0; r < q; ++r) {
        if (d.part_ids[(size_t)r] != kHoliday) continue;
        Int cv = count_job(layers - 1, d.part_job, t);
        if (cv > r) h += (cv - r - 1) / q + 1;
      }
      return h;
    }
    case Directive::Kind::HolidayInsert: {
      Int block = t / (d.every + 1);
      Int pos = t % (d.every + 1);
      Int inner_t = block * d.every + std::min(pos, d.every);
      return count_holidays(layers - 1, inner_t) + block;
    }
    case Directive::Kind::PlaceInHolidays: {
      Int h = count_holidays(layers - 1, t);
      return inner_for(*d.inner).count_holidays(h);
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<int> Expander::window(const Int& t0, const Int& t1) const {
  if (t0 >= t1) throw std::invalid_argument("empty expansion window");
  std::vector<int> out;
  for (Int t = t0; t < t1; ++t) out.push_back(slot_at(t));
  return out;
}

std::optional<Violation> validate_repr(const PinwheelInstance& inst, const Repr& repr, const Int& window) {
  Int p = repr.period();
  const Int cap = 1 << 17;
  if (p <= cap) {
    // full period in reach: conclusive check subsuming any window
    auto slots = expand_repr(repr, 0, p);
    Schedule s;
    s.slots = std::move(slots);
    return validate_schedule(inst, s);
  }
  Int w = window > 0 && window < cap ? window : cap;
  auto slots = expand_repr(repr, 0, w);
  return validate_window(inst, slots, 0);
}

namespace {

void write_repr(std::ostringstream& os, const Repr& r, int depth) {
  std::string pad((size_t)depth * 2, ' ');
  os << pad << "base period " << r.base.period() << "\n";
  os << pad << "base slots";
  for (int s : r.base.slots) os << " " << (s == kHoliday ? std::string("H") : std::to_string(s));
  os << "\n";
  for (const auto& d : r.directives) {
    switch (d.kind) {
      case Directive::Kind::FoldMerge:
        os << pad << "fold_merge merged=" << d.merged << " a=" << d.job_a << " b=" << d.job_b << "\n";
        break;
      case Directive::Kind::FoldMonotone:
        os << pad << "fold_monotone from=" << d.from << " to=" << d.to << "\n";
        break;
      case Directive::Kind::HolidayInsert:
        os << pad << "holiday_insert every=" << d.every << "\n";
        break;
      case Directive::Kind::Partition: {
        os << pad << "partition job=" << d.part_job << " ids=";
        for (size_t i = 0; i < d.part_ids.size(); ++i)
          os << (i ? "," : "") << (d.part_ids[i] == kHoliday ? std::string("H") : std::to_string(d.part_ids[i]));
        os << "\n";
        break;
      }
      case Directive::Kind::PlaceInHolidays:
        os << pad << "place_in_holidays {\n";
        write_repr(os, *d.inner, depth + 1);
        os << pad << "}\n";
        break;
    }
  }
}

Repr parse_repr_lines(std::istringstream& in) {
  Repr r;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "}") return r;
    if (key == "base") {
      std::string what;
      ls >> what;
      if (what == "period") continue;  // implied by slots
      if (what != "slots") throw std::invalid_argument("bad base line");
      std::string tok;
      while (ls >> tok) r.base.slots.push_back(tok == "H" ? kHoliday : std::stoi(tok));
    } else if (key == "fold_merge" || key == "fold_monotone" || key == "holiday_insert" ||
               key == "partition") {
      std::unordered_map<std::string, std::string> kv;
      std::string tok;
      while (ls >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad directive arg: " + tok);
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
      }
      if (key == "fold_merge")
        r.directives.push_back(Directive::fold_merge(std::stoi(kv.at("merged")), std::stoi(kv.at("a")),
                                                     std::stoi(kv.at("b"))));
      else if (key == "fold_monotone")
        r.directives.push_back(Directive::fold_monotone(std::stoi(kv.at("from")), std::stoi(kv.at("to"))));
      else if (key == "holiday_insert")
        r.directives.push_back(Directive::holiday_insert(Int(kv.at("every"))));
      else {
        std::vector<int> ids;
        std::istringstream is(kv.at("ids"));
        std::string part;
        while (std::getline(is, part, ',')) ids.push_back(part == "H" ? kHoliday : std::stoi(part));
        r.directives.push_back(Directive::partition(std::stoi(kv.at("job")), std::move(ids)));
      }
    } else if (key == "place_in_holidays") {
      r.directives.push_back(Directive::place_in_holidays(parse_repr_lines(in)));
    } else {
      throw std::invalid_argument("unknown repr line: " + key);
    }
  }
  return r;
}

}  // namespace

std::string format_repr(const Repr& repr) {
  std::ostringstream os;
  write_repr(os, repr, 0);
  return os.str();
}

Repr parse_repr_text(const std::string& text) {
  std::istringstream in(text);
  return parse_repr_lines(in);
}

}  // namespace pinwheel
