#include "pinwheel/instance.hpp"

#include <sstream>

namespace pinwheel {

std::string JobTag::describe() const {
  if (empty()) return "";
  std::ostringstream os;
  os << role;
  if (var >= 0) os << " var=" << var;
  if (clause >= 0) os << " clause=" << clause;
  if (level >= 0) os << " level=" << level;
  if (negated) os << " neg";
  return os.str();
}

void PinwheelInstance::add(Rat period, Int multiplicity, JobTag tag) {
  if (period < 1) throw std::invalid_argument("job period must be >= 1");
  if (multiplicity < 1) throw std::invalid_argument("job multiplicity must be >= 1");
  groups.push_back(JobGroup{std::move(period), std::move(multiplicity), std::move(tag)});
}

Rat PinwheelInstance::density() const {
  Rat d = 0;
  for (const auto& g : groups) d += Rat(g.multiplicity) / g.period;
  return d;
}

Int PinwheelInstance::total_jobs() const {
  Int t = 0;
  for (const auto& g : groups) t += g.multiplicity;
  return t;
}

bool PinwheelInstance::all_integer() const {
  for (const auto& g : groups)
    if (!is_integer(g.period)) return false;
  return true;
}

Rat PinwheelInstance::max_period() const {
  Rat m = 0;
  for (const auto& g : groups) m = std::max(m, g.period);
  return m;
}

Rat PinwheelInstance::min_period() const {
  if (groups.empty()) return 0;
  Rat m = groups.front().period;
  for (const auto& g : groups) m = std::min(m, g.period);
  return m;
}

PinwheelInstance scale(const PinwheelInstance& inst, const Rat& alpha) {
  if (alpha <= 0) throw std::invalid_argument("scale factor must be positive");
  PinwheelInstance out;
  for (const auto& g : inst.groups) out.groups.push_back(JobGroup{g.period * alpha, g.multiplicity, g.tag});
  return out;
}

PinwheelInstance floor_periods(const PinwheelInstance& inst) {
  PinwheelInstance out;
  for (const auto& g : inst.groups) {
    Int p = ifloor(g.period);
    if (p < 1) throw std::domain_error("floor_periods: period would drop below 1");
    out.groups.push_back(JobGroup{Rat(p), g.multiplicity, g.tag});
  }
  return out;
}

std::vector<ExpandedJob> expand_jobs(const PinwheelInstance& inst, std::uint64_t limit) {
  if (inst.total_jobs() > limit) throw std::length_error("expand_jobs: multiplicity total exceeds limit");
  std::vector<ExpandedJob> jobs;
  for (int gi = 0; gi < (int)inst.groups.size(); ++gi) {
    const auto& g = inst.groups[gi];
    for (Int c = 0; c < g.multiplicity; ++c) jobs.push_back(ExpandedJob{gi, c, g.period});
  }
  return jobs;
}

PinwheelInstance parse_instance(std::istream& in) {
  PinwheelInstance inst;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    Rat period = parse_rational(tok);
    Int mult = 1;
    std::string m;
    if (ls >> m) {
      if (m.size() < 2 || m[0] != 'x') throw std::invalid_argument("bad multiplicity token: " + m);
      mult = Int(m.substr(1));
    }
    inst.add(period, mult);
  }
  return inst;
}

PinwheelInstance parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

std::string format_instance(const PinwheelInstance& inst) {
  std::ostringstream os;
  for (const auto& g : inst.groups) {
    os << format_rational(g.period);
    if (g.multiplicity != 1) os << " x" << g.multiplicity.str();
    os << "\n";
  }
  return os.str();
}

std::string format_tags(const PinwheelInstance& inst) {
  std::ostringstream os;
  for (size_t i = 0; i < inst.groups.size(); ++i) {
    if (inst.groups[i].tag.empty()) continue;
    os << i << " " << inst.groups[i].tag.describe() << "\n";
  }
  return os.str();
}

}  // namespace pinwheel
