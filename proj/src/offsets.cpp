#include "pinwheel/offsets.hpp"

#include <sstream>

namespace pinwheel {

OffsetAssignment OffsetAssignment::single_offsets(const std::vector<Int>& offsets) {
  OffsetAssignment a;
  a.blocks.resize(offsets.size());
  for (size_t i = 0; i < offsets.size(); ++i)
    a.blocks[i].push_back(ResidueBlock{offsets[i], 1, 1, 0});
  return a;
}

namespace {

// Decides whether two residue-class bundles intersect:
//   exists i < c1, j < c2 with  o1 + i*s1 == o2 + j*s2  (mod g).
// Reduction: admissible j form an arithmetic progression, and for each the
// matching i is an affine progression modulo g/e1; intersection with [0, c1)
// is a lattice-point count handled by ap_count_below.
bool ap_bundles_intersect(const Int& o1, const Int& s1, const Int& c1, const Int& q1,
                          const Int& o2, const Int& s2, const Int& c2, const Int& q2) {
  Int g = gcd(q1, q2);
  if (g == 1) return true;
  Int delta = mod_floor(o2 - o1, g);
  Int s1g = mod_floor(s1, g), s2g = mod_floor(s2, g);

  if (s1g == 0 && s2g == 0) return delta == 0;
  if (s1g == 0) {
    // need j*s2 == -delta (mod g)
    Int e = gcd(s2g, g);
    if (delta % e != 0) return false;
    Int m = g / e;
    Int j0 = mod_floor(-(delta / e) * mod_inverse(s2g / e, m), m);
    return j0 < c2;
  }
  if (s2g == 0) {
    Int e = gcd(s1g, g);
    if (delta % e != 0) return false;
    Int m = g / e;
    Int i0 = mod_floor((delta / e) * mod_inverse(s1g / e, m), m);
    return i0 < c1;
  }

  Int e1 = gcd(s1g, g);
  // admissible j: delta + j*s2 == 0 (mod e1)
  Int de = mod_floor(delta, e1);
  Int e2 = gcd(mod_floor(s2g, e1), e1);  // gcd(0, e1) == e1
  if (de % e2 != 0) return false;
  Int E = e1 / e2;  // admissible j form j0 + t*E
  Int j0 = 0;
  if (E > 1) j0 = mod_floor(-(de / e2) * mod_inverse(mod_floor(s2g, e1) / e2, E), E);
  if (j0 >= c2) return false;
  Int t_count = (c2 - 1 - j0) / E + 1;

  Int mi = g / e1;
  if (mi == 1 || c1 >= mi) return true;
  Int winv = mod_inverse(s1g / e1, mi);
  Int k1 = mod_floor(((delta + j0 * s2g) / e1) * winv, mi);
  Int k2 = mod_floor((s2g / e2) * winv, mi);
  return ap_hits_below(t_count, k1, k2, mi, c1);
}

Int effective_modulus(const ResidueBlock& b, const Int& period) {
  return b.lift == 0 ? period : b.lift;
}

}  // namespace

bool blocks_intersect(const ResidueBlock& a, const Int& period_a,
                      const ResidueBlock& b, const Int& period_b) {
  // A lifted block covers every residue over its shadow modulus, so the test
  // always reduces to the shadow progressions.
  return ap_bundles_intersect(a.offset, a.step, a.count, effective_modulus(a, period_a),
                              b.offset, b.step, b.count, effective_modulus(b, period_b));
}

std::optional<OffsetCollision> validate_offsets(const PinwheelInstance& inst,
                                                const OffsetAssignment& assignment) {
  auto fail = [](int ga, int gb, std::string msg) {
    return OffsetCollision{ga, gb, std::move(msg)};
  };
  if (assignment.blocks.size() != inst.groups.size())
    return fail(-1, -1, "assignment does not cover every job group");

  struct Entry {
    int group;
    const ResidueBlock* block;
    Int period;
    Int q;          // effective modulus
    long bucket;    // offset mod bucket_mod when the block is bucket-aligned, else -1
  };
  std::vector<Entry> entries;

  // bucket on a small common divisor of all periods to skip provably disjoint pairs
  Int bucket_mod = 0;
  for (const auto& g : inst.groups) {
    if (!is_integer(g.period)) return fail(-1, -1, "offset validation needs integer periods");
    bucket_mod = bucket_mod == 0 ? num(g.period) : gcd(bucket_mod, num(g.period));
  }
  if (bucket_mod > 4096) bucket_mod = 0;  // no useful small modulus

  for (size_t gi = 0; gi < inst.groups.size(); ++gi) {
    const auto& group = inst.groups[gi];
    const Int period = num(group.period);
    Int covered = 0;
    for (const auto& b : assignment.blocks[gi]) {
      if (b.count < 1 || b.step < 1 || b.offset < 0)
        return fail((int)gi, (int)gi, "malformed block");
      Int q = effective_modulus(b, period);
      if (b.lift != 0 && period % b.lift != 0)
        return fail((int)gi, (int)gi, "lift modulus does not divide period");
      if (b.offset >= q) return fail((int)gi, (int)gi, "block offset outside modulus");
      // classes within the block must be pairwise distinct
      if (b.count > q / gcd(b.step, q))
        return fail((int)gi, (int)gi, "block repeats a residue class");
      covered += b.jobs(period);
      long bucket = -1;
      if (bucket_mod > 1 && q % bucket_mod == 0 && b.step % bucket_mod == 0)
        bucket = (long)(unsigned long)mod_floor(b.offset, bucket_mod);
      entries.push_back(Entry{(int)gi, &b, period, q, bucket});
    }
    if (covered != group.multiplicity)
      return fail((int)gi, (int)gi, "block counts do not match multiplicity");
  }

  for (size_t x = 0; x < entries.size(); ++x) {
    for (size_t y = x + 1; y < entries.size(); ++y) {
      const Entry& a = entries[x];
      const Entry& b = entries[y];
      if (a.bucket >= 0 && b.bucket >= 0 && a.bucket != b.bucket) continue;
      if (ap_bundles_intersect(a.block->offset, a.block->step, a.block->count, a.q,
                               b.block->offset, b.block->step, b.block->count, b.q))
        return fail(a.group, b.group, "two jobs share a time slot");
    }
  }
  return std::nullopt;
}

std::string format_offsets(const PinwheelInstance& inst, const OffsetAssignment& a) {
  std::ostringstream os;
  for (size_t gi = 0; gi < a.blocks.size(); ++gi) {
    os << "group " << gi << " period " << format_rational(inst.groups[gi].period) << "\n";
    for (const auto& b : a.blocks[gi]) {
      os << "block offset=" << b.offset << " step=" << b.step << " count=" << b.count;
      if (b.lift != 0) os << " lift=" << b.lift;
      os << "\n";
    }
  }
  return os.str();
}

OffsetAssignment parse_offsets_text(const std::string& text) {
  OffsetAssignment a;
  std::istringstream in(text);
  std::string line;
  long current = -1;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "group") {
      ls >> current;
      if (current < 0) throw std::invalid_argument("bad group index");
      if ((size_t)current >= a.blocks.size()) a.blocks.resize((size_t)current + 1);
    } else if (key == "block") {
      if (current < 0) throw std::invalid_argument("block before group");
      ResidueBlock b;
      std::string tok;
      while (ls >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad block arg: " + tok);
        std::string k = tok.substr(0, eq);
        Int v(tok.substr(eq + 1));
        if (k == "offset")
          b.offset = v;
        else if (k == "step")
          b.step = v;
        else if (k == "count")
          b.count = v;
        else if (k == "lift")
          b.lift = v;
        else
          throw std::invalid_argument("unknown block field: " + k);
      }
      a.blocks[(size_t)current].push_back(b);
    } else {
      throw std::invalid_argument("unknown offsets line: " + key);
    }
  }
  return a;
}

}  // namespace pinwheel
