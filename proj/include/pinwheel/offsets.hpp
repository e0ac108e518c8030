#pragma once

#include "pinwheel/instance.hpp"
#include "pinwheel/modmath.hpp"

#include <optional>
#include <vector>

namespace pinwheel {

// A bundle of occupied residue classes for one group of equal-period jobs.
//
// Plain block (lift == 0): the residues { offset + i*step mod period : i < count },
// one job per residue.
//
// Lifted block (lift == M, M | period): the shadow classes
// { offset + i*step mod M : i < count } are claimed together with every lift
// modulo the period, so the block carries count * (period / M) jobs.
//
// Exact-period scheduling of a job at residue r modulo its period means the
// job runs at times r, r + period, r + 2*period, ...; two blocks are in
// conflict when any two of their classes intersect as subsets of the integers.
struct ResidueBlock {
  Int offset;
  Int step;
  Int count;
  Int lift = 0;

  Int jobs(const Int& period) const { return lift == 0 ? count : count * (period / lift); }
};

// Residue classes for every job of an instance, indexed by group.
struct OffsetAssignment {
  std::vector<std::vector<ResidueBlock>> blocks;

  void require_group_count(size_t n) { blocks.resize(n); }
  void add(size_t group, ResidueBlock b) { blocks[group].push_back(std::move(b)); }

  // convenience for singleton assignments (one job, one residue)
  static OffsetAssignment single_offsets(const std::vector<Int>& offsets);
};

struct OffsetCollision {
  int group_a = -1, group_b = -1;  // may coincide for an in-group collision
  std::string message;
};

// true iff two blocks, taken modulo their periods, share an integer time step
bool blocks_intersect(const ResidueBlock& a, const Int& period_a,
                      const ResidueBlock& b, const Int& period_b);

// Checks structural sanity (counts match multiplicities, classes distinct
// within each block) and pairwise disjointness of all blocks.
// Integer periods only.
std::optional<OffsetCollision> validate_offsets(const PinwheelInstance& inst,
                                                const OffsetAssignment& assignment);

std::string format_offsets(const PinwheelInstance& inst, const OffsetAssignment& a);
OffsetAssignment parse_offsets_text(const std::string& text);

}  // namespace pinwheel
