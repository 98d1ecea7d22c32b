#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cheqlab/poset.hpp"

namespace cheqlab {

// Total point function between two posets; candidate or verified p-morphism.
struct PointMap {
  Poset source;
  Poset target;
  std::vector<int> map;  // map[x] = image of source point x
};

enum class ViolationKind {
  kForth,    // x <= y in the source but map[x] !<= map[y]
  kBack,     // y >= map[x] in the target but no z >= x maps to y
  kNotOnto,  // target point y has no preimage
};

struct Violation {
  ViolationKind kind;
  int x = -1;  // source point (kForth, kBack); unused for kNotOnto
  int y = -1;  // source point for kForth, target point otherwise
};

struct MorphismReport {
  bool ok = false;
  std::vector<Violation> violations;
};

std::string describe(const Violation& v, const PointMap& m);

// Checks monotonicity, the back condition and (optionally) surjectivity;
// collects all violations up to the cap.
MorphismReport check_p_morphism(const PointMap& m, bool require_onto,
                                std::size_t violation_cap = 100);

// Backtracking existence search. Points are assigned maximal-first (reverse
// linear extension by descending height), so the back condition is decided
// exactly when a point gets its image; candidate images are forward-checked
// and, with require_onto, every unhit target must stay reachable from some
// unassigned source point. Exhausting the space yields a definitive nullopt;
// running out of nodes raises SearchBudgetError instead. Any returned map has
// been re-verified. In non-deterministic mode the first branch level may be
// explored by parallel workers; witness identity is then not stable.
std::optional<PointMap> search_p_morphism(
    const Poset& source, const Poset& target, bool require_onto,
    bool deterministic = true, uint64_t node_budget = kDefaultSearchBudget,
    uint64_t* nodes_used = nullptr);

// The recursive reduction of the 3^n-point chequered frame onto the Medvedev
// frame over {1,...,2^m}, defined for n = 2^m - 1. Base case m = 1 is the
// fixed isomorphism root -> {}, '-' -> {1}, '+' -> {2}; the step maps atoms by
// the four-way split on their non-zero coordinate and every other point to the
// union of the atom images below it (so the root goes to {}).
PointMap canonical_reduction(int m, uint64_t point_budget = kDefaultPointBudget);

// Same, addressed by frame size n; BadIndexError unless n = 2^m - 1.
PointMap canonical_reduction_for_size(int n,
                                      uint64_t point_budget = kDefaultPointBudget);

struct ReducibleWitness {
  int seed;      // point of `big` generating the subframe
  PointMap map;  // from generated_subframe(big, {seed}).frame onto `small`
};

// Searches for a rooted generated subframe of `big` mapping p-morphically
// onto `small` (the semantic criterion for `big` refuting the characteristic
// formula of `small`). Subframes are deduplicated up to isomorphism. The node
// budget is shared across the inner searches.
std::optional<ReducibleWitness> reducible(const Poset& big, const Poset& small,
                                          uint64_t budget = kDefaultSearchBudget);

struct EmbedWitness {
  int u;
  int v;
  std::vector<int> embed_a;  // part_a point -> point of big (image = up(u))
  std::vector<int> embed_b;  // part_b point -> point of big (image = up(v))
};

// Finds points u, v of `big` with disjoint upward closures generating copies
// of part_a and part_b; the witness embeddings are returned.
std::optional<EmbedWitness> embeds_disjoint_union(
    const Poset& big, const Poset& part_a, const Poset& part_b,
    uint64_t budget = kDefaultSearchBudget);

}  // namespace cheqlab
