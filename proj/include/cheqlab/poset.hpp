#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cheqlab/errors.hpp"

namespace cheqlab {

// Point budget guarding product and frame constructions (overridable per call)
// and the default budget for valuation/search spaces.
inline constexpr uint64_t kDefaultPointBudget = 20'000;
inline constexpr uint64_t kDefaultSearchBudget = 100'000'000;

class UpSet;
class Poset;
struct GeneratedSubframe;

Poset product(const Poset& p, const Poset& q, uint64_t point_budget);
Poset disjoint_union(const Poset& p, const Poset& q);
GeneratedSubframe generated_subframe(const Poset& p, std::span<const int> seeds);

// A finite reflexive partial order. Immutable after construction and safe to
// share across threads. The full order relation is stored as one bit row per
// point (up_row(x) bit y  <=>  x <= y) so order queries are O(1) and set-level
// reasoning is whole-word bitwise work; frames up to a few thousand points get
// queried billions of times by the searches. Point identity is the dense index
// 0..size-1; labels are display-only and never participate in comparisons.
class Poset {
 public:
  Poset();  // the empty poset

  // Order = reflexive-transitive closure of cover_pairs. Throws CycleError if
  // the closure is not antisymmetric, DuplicateLabelError on repeated labels.
  static Poset from_covers(std::vector<std::string> labels,
                           const std::vector<std::pair<int, int>>& cover_pairs);

  // Order given extensionally; leq must already be a partial order (validated).
  static Poset from_order(std::vector<std::string> labels,
                          const std::function<bool(int, int)>& leq);

  int size() const;
  int word_count() const;
  const std::vector<std::string>& labels() const;
  const std::string& label(int x) const;
  std::optional<int> index_of(std::string_view label) const;

  bool leq(int x, int y) const;
  std::span<const uint64_t> up_row(int x) const;    // {y : x <= y}
  std::span<const uint64_t> down_row(int x) const;  // {y : y <= x}
  int up_count(int x) const;
  int down_count(int x) const;

  // Transitive reduction, computed once at construction.
  const std::vector<int>& covers_above(int x) const;
  const std::vector<int>& covers_below(int x) const;
  const std::vector<std::pair<int, int>>& cover_pairs() const;  // sorted (lo, hi)

  int height(int x) const;  // longest chain strictly below x
  int max_height() const;   // 0 for the empty poset
  bool is_maximal(int x) const;
  std::vector<int> maximal_points() const;

  // The unique point below all points, if any.
  std::optional<int> root() const;
  // Immediate successors of the root; NotRootedError when there is no root.
  std::vector<int> atoms() const;

  UpSet empty_upset() const;
  UpSet full_upset() const;
  UpSet principal_upset(int x) const;
  // Exact point set; throws NotUpwardClosedError if not upward closed.
  UpSet upset_of(std::span<const int> points) const;
  UpSet upset_of(std::initializer_list<int> points) const;
  // Smallest upset containing the given points.
  UpSet upward_closure(std::span<const int> points) const;
  UpSet upward_closure(std::initializer_list<int> points) const;
  // Wrap a raw bit row (validated for upward closure).
  UpSet upset_from_bits(std::vector<uint64_t> words) const;

  // Identity of the underlying carrier (shared, not structural equality).
  bool same_as(const Poset& other) const;

  // Points reordered by byte-wise label sort; used by the frame constructors
  // so indices are reproducible across runs and platforms.
  Poset sorted_by_labels() const;

  // Re-verifies reflexivity, antisymmetry, transitivity, label uniqueness and
  // that the cached covers equal a freshly computed transitive reduction.
  void validate() const;

  struct Data;

 private:
  friend class UpSet;
  friend Poset product(const Poset&, const Poset&, uint64_t);
  friend Poset disjoint_union(const Poset&, const Poset&);
  friend GeneratedSubframe generated_subframe(const Poset&,
                                              std::span<const int>);
  explicit Poset(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  static Poset finalize(std::unique_ptr<Data> d);

  std::shared_ptr<const Data> d_;
};

// An upward-closed point set of one specific poset. Construction validates
// closure, so a held UpSet is always a legal valuation value. Operations that
// mix upsets of different posets throw MixedPosetError.
class UpSet {
 public:
  int poset_size() const;
  bool contains(int x) const;
  int count() const;
  bool empty() const;
  std::vector<int> members() const;
  std::span<const uint64_t> bits() const { return w_; }

  bool same_poset(const Poset& p) const;
  bool same_poset(const UpSet& o) const;

  UpSet set_union(const UpSet& o) const;
  UpSet set_intersection(const UpSet& o) const;

  bool operator==(const UpSet& o) const;
  bool operator!=(const UpSet& o) const { return !(*this == o); }

  // Canonical enumeration order: lexicographic on the membership bit-vector
  // read by ascending point index (empty set first, full set last).
  static bool canonical_less(const UpSet& a, const UpSet& b);

  // "{label, label, ...}" in ascending index order.
  std::string to_string() const;

 private:
  friend class Poset;
  UpSet(std::shared_ptr<const Poset::Data> d, std::vector<uint64_t> w)
      : d_(std::move(d)), w_(std::move(w)) {}

  std::shared_ptr<const Poset::Data> d_;
  std::vector<uint64_t> w_;
};

// product: Cartesian product with componentwise order; labels are
// concatenations of the component labels. SizeGuardError if |p|*|q| exceeds
// the point budget (declared above; default budget kDefaultPointBudget).
inline Poset product(const Poset& p, const Poset& q) {
  return product(p, q, kDefaultPointBudget);
}

// disjoint_union (declared above): side-by-side union, no cross relations;
// labels are tagged "l:"/"r:" to stay unique. The empty poset is the unit.

struct GeneratedSubframe {
  Poset frame;
  std::vector<int> parent_index;  // subframe point -> point of the parent
};

// generated_subframe (declared above): restriction of p to the upward closure
// of seeds. EmptySeedError if seeds is empty.
GeneratedSubframe generated_subframe(const Poset& p,
                                     std::initializer_list<int> seeds);

// Every upward-closed subset exactly once, sorted by UpSet::canonical_less.
// SearchBudgetError once more than `limit` sets would be produced.
std::vector<UpSet> enumerate_upsets(const Poset& p, uint64_t limit);

// An order isomorphism p -> q as a point vector, or nullopt. Backtracking over
// color classes obtained by iterated degree/level refinement.
std::optional<std::vector<int>> is_isomorphic(const Poset& p, const Poset& q);

struct LatticeCheck {
  bool ok = true;
  // On failure: the point whose down-set is not a lattice and the offending
  // pair inside it; join_missing tells which bound was missing.
  int point = -1;
  int a = -1;
  int b = -1;
  bool join_missing = false;
};

// True iff for every point x the down-set of x is a lattice (each pair in it
// has a least upper bound and a greatest lower bound within the down-set).
LatticeCheck predecessors_form_lattice(const Poset& p);

}  // namespace cheqlab
