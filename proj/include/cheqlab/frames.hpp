#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cheqlab/poset.hpp"

namespace cheqlab {

// Coordinate label of a chequered-frame point: a word over '-', '0', '+',
// one symbol per coordinate. The root of the n-fold frame is "0...0".
struct CoordLabel {
  std::string coords;

  static CoordLabel parse(std::string_view text);
  int length() const { return static_cast<int>(coords.size()); }
  const std::string& str() const { return coords; }
  bool operator==(const CoordLabel&) const = default;
};

// Subset-of-{1..universe} label of a Medvedev-frame point, e.g. "{1,3}".
struct SubsetLabel {
  uint64_t mask = 0;  // bit i <=> element i+1
  int universe = 0;

  static SubsetLabel parse(std::string_view text, int universe);
  static SubsetLabel from_mask(uint64_t mask, int universe);
  bool is_proper() const;
  std::string str() const;
  bool operator==(const SubsetLabel&) const = default;
};

// The 3-point fork: one root below two incomparable tops.
Poset fork();

// n-fold product of the fork, points labeled by length-n coordinate words,
// order coordinatewise. Point indices follow byte-wise label order.
Poset chequered(int n, uint64_t point_budget = kDefaultPointBudget);

// All proper subsets of {1,...,n+1} ordered by inclusion.
Poset medvedev(int n, uint64_t point_budget = kDefaultPointBudget);

// Seven points r < a,b,c,d with e above a,b,c and f above b,c,d.
Poset frame_h();

// 1-based index of the single coordinate where an atom label differs from
// '0'. NotAtomError unless exactly one coordinate is non-zero.
int uparrow(const CoordLabel& x);

// Truncations: drop the n leftmost / rightmost coordinates. LengthError when
// nothing would remain.
CoordLabel drop_left(const CoordLabel& x, int n);
CoordLabel drop_right(const CoordLabel& x, int n);

struct CommonSuccessorEntry {
  int u;
  int u_other;
  int v;  // atom sharing a maximal successor with u and one with u_other
};

struct CommonSuccessorCheck {
  bool ok = true;
  std::vector<CommonSuccessorEntry> table;
  std::optional<std::pair<int, int>> failing_pair;
};

// For every unordered pair of non-maximal atoms u, u' of chequered(n), finds
// an atom v that has a maximal common successor with u and a maximal common
// successor with u'. Pairs involving maximal atoms (possible only at n = 1,
// where the atoms are the tops) are exempt: the witness obligation concerns
// atoms with room above them.
CommonSuccessorCheck common_successor_fact(int n,
                                           uint64_t point_budget = kDefaultPointBudget);

enum class FrameFamily { kChequered, kMedvedev };

struct SelfResemblanceCheck {
  bool ok = true;
  std::vector<int> rank;  // per point: the k with up(x) isomorphic to family(k)
  int failing_point = -1;
};

// Every point of family(n) generates a subframe isomorphic to family(k) for
// some k <= n, with the singleton as the k = 0 case.
SelfResemblanceCheck self_resemblance_check(FrameFamily family, int n,
                                            uint64_t point_budget = kDefaultPointBudget);

}  // namespace cheqlab
