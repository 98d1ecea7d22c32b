#include <algorithm>
#include <set>

#include "cheqlab/bits.hpp"
#include "cheqlab/frames.hpp"
#include "cheqlab/poset.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cheqlab;

namespace {

std::set<std::string> label_set(const Poset& p, const std::vector<int>& pts) {
  std::set<std::string> out;
  for (int x : pts) out.insert(p.label(x));
  return out;
}

}  // namespace

TEST_CASE("from_covers builds the fork shape") {
  Poset p = Poset::from_covers({"r", "a", "b"}, {{0, 1}, {0, 2}});
  CHECK(p.size() == 3);
  CHECK(p.leq(0, 1));
  CHECK(p.leq(0, 2));
  CHECK(!p.leq(1, 2));
  CHECK(!p.leq(2, 1));
  CHECK(p.root().has_value());
  CHECK(p.label(*p.root()) == "r");
  CHECK(label_set(p, p.maximal_points()) == std::set<std::string>{"a", "b"});
  p.validate();
}

TEST_CASE("from_covers singleton is reflexive only") {
  Poset p = Poset::from_covers({"x"}, {});
  CHECK(p.size() == 1);
  CHECK(p.leq(0, 0));
  CHECK(p.root() == 0);
  CHECK(p.atoms().empty());
}

TEST_CASE("from_covers rejects cycles and duplicate labels") {
  CHECK_THROWS_AS(Poset::from_covers({"x", "y"}, {{0, 1}, {1, 0}}), CycleError);
  CHECK_THROWS_AS(Poset::from_covers({"x", "x"}, {}), DuplicateLabelError);
  CHECK_THROWS_AS(Poset::from_covers({"x"}, {{0, 3}}), Error);
}

TEST_CASE("from_covers closes transitively") {
  Poset p = Poset::from_covers({"a", "b", "c"}, {{0, 1}, {1, 2}});
  CHECK(p.leq(0, 2));
  CHECK(p.height(2) == 2);
  // redundant edges do not disturb the cached reduction
  Poset q = Poset::from_covers({"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(q.cover_pairs() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  q.validate();
}

TEST_CASE("product of forks matches the 9-point chequered frame") {
  Poset f = cheqlab::fork();
  Poset p = product(f, f);
  CHECK(p.size() == 9);
  CHECK(is_isomorphic(p, chequered(2)).has_value());
  CHECK(p.labels() == chequered(2).labels());
}

TEST_CASE("product with the singleton is the identity up to labels") {
  Poset one = Poset::from_covers({"x"}, {});
  Poset q = medvedev(2);
  CHECK(is_isomorphic(product(one, q), q).has_value());
}

TEST_CASE("product sizes multiply") {
  Poset f = cheqlab::fork();
  CHECK(product(product(f, f), f).size() == 27);
}

TEST_CASE("product respects the point budget") {
  CHECK_THROWS_AS(product(chequered(4), chequered(4), 100), SizeGuardError);
}

TEST_CASE("product rejects label collisions") {
  Poset a = Poset::from_covers({"ab", "a"}, {});
  Poset b = Poset::from_covers({"c", "bc"}, {});
  CHECK_THROWS_AS(product(a, b), DuplicateLabelError);
}

TEST_CASE("disjoint union keeps the components apart") {
  Poset f = cheqlab::fork();
  Poset u = disjoint_union(f, f);
  CHECK(u.size() == 6);
  CHECK(!u.root().has_value());
  for (int x = 0; x < 3; ++x)
    for (int y = 3; y < 6; ++y) {
      CHECK(!u.leq(x, y));
      CHECK(!u.leq(y, x));
    }
  u.validate();
}

TEST_CASE("disjoint union with the empty poset is the identity") {
  Poset f = cheqlab::fork();
  Poset e;
  CHECK(disjoint_union(f, e).labels() == f.labels());
  CHECK(disjoint_union(e, f).labels() == f.labels());
}

TEST_CASE("generated subframe of F_2 at an atom is a fork") {
  Poset f2 = chequered(2);
  int seed = *f2.index_of("-0");
  GeneratedSubframe sub = generated_subframe(f2, {seed});
  CHECK(sub.frame.size() == 3);
  CHECK(label_set(sub.frame, {0, 1, 2}) ==
        std::set<std::string>{"-0", "--", "-+"});
  CHECK(is_isomorphic(sub.frame, cheqlab::fork()).has_value());
  // the index map points back into the parent
  for (int i = 0; i < sub.frame.size(); ++i)
    CHECK(f2.label(sub.parent_index[i]) == sub.frame.label(i));
  // membership is exactly reachability from the seed
  for (int x = 0; x < f2.size(); ++x) {
    bool member = std::find(sub.parent_index.begin(), sub.parent_index.end(),
                            x) != sub.parent_index.end();
    CHECK(member == f2.leq(seed, x));
  }
}

TEST_CASE("generated subframe at the root is the whole frame") {
  Poset f2 = chequered(2);
  GeneratedSubframe sub = generated_subframe(f2, {*f2.root()});
  CHECK(sub.frame.size() == f2.size());
  CHECK(is_isomorphic(sub.frame, f2).has_value());
}

TEST_CASE("generated subframe at a maximal point is a singleton") {
  Poset f2 = chequered(2);
  GeneratedSubframe sub = generated_subframe(f2, {*f2.index_of("++")});
  CHECK(sub.frame.size() == 1);
}

TEST_CASE("generated subframe needs a seed") {
  CHECK_THROWS_AS(generated_subframe(cheqlab::fork(), std::span<const int>{}),
                  EmptySeedError);
}

TEST_CASE("generated subframe over a seed set is the union of upsets") {
  Poset f2 = chequered(2);
  int a = *f2.index_of("-0");
  int b = *f2.index_of("+0");
  GeneratedSubframe sub = generated_subframe(f2, {a, b});
  CHECK(sub.frame.size() == 6);
  sub.frame.validate();
  for (int x = 0; x < f2.size(); ++x) {
    bool member = std::find(sub.parent_index.begin(), sub.parent_index.end(),
                            x) != sub.parent_index.end();
    CHECK(member == (f2.leq(a, x) || f2.leq(b, x)));
  }
}

TEST_CASE("roots") {
  Poset f2 = chequered(2);
  CHECK(f2.label(*f2.root()) == "00");
  CHECK(!disjoint_union(cheqlab::fork(), cheqlab::fork()).root().has_value());
  Poset m2 = medvedev(2);
  CHECK(m2.label(*m2.root()) == "{}");
}

TEST_CASE("atoms") {
  Poset f1 = cheqlab::fork();
  CHECK(label_set(f1, f1.atoms()) == std::set<std::string>{"-", "+"});
  Poset f2 = chequered(2);
  CHECK(label_set(f2, f2.atoms()) ==
        std::set<std::string>{"-0", "+0", "0-", "0+"});
  CHECK(Poset::from_covers({"x"}, {}).atoms().empty());
  CHECK_THROWS_AS(Poset::from_covers({"x", "y"}, {}).atoms(), NotRootedError);
}

TEST_CASE("upset enumeration of the fork in canonical order") {
  std::vector<UpSet> ups = enumerate_upsets(cheqlab::fork(), 100);
  REQUIRE(ups.size() == 5);
  CHECK(ups[0].to_string() == "{}");
  CHECK(ups[1].to_string() == "{-}");
  CHECK(ups[2].to_string() == "{+}");
  CHECK(ups[3].to_string() == "{+, -}");
  CHECK(ups[4].to_string() == "{+, -, 0}");
}

TEST_CASE("upset counts: chain and antichain") {
  Poset chain = Poset::from_covers({"a", "b", "c"}, {{0, 1}, {1, 2}});
  CHECK(enumerate_upsets(chain, 100).size() == 4);
  Poset anti = Poset::from_covers({"x", "y"}, {});
  CHECK(enumerate_upsets(anti, 100).size() == 4);
}

TEST_CASE("upset enumeration respects its limit") {
  CHECK_THROWS_AS(enumerate_upsets(chequered(2), 10), SearchBudgetError);
}

TEST_CASE("upset enumeration matches the subset filter on small posets") {
  std::vector<Poset> posets = {cheqlab::fork(), chequered(2), medvedev(2), frame_h(),
                               testutil::random_poset(3, 9, 30),
                               testutil::random_poset(9, 12, 20)};
  for (const Poset& p : posets) {
    auto brute = testutil::brute_force_upsets(p);
    auto fast = enumerate_upsets(p, 1u << 20);
    REQUIRE(fast.size() == brute.size());
    // no duplicates, all upward closed, canonical order strictly increasing
    for (std::size_t i = 0; i < fast.size(); ++i) {
      std::vector<char> in(p.size(), 0);
      for (int x : fast[i].members()) in[x] = 1;
      CHECK(testutil::naive_is_upset(p, in));
      if (i > 0) CHECK(UpSet::canonical_less(fast[i - 1], fast[i]));
    }
  }
  CHECK(enumerate_upsets(chequered(2), 1000).size() == 48);
}

TEST_CASE("upset algebra stays within one poset") {
  Poset f = cheqlab::fork();
  Poset g = cheqlab::fork();
  UpSet a = f.principal_upset(0);
  UpSet b = g.principal_upset(0);
  CHECK_THROWS_AS((void)a.set_union(b), MixedPosetError);
  CHECK_THROWS_AS((void)(a == b), MixedPosetError);
  UpSet c = f.principal_upset(1);
  CHECK(a.set_union(c).count() == 2);
  CHECK(a.set_intersection(c).empty());
}

TEST_CASE("upset_of validates upward closure") {
  Poset f = cheqlab::fork();
  int root = *f.root();
  CHECK_THROWS_AS(f.upset_of({root}), NotUpwardClosedError);
  CHECK(f.upward_closure({root}).count() == 3);
  CHECK(f.upset_of({0, 1}).count() == 2);
}

TEST_CASE("isomorphism: F_1 and M_1 are the same shape") {
  auto w = is_isomorphic(cheqlab::fork(), medvedev(1));
  REQUIRE(w.has_value());
  Poset f = cheqlab::fork();
  Poset m = medvedev(1);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      CHECK(f.leq(x, y) == m.leq((*w)[x], (*w)[y]));
}

TEST_CASE("isomorphism: F_2 and M_2 differ") {
  CHECK(!is_isomorphic(chequered(2), medvedev(2)).has_value());
}

TEST_CASE("isomorphism: reflexivity and symmetry of witnesses") {
  std::vector<Poset> posets = {chequered(2), medvedev(2), frame_h(),
                               testutil::random_poset(17, 8, 30)};
  for (const Poset& p : posets) {
    auto self = is_isomorphic(p, p);
    REQUIRE(self.has_value());
    // invert the witness and check it back
    std::vector<int> inv(p.size());
    for (int x = 0; x < p.size(); ++x) inv[(*self)[x]] = x;
    for (int x = 0; x < p.size(); ++x)
      for (int y = 0; y < p.size(); ++y)
        CHECK(p.leq(x, y) == p.leq(inv[x], inv[y]));
  }
}

TEST_CASE("product is associative up to isomorphism") {
  Poset f = cheqlab::fork();
  CHECK(is_isomorphic(product(product(f, f), f), product(f, product(f, f)))
            .has_value());
}

TEST_CASE("down-sets of chequered frames are lattices") {
  CHECK(predecessors_form_lattice(chequered(2)).ok);
  CHECK(predecessors_form_lattice(chequered(3)).ok);
}

TEST_CASE("the bowtie has a down-set that is no lattice") {
  // a, b below both c and d: down(c) = {a, b, c} has no meet for (a, b)
  Poset p = Poset::from_covers({"a", "b", "c", "d"},
                               {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  LatticeCheck r = predecessors_form_lattice(p);
  CHECK(!r.ok);
  CHECK((p.label(r.point) == "c" || p.label(r.point) == "d"));
  CHECK(label_set(p, {r.a, r.b}) == std::set<std::string>{"a", "b"});
  CHECK(!r.join_missing);  // the meet is what fails
}

TEST_CASE("constructed posets satisfy the order axioms exhaustively") {
  for (const Poset& p :
       {cheqlab::fork(), chequered(3), medvedev(3), frame_h(),
        testutil::random_poset(21, 10, 25)}) {
    p.validate();  // reflexive, antisymmetric, transitive, covers cached right
    for (int x = 0; x < p.size(); ++x) CHECK(p.leq(x, x));
  }
}
