#include "cheqlab/poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "cheqlab/bits.hpp"

namespace cheqlab {

struct Poset::Data {
  int n = 0;
  int words = 0;
  std::vector<std::string> labels;
  std::vector<uint64_t> up;    // n rows of `words` words
  std::vector<uint64_t> down;  // transpose of up
  std::vector<std::vector<int>> covers_up;
  std::vector<std::vector<int>> covers_dn;
  std::vector<std::pair<int, int>> cover_pairs;  // sorted (lower, upper)
  std::vector<int> height;
  std::vector<char> maximal;
  int max_height = 0;
  int root = -1;
  std::unordered_map<std::string, int> label_index;

  std::span<const uint64_t> up_row(int x) const {
    return {up.data() + static_cast<std::size_t>(x) * words,
            static_cast<std::size_t>(words)};
  }
  std::span<const uint64_t> down_row(int x) const {
    return {down.data() + static_cast<std::size_t>(x) * words,
            static_cast<std::size_t>(words)};
  }
  std::span<uint64_t> up_row_mut(int x) {
    return {up.data() + static_cast<std::size_t>(x) * words,
            static_cast<std::size_t>(words)};
  }
};

namespace {

void check_order_axioms(const Poset::Data& d) {
  const int n = d.n;
  for (int x = 0; x < n; ++x)
    if (!bits::test(d.up_row(x), x)) throw Error("order is not reflexive");
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (bits::test(d.up_row(x), y) && bits::test(d.up_row(y), x))
        throw CycleError("order is not antisymmetric: " + d.labels[x] +
                         " and " + d.labels[y] + " lie on a cycle");
  for (int x = 0; x < n; ++x) {
    auto row = d.up_row(x);
    bits::for_each(row, [&](int y) {
      if (!bits::subset(d.up_row(y), row))
        throw Error("order is not transitive at " + d.labels[x] + " <= " +
                    d.labels[y]);
    });
  }
}

// Transitive reduction: y covers x iff y is strictly above x and reachable
// from no intermediate point, i.e. y ∉ ⋃ { up(z)\{z} : z strictly above x }.
void recompute_reduction(Poset::Data& d) {
  const int n = d.n;
  const int words = d.words;
  d.covers_up.assign(n, {});
  d.covers_dn.assign(n, {});
  d.cover_pairs.clear();
  std::vector<uint64_t> strict(words), via(words), tmp(words);
  for (int x = 0; x < n; ++x) {
    auto row = d.up_row(x);
    std::copy(row.begin(), row.end(), strict.begin());
    bits::clear(strict, x);
    std::fill(via.begin(), via.end(), 0);
    bits::for_each(std::span<const uint64_t>(strict), [&](int z) {
      auto zr = d.up_row(z);
      std::copy(zr.begin(), zr.end(), tmp.begin());
      bits::clear(tmp, z);
      for (int w = 0; w < words; ++w) via[w] |= tmp[w];
    });
    for (int w = 0; w < words; ++w) tmp[w] = strict[w] & ~via[w];
    bits::for_each(std::span<const uint64_t>(tmp), [&](int y) {
      d.covers_up[x].push_back(y);
      d.covers_dn[y].push_back(x);
      d.cover_pairs.emplace_back(x, y);
    });
  }
  for (auto& v : d.covers_dn) std::sort(v.begin(), v.end());
  std::sort(d.cover_pairs.begin(), d.cover_pairs.end());
}

}  // namespace

Poset Poset::finalize(std::unique_ptr<Data> d) {
  const int n = d->n;
  d->words = bits::word_count(n);

  if (static_cast<int>(d->labels.size()) != n)
    throw Error("label count does not match point count");
  d->label_index.clear();
  for (int i = 0; i < n; ++i) {
    auto [it, fresh] = d->label_index.emplace(d->labels[i], i);
    (void)it;
    if (!fresh) throw DuplicateLabelError("duplicate label: " + d->labels[i]);
  }

  check_order_axioms(*d);

  d->down.assign(static_cast<std::size_t>(n) * d->words, 0);
  for (int x = 0; x < n; ++x) {
    bits::for_each(d->up_row(x), [&](int y) {
      bits::set({d->down.data() + static_cast<std::size_t>(y) * d->words,
                 static_cast<std::size_t>(d->words)},
                x);
    });
  }

  recompute_reduction(*d);

  // heights along a linear extension (larger up-set = lower in the order)
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return bits::popcount(d->up_row(a)) > bits::popcount(d->up_row(b));
  });
  d->height.assign(n, 0);
  d->max_height = 0;
  for (int x : order) {
    int h = 0;
    for (int below : d->covers_dn[x]) h = std::max(h, d->height[below] + 1);
    d->height[x] = h;
    d->max_height = std::max(d->max_height, h);
  }

  d->maximal.assign(n, 0);
  for (int x = 0; x < n; ++x) d->maximal[x] = d->covers_up[x].empty() ? 1 : 0;

  d->root = -1;
  for (int x = 0; x < n; ++x)
    if (bits::popcount(d->up_row(x)) == n) {
      d->root = x;
      break;
    }

  return Poset(std::shared_ptr<const Data>(std::move(d)));
}

Poset::Poset() {
  auto d = std::make_unique<Data>();
  d_ = std::shared_ptr<const Data>(std::move(d));
}

Poset Poset::from_covers(std::vector<std::string> labels,
                         const std::vector<std::pair<int, int>>& cover_pairs) {
  const int n = static_cast<int>(labels.size());
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indeg(n, 0);
  for (auto [a, b] : cover_pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw Error("cover index out of range");
    if (a == b) throw CycleError("cover pair relates a point to itself");
    succ[a].push_back(b);
    ++indeg[b];
  }

  // Kahn: detects cycles and yields a topological order, minimal points first.
  std::vector<int> topo;
  topo.reserve(n);
  std::vector<int> stack;
  for (int i = 0; i < n; ++i)
    if (indeg[i] == 0) stack.push_back(i);
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    topo.push_back(x);
    for (int y : succ[x])
      if (--indeg[y] == 0) stack.push_back(y);
  }
  if (static_cast<int>(topo.size()) != n)
    throw CycleError("cover pairs contain a directed cycle");

  auto d = std::make_unique<Data>();
  d->n = n;
  d->labels = std::move(labels);
  const int words = bits::word_count(n);
  d->words = words;
  d->up.assign(static_cast<std::size_t>(n) * words, 0);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    int x = *it;
    auto row = d->up_row_mut(x);
    bits::set(row, x);
    for (int y : succ[x]) {
      auto yrow = d->up_row(y);
      for (int w = 0; w < words; ++w) row[w] |= yrow[w];
    }
  }
  return finalize(std::move(d));
}

Poset Poset::from_order(std::vector<std::string> labels,
                        const std::function<bool(int, int)>& leq) {
  const int n = static_cast<int>(labels.size());
  auto d = std::make_unique<Data>();
  d->n = n;
  d->labels = std::move(labels);
  const int words = bits::word_count(n);
  d->words = words;
  d->up.assign(static_cast<std::size_t>(n) * words, 0);
  for (int x = 0; x < n; ++x) {
    auto row = d->up_row_mut(x);
    for (int y = 0; y < n; ++y)
      if (leq(x, y)) bits::set(row, y);
  }
  return finalize(std::move(d));
}

int Poset::size() const { return d_->n; }
int Poset::word_count() const { return d_->words; }
const std::vector<std::string>& Poset::labels() const { return d_->labels; }
const std::string& Poset::label(int x) const { return d_->labels.at(x); }

std::optional<int> Poset::index_of(std::string_view label) const {
  auto it = d_->label_index.find(std::string(label));
  if (it == d_->label_index.end()) return std::nullopt;
  return it->second;
}

bool Poset::leq(int x, int y) const { return bits::test(d_->up_row(x), y); }
std::span<const uint64_t> Poset::up_row(int x) const { return d_->up_row(x); }
std::span<const uint64_t> Poset::down_row(int x) const { return d_->down_row(x); }
int Poset::up_count(int x) const { return bits::popcount(d_->up_row(x)); }
int Poset::down_count(int x) const { return bits::popcount(d_->down_row(x)); }

const std::vector<int>& Poset::covers_above(int x) const {
  return d_->covers_up.at(x);
}
const std::vector<int>& Poset::covers_below(int x) const {
  return d_->covers_dn.at(x);
}
const std::vector<std::pair<int, int>>& Poset::cover_pairs() const {
  return d_->cover_pairs;
}

int Poset::height(int x) const { return d_->height.at(x); }
int Poset::max_height() const { return d_->max_height; }
bool Poset::is_maximal(int x) const { return d_->maximal.at(x) != 0; }

std::vector<int> Poset::maximal_points() const {
  std::vector<int> out;
  for (int x = 0; x < d_->n; ++x)
    if (d_->maximal[x]) out.push_back(x);
  return out;
}

std::optional<int> Poset::root() const {
  if (d_->root < 0) return std::nullopt;
  return d_->root;
}

std::vector<int> Poset::atoms() const {
  auto r = root();
  if (!r) throw NotRootedError("poset has no root");
  auto out = d_->covers_up[*r];
  std::sort(out.begin(), out.end());
  return out;
}

UpSet Poset::empty_upset() const {
  return UpSet(d_, std::vector<uint64_t>(d_->words, 0));
}

UpSet Poset::full_upset() const {
  std::vector<uint64_t> w(d_->words, 0);
  for (int i = 0; i < d_->n; ++i) bits::set(w, i);
  return UpSet(d_, std::move(w));
}

UpSet Poset::principal_upset(int x) const {
  auto row = d_->up_row(x);
  return UpSet(d_, std::vector<uint64_t>(row.begin(), row.end()));
}

UpSet Poset::upset_of(std::span<const int> points) const {
  std::vector<uint64_t> w(d_->words, 0);
  for (int x : points) {
    if (x < 0 || x >= d_->n) throw Error("point index out of range");
    bits::set(w, x);
  }
  return upset_from_bits(std::move(w));
}

UpSet Poset::upset_of(std::initializer_list<int> points) const {
  return upset_of(std::span<const int>(points.begin(), points.size()));
}

UpSet Poset::upward_closure(std::span<const int> points) const {
  std::vector<uint64_t> w(d_->words, 0);
  for (int x : points) {
    if (x < 0 || x >= d_->n) throw Error("point index out of range");
    auto row = d_->up_row(x);
    for (int i = 0; i < d_->words; ++i) w[i] |= row[i];
  }
  return UpSet(d_, std::move(w));
}

UpSet Poset::upward_closure(std::initializer_list<int> points) const {
  return upward_closure(std::span<const int>(points.begin(), points.size()));
}

UpSet Poset::upset_from_bits(std::vector<uint64_t> words) const {
  if (static_cast<int>(words.size()) != d_->words)
    throw Error("bit row has the wrong width for this poset");
  bool ok = true;
  bits::for_each(std::span<const uint64_t>(words), [&](int x) {
    if (!bits::subset(d_->up_row(x), words)) ok = false;
  });
  if (!ok) throw NotUpwardClosedError("point set is not upward closed");
  return UpSet(d_, std::move(words));
}

bool Poset::same_as(const Poset& other) const { return d_ == other.d_; }

Poset Poset::sorted_by_labels() const {
  const int n = d_->n;
  std::vector<int> perm(n);  // perm[new] = old
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
    return d_->labels[a] < d_->labels[b];
  });
  std::vector<int> inv(n);
  for (int i = 0; i < n; ++i) inv[perm[i]] = i;

  auto d = std::make_unique<Data>();
  d->n = n;
  d->words = bits::word_count(n);
  d->labels.resize(n);
  for (int i = 0; i < n; ++i) d->labels[i] = d_->labels[perm[i]];
  d->up.assign(static_cast<std::size_t>(n) * d->words, 0);
  for (int x = 0; x < n; ++x) {
    auto row = d->up_row_mut(x);
    bits::for_each(d_->up_row(perm[x]), [&](int y) { bits::set(row, inv[y]); });
  }
  return finalize(std::move(d));
}

void Poset::validate() const {
  check_order_axioms(*d_);
  std::unordered_set<std::string> seen(d_->labels.begin(), d_->labels.end());
  if (static_cast<int>(seen.size()) != d_->n)
    throw DuplicateLabelError("labels are not pairwise distinct");
  // covers must equal a freshly recomputed transitive reduction
  Data scratch;
  scratch.n = d_->n;
  scratch.words = d_->words;
  scratch.labels = d_->labels;
  scratch.up = d_->up;
  recompute_reduction(scratch);
  if (scratch.cover_pairs != d_->cover_pairs)
    throw Error("cached covers differ from the transitive reduction");
}

// ---- UpSet ----

int UpSet::poset_size() const { return d_->n; }

bool UpSet::contains(int x) const { return bits::test(w_, x); }
int UpSet::count() const { return bits::popcount(w_); }
bool UpSet::empty() const { return bits::is_zero(w_); }

std::vector<int> UpSet::members() const {
  std::vector<int> out;
  bits::for_each(std::span<const uint64_t>(w_), [&](int x) { out.push_back(x); });
  return out;
}

bool UpSet::same_poset(const Poset& p) const { return d_ == p.d_; }
bool UpSet::same_poset(const UpSet& o) const { return d_ == o.d_; }

UpSet UpSet::set_union(const UpSet& o) const {
  if (!same_poset(o)) throw MixedPosetError("union of upsets of different posets");
  std::vector<uint64_t> w(w_);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w_[i];
  return UpSet(d_, std::move(w));
}

UpSet UpSet::set_intersection(const UpSet& o) const {
  if (!same_poset(o))
    throw MixedPosetError("intersection of upsets of different posets");
  std::vector<uint64_t> w(w_);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] &= o.w_[i];
  return UpSet(d_, std::move(w));
}

bool UpSet::operator==(const UpSet& o) const {
  if (!same_poset(o)) throw MixedPosetError("comparing upsets of different posets");
  return bits::equal(w_, o.w_);
}

bool UpSet::canonical_less(const UpSet& a, const UpSet& b) {
  if (!a.same_poset(b))
    throw MixedPosetError("ordering upsets of different posets");
  return bits::lex_less(a.w_, b.w_);
}

std::string UpSet::to_string() const {
  std::string out = "{";
  bool first = true;
  bits::for_each(std::span<const uint64_t>(w_), [&](int x) {
    if (!first) out += ", ";
    first = false;
    out += d_->labels[x];
  });
  out += "}";
  return out;
}

// ---- structural operations ----

Poset product(const Poset& p, const Poset& q, uint64_t point_budget) {
  const uint64_t np = static_cast<uint64_t>(p.size());
  const uint64_t nq = static_cast<uint64_t>(q.size());
  if (np * nq > point_budget)
    throw SizeGuardError("product would have " + std::to_string(np * nq) +
                         " points, over the budget of " +
                         std::to_string(point_budget));
  const int n = static_cast<int>(np * nq);
  auto d = std::make_unique<Poset::Data>();
  d->n = n;
  d->words = bits::word_count(n);
  d->labels.reserve(n);
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < q.size(); ++b)
      d->labels.push_back(p.label(a) + q.label(b));
  d->up.assign(static_cast<std::size_t>(n) * d->words, 0);
  for (int a = 0; a < p.size(); ++a) {
    for (int b = 0; b < q.size(); ++b) {
      auto row = d->up_row_mut(a * q.size() + b);
      bits::for_each(p.up_row(a), [&](int c) {
        bits::for_each(q.up_row(b),
                       [&](int e) { bits::set(row, c * q.size() + e); });
      });
    }
  }
  return Poset::finalize(std::move(d));
}

Poset disjoint_union(const Poset& p, const Poset& q) {
  if (p.size() == 0) return q;
  if (q.size() == 0) return p;
  const int n = p.size() + q.size();
  auto d = std::make_unique<Poset::Data>();
  d->n = n;
  d->words = bits::word_count(n);
  d->labels.reserve(n);
  for (int a = 0; a < p.size(); ++a) d->labels.push_back("l:" + p.label(a));
  for (int b = 0; b < q.size(); ++b) d->labels.push_back("r:" + q.label(b));
  d->up.assign(static_cast<std::size_t>(n) * d->words, 0);
  for (int a = 0; a < p.size(); ++a) {
    auto row = d->up_row_mut(a);
    bits::for_each(p.up_row(a), [&](int y) { bits::set(row, y); });
  }
  for (int b = 0; b < q.size(); ++b) {
    auto row = d->up_row_mut(p.size() + b);
    bits::for_each(q.up_row(b), [&](int y) { bits::set(row, p.size() + y); });
  }
  return Poset::finalize(std::move(d));
}

GeneratedSubframe generated_subframe(const Poset& p, std::span<const int> seeds) {
  if (seeds.empty()) throw EmptySeedError("generated subframe needs a seed");
  UpSet closure = p.upward_closure(seeds);
  std::vector<int> parent = closure.members();
  const int k = static_cast<int>(parent.size());
  auto d = std::make_unique<Poset::Data>();
  d->n = k;
  d->words = bits::word_count(k);
  d->labels.reserve(k);
  for (int x : parent) d->labels.push_back(p.label(x));
  d->up.assign(static_cast<std::size_t>(k) * d->words, 0);
  for (int i = 0; i < k; ++i) {
    auto row = d->up_row_mut(i);
    for (int j = 0; j < k; ++j)
      if (p.leq(parent[i], parent[j])) bits::set(row, j);
  }
  return GeneratedSubframe{Poset::finalize(std::move(d)), std::move(parent)};
}

GeneratedSubframe generated_subframe(const Poset& p,
                                     std::initializer_list<int> seeds) {
  return generated_subframe(p, std::span<const int>(seeds.begin(), seeds.size()));
}

std::vector<UpSet> enumerate_upsets(const Poset& p, uint64_t limit) {
  const int n = p.size();
  const int words = std::max(1, p.word_count());

  // Reverse linear extension: decide membership top-down so that a point may
  // join only when all of its upward covers are already in.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return p.height(a) > p.height(b);
  });

  std::vector<std::vector<uint64_t>> raw;
  std::vector<uint64_t> cur(words, 0);

  auto emit = [&]() {
    if (raw.size() >= limit)
      throw SearchBudgetError(
          "upset enumeration exceeded the limit of " + std::to_string(limit),
          limit);
    raw.push_back(cur);
  };

  auto rec = [&](auto&& self, int k) -> void {
    if (k == n) {
      emit();
      return;
    }
    int x = order[k];
    self(self, k + 1);
    bool can_include = true;
    for (int c : p.covers_above(x))
      if (!bits::test(cur, c)) {
        can_include = false;
        break;
      }
    if (can_include) {
      bits::set(cur, x);
      self(self, k + 1);
      bits::clear(cur, x);
    }
  };
  rec(rec, 0);

  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
    return bits::lex_less(a, b);
  });
  std::vector<UpSet> out;
  out.reserve(raw.size());
  for (auto& w : raw) {
    if (static_cast<int>(w.size()) != p.word_count())
      w.resize(p.word_count());
    out.push_back(p.upset_from_bits(std::move(w)));
  }
  return out;
}

// ---- isomorphism ----

namespace {

// Iterated refinement: start from local invariants, then repeatedly fold in
// the sorted colors of upper and lower covers until the partition stops
// changing. Color ids are assigned from a dictionary shared between the two
// posets so equal signatures get equal ids.
std::pair<std::vector<int>, std::vector<int>> refine_colors(const Poset& p,
                                                            const Poset& q) {
  const int n = p.size();
  auto initial = [&](const Poset& P, int x) {
    return std::vector<int>{P.height(x), P.up_count(x), P.down_count(x),
                            static_cast<int>(P.covers_above(x).size()),
                            static_cast<int>(P.covers_below(x).size())};
  };
  std::vector<int> cp(n), cq(n);
  {
    std::map<std::vector<int>, int> dict;
    for (int x = 0; x < n; ++x) dict.emplace(initial(p, x), 0);
    for (int x = 0; x < n; ++x) dict.emplace(initial(q, x), 0);
    int next = 0;
    for (auto& [k, v] : dict) v = next++;
    for (int x = 0; x < n; ++x) cp[x] = dict[initial(p, x)];
    for (int x = 0; x < n; ++x) cq[x] = dict[initial(q, x)];
  }
  int rounds = 0;
  while (rounds++ < n) {
    auto signature = [&](const Poset& P, const std::vector<int>& col, int x) {
      std::vector<int> sig{col[x], -1};
      std::vector<int> ups, dns;
      for (int c : P.covers_above(x)) ups.push_back(col[c]);
      for (int c : P.covers_below(x)) dns.push_back(col[c]);
      std::sort(ups.begin(), ups.end());
      std::sort(dns.begin(), dns.end());
      sig.insert(sig.end(), ups.begin(), ups.end());
      sig.push_back(-2);
      sig.insert(sig.end(), dns.begin(), dns.end());
      return sig;
    };
    std::map<std::vector<int>, int> dict;
    for (int x = 0; x < n; ++x) dict.emplace(signature(p, cp, x), 0);
    for (int x = 0; x < n; ++x) dict.emplace(signature(q, cq, x), 0);
    int next = 0;
    for (auto& [k, v] : dict) v = next++;
    std::vector<int> np(n), nq(n);
    for (int x = 0; x < n; ++x) np[x] = dict[signature(p, cp, x)];
    for (int x = 0; x < n; ++x) nq[x] = dict[signature(q, cq, x)];
    if (np == cp && nq == cq) break;
    cp = std::move(np);
    cq = std::move(nq);
  }
  return {cp, cq};
}

}  // namespace

std::optional<std::vector<int>> is_isomorphic(const Poset& p, const Poset& q) {
  const int n = p.size();
  if (n != q.size()) return std::nullopt;
  if (n == 0) return std::vector<int>{};

  auto [cp, cq] = refine_colors(p, q);
  std::map<int, int> count_p, count_q;
  for (int c : cp) ++count_p[c];
  for (int c : cq) ++count_q[c];
  if (count_p != count_q) return std::nullopt;

  std::map<int, std::vector<int>> class_q;
  for (int y = 0; y < n; ++y) class_q[cq[y]].push_back(y);

  // Assignment order: grow a connected front so contradictions surface early;
  // ties broken toward small color classes.
  std::vector<int> order;
  {
    std::vector<char> placed(n, 0);
    std::vector<int> comparable(n, 0);
    for (int step = 0; step < n; ++step) {
      int best = -1;
      for (int x = 0; x < n; ++x) {
        if (placed[x]) continue;
        if (best == -1) {
          best = x;
          continue;
        }
        auto key = [&](int v) {
          return std::tuple<int, int, int>(-comparable[v], count_p[cp[v]], v);
        };
        if (key(x) < key(best)) best = x;
      }
      placed[best] = 1;
      order.push_back(best);
      for (int y = 0; y < n; ++y)
        if (!placed[y] && (p.leq(best, y) || p.leq(y, best))) ++comparable[y];
    }
  }

  std::vector<int> mapping(n, -1);
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, int k) -> bool {
    if (k == n) return true;
    int x = order[k];
    for (int y : class_q[cp[x]]) {
      if (used[y]) continue;
      bool ok = true;
      for (int i = 0; i < k; ++i) {
        int x2 = order[i], y2 = mapping[x2];
        if (p.leq(x, x2) != q.leq(y, y2) || p.leq(x2, x) != q.leq(y2, y)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      mapping[x] = y;
      used[y] = 1;
      if (self(self, k + 1)) return true;
      mapping[x] = -1;
      used[y] = 0;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (p.leq(x, y) != q.leq(mapping[x], mapping[y]))
        throw Error("internal error: isomorphism witness failed re-check");
  return mapping;
}

LatticeCheck predecessors_form_lattice(const Poset& p) {
  const int n = p.size();
  const int words = std::max(1, p.word_count());
  std::vector<uint64_t> cand(words);
  for (int x = 0; x < n; ++x) {
    std::vector<int> down;
    bits::for_each(p.down_row(x), [&](int z) { down.push_back(z); });
    for (std::size_t i = 0; i < down.size(); ++i) {
      for (std::size_t j = i + 1; j < down.size(); ++j) {
        int a = down[i], b = down[j];
        // least upper bound within down(x)
        auto ua = p.up_row(a);
        auto ub = p.up_row(b);
        auto dx = p.down_row(x);
        for (int w = 0; w < p.word_count(); ++w)
          cand[w] = ua[w] & ub[w] & dx[w];
        bool has_least = false;
        bits::for_each(std::span<const uint64_t>(cand).first(p.word_count()),
                       [&](int z) {
                         if (!has_least &&
                             bits::subset({cand.data(),
                                           static_cast<std::size_t>(
                                               p.word_count())},
                                          p.up_row(z)))
                           has_least = true;
                       });
        if (!has_least) return LatticeCheck{false, x, a, b, true};
        // greatest lower bound within down(x); common lower bounds of a and b
        // are automatically below x
        auto da = p.down_row(a);
        auto db = p.down_row(b);
        for (int w = 0; w < p.word_count(); ++w) cand[w] = da[w] & db[w];
        bool has_greatest = false;
        bits::for_each(std::span<const uint64_t>(cand).first(p.word_count()),
                       [&](int z) {
                         if (!has_greatest &&
                             bits::subset({cand.data(),
                                           static_cast<std::size_t>(
                                               p.word_count())},
                                          p.down_row(z)))
                           has_greatest = true;
                       });
        if (!has_greatest) return LatticeCheck{false, x, a, b, false};
      }
    }
  }
  return LatticeCheck{};
}

}  // namespace cheqlab
