#include "cheqlab/morphism.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

#include "cheqlab/bits.hpp"
#include "cheqlab/frames.hpp"

namespace cheqlab {

std::string describe(const Violation& v, const PointMap& m) {
  switch (v.kind) {
    case ViolationKind::kForth:
      return "forth: " + m.source.label(v.x) + " <= " + m.source.label(v.y) +
             " but " + m.target.label(m.map[v.x]) + " !<= " +
             m.target.label(m.map[v.y]);
    case ViolationKind::kBack:
      return "back: " + m.target.label(v.y) + " >= " +
             m.target.label(m.map[v.x]) + " = f(" + m.source.label(v.x) +
             ") but no point above " + m.source.label(v.x) + " maps to it";
    case ViolationKind::kNotOnto:
      return "not onto: " + m.target.label(v.y) + " has no preimage";
  }
  return "?";
}

MorphismReport check_p_morphism(const PointMap& m, bool require_onto,
                                std::size_t violation_cap) {
  const Poset& s = m.source;
  const Poset& t = m.target;
  if (static_cast<int>(m.map.size()) != s.size())
    throw Error("point map is not total");
  for (int img : m.map)
    if (img < 0 || img >= t.size()) throw Error("point map image out of range");

  MorphismReport report;
  auto add = [&](Violation v) {
    if (report.violations.size() < violation_cap)
      report.violations.push_back(v);
  };

  for (int x = 0; x < s.size(); ++x) {
    bits::for_each(s.up_row(x), [&](int y) {
      if (!t.leq(m.map[x], m.map[y]))
        add({ViolationKind::kForth, x, y});
    });
  }

  const int twords = std::max(1, t.word_count());
  std::vector<uint64_t> img(twords);
  for (int x = 0; x < s.size(); ++x) {
    std::fill(img.begin(), img.end(), 0);
    bits::for_each(s.up_row(x), [&](int z) { bits::set(img, m.map[z]); });
    auto need = t.up_row(m.map[x]);
    for (int w = 0; w < t.word_count(); ++w) {
      uint64_t missing = need[w] & ~img[w];
      while (missing) {
        int y = static_cast<int>(w * 64 + std::countr_zero(missing));
        add({ViolationKind::kBack, x, y});
        missing &= missing - 1;
      }
    }
  }

  if (require_onto) {
    std::vector<uint64_t> hit(twords, 0);
    for (int img_pt : m.map) bits::set(hit, img_pt);
    for (int y = 0; y < t.size(); ++y)
      if (!bits::test(hit, y)) add({ViolationKind::kNotOnto, -1, y});
  }

  report.ok = report.violations.empty();
  return report;
}

// ---- backtracking search ----

namespace {

// One sequential search over a fixed assignment order. The order is a reverse
// linear extension (descending height), so when x is assigned every point
// above x already has an image and both the forth and the back condition for
// x are decided on the spot. cand[z] keeps the forward-checked candidate
// images of every unassigned z; assigning f(x)=t intersects cand[z] with
// down(t) for all unassigned z below x.
struct MorphismSearch {
  const Poset& s;
  const Poset& t;
  bool require_onto;
  uint64_t node_budget;
  std::atomic<uint64_t>* nodes;        // shared across workers
  const std::atomic<bool>* stop;       // early-out in parallel mode
  bool budget_hit = false;

  int ns, nt, swords, twords;
  std::vector<int> order;  // assignment order
  std::vector<int> f;      // current assignment, -1 = unassigned
  std::vector<uint64_t> cand;    // ns x twords candidate masks
  std::vector<uint64_t> imgup;   // ns x twords: images of up(x), valid if assigned
  std::vector<uint64_t> unassigned;  // swords mask over source points
  std::vector<int> hit_count;        // per target point
  std::vector<uint64_t> unhit;       // twords mask
  int unhit_n = 0;

  // trail for cand restoration
  std::vector<int> trail_pt;
  std::vector<uint64_t> trail_words;

  explicit MorphismSearch(const Poset& src, const Poset& dst, bool onto,
                          uint64_t budget, std::atomic<uint64_t>* node_counter,
                          const std::atomic<bool>* stop_flag)
      : s(src), t(dst), require_onto(onto), node_budget(budget),
        nodes(node_counter), stop(stop_flag) {
    ns = s.size();
    nt = t.size();
    swords = std::max(1, s.word_count());
    twords = std::max(1, t.word_count());
    order.resize(ns);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return s.height(a) > s.height(b);
    });
    f.assign(ns, -1);
    cand.assign(static_cast<std::size_t>(ns) * twords, 0);
    imgup.assign(static_cast<std::size_t>(ns) * twords, 0);
    unassigned.assign(swords, 0);
    for (int x = 0; x < ns; ++x) bits::set(unassigned, x);
    hit_count.assign(nt, 0);
    unhit.assign(twords, 0);
    for (int y = 0; y < nt; ++y) bits::set(unhit, y);
    unhit_n = nt;
    // static feasibility: the back condition forces |up(t)| <= |up(z)|
    for (int z = 0; z < ns; ++z) {
      auto c = cand_row(z);
      for (int y = 0; y < nt; ++y)
        if (t.up_count(y) <= s.up_count(z)) bits::set(c, y);
    }
  }

  std::span<uint64_t> cand_row(int z) {
    return {cand.data() + static_cast<std::size_t>(z) * twords,
            static_cast<std::size_t>(twords)};
  }
  std::span<uint64_t> imgup_row(int z) {
    return {imgup.data() + static_cast<std::size_t>(z) * twords,
            static_cast<std::size_t>(twords)};
  }

  bool onto_feasible() {
    if (!require_onto || unhit_n == 0) return true;
    if (bits::popcount(std::span<const uint64_t>(unassigned)) < unhit_n)
      return false;
    std::vector<uint64_t> reach(twords, 0);
    bits::for_each(std::span<const uint64_t>(unassigned), [&](int z) {
      auto c = cand_row(z);
      for (int w = 0; w < twords; ++w) reach[w] |= c[w];
    });
    return bits::subset(unhit, reach);
  }

  bool dfs(int depth) {
    if (stop && stop->load(std::memory_order_relaxed)) return false;
    if (depth == ns) return !require_onto || unhit_n == 0;
    const int x = order[depth];
    const std::size_t mark = trail_pt.size();

    std::vector<uint64_t> xc(cand_row(x).begin(), cand_row(x).end());
    bool found = false;
    bits::for_each(std::span<const uint64_t>(xc), [&](int img) {
      if (found) return;
      if (stop && stop->load(std::memory_order_relaxed)) return;
      uint64_t seen = nodes->fetch_add(1, std::memory_order_relaxed) + 1;
      if (seen > node_budget) {
        budget_hit = true;
        return;
      }
      if (try_assign(x, img) && dfs(depth + 1)) {
        found = true;
        return;
      }
      undo_assign(x, img, mark);
    });
    return found;
  }

  // Returns false (leaving partial bookkeeping for undo_assign to roll back)
  // if the assignment is locally inconsistent. cand[x] already reflects the
  // forth condition against everything assigned above x.
  bool try_assign(int x, int img) {
    f[x] = img;
    bits::clear(unassigned, x);
    if (hit_count[img]++ == 0) {
      bits::clear(unhit, img);
      --unhit_n;
    }
    // back condition for x, decided here because up(x) is fully assigned
    auto my_imgup = imgup_row(x);
    std::fill(my_imgup.begin(), my_imgup.end(), 0);
    bits::set(my_imgup, img);
    for (int c : s.covers_above(x)) {
      auto cr = imgup_row(c);
      for (int w = 0; w < twords; ++w) my_imgup[w] |= cr[w];
    }
    if (!bits::subset(t.up_row(img), my_imgup)) return false;
    // forward checking: unassigned points below x must map below img
    auto dt = t.down_row(img);
    std::vector<uint64_t> below(swords);
    auto dn = s.down_row(x);
    for (int w = 0; w < swords; ++w) below[w] = dn[w] & unassigned[w];
    bool dead = false;
    bits::for_each(std::span<const uint64_t>(below), [&](int z) {
      if (dead) return;
      auto c = cand_row(z);
      bool shrinks = false;
      for (int w = 0; w < twords; ++w)
        if (c[w] & ~dt[w]) {
          shrinks = true;
          break;
        }
      if (shrinks) {
        trail_pt.push_back(z);
        for (int w = 0; w < twords; ++w) trail_words.push_back(c[w]);
        bool all_zero = true;
        for (int w = 0; w < twords; ++w) {
          c[w] &= dt[w];
          if (c[w]) all_zero = false;
        }
        if (all_zero) dead = true;
      }
    });
    if (dead) return false;
    return onto_feasible();
  }

  void undo_assign(int x, int img, std::size_t mark_pt) {
    while (trail_pt.size() > mark_pt) {
      int z = trail_pt.back();
      trail_pt.pop_back();
      auto c = cand_row(z);
      for (int w = twords - 1; w >= 0; --w) {
        c[w] = trail_words.back();
        trail_words.pop_back();
      }
    }
    if (--hit_count[img] == 0) {
      bits::set(unhit, img);
      ++unhit_n;
    }
    bits::set(unassigned, x);
    f[x] = -1;
  }
};

}  // namespace

std::optional<PointMap> search_p_morphism(const Poset& source,
                                          const Poset& target,
                                          bool require_onto, bool deterministic,
                                          uint64_t node_budget,
                                          uint64_t* nodes_used) {
  if ((target.size() == 0 && source.size() > 0) ||
      (require_onto && source.size() < target.size())) {
    if (nodes_used) *nodes_used = 0;
    return std::nullopt;
  }

  std::atomic<uint64_t> nodes{0};
  auto finish = [&](std::optional<std::vector<int>> map)
      -> std::optional<PointMap> {
    if (nodes_used) *nodes_used = nodes.load();
    if (!map) return std::nullopt;
    PointMap pm{source, target, std::move(*map)};
    if (!check_p_morphism(pm, require_onto).ok)
      throw Error("internal error: search produced an invalid morphism");
    return pm;
  };

  if (source.size() == 0) return finish(std::vector<int>{});

  unsigned workers =
      deterministic ? 1 : std::min(8u, std::thread::hardware_concurrency());

  if (workers <= 1) {
    MorphismSearch ms(source, target, require_onto, node_budget, &nodes, nullptr);
    if (ms.dfs(0)) return finish(ms.f);
    if (ms.budget_hit)
      throw SearchBudgetError("morphism search exhausted its node budget of " +
                                  std::to_string(node_budget),
                              node_budget);
    return finish(std::nullopt);
  }

  // Parallel mode: split the value choices of the first assigned point.
  MorphismSearch probe(source, target, require_onto, node_budget, &nodes, nullptr);
  const int x0 = probe.order[0];
  std::vector<int> values;
  auto x0cand = probe.cand_row(x0);
  bits::for_each(std::span<const uint64_t>(x0cand.data(), x0cand.size()),
                 [&](int v) { values.push_back(v); });
  if (values.empty()) return finish(std::nullopt);

  std::atomic<bool> stop{false};
  std::mutex result_mutex;
  std::optional<std::vector<int>> result;
  bool any_budget_hit = false;
  workers = std::min<unsigned>(workers, values.size());
  std::vector<std::thread> threads;
  std::atomic<std::size_t> next_value{0};
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&]() {
      while (!stop.load(std::memory_order_relaxed)) {
        std::size_t i = next_value.fetch_add(1);
        if (i >= values.size()) return;
        MorphismSearch ms(source, target, require_onto, node_budget, &nodes,
                          &stop);
        bool ok = false;
        uint64_t seen = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (seen > node_budget) {
          std::lock_guard<std::mutex> lock(result_mutex);
          any_budget_hit = true;
          return;
        }
        if (ms.try_assign(x0, values[i])) ok = ms.dfs(1);
        std::lock_guard<std::mutex> lock(result_mutex);
        if (ms.budget_hit) any_budget_hit = true;
        if (ok && !result) {
          result = ms.f;
          stop.store(true, std::memory_order_relaxed);
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  if (result) return finish(std::move(result));
  if (any_budget_hit)
    throw SearchBudgetError("morphism search exhausted its node budget of " +
                                std::to_string(node_budget),
                            node_budget);
  return finish(std::nullopt);
}

// ---- canonical reduction ----

namespace {

// Image of the atom of the (2^m - 1)-fold chequered frame whose single
// non-zero coordinate sits at `pos` (1-based) with the given sign, as a
// subset mask over {1,...,2^m}.
uint64_t atom_image(int m, int pos, char sign) {
  if (m == 1) return sign == '-' ? 0b01 : 0b10;
  const int n = (1 << m) - 1;
  const int half = 1 << (m - 1);
  if (pos < half) return atom_image(m - 1, pos, sign);
  if (pos < n) return atom_image(m - 1, pos - (half - 1), sign) << half;
  uint64_t low = (uint64_t{1} << half) - 1;
  return sign == '-' ? low : (low << half);
}

}  // namespace

PointMap canonical_reduction(int m, uint64_t point_budget) {
  if (m < 1) throw BadIndexError("canonical reduction needs m >= 1");
  if (m > 5) throw BadIndexError("canonical reduction: m too large");
  const int n = (1 << m) - 1;
  Poset f = chequered(n, point_budget);
  Poset med = medvedev(n, point_budget);
  const uint64_t full = (uint64_t{1} << (n + 1)) - 1;

  std::vector<int> map(f.size(), -1);
  for (int x = 0; x < f.size(); ++x) {
    const std::string& lab = f.label(x);
    uint64_t mask = 0;
    for (int i = 0; i < n; ++i)
      if (lab[i] != '0') mask |= atom_image(m, i + 1, lab[i]);
    if (mask == full)
      throw Error("internal error: reduction image is not a proper subset");
    auto idx = med.index_of(SubsetLabel::from_mask(mask, n + 1).str());
    if (!idx) throw Error("internal error: reduction image not a target point");
    map[x] = *idx;
  }
  return PointMap{std::move(f), std::move(med), std::move(map)};
}

PointMap canonical_reduction_for_size(int n, uint64_t point_budget) {
  if (n >= 1) {
    int m = 0;
    while ((1 << (m + 1)) - 1 < n) ++m;
    ++m;
    if ((1 << m) - 1 == n) return canonical_reduction(m, point_budget);
  }
  throw BadIndexError("the reduction is defined for sizes n = 2^m - 1; got " +
                      std::to_string(n));
}

// ---- rooted-subframe reducibility ----

std::optional<ReducibleWitness> reducible(const Poset& big, const Poset& small,
                                          uint64_t budget) {
  if (!small.root()) throw NotRootedError("reducibility target must be rooted");

  struct Rep {
    int size;
    int height;
    int atom_count;
    Poset frame;
  };
  std::vector<Rep> reps;
  uint64_t remaining = budget;

  for (int seed = 0; seed < big.size(); ++seed) {
    GeneratedSubframe sub = generated_subframe(big, {seed});
    if (sub.frame.size() < small.size()) continue;  // no onto map exists
    const int atom_count = static_cast<int>(sub.frame.atoms().size());
    bool seen = false;
    for (const Rep& r : reps) {
      if (r.size == sub.frame.size() && r.height == sub.frame.max_height() &&
          r.atom_count == atom_count && is_isomorphic(sub.frame, r.frame)) {
        seen = true;
        break;
      }
    }
    if (seen) continue;
    reps.push_back({sub.frame.size(), sub.frame.max_height(), atom_count,
                    sub.frame});
    uint64_t used = 0;
    auto found = search_p_morphism(sub.frame, small, /*require_onto=*/true,
                                   /*deterministic=*/true, remaining, &used);
    remaining = used >= remaining ? 0 : remaining - used;
    if (found) return ReducibleWitness{seed, std::move(*found)};
  }
  return std::nullopt;
}

// ---- disjoint-union embedding ----

std::optional<EmbedWitness> embeds_disjoint_union(const Poset& big,
                                                  const Poset& part_a,
                                                  const Poset& part_b,
                                                  uint64_t budget) {
  const int n = big.size();
  uint64_t iso_checks = 0;
  // cache: -1 unknown, 0 no, 1 yes (iso stored separately)
  std::vector<int> is_a(n, -1), is_b(n, -1);
  std::vector<std::vector<int>> iso_a(n), iso_b(n);
  std::vector<std::vector<int>> parent_of(n);

  auto classify = [&](int u, const Poset& part, std::vector<int>& flag,
                      std::vector<std::vector<int>>& iso) {
    if (flag[u] >= 0) return flag[u] == 1;
    if (big.up_count(u) != part.size()) {
      flag[u] = 0;
      return false;
    }
    if (++iso_checks > budget)
      throw SearchBudgetError("embedding search exhausted its budget", budget);
    GeneratedSubframe sub = generated_subframe(big, {u});
    parent_of[u] = sub.parent_index;
    auto w = is_isomorphic(sub.frame, part);
    if (!w) {
      flag[u] = 0;
      return false;
    }
    flag[u] = 1;
    iso[u] = std::move(*w);
    return true;
  };

  for (int u = 0; u < n; ++u) {
    if (!classify(u, part_a, is_a, iso_a)) continue;
    for (int v = 0; v < n; ++v) {
      if (bits::intersects(big.up_row(u), big.up_row(v))) continue;
      if (!classify(v, part_b, is_b, iso_b)) continue;
      // iso_x maps subframe index -> part index; invert through parent_index
      EmbedWitness w;
      w.u = u;
      w.v = v;
      w.embed_a.assign(part_a.size(), -1);
      for (std::size_t i = 0; i < iso_a[u].size(); ++i)
        w.embed_a[iso_a[u][i]] = parent_of[u][i];
      w.embed_b.assign(part_b.size(), -1);
      for (std::size_t i = 0; i < iso_b[v].size(); ++i)
        w.embed_b[iso_b[v][i]] = parent_of[v][i];
      return w;
    }
  }
  return std::nullopt;
}

}  // namespace cheqlab
