#include "cheqlab/semantics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "cheqlab/bits.hpp"

namespace cheqlab {

void Valuation::set(std::string name, UpSet value) {
  if (!value.same_poset(poset_))
    throw MixedPosetError("valuation value bound to a different poset");
  entries_.insert_or_assign(std::move(name), std::move(value));
}

const UpSet* Valuation::find(std::string_view name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

namespace {

// Formula flattened to postorder over unique nodes; evaluation fills one bit
// row per node, so every (subformula, point) pair is computed exactly once
// per valuation.
struct Compiled {
  struct CNode {
    Formula::Kind kind;
    int a = -1, b = -1;  // child slots
    int var = -1;        // index into vars
  };
  std::vector<CNode> nodes;  // postorder; root last
  std::vector<std::string> vars;
};

Compiled compile(const Formula& f) {
  Compiled c;
  c.vars = variables(f);
  std::unordered_map<const void*, int> slot;
  auto rec = [&](auto&& self, const Formula& g) -> int {
    auto it = slot.find(g.id());
    if (it != slot.end()) return it->second;
    Compiled::CNode node{g.kind()};
    switch (g.kind()) {
      case Formula::Kind::kVar: {
        auto vit = std::find(c.vars.begin(), c.vars.end(), g.var_name());
        node.var = static_cast<int>(vit - c.vars.begin());
        break;
      }
      case Formula::Kind::kBottom:
        break;
      default:
        node.a = self(self, g.left());
        node.b = self(self, g.right());
        break;
    }
    c.nodes.push_back(node);
    int id = static_cast<int>(c.nodes.size()) - 1;
    slot.emplace(g.id(), id);
    return id;
  };
  rec(rec, f);
  return c;
}

// Scratch rows reusable across valuations; no allocation in the inner loop.
struct EvalScratch {
  std::vector<std::vector<uint64_t>> rows;
  std::vector<uint64_t> diff;
};

// Returns the truth row of the root node. var_rows[i] supplies the row of
// variable slot i.
const std::vector<uint64_t>& eval_rows(
    const Poset& p, const Compiled& c,
    const std::vector<const std::vector<uint64_t>*>& var_rows,
    EvalScratch& scratch) {
  const int n = p.size();
  const int words = std::max(1, p.word_count());
  scratch.rows.resize(c.nodes.size());
  scratch.diff.assign(words, 0);
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    auto& node = c.nodes[i];
    auto& out = scratch.rows[i];
    out.assign(words, 0);
    switch (node.kind) {
      case Formula::Kind::kVar:
        out = *var_rows[node.var];
        out.resize(words, 0);
        break;
      case Formula::Kind::kBottom:
        break;
      case Formula::Kind::kAnd:
        for (int w = 0; w < words; ++w)
          out[w] = scratch.rows[node.a][w] & scratch.rows[node.b][w];
        break;
      case Formula::Kind::kOr:
        for (int w = 0; w < words; ++w)
          out[w] = scratch.rows[node.a][w] | scratch.rows[node.b][w];
        break;
      case Formula::Kind::kImplies: {
        // x forces a->b iff no successor of x lies in a\b
        auto& av = scratch.rows[node.a];
        auto& bv = scratch.rows[node.b];
        for (int w = 0; w < words; ++w) scratch.diff[w] = av[w] & ~bv[w];
        if (bits::is_zero(scratch.diff)) {
          for (int x = 0; x < n; ++x) bits::set(out, x);
        } else {
          for (int x = 0; x < n; ++x) {
            auto row = p.up_row(x);
            bool hit = false;
            for (int w = 0; w < p.word_count(); ++w)
              if (row[w] & scratch.diff[w]) {
                hit = true;
                break;
              }
            if (!hit) bits::set(out, x);
          }
        }
        break;
      }
    }
  }
  return scratch.rows.back();
}

std::vector<const std::vector<uint64_t>*> bind_vars(const Poset& p,
                                                    const Valuation& v,
                                                    const Compiled& c,
                                                    std::vector<std::vector<uint64_t>>& store) {
  if (!v.poset().same_as(p))
    throw MixedPosetError("valuation bound to a different poset");
  std::vector<const std::vector<uint64_t>*> rows;
  store.reserve(c.vars.size());
  for (const auto& name : c.vars) {
    const UpSet* u = v.find(name);
    if (!u) throw UnboundVariableError("variable not bound: " + name);
    store.emplace_back(u->bits().begin(), u->bits().end());
    rows.push_back(&store.back());
  }
  return rows;
}

}  // namespace

bool forces(const Poset& p, const Valuation& v, int point, const Formula& f) {
  if (point < 0 || point >= p.size()) throw Error("point index out of range");
  Compiled c = compile(f);
  std::vector<std::vector<uint64_t>> store;
  auto rows = bind_vars(p, v, c, store);
  EvalScratch scratch;
  if (p.size() == 0) return false;
  return bits::test(eval_rows(p, c, rows, scratch), point);
}

UpSet truth_set(const Poset& p, const Valuation& v, const Formula& f) {
  Compiled c = compile(f);
  std::vector<std::vector<uint64_t>> store;
  auto rows = bind_vars(p, v, c, store);
  EvalScratch scratch;
  std::vector<uint64_t> out = eval_rows(p, c, rows, scratch);
  out.resize(p.word_count());
  return p.upset_from_bits(std::move(out));
}

bool check_validity_at(const Poset& p, const Formula& f, const Valuation& v,
                       int point) {
  return forces(p, v, point, f);
}

namespace {

uint64_t pow_saturating(uint64_t base, std::size_t exp, uint64_t cap) {
  uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

struct SearchBody {
  const Poset& p;
  const Compiled& c;
  const std::vector<UpSet>& ups;
  const std::vector<int>& scan_order;  // root first

  // Scans valuation tuples [first_lo, first_hi) x full ranges of the rest in
  // canonical odometer order; returns the first failure found, if any.
  std::optional<std::pair<std::vector<std::size_t>, int>> run(
      std::size_t first_lo, std::size_t first_hi,
      const std::atomic<bool>* stop) const {
    const std::size_t k = c.vars.size();
    std::vector<std::size_t> idx(k, 0);
    if (k > 0) idx[0] = first_lo;
    std::vector<const std::vector<uint64_t>*> rows(k);
    std::vector<std::vector<uint64_t>> var_store(k);
    EvalScratch scratch;
    const int words = p.word_count();

    while (true) {
      if (stop && stop->load(std::memory_order_relaxed)) return std::nullopt;
      for (std::size_t i = 0; i < k; ++i) {
        auto b = ups[idx[i]].bits();
        var_store[i].assign(b.begin(), b.end());
        rows[i] = &var_store[i];
      }
      const auto& truth = eval_rows(p, c, rows, scratch);
      bool all = true;
      for (int w = 0; w < words; ++w) {
        uint64_t expect =
            (w == words - 1 && p.size() % 64)
                ? ((uint64_t{1} << (p.size() % 64)) - 1)
                : ~uint64_t{0};
        if ((truth[w] & expect) != expect) {
          all = false;
          break;
        }
      }
      if (!all) {
        for (int x : scan_order)
          if (!bits::test(truth, x)) return std::make_pair(idx, x);
      }
      // odometer: last variable fastest
      if (k == 0) return std::nullopt;
      std::size_t i = k;
      while (i > 0) {
        --i;
        ++idx[i];
        std::size_t limit = (i == 0) ? first_hi : ups.size();
        if (idx[i] < limit) break;
        if (i == 0) return std::nullopt;
        idx[i] = 0;
      }
    }
  }
};

}  // namespace

ValidityResult check_validity(const Poset& p, const Formula& f,
                              const ValidityOptions& opts) {
  Compiled c = compile(f);
  const std::size_t k = c.vars.size();

  std::vector<UpSet> ups = enumerate_upsets(p, opts.budget);
  uint64_t space = pow_saturating(ups.size(), k, opts.budget);
  if (space > opts.budget)
    throw SearchBudgetError(
        "valuation space " + std::to_string(ups.size()) + "^" +
            std::to_string(k) + " exceeds the budget of " +
            std::to_string(opts.budget),
        space);

  std::vector<int> scan_order(p.size());
  std::iota(scan_order.begin(), scan_order.end(), 0);
  std::stable_sort(scan_order.begin(), scan_order.end(),
                   [&](int a, int b) { return p.height(a) < p.height(b); });

  SearchBody body{p, c, ups, scan_order};

  std::optional<std::pair<std::vector<std::size_t>, int>> found;

  unsigned workers = opts.workers ? opts.workers
                                  : std::min(8u, std::thread::hardware_concurrency());
  if (opts.deterministic || k == 0 || workers <= 1 || ups.size() < 2) {
    found = body.run(0, ups.size(), nullptr);
  } else {
    workers = std::min<unsigned>(workers, ups.size());
    std::atomic<bool> stop{false};
    std::mutex m;
    std::vector<std::thread> threads;
    const std::size_t chunk = (ups.size() + workers - 1) / workers;
    for (unsigned t = 0; t < workers; ++t) {
      std::size_t lo = t * chunk;
      std::size_t hi = std::min(ups.size(), lo + chunk);
      if (lo >= hi) break;
      threads.emplace_back([&, lo, hi]() {
        auto r = body.run(lo, hi, &stop);
        if (r) {
          std::lock_guard<std::mutex> lock(m);
          if (!found) {
            found = std::move(r);
            stop.store(true, std::memory_order_relaxed);
          }
        }
      });
    }
    for (auto& th : threads) th.join();
  }

  if (!found) return ValidityResult{true, std::nullopt};

  Valuation v(p);
  for (std::size_t i = 0; i < k; ++i) v.set(c.vars[i], ups[found->first[i]]);
  int point = found->second;
  if (forces(p, v, point, f))
    throw Error("internal error: countermodel failed re-check");
  return ValidityResult{false, Countermodel{std::move(v), point}};
}

}  // namespace cheqlab
