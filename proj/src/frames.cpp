#include "cheqlab/frames.hpp"

#include <algorithm>

#include "cheqlab/bits.hpp"

namespace cheqlab {

CoordLabel CoordLabel::parse(std::string_view text) {
  if (text.empty()) throw Error("coordinate label must be nonempty");
  for (char c : text)
    if (c != '-' && c != '0' && c != '+')
      throw Error("coordinate label may only contain '-', '0', '+'");
  return CoordLabel{std::string(text)};
}

SubsetLabel SubsetLabel::from_mask(uint64_t mask, int universe) {
  if (universe < 0 || universe > 63) throw Error("universe out of range");
  if (mask >> universe) throw Error("subset mask exceeds the universe");
  return SubsetLabel{mask, universe};
}

SubsetLabel SubsetLabel::parse(std::string_view text, int universe) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw Error("subset label must look like {1,3}");
  SubsetLabel out;
  out.universe = universe;
  std::string_view body = text.substr(1, text.size() - 2);
  std::size_t i = 0;
  int prev = 0;
  while (i < body.size()) {
    std::size_t j = i;
    while (j < body.size() && body[j] >= '0' && body[j] <= '9') ++j;
    if (j == i) throw Error("subset label: expected a number");
    int e = std::stoi(std::string(body.substr(i, j - i)));
    if (e < 1 || e > universe) throw Error("subset element out of range");
    if (e <= prev) throw Error("subset elements must be ascending");
    prev = e;
    out.mask |= uint64_t{1} << (e - 1);
    i = j;
    if (i < body.size()) {
      if (body[i] != ',') throw Error("subset label: expected ','");
      ++i;
    }
  }
  return out;
}

bool SubsetLabel::is_proper() const {
  uint64_t full =
      (universe >= 64) ? ~uint64_t{0} : ((uint64_t{1} << universe) - 1);
  return mask != full;
}

std::string SubsetLabel::str() const {
  std::string out = "{";
  bool first = true;
  for (int e = 1; e <= universe; ++e) {
    if (mask & (uint64_t{1} << (e - 1))) {
      if (!first) out += ",";
      first = false;
      out += std::to_string(e);
    }
  }
  out += "}";
  return out;
}

Poset fork() {
  return Poset::from_covers({"0", "-", "+"}, {{0, 1}, {0, 2}})
      .sorted_by_labels();
}

Poset chequered(int n, uint64_t point_budget) {
  if (n < 1) throw Error("chequered: n must be at least 1");
  uint64_t pts = 1;
  for (int i = 0; i < n; ++i) {
    pts *= 3;
    if (pts > point_budget)
      throw SizeGuardError("chequered(" + std::to_string(n) + ") would have " +
                           "3^" + std::to_string(n) + " points, over the budget of " +
                           std::to_string(point_budget));
  }
  Poset f = fork();
  Poset out = f;
  // Components carry equal-length labels, so the row-major product order is
  // already the byte-wise label order.
  for (int i = 1; i < n; ++i) out = product(out, f, point_budget);
  return out;
}

Poset medvedev(int n, uint64_t point_budget) {
  if (n < 1) throw Error("medvedev: n must be at least 1");
  if (n + 1 > 62) throw SizeGuardError("medvedev: universe too large");
  const uint64_t count = (uint64_t{1} << (n + 1)) - 1;
  if (count > point_budget)
    throw SizeGuardError("medvedev(" + std::to_string(n) + ") would have " +
                         std::to_string(count) + " points, over the budget of " +
                         std::to_string(point_budget));
  const uint64_t full = (uint64_t{1} << (n + 1)) - 1;
  std::vector<std::pair<std::string, uint64_t>> pts;
  pts.reserve(count);
  for (uint64_t m = 0; m < full; ++m)
    pts.emplace_back(SubsetLabel::from_mask(m, n + 1).str(), m);
  std::sort(pts.begin(), pts.end());
  std::vector<std::string> labels;
  std::vector<uint64_t> masks;
  labels.reserve(pts.size());
  masks.reserve(pts.size());
  for (auto& [lab, m] : pts) {
    labels.push_back(lab);
    masks.push_back(m);
  }
  return Poset::from_order(std::move(labels), [&masks](int x, int y) {
    return (masks[x] & ~masks[y]) == 0;
  });
}

Poset frame_h() {
  return Poset::from_covers({"r", "a", "b", "c", "d", "e", "f"},
                            {{0, 1},
                             {0, 2},
                             {0, 3},
                             {0, 4},
                             {1, 5},
                             {2, 5},
                             {2, 6},
                             {3, 5},
                             {3, 6},
                             {4, 6}})
      .sorted_by_labels();
}

int uparrow(const CoordLabel& x) {
  int pos = 0;
  int nonzero = 0;
  for (int i = 0; i < x.length(); ++i) {
    if (x.coords[i] != '0') {
      ++nonzero;
      pos = i + 1;
    }
  }
  if (nonzero != 1)
    throw NotAtomError("label " + x.coords + " has " + std::to_string(nonzero) +
                       " non-zero coordinates, expected exactly one");
  return pos;
}

CoordLabel drop_left(const CoordLabel& x, int n) {
  if (n < 0 || n >= x.length())
    throw LengthError("cannot drop " + std::to_string(n) +
                      " coordinates from a label of length " +
                      std::to_string(x.length()));
  return CoordLabel{x.coords.substr(n)};
}

CoordLabel drop_right(const CoordLabel& x, int n) {
  if (n < 0 || n >= x.length())
    throw LengthError("cannot drop " + std::to_string(n) +
                      " coordinates from a label of length " +
                      std::to_string(x.length()));
  return CoordLabel{x.coords.substr(0, x.coords.size() - n)};
}

CommonSuccessorCheck common_successor_fact(int n, uint64_t point_budget) {
  Poset f = chequered(n, point_budget);
  std::vector<int> atoms = f.atoms();
  const int words = f.word_count();
  std::vector<uint64_t> maxmask(words, 0);
  for (int x = 0; x < f.size(); ++x)
    if (f.is_maximal(x)) bits::set(maxmask, x);

  auto shares_top = [&](int v, int u) {
    auto rv = f.up_row(v);
    auto ru = f.up_row(u);
    for (int w = 0; w < words; ++w)
      if (rv[w] & ru[w] & maxmask[w]) return true;
    return false;
  };

  CommonSuccessorCheck out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i; j < atoms.size(); ++j) {
      int u = atoms[i], u2 = atoms[j];
      if (f.is_maximal(u) || f.is_maximal(u2)) continue;
      int witness = -1;
      for (int v : atoms) {
        if (shares_top(v, u) && shares_top(v, u2)) {
          witness = v;
          break;
        }
      }
      if (witness < 0) {
        out.ok = false;
        out.failing_pair = {u, u2};
        return out;
      }
      out.table.push_back({u, u2, witness});
    }
  }
  return out;
}

SelfResemblanceCheck self_resemblance_check(FrameFamily family, int n,
                                            uint64_t point_budget) {
  auto build = [&](int k) -> Poset {
    if (k == 0) return Poset::from_covers({"*"}, {});
    return family == FrameFamily::kChequered ? chequered(k, point_budget)
                                             : medvedev(k, point_budget);
  };
  Poset frame = build(n);
  std::vector<std::optional<Poset>> cache(n + 1);
  std::vector<int64_t> sizes(n + 1);
  for (int k = 0; k <= n; ++k) {
    cache[k] = build(k);
    sizes[k] = cache[k]->size();
  }

  SelfResemblanceCheck out;
  out.rank.assign(frame.size(), -1);
  for (int x = 0; x < frame.size(); ++x) {
    GeneratedSubframe sub = generated_subframe(frame, {x});
    int k = -1;
    for (int c = 0; c <= n; ++c)
      if (sizes[c] == sub.frame.size()) {
        k = c;
        break;
      }
    if (k < 0 || !is_isomorphic(sub.frame, *cache[k])) {
      out.ok = false;
      out.failing_point = x;
      return out;
    }
    out.rank[x] = k;
  }
  return out;
}

}  // namespace cheqlab
