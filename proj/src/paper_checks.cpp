#include "cheqlab/paper_checks.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include "cheqlab/bits.hpp"
#include "cheqlab/formula.hpp"
#include "cheqlab/frames.hpp"
#include "cheqlab/morphism.hpp"
#include "cheqlab/semantics.hpp"
#include "json.hpp"

namespace cheqlab {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kSkipped:
      return "skipped";
  }
  return "?";
}

namespace {

struct Outcome {
  bool pass;
  std::string witness;
};

// ---- independent oracles (deliberately naive; no bitset shortcuts) ----

bool oracle_is_upset(const Poset& p, const std::vector<int>& members) {
  std::vector<char> in(p.size(), 0);
  for (int x : members) in[x] = 1;
  for (int x : members)
    for (int y = 0; y < p.size(); ++y)
      if (p.leq(x, y) && !in[y]) return false;
  return true;
}

std::vector<std::vector<int>> oracle_all_upsets(const Poset& p) {
  std::vector<std::vector<int>> out;
  const int n = p.size();
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (mask & (uint64_t{1} << i)) members.push_back(i);
    if (oracle_is_upset(p, members)) out.push_back(std::move(members));
  }
  return out;
}

bool oracle_is_p_morphism(const Poset& s, const Poset& t,
                          const std::vector<int>& f, bool onto) {
  for (int x = 0; x < s.size(); ++x)
    for (int y = 0; y < s.size(); ++y)
      if (s.leq(x, y) && !t.leq(f[x], f[y])) return false;
  for (int x = 0; x < s.size(); ++x)
    for (int y2 = 0; y2 < t.size(); ++y2) {
      if (!t.leq(f[x], y2)) continue;
      bool witness = false;
      for (int z = 0; z < s.size(); ++z)
        if (s.leq(x, z) && f[z] == y2) {
          witness = true;
          break;
        }
      if (!witness) return false;
    }
  if (onto) {
    for (int y2 = 0; y2 < t.size(); ++y2) {
      bool hit = false;
      for (int x = 0; x < s.size(); ++x)
        if (f[x] == y2) hit = true;
      if (!hit) return false;
    }
  }
  return true;
}

bool oracle_morphism_exists(const Poset& s, const Poset& t, bool onto) {
  std::vector<int> f(s.size(), 0);
  while (true) {
    if (oracle_is_p_morphism(s, t, f, onto)) return true;
    int i = s.size() - 1;
    while (i >= 0 && f[i] == t.size() - 1) f[i--] = 0;
    if (i < 0) return false;
    ++f[i];
  }
}

Poset random_poset(uint64_t seed, int n, int edge_percent) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (static_cast<int>(rng() % 100) < edge_percent) covers.emplace_back(i, j);
  return Poset::from_covers(std::move(labels), covers);
}

// ---- the check harness ----

struct Harness {
  const VerifyOptions& opts;
  VerificationReport report;

  void add(const std::string& id, const std::string& ref, bool full_only,
           const std::function<Outcome()>& body) {
    CheckResult r;
    r.check_id = id;
    r.theorem_ref = ref;
    if (full_only && !opts.full) {
      r.status = CheckStatus::kSkipped;
      r.witness = "runs in the full profile";
      report.checks.push_back(std::move(r));
      return;
    }
    auto start = std::chrono::steady_clock::now();
    try {
      Outcome o = body();
      r.status = o.pass ? CheckStatus::kPass : CheckStatus::kFail;
      r.witness = std::move(o.witness);
    } catch (const SearchBudgetError& e) {
      r.status = opts.full ? CheckStatus::kFail : CheckStatus::kSkipped;
      r.witness = std::string("budget: ") + e.what();
    } catch (const Error& e) {
      r.status = CheckStatus::kFail;
      r.witness = std::string("error: ") + e.what();
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    report.checks.push_back(std::move(r));
  }
};

std::string valuation_text(const Valuation& v, const Formula& f) {
  std::string out;
  for (const auto& name : variables(f)) {
    const UpSet* u = v.find(name);
    if (!u) continue;
    if (!out.empty()) out += " ";
    out += name + "=" + u->to_string();
  }
  return out;
}

}  // namespace

VerificationReport run_paper_checks(const VerifyOptions& opts) {
  Harness h{opts, {}};
  h.report.profile = opts.full ? "full" : "quick";
  const uint64_t budget = opts.budget;
  const bool det = opts.deterministic;

  // frame sizes
  h.add("sizes.chequered", "frame sizes |F_n| = 3^n, n <= 7", false, [&]() {
    uint64_t expect = 1;
    for (int n = 1; n <= 7; ++n) {
      expect *= 3;
      Poset f = chequered(n);
      if (static_cast<uint64_t>(f.size()) != expect)
        return Outcome{false, "F_" + std::to_string(n) + " has " +
                                  std::to_string(f.size()) + " points"};
    }
    return Outcome{true, "3, 9, ..., 2187 as constructed"};
  });
  h.add("sizes.medvedev", "frame sizes |M_n| = 2^(n+1) - 1, n <= 7", false,
        [&]() {
          for (int n = 1; n <= 7; ++n) {
            uint64_t expect = (uint64_t{1} << (n + 1)) - 1;
            Poset m = medvedev(n);
            if (static_cast<uint64_t>(m.size()) != expect)
              return Outcome{false, "M_" + std::to_string(n) + " has " +
                                        std::to_string(m.size()) + " points"};
          }
          return Outcome{true, "3, 7, ..., 255 as constructed"};
        });

  // T1: disjoint unions embed as generated subframes
  auto embed_check = [&](int na, int nb, int nbig) {
    return [=]() {
      Poset big = chequered(nbig);
      auto w = embeds_disjoint_union(big, chequered(na), chequered(nb), budget);
      if (!w) return Outcome{false, "no disjoint pair of generated copies"};
      return Outcome{true, "u=" + big.label(w->u) + " v=" + big.label(w->v)};
    };
  };
  h.add("t1.embed.f1+f1", "T1 disjunction property: F_1 + F_1 inside F_2",
        false, embed_check(1, 1, 2));
  h.add("t1.embed.f1+f2", "T1 disjunction property: F_1 + F_2 inside F_3",
        false, embed_check(1, 2, 3));
  h.add("t1.embed.f2+f2", "T1 disjunction property: F_2 + F_2 inside F_4",
        false, embed_check(2, 2, 4));

  // T2: Scott axiom and the shared-top lemma
  for (int n = 1; n <= 3; ++n) {
    h.add("t2.sa.f" + std::to_string(n),
          "T2 Scott axiom valid on F_" + std::to_string(n), false, [=]() {
            auto r = check_validity(chequered(n), axiom("sa"),
                                    {budget, det, 0});
            if (!r.valid)
              return Outcome{false,
                             "countermodel at point " +
                                 std::to_string(r.countermodel->point)};
            return Outcome{true, "valid under every valuation"};
          });
  }
  h.add("t2.common-successor",
        "T2 every atom pair has a witness atom sharing tops with both, n <= 5",
        false, [&]() {
          std::size_t entries = 0;
          for (int n = 1; n <= 5; ++n) {
            auto r = common_successor_fact(n);
            if (!r.ok) {
              Poset f = chequered(n);
              return Outcome{false, "no witness for pair " +
                                        f.label(r.failing_pair->first) + ", " +
                                        f.label(r.failing_pair->second) +
                                        " in F_" + std::to_string(n)};
            }
            entries += r.table.size();
          }
          return Outcome{true,
                         std::to_string(entries) + " atom pairs witnessed"};
        });

  // T3: Kreisel-Putnam failure on F_2
  h.add("t3.kp.countermodel", "T3 kp fails on F_2 at the root", false, [&]() {
    Poset f2 = chequered(2);
    auto r = check_validity(f2, axiom("kp"), {budget, true, 0});
    if (r.valid) return Outcome{false, "kp came out valid on F_2"};
    int pt = r.countermodel->point;
    if (f2.label(pt) != "00")
      return Outcome{false, "countermodel at " + f2.label(pt) + ", not 00"};
    return Outcome{true, "point 00 under " +
                             valuation_text(r.countermodel->valuation,
                                            axiom("kp"))};
  });
  h.add("t3.kp.valuation",
        "T3 the explicit valuation p={-+,+-} q={--} r={++} refutes kp at 00",
        false, [&]() {
          Poset f2 = chequered(2);
          Valuation v(f2);
          v.set("p", f2.upset_of({*f2.index_of("-+"), *f2.index_of("+-")}));
          v.set("q", f2.upset_of({*f2.index_of("--")}));
          v.set("r", f2.upset_of({*f2.index_of("++")}));
          bool forced = check_validity_at(f2, axiom("kp"), v, *f2.root());
          return Outcome{!forced, forced ? "kp forced at the root"
                                         : "root fails kp as displayed"};
        });

  // T4: canonical reductions and the structural lemmas behind them
  auto reduction_check = [&](int m) {
    return [=]() {
      PointMap f = canonical_reduction(m);
      auto rep = check_p_morphism(f, /*require_onto=*/true);
      if (!rep.ok)
        return Outcome{false, describe(rep.violations.front(), f)};
      return Outcome{true,
                     std::to_string(f.source.size()) + " points onto " +
                         std::to_string(f.target.size())};
    };
  };
  h.add("t4.reduction.m1", "T4 f_1 : F_1 onto M_1 is a p-morphism", false,
        reduction_check(1));
  h.add("t4.reduction.m2", "T4 f_3 : F_3 onto M_3 is a p-morphism", false,
        reduction_check(2));
  h.add("t4.reduction.m3", "T4 f_7 : F_7 (2187 points) onto M_7 (255 points)",
        true, reduction_check(3));

  h.add("t4.image-proper", "T4 no reduction image is the full subset", false,
        [&]() {
          int top = opts.full ? 3 : 2;
          for (int m = 1; m <= top; ++m) {
            PointMap f = canonical_reduction(m);
            int n = (1 << m) - 1;
            for (int x = 0; x < f.source.size(); ++x) {
              auto lab = SubsetLabel::parse(f.target.label(f.map[x]), n + 1);
              if (!lab.is_proper())
                return Outcome{false, "image of " + f.source.label(x) +
                                          " is the full set"};
            }
          }
          return Outcome{true, "all images proper, m <= " +
                                   std::to_string(top)};
        });

  h.add("t4.pred-lattice", "T4 every down-set of F_n is a lattice, n <= 4",
        false, [&]() {
          for (int n = 1; n <= 4; ++n) {
            auto r = predecessors_form_lattice(chequered(n));
            if (!r.ok)
              return Outcome{false, "failure at point " +
                                        std::to_string(r.point) + " in F_" +
                                        std::to_string(n)};
          }
          return Outcome{true, "joins and meets exist throughout"};
        });

  h.add("t4.self-resemblance.cheq",
        "self-resemblance: rooted subframes of F_n are earlier F_k, n <= 4",
        false, [&]() {
          for (int n = 1; n <= 4; ++n) {
            auto r = self_resemblance_check(FrameFamily::kChequered, n);
            if (!r.ok)
              return Outcome{false, "point " + std::to_string(r.failing_point) +
                                        " of F_" + std::to_string(n)};
          }
          return Outcome{true, "every principal upset matched an F_k"};
        });
  h.add("t4.self-resemblance.medvedev",
        "self-resemblance: rooted subframes of M_n are earlier M_k, n <= 5",
        false, [&]() {
          for (int n = 1; n <= 5; ++n) {
            auto r = self_resemblance_check(FrameFamily::kMedvedev, n);
            if (!r.ok)
              return Outcome{false, "point " + std::to_string(r.failing_point) +
                                        " of M_" + std::to_string(n)};
          }
          return Outcome{true, "every principal upset matched an M_k"};
        });

  // Corollary: the characteristic-formula criterion and wem
  h.add("cor.reducible.k4",
        "corollary: no rooted subframe of M_k reduces onto F_2, k <= 4", false,
        [&]() {
          Poset f2 = chequered(2);
          for (int k = 1; k <= 4; ++k) {
            auto w = reducible(medvedev(k), f2, budget);
            if (w)
              return Outcome{false, "witness seed in M_" + std::to_string(k)};
          }
          return Outcome{true, "definitive none for k <= 4"};
        });
  h.add("cor.reducible.k5",
        "corollary: no rooted subframe of M_5 reduces onto F_2", true, [&]() {
          auto w = reducible(medvedev(5), chequered(2), budget);
          if (w) return Outcome{false, "witness seed in M_5"};
          return Outcome{true, "definitive none at k = 5"};
        });
  h.add("cor.wem", "corollary: weak excluded middle fails on F_1", false,
        [&]() {
          auto r = check_validity(fork(), axiom("wem"), {budget, true, 0});
          if (r.valid) return Outcome{false, "wem came out valid on F_1"};
          return Outcome{true,
                         "countermodel at " +
                             r.countermodel->valuation.poset().label(
                                 r.countermodel->point) +
                             " under " +
                             valuation_text(r.countermodel->valuation,
                                            axiom("wem"))};
        });

  // T5: the frame H
  h.add("t5.h.image-of-f2", "T5 H is an onto p-morphic image of F_2", false,
        [&]() {
          auto m = search_p_morphism(chequered(2), frame_h(), true, det, budget);
          if (!m) return Outcome{false, "no onto p-morphism found"};
          auto rep = check_p_morphism(*m, true);
          if (!rep.ok) return Outcome{false, describe(rep.violations.front(), *m)};
          return Outcome{true, "map found and re-verified"};
        });
  h.add("t5.h.kp-valid", "T5 kp is valid on H", false, [&]() {
    auto r = check_validity(frame_h(), axiom("kp"), {budget, det, 0});
    if (!r.valid)
      return Outcome{false, "countermodel at point " +
                                std::to_string(r.countermodel->point)};
    return Outcome{true, "valid under every valuation"};
  });
  auto not_image = [&](int n) {
    return [=]() {
      auto m = search_p_morphism(medvedev(n), frame_h(), true, det, budget);
      if (m) return Outcome{false, "an onto p-morphism exists"};
      return Outcome{true, "definitive: no onto p-morphism from M_" +
                               std::to_string(n)};
    };
  };
  h.add("t5.h.not-image.m2", "T5 H is not a p-morphic image of M_2", false,
        not_image(2));
  h.add("t5.h.not-image.m3", "T5 H is not a p-morphic image of M_3", false,
        not_image(3));
  h.add("t5.h.not-image.m4", "T5 H is not a p-morphic image of M_4", false,
        not_image(4));
  h.add("t5.h.not-image.m5", "T5 H is not a p-morphic image of M_5", true,
        not_image(5));

  // oracle equivalences
  h.add("oracle.upsets",
        "upset enumeration equals subset filtering for |P| <= 12", false,
        [&]() {
          std::vector<Poset> posets;
          posets.push_back(fork());
          posets.push_back(Poset::from_covers({"a", "b", "c"}, {{0, 1}, {1, 2}}));
          posets.push_back(Poset::from_covers({"x", "y"}, {}));
          posets.push_back(chequered(2));
          posets.push_back(medvedev(2));
          posets.push_back(frame_h());
          posets.push_back(random_poset(11, 10, 25));
          posets.push_back(random_poset(23, 12, 18));
          std::size_t total = 0;
          for (const Poset& p : posets) {
            auto brute = oracle_all_upsets(p);
            auto fast = enumerate_upsets(p, budget);
            if (brute.size() != fast.size())
              return Outcome{false, std::to_string(fast.size()) +
                                        " enumerated vs " +
                                        std::to_string(brute.size()) +
                                        " brute-force on " +
                                        std::to_string(p.size()) + " points"};
            for (std::size_t i = 0; i < fast.size(); ++i) {
              std::vector<int> m = fast[i].members();
              bool found = false;
              for (auto& b : brute)
                if (b == m) found = true;
              if (!found)
                return Outcome{false, "enumerated a set the filter rejects"};
            }
            total += brute.size();
          }
          return Outcome{true, std::to_string(total) + " upsets agreed"};
        });
  h.add("oracle.morphisms",
        "search verdicts equal brute-force map enumeration, |S|<=7 |T|<=5",
        false, [&]() {
          Poset chain2 = Poset::from_covers({"a", "b"}, {{0, 1}});
          Poset chain3 = Poset::from_covers({"a", "b", "c"}, {{0, 1}, {1, 2}});
          std::vector<std::pair<Poset, Poset>> pairs;
          pairs.emplace_back(fork(), fork());
          pairs.emplace_back(chain2, fork());
          pairs.emplace_back(fork(), chain2);
          pairs.emplace_back(medvedev(2), fork());
          pairs.emplace_back(frame_h(), chain3);
          pairs.emplace_back(random_poset(5, 6, 30), random_poset(7, 4, 40));
          pairs.emplace_back(random_poset(13, 7, 25), random_poset(17, 5, 35));
          pairs.emplace_back(random_poset(29, 7, 45), random_poset(31, 4, 30));
          int agreed = 0;
          for (auto& [s, t] : pairs) {
            for (bool onto : {false, true}) {
              bool brute = oracle_morphism_exists(s, t, onto);
              auto found = search_p_morphism(s, t, onto, true, budget);
              if (brute != found.has_value())
                return Outcome{false,
                               "verdicts differ on |S|=" +
                                   std::to_string(s.size()) + " |T|=" +
                                   std::to_string(t.size()) +
                                   (onto ? " (onto)" : "")};
              ++agreed;
            }
          }
          return Outcome{true, std::to_string(agreed) + " verdicts agreed"};
        });

  h.report.all_pass = true;
  for (const auto& c : h.report.checks)
    if (c.status == CheckStatus::kFail) h.report.all_pass = false;
  return h.report;
}

std::string report_to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["profile"] = report.profile;
  j["all_pass"] = report.all_pass;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"check_id", c.check_id},
                      {"theorem_ref", c.theorem_ref},
                      {"status", to_string(c.status)},
                      {"witness_or_counterexample", c.witness},
                      {"elapsed_ms", c.elapsed_ms}});
  }
  j["checks"] = std::move(checks);
  return j.dump(2) + "\n";
}

std::string report_to_table(const VerificationReport& report) {
  std::ostringstream out;
  std::size_t idw = 8, refw = 8;
  for (const auto& c : report.checks) {
    idw = std::max(idw, c.check_id.size());
    refw = std::max(refw, c.theorem_ref.size());
  }
  int pass = 0, fail = 0, skipped = 0;
  for (const auto& c : report.checks) {
    out << std::left << std::setw(static_cast<int>(idw) + 2) << c.check_id
        << std::setw(static_cast<int>(refw) + 2) << c.theorem_ref
        << std::setw(9) << to_string(c.status) << std::fixed
        << std::setprecision(1) << std::setw(9) << c.elapsed_ms << "  "
        << c.witness << "\n";
    if (c.status == CheckStatus::kPass) ++pass;
    if (c.status == CheckStatus::kFail) ++fail;
    if (c.status == CheckStatus::kSkipped) ++skipped;
  }
  out << "profile " << report.profile << ": " << pass << " passed, " << fail
      << " failed, " << skipped << " skipped\n";
  return out.str();
}

}  // namespace cheqlab
