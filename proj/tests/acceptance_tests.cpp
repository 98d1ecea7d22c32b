// Acceptance suite: one line per criterion, with the stated time targets
// enforced. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "cheqlab/formula.hpp"
#include "cheqlab/frames.hpp"
#include "cheqlab/morphism.hpp"
#include "cheqlab/semantics.hpp"
#include "json.hpp"
#include "test_util.hpp"

using namespace cheqlab;

namespace {

std::string g_binary;

struct Criterion {
  int number;
  std::string description;
  double limit_seconds;
  std::function<std::string()> body;  // empty string = pass, else the failure
};

std::string run_capture(const std::string& args, int& exit_code) {
  std::string cmd = g_binary + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    exit_code = -1;
    return "";
  }
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

nlohmann::json strip_elapsed(nlohmann::json j) {
  if (j.is_object()) {
    j.erase("elapsed_ms");
    for (auto& [k, v] : j.items()) v = strip_elapsed(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_elapsed(v);
  }
  return j;
}

std::string criterion_sizes() {
  uint64_t f = 1;
  for (int n = 1; n <= 7; ++n) {
    f *= 3;
    if (static_cast<uint64_t>(chequered(n).size()) != f)
      return "F_" + std::to_string(n) + " size mismatch";
    uint64_t m = (uint64_t{1} << (n + 1)) - 1;
    if (static_cast<uint64_t>(medvedev(n).size()) != m)
      return "M_" + std::to_string(n) + " size mismatch";
  }
  return "";
}

std::string criterion_embeddings() {
  struct Case {
    int a, b, big;
  } cases[] = {{1, 1, 2}, {1, 2, 3}, {2, 2, 4}};
  for (auto [a, b, big] : cases) {
    auto w = embeds_disjoint_union(chequered(big), chequered(a), chequered(b));
    if (!w)
      return "no embedding of F_" + std::to_string(a) + "+F_" +
             std::to_string(b) + " into F_" + std::to_string(big);
  }
  return "";
}

std::string criterion_scott() {
  for (int n = 1; n <= 3; ++n)
    if (!check_validity(chequered(n), axiom("sa")).valid)
      return "sa refuted on F_" + std::to_string(n);
  for (int n = 1; n <= 5; ++n)
    if (!common_successor_fact(n).ok)
      return "shared-top lemma failed at n = " + std::to_string(n);
  return "";
}

std::string criterion_kp() {
  Poset f2 = chequered(2);
  ValidityResult r = check_validity(f2, axiom("kp"), {kDefaultSearchBudget, true, 0});
  if (r.valid) return "kp came out valid on F_2";
  if (f2.label(r.countermodel->point) != "00")
    return "countermodel not at the root";
  Valuation v(f2);
  v.set("p", f2.upset_of({*f2.index_of("-+"), *f2.index_of("+-")}));
  v.set("q", f2.upset_of({*f2.index_of("--")}));
  v.set("r", f2.upset_of({*f2.index_of("++")}));
  if (check_validity_at(f2, axiom("kp"), v, *f2.root()))
    return "the explicit valuation does not refute kp at the root";
  return "";
}

std::string criterion_reductions() {
  for (int m : {1, 2, 3}) {
    PointMap f = canonical_reduction(m);
    if (!check_p_morphism(f, true).ok)
      return "reduction at m = " + std::to_string(m) + " failed verification";
  }
  return "";
}

std::string criterion_structural() {
  for (int m : {1, 2, 3}) {
    PointMap f = canonical_reduction(m);
    const int n = (1 << m) - 1;
    for (int x = 0; x < f.source.size(); ++x)
      if (!SubsetLabel::parse(f.target.label(f.map[x]), n + 1).is_proper())
        return "a reduction image is the full set at m = " + std::to_string(m);
  }
  for (int n = 1; n <= 4; ++n)
    if (!predecessors_form_lattice(chequered(n)).ok)
      return "a down-set of F_" + std::to_string(n) + " is not a lattice";
  for (int n = 1; n <= 4; ++n)
    if (!self_resemblance_check(FrameFamily::kChequered, n).ok)
      return "self-resemblance failed on F_" + std::to_string(n);
  for (int n = 1; n <= 5; ++n)
    if (!self_resemblance_check(FrameFamily::kMedvedev, n).ok)
      return "self-resemblance failed on M_" + std::to_string(n);
  return "";
}

std::string criterion_corollary() {
  Poset f2 = chequered(2);
  for (int k = 1; k <= 5; ++k) {
    try {
      if (reducible(medvedev(k), f2).has_value())
        return "a rooted subframe of M_" + std::to_string(k) +
               " reduced onto F_2";
    } catch (const SearchBudgetError&) {
      return "reducibility search at k = " + std::to_string(k) +
             " was not definitive";
    }
  }
  ValidityResult r = check_validity(cheqlab::fork(), axiom("wem"));
  if (r.valid) return "wem came out valid on the fork";
  return "";
}

double g_m5_seconds = 0;

std::string criterion_frame_h() {
  auto m = search_p_morphism(chequered(2), frame_h(), true);
  if (!m) return "no onto p-morphism from F_2 onto H";
  if (!check_p_morphism(*m, true).ok) return "the found map failed re-check";
  if (!check_validity(frame_h(), axiom("kp")).valid)
    return "kp refuted on H";
  for (int n = 2; n <= 4; ++n) {
    try {
      if (search_p_morphism(medvedev(n), frame_h(), true).has_value())
        return "an onto map from M_" + std::to_string(n) + " onto H appeared";
    } catch (const SearchBudgetError&) {
      return "M_" + std::to_string(n) + " search was not definitive";
    }
  }
  auto start = std::chrono::steady_clock::now();
  try {
    if (search_p_morphism(medvedev(5), frame_h(), true).has_value())
      return "an onto map from M_5 onto H appeared";
  } catch (const SearchBudgetError&) {
    return "M_5 search was not definitive";
  }
  g_m5_seconds = std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  if (g_m5_seconds > 600.0) return "M_5 search exceeded its 10-minute target";
  return "";
}

std::string criterion_oracles() {
  std::vector<Poset> posets = {cheqlab::fork(),
                               chequered(2),
                               medvedev(2),
                               frame_h(),
                               testutil::random_poset(11, 10, 25),
                               testutil::random_poset(23, 12, 18)};
  for (const Poset& p : posets) {
    auto brute = testutil::brute_force_upsets(p);
    auto fast = enumerate_upsets(p, 1u << 22);
    if (brute.size() != fast.size())
      return "upset counts differ on a " + std::to_string(p.size()) +
             "-point poset";
    for (const auto& u : fast) {
      std::vector<char> in(p.size(), 0);
      for (int x : u.members()) in[x] = 1;
      if (!testutil::naive_is_upset(p, in))
        return "enumerated a non-upset";
    }
  }
  Poset chain2 = Poset::from_covers({"a", "b"}, {{0, 1}});
  Poset chain3 = Poset::from_covers({"a", "b", "c"}, {{0, 1}, {1, 2}});
  std::vector<std::pair<Poset, Poset>> pairs;
  pairs.emplace_back(cheqlab::fork(), cheqlab::fork());
  pairs.emplace_back(chain2, cheqlab::fork());
  pairs.emplace_back(cheqlab::fork(), chain2);
  pairs.emplace_back(medvedev(2), cheqlab::fork());
  pairs.emplace_back(frame_h(), chain3);
  pairs.emplace_back(testutil::random_poset(5, 6, 30),
                     testutil::random_poset(7, 4, 40));
  pairs.emplace_back(testutil::random_poset(13, 7, 25),
                     testutil::random_poset(17, 5, 35));
  pairs.emplace_back(testutil::random_poset(29, 7, 45),
                     testutil::random_poset(31, 4, 30));
  for (const auto& [s, t] : pairs)
    for (bool onto : {false, true})
      if (testutil::brute_force_morphism_exists(s, t, onto) !=
          search_p_morphism(s, t, onto).has_value())
        return "search and enumeration disagree on a small pair";
  return "";
}

std::string criterion_determinism() {
  int code_a = 0, code_b = 0;
  std::string a = run_capture("verify-paper --profile quick --deterministic --json",
                              code_a);
  std::string b = run_capture("verify-paper --profile quick --deterministic --json",
                              code_b);
  if (code_a != 0 || code_b != 0) return "verify-paper quick did not pass";
  nlohmann::json ja, jb;
  try {
    ja = nlohmann::json::parse(a);
    jb = nlohmann::json::parse(b);
  } catch (const nlohmann::json::exception&) {
    return "verify-paper emitted invalid JSON";
  }
  if (strip_elapsed(ja).dump() != strip_elapsed(jb).dump())
    return "reports differ beyond the timing fields";
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance_tests <path-to-cheqlab-binary>\n");
    return 2;
  }
  g_binary = argv[1];

  std::vector<Criterion> criteria = {
      {1, "frame sizes |F_n| = 3^n and |M_n| = 2^(n+1)-1 for n <= 7", 1.0,
       criterion_sizes},
      {2, "disjoint-union embeddings F_1+F_1, F_1+F_2, F_2+F_2", 5.0,
       criterion_embeddings},
      {3, "Scott axiom on F_1..F_3 and the shared-top lemma for n <= 5", 60.0,
       criterion_scott},
      {4, "kp countermodel on F_2 and the explicit refuting valuation", 1.0,
       criterion_kp},
      {5, "canonical reductions verified onto for m = 1, 2, 3", 120.0,
       criterion_reductions},
      {6, "image properness, down-set lattices, self-resemblance", 60.0,
       criterion_structural},
      {7, "no rooted subframe of M_k (k <= 5) reduces onto F_2; wem fails",
       600.0, criterion_corollary},
      {8, "frame H: image of F_2, kp-valid, not an image of M_2..M_5", 600.0,
       criterion_frame_h},
      {9, "oracle equivalences for upsets and morphism search", 60.0,
       criterion_oracles},
      {10, "verify-paper quick deterministic runs are byte-identical", 120.0,
       criterion_determinism},
  };

  bool all_pass = true;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string failure;
    try {
      failure = c.body();
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (failure.empty() && seconds > c.limit_seconds)
      failure = "exceeded the " + std::to_string(c.limit_seconds) + "s target";
    bool pass = failure.empty();
    all_pass = all_pass && pass;
    std::printf("criterion %2d: %s (%.2fs) %s%s%s\n", c.number,
                pass ? "PASS" : "FAIL", seconds, c.description.c_str(),
                pass ? "" : " -- ", failure.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
