#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "cheqlab/formula.hpp"
#include "cheqlab/poset.hpp"

namespace cheqlab {

// Assignment of an upset to each propositional variable, all bound to one
// poset. Upward closure of the values is what makes forcing persistent.
class Valuation {
 public:
  explicit Valuation(Poset p) : poset_(std::move(p)) {}

  void set(std::string name, UpSet value);
  const UpSet* find(std::string_view name) const;
  const std::map<std::string, UpSet, std::less<>>& entries() const {
    return entries_;
  }
  const Poset& poset() const { return poset_; }

 private:
  Poset poset_;
  std::map<std::string, UpSet, std::less<>> entries_;
};

struct Countermodel {
  Valuation valuation;
  int point;
};

struct ValidityResult {
  bool valid = false;
  std::optional<Countermodel> countermodel;
};

struct ValidityOptions {
  // Limit on both the upset count and the valuation-space size |Up|^k.
  uint64_t budget = kDefaultSearchBudget;
  // Sequential canonical order; countermodel identity is stable across runs.
  bool deterministic = true;
  // Worker threads in non-deterministic mode; 0 picks a hardware default.
  unsigned workers = 0;
};

// Kripke forcing at one point. Var: membership; bottom: never; and/or:
// componentwise; a -> b: every successor forcing a forces b. Each subformula's
// truth set is computed once per evaluation over the whole frame.
bool forces(const Poset& p, const Valuation& v, int point, const Formula& f);

// The set of points forcing f (always upward closed).
UpSet truth_set(const Poset& p, const Valuation& v, const Formula& f);

// Single-instance re-check used by countermodel verification.
bool check_validity_at(const Poset& p, const Formula& f, const Valuation& v,
                       int point);

// Valid iff f is forced at every point under every assignment of upsets to
// its variables. Otherwise the canonically first countermodel (deterministic
// mode): valuations enumerated lexicographically in the canonical upset order
// with variables in first-occurrence order, failing points scanned root-first.
// SearchBudgetError carries the estimated |Up|^k space when over budget.
ValidityResult check_validity(const Poset& p, const Formula& f,
                              const ValidityOptions& opts = {});

}  // namespace cheqlab
