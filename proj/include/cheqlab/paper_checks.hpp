#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cheqlab/poset.hpp"

namespace cheqlab {

enum class CheckStatus { kPass, kFail, kSkipped };

struct CheckResult {
  std::string check_id;
  std::string theorem_ref;
  CheckStatus status = CheckStatus::kFail;
  std::string witness;  // witness or counterexample, human-readable
  double elapsed_ms = 0.0;
};

struct VerificationReport {
  std::string profile;  // "quick" | "full"
  bool all_pass = false;
  std::vector<CheckResult> checks;
};

struct VerifyOptions {
  bool full = false;
  bool deterministic = true;
  uint64_t budget = kDefaultSearchBudget;
};

// Runs the fixed desk-scale check list: frame sizes, the disjunction-property
// embeddings, Scott-axiom validity plus the shared-top lemma, the
// Kreisel-Putnam countermodel, the canonical reductions with their structural
// lemmas, the reducibility negatives with the wem countermodel, the frame-H
// suite, and the oracle equivalences. The quick profile marks the heavy
// instances (reduction at 2187 points, the 63-point searches) as skipped.
VerificationReport run_paper_checks(const VerifyOptions& opts = {});

// Canonical JSON rendering (stable modulo the elapsed_ms fields).
std::string report_to_json(const VerificationReport& report);

// Fixed-width text table, one line per check plus a summary line.
std::string report_to_table(const VerificationReport& report);

const char* to_string(CheckStatus s);

}  // namespace cheqlab
