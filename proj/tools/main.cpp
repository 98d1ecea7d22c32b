// cheqlab: build the chequered/Medvedev frame families, model-check
// intuitionistic formulas over them, search and verify p-morphisms, and run
// the desk-scale verification suite.
//
// Exit codes: 0 the queried property holds, 1 it definitively fails (witness
// printed), 2 usage/parse/IO error, 3 search budget exhausted.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cheqlab/formula.hpp"
#include "cheqlab/frame_io.hpp"
#include "cheqlab/frames.hpp"
#include "cheqlab/morphism.hpp"
#include "cheqlab/paper_checks.hpp"
#include "cheqlab/semantics.hpp"

namespace {

using namespace cheqlab;

uint64_t default_budget() {
  if (const char* env = std::getenv("CHEQLAB_BUDGET")) {
    try {
      unsigned long long v = std::stoull(env);
      if (v > 0) return v;
    } catch (...) {
      // fall through to the built-in default
    }
  }
  return kDefaultSearchBudget;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw IoError("cannot write " + out_path);
    f << text;
  }
}

int cmd_build(const std::string& family, int n, const std::string& out) {
  FrameDocument doc;
  if (family == "fork") {
    doc = {"fork", cheqlab::fork()};
  } else if (family == "h") {
    doc = {"h", frame_h()};
  } else if (family == "cheq") {
    doc = {"cheq-" + std::to_string(n), chequered(n)};
  } else {
    doc = {"medvedev-" + std::to_string(n), medvedev(n)};
  }
  std::string counts = "points=" + std::to_string(doc.frame.size()) +
                       " covers=" +
                       std::to_string(doc.frame.cover_pairs().size()) + "\n";
  if (out.empty()) {
    std::cout << frame_document_to_json(doc);
    std::cerr << counts;
  } else {
    save_frame(doc, out);
    std::cout << counts;
  }
  return 0;
}

int cmd_check(const std::string& frame_path, const std::string& formula_text,
              uint64_t budget, bool deterministic) {
  FrameDocument doc = load_frame(frame_path);
  Formula f = parse_formula(formula_text);
  ValidityResult r =
      check_validity(doc.frame, f, {budget, deterministic, 0});
  if (r.valid) {
    std::cout << "valid on " << doc.name << " (" << doc.frame.size()
              << " points)\n";
    return 0;
  }
  std::cout << "countermodel\n";
  std::cout << "  point: " << doc.frame.label(r.countermodel->point) << "\n";
  for (const auto& name : variables(f)) {
    const UpSet* u = r.countermodel->valuation.find(name);
    if (u) std::cout << "  " << name << " = " << u->to_string() << "\n";
  }
  return 1;
}

int cmd_morphism(const std::string& src_path, const std::string& dst_path,
                 bool onto, bool deterministic, uint64_t budget,
                 const std::string& map_path, const std::string& out) {
  FrameDocument src = load_frame(src_path);
  FrameDocument dst = load_frame(dst_path);

  if (!map_path.empty()) {
    std::vector<int> map =
        load_point_map(map_path, src.frame.size(), dst.frame.size());
    PointMap pm{src.frame, dst.frame, std::move(map)};
    MorphismReport rep = check_p_morphism(pm, onto);
    if (rep.ok) {
      std::cout << "map verified: p-morphism" << (onto ? " (onto)" : "")
                << "\n";
      return 0;
    }
    std::cout << "map rejected with " << rep.violations.size()
              << " violation(s)\n";
    for (const auto& v : rep.violations)
      std::cout << "  " << describe(v, pm) << "\n";
    return 1;
  }

  auto found = search_p_morphism(src.frame, dst.frame, onto, deterministic,
                                 budget);
  if (!found) {
    std::cout << "no " << (onto ? "onto " : "") << "p-morphism from "
              << src.name << " to " << dst.name << " (definitive)\n";
    return 1;
  }
  std::cout << "p-morphism found" << (onto ? " (onto)" : "") << "\n";
  for (int x = 0; x < src.frame.size(); ++x)
    std::cout << "  " << src.frame.label(x) << " -> "
              << dst.frame.label(found->map[x]) << "\n";
  if (!out.empty()) save_point_map(found->map, out);
  return 0;
}

int cmd_export_dot(const std::string& frame_path, const std::string& out) {
  FrameDocument doc = load_frame(frame_path);
  emit(export_dot(doc), out);
  return 0;
}

int cmd_verify_paper(const std::string& profile, bool deterministic,
                     uint64_t budget, bool as_json, const std::string& out) {
  VerifyOptions opts;
  opts.full = profile == "full";
  opts.deterministic = deterministic;
  opts.budget = budget;
  VerificationReport report = run_paper_checks(opts);
  if (as_json)
    std::cout << report_to_json(report);
  else
    std::cout << report_to_table(report);
  if (!out.empty()) emit(report_to_json(report), out);
  return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite Kripke-frame laboratory for the chequered and Medvedev families"};
  app.require_subcommand(1);

  uint64_t budget = default_budget();
  bool deterministic = false;
  std::string out_path;

  std::string family;
  int n = 1;
  auto* build = app.add_subcommand("build", "construct a frame and write it as JSON");
  build->add_option("family", family, "cheq | medvedev | fork | h")
      ->required()
      ->check(CLI::IsMember({"cheq", "medvedev", "fork", "h"}));
  build->add_option("n", n, "family index (ignored for fork and h)");
  build->add_option("--out", out_path, "output path (default: stdout)");

  std::string frame_path, formula_text;
  auto* check = app.add_subcommand("check", "check a formula for validity on a frame");
  check->add_option("frame", frame_path, "frame JSON path")->required();
  check->add_option("formula", formula_text,
                    "formula text (sa, kp, wem expand to the axioms)")
      ->required();
  check->add_option("--budget", budget, "valuation-space budget");
  check->add_flag("--deterministic", deterministic,
                  "sequential canonical search order");

  std::string src_path, dst_path, map_path;
  bool onto = false;
  auto* morphism = app.add_subcommand(
      "morphism", "search for a p-morphism between two frames, or verify one");
  morphism->add_option("source", src_path, "source frame JSON path")->required();
  morphism->add_option("target", dst_path, "target frame JSON path")->required();
  morphism->add_flag("--onto", onto, "require surjectivity");
  morphism->add_flag("--deterministic", deterministic,
                     "sequential canonical search order");
  morphism->add_option("--budget", budget, "node budget for the search");
  morphism->add_option("--map", map_path, "verify this map file instead of searching");
  morphism->add_option("--out", out_path, "write the found map as JSON");

  auto* export_dot_cmd =
      app.add_subcommand("export-dot", "emit the Hasse diagram as DOT");
  export_dot_cmd->add_option("frame", frame_path, "frame JSON path")->required();
  export_dot_cmd->add_option("--out", out_path, "output path (default: stdout)");

  std::string profile = "quick";
  bool as_json = false;
  auto* verify = app.add_subcommand(
      "verify-paper", "re-verify the library's theorem suite at desk scale");
  verify->add_option("--profile", profile, "quick | full")
      ->check(CLI::IsMember({"quick", "full"}));
  verify->add_flag("--deterministic", deterministic,
                   "sequential canonical order inside every check");
  verify->add_option("--budget", budget, "search budget for the heavy checks");
  verify->add_flag("--json", as_json, "print the JSON report instead of the table");
  verify->add_option("--out", out_path, "also write the JSON report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (build->parsed()) return cmd_build(family, n, out_path);
    if (check->parsed())
      return cmd_check(frame_path, formula_text, budget, deterministic);
    if (morphism->parsed())
      return cmd_morphism(src_path, dst_path, onto, deterministic, budget,
                          map_path, out_path);
    if (export_dot_cmd->parsed()) return cmd_export_dot(frame_path, out_path);
    if (verify->parsed())
      return cmd_verify_paper(profile, deterministic, budget, as_json, out_path);
  } catch (const SearchBudgetError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 3;
  } catch (const SizeGuardError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
