#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cheqlab/errors.hpp"

namespace cheqlab {

// Propositional intuitionistic formula over ->, &, |, false. Negation is
// notation: ~f is stored as f -> false, and the printer restores the sugar.
// Values are immutable trees behind shared nodes; copying is cheap.
class Formula {
 public:
  enum class Kind { kVar, kBottom, kAnd, kOr, kImplies };

  static Formula var(std::string name);
  static Formula bottom();
  static Formula top();  // false -> false
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula implies(Formula l, Formula r);
  static Formula negate(Formula f);

  Kind kind() const;
  const std::string& var_name() const;  // kVar only
  Formula left() const;                 // binary nodes
  Formula right() const;
  bool is_negation() const;  // Implies(_, Bottom)

  bool operator==(const Formula& o) const;  // structural
  bool operator!=(const Formula& o) const { return !(*this == o); }

  // Node identity, stable for the lifetime of the tree; memo-table key.
  const void* id() const;

  struct Node;

 private:
  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// Grammar: `~` binds tightest, then `&`, then `|`, then right-associative
// `->`; parentheses; `false` for bottom; variables match [a-z][a-z0-9_]*.
// The names sa, kp, wem expand to the named axioms. The Unicode connectives
// from the displays are accepted as input aliases for ~ & | ->.
Formula parse_formula(std::string_view text);

// Minimal-parenthesis rendering; parse_formula(print_formula(f)) == f.
std::string print_formula(const Formula& f);

// Distinct variables in first-occurrence order.
std::vector<std::string> variables(const Formula& f);

// sa  = ((~~p -> p) -> (p | ~p)) -> (~p | ~~p)
// kp  = (~p -> q | r) -> (~p -> q) | (~p -> r)
// wem = ~p | ~~p
Formula axiom(std::string_view name);

}  // namespace cheqlab
