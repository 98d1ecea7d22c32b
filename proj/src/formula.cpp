#include "cheqlab/formula.hpp"

#include <unordered_set>

namespace cheqlab {

struct Formula::Node {
  Kind kind;
  std::string name;
  std::shared_ptr<const Node> l, r;
};

Formula Formula::var(std::string name) {
  if (name.empty() || name[0] < 'a' || name[0] > 'z')
    throw Error("variable names match [a-z][a-z0-9_]*");
  for (char c : name)
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'))
      throw Error("variable names match [a-z][a-z0-9_]*");
  return Formula(std::make_shared<Node>(Node{Kind::kVar, std::move(name), {}, {}}));
}

Formula Formula::bottom() {
  return Formula(std::make_shared<Node>(Node{Kind::kBottom, {}, {}, {}}));
}

Formula Formula::top() { return implies(bottom(), bottom()); }

Formula Formula::conj(Formula l, Formula r) {
  return Formula(std::make_shared<Node>(
      Node{Kind::kAnd, {}, std::move(l.n_), std::move(r.n_)}));
}

Formula Formula::disj(Formula l, Formula r) {
  return Formula(std::make_shared<Node>(
      Node{Kind::kOr, {}, std::move(l.n_), std::move(r.n_)}));
}

Formula Formula::implies(Formula l, Formula r) {
  return Formula(std::make_shared<Node>(
      Node{Kind::kImplies, {}, std::move(l.n_), std::move(r.n_)}));
}

Formula Formula::negate(Formula f) { return implies(std::move(f), bottom()); }

Formula::Kind Formula::kind() const { return n_->kind; }

const std::string& Formula::var_name() const {
  if (n_->kind != Kind::kVar) throw Error("not a variable node");
  return n_->name;
}

Formula Formula::left() const {
  if (!n_->l) throw Error("node has no left child");
  return Formula(n_->l);
}

Formula Formula::right() const {
  if (!n_->r) throw Error("node has no right child");
  return Formula(n_->r);
}

bool Formula::is_negation() const {
  return n_->kind == Kind::kImplies && n_->r->kind == Kind::kBottom;
}

static bool node_equal(const Formula::Node* a, const Formula::Node* b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::kVar:
      return a->name == b->name;
    case Formula::Kind::kBottom:
      return true;
    default:
      return node_equal(a->l.get(), b->l.get()) &&
             node_equal(a->r.get(), b->r.get());
  }
}

bool Formula::operator==(const Formula& o) const {
  return node_equal(n_.get(), o.n_.get());
}

const void* Formula::id() const { return n_.get(); }

// ---- parser ----

namespace {

enum class Tok { kIdent, kFalse, kNot, kAnd, kOr, kArrow, kLParen, kRParen, kEnd };

struct Token {
  Tok type;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() &&
           (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r'))
      ++i_;
    std::size_t start = i_;
    if (i_ >= s_.size()) {
      tok_ = {Tok::kEnd, "", start};
      return;
    }
    char c = s_[i_];
    auto starts_with = [&](std::string_view pat) {
      return s_.substr(i_).substr(0, pat.size()) == pat;
    };
    if (c == '(') {
      ++i_;
      tok_ = {Tok::kLParen, "(", start};
    } else if (c == ')') {
      ++i_;
      tok_ = {Tok::kRParen, ")", start};
    } else if (c == '~') {
      ++i_;
      tok_ = {Tok::kNot, "~", start};
    } else if (c == '&') {
      ++i_;
      tok_ = {Tok::kAnd, "&", start};
    } else if (c == '|') {
      ++i_;
      tok_ = {Tok::kOr, "|", start};
    } else if (c == '-') {
      if (i_ + 1 < s_.size() && s_[i_ + 1] == '>') {
        i_ += 2;
        tok_ = {Tok::kArrow, "->", start};
      } else {
        throw ParseError(start, "'->'");
      }
    } else if (starts_with("¬")) {  // ¬
      i_ += 2;
      tok_ = {Tok::kNot, "~", start};
    } else if (starts_with("∧")) {  // ∧
      i_ += 3;
      tok_ = {Tok::kAnd, "&", start};
    } else if (starts_with("∨")) {  // ∨
      i_ += 3;
      tok_ = {Tok::kOr, "|", start};
    } else if (starts_with("→")) {  // →
      i_ += 3;
      tok_ = {Tok::kArrow, "->", start};
    } else if (c >= 'a' && c <= 'z') {
      std::size_t j = i_;
      while (j < s_.size() &&
             ((s_[j] >= 'a' && s_[j] <= 'z') || (s_[j] >= '0' && s_[j] <= '9') ||
              s_[j] == '_'))
        ++j;
      std::string text(s_.substr(i_, j - i_));
      i_ = j;
      tok_ = {text == "false" ? Tok::kFalse : Tok::kIdent, std::move(text), start};
    } else {
      throw ParseError(start, "a formula");
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : lex_(s) {}

  Formula run() {
    Formula f = implication();
    if (lex_.peek().type != Tok::kEnd)
      throw ParseError(lex_.peek().pos, "end of input");
    return f;
  }

 private:
  Formula implication() {
    Formula l = disjunction();
    if (lex_.peek().type == Tok::kArrow) {
      lex_.take();
      return Formula::implies(std::move(l), implication());
    }
    return l;
  }

  Formula disjunction() {
    Formula l = conjunction();
    while (lex_.peek().type == Tok::kOr) {
      lex_.take();
      l = Formula::disj(std::move(l), conjunction());
    }
    return l;
  }

  Formula conjunction() {
    Formula l = unary();
    while (lex_.peek().type == Tok::kAnd) {
      lex_.take();
      l = Formula::conj(std::move(l), unary());
    }
    return l;
  }

  Formula unary() {
    if (lex_.peek().type == Tok::kNot) {
      lex_.take();
      return Formula::negate(unary());
    }
    return atom();
  }

  Formula atom() {
    Token t = lex_.peek();
    switch (t.type) {
      case Tok::kLParen: {
        lex_.take();
        Formula f = implication();
        if (lex_.peek().type != Tok::kRParen)
          throw ParseError(lex_.peek().pos, "')'");
        lex_.take();
        return f;
      }
      case Tok::kFalse:
        lex_.take();
        return Formula::bottom();
      case Tok::kIdent: {
        lex_.take();
        if (t.text == "sa" || t.text == "kp" || t.text == "wem")
          return axiom(t.text);
        return Formula::var(t.text);
      }
      default:
        throw ParseError(t.pos, "a formula");
    }
  }

  Lexer lex_;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).run(); }

namespace {

// precedence: -> 1, | 2, & 3, ~/atoms 4
void render(const Formula& f, int min_prec, std::string& out) {
  if (f.is_negation()) {
    out += "~";
    render(f.left(), 4, out);
    return;
  }
  switch (f.kind()) {
    case Formula::Kind::kVar:
      out += f.var_name();
      return;
    case Formula::Kind::kBottom:
      out += "false";
      return;
    case Formula::Kind::kAnd: {
      bool paren = min_prec > 3;
      if (paren) out += "(";
      render(f.left(), 3, out);
      out += " & ";
      render(f.right(), 4, out);
      if (paren) out += ")";
      return;
    }
    case Formula::Kind::kOr: {
      bool paren = min_prec > 2;
      if (paren) out += "(";
      render(f.left(), 2, out);
      out += " | ";
      render(f.right(), 3, out);
      if (paren) out += ")";
      return;
    }
    case Formula::Kind::kImplies: {
      bool paren = min_prec > 1;
      if (paren) out += "(";
      render(f.left(), 2, out);
      out += " -> ";
      render(f.right(), 1, out);
      if (paren) out += ")";
      return;
    }
  }
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  render(f, 1, out);
  return out;
}

static void collect_vars(const Formula& f, std::vector<std::string>& out,
                         std::unordered_set<std::string>& seen) {
  switch (f.kind()) {
    case Formula::Kind::kVar:
      if (seen.insert(f.var_name()).second) out.push_back(f.var_name());
      return;
    case Formula::Kind::kBottom:
      return;
    default:
      collect_vars(f.left(), out, seen);
      collect_vars(f.right(), out, seen);
      return;
  }
}

std::vector<std::string> variables(const Formula& f) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  collect_vars(f, out, seen);
  return out;
}

Formula axiom(std::string_view name) {
  using F = Formula;
  if (name == "sa") {
    F p = F::var("p");
    F np = F::negate(p);
    F nnp = F::negate(np);
    return F::implies(F::implies(F::implies(nnp, p), F::disj(p, np)),
                      F::disj(np, nnp));
  }
  if (name == "kp") {
    F p = F::var("p");
    F q = F::var("q");
    F r = F::var("r");
    F np = F::negate(p);
    return F::implies(F::implies(np, F::disj(q, r)),
                      F::disj(F::implies(np, q), F::implies(np, r)));
  }
  if (name == "wem") {
    F p = F::var("p");
    F np = F::negate(p);
    return F::disj(np, F::negate(np));
  }
  throw UnknownAxiomError("unknown axiom: " + std::string(name));
}

}  // namespace cheqlab
