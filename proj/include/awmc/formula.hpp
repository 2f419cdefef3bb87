#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace awmc {

/// Immutable formula of the knowledge-and-awareness language. Construction
/// normalizes eagerly: surface sugar (disjunction, implication, awareness,
/// unawareness) is expanded at build time, so every Formula consists of
/// Top / Atom / Not / And / Knows only.
///
/// Awareness is derived, not primitive:
///   aware(a, f)   = K_a f  or  K_a not K_a f
///   unaware(a, f) = not aware(a, f)
class Formula {
 public:
  enum class Kind : unsigned char { Top, Atom, Not, And, Knows };

  static Formula top();
  static Formula atom(std::string name);
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula knows(std::string agent, Formula f);

  // Sugar; normalizes into the core connectives.
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula equivalence(Formula lhs, Formula rhs);
  static Formula aware(std::string agent, Formula f);
  static Formula unaware(std::string agent, Formula f);

  Kind kind() const;
  /// Atom name (Kind::Atom) or agent name (Kind::Knows).
  const std::string& symbol() const;
  /// Operand of Not / Knows, left operand of And.
  const Formula& lhs() const;
  /// Right operand of And.
  const Formula& rhs() const;

  /// AST depth; leaves have depth 0.
  int depth() const;

  /// Sorted set of atom names occurring as subformulas.
  std::vector<std::string> atoms() const;

  /// Prints in the concrete grammar with minimal parentheses; parsing the
  /// result yields the identical formula.
  std::string to_string() const;

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

 private:
  struct Node;

  Formula() = default;  // empty slot inside leaf nodes only
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  bool is_null() const { return node_ == nullptr; }

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Kind kind;
  int depth;
  std::string sym;
  Formula lhs;
  Formula rhs;
};

inline Formula::Kind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::symbol() const { return node_->sym; }
inline const Formula& Formula::lhs() const { return node_->lhs; }
inline const Formula& Formula::rhs() const { return node_->rhs; }
inline int Formula::depth() const { return node_->depth; }

/// Thrown by parse_formula; carries the byte offset of the failure and the
/// set of token descriptions that would have been accepted there.
struct ParseError : std::runtime_error {
  ParseError(std::string msg, std::size_t offset, std::vector<std::string> expected);
  std::size_t offset;
  std::vector<std::string> expected;
};

/// Parses the concrete grammar
///   phi ::= "top" | ATOM | "!" phi | "K{" AGENT "}" phi | "A{" AGENT "}" phi
///         | "U{" AGENT "}" phi | phi "&" phi | phi "|" phi | phi "->" phi
///         | "(" phi ")"
/// Unary operators bind tightest, "&" over "|", "|" over "->"; "->" is
/// right-associative, "&" and "|" left-associative. The result is normalized.
Formula parse_formula(std::string_view text);

/// All normalized formulas of AST depth <= max_depth over the given atom and
/// agent names, each exactly once, in a deterministic order: depth layer by
/// depth layer, and within a layer negations, then conjunctions, then
/// knowledge formulas per agent. Inputs are sorted internally.
std::vector<Formula> enumerate_formulas(std::vector<std::string> atoms,
                                        std::vector<std::string> agents,
                                        int max_depth);

/// True for names matching [a-zA-Z][a-zA-Z0-9_]*.
bool is_identifier(std::string_view name);

}  // namespace awmc
