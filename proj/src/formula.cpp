#include "awmc/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <utility>

namespace awmc {

Formula Formula::top() {
  static const Formula t = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Top;
    n->depth = 0;
    return Formula(std::move(n));
  }();
  return t;
}

Formula Formula::atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->depth = 0;
  n->sym = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->depth = f.depth() + 1;
  n->lhs = std::move(f);
  return Formula(std::move(n));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->depth = std::max(lhs.depth(), rhs.depth()) + 1;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Formula(std::move(n));
}

Formula Formula::knows(std::string agent, Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Knows;
  n->depth = f.depth() + 1;
  n->sym = std::move(agent);
  n->lhs = std::move(f);
  return Formula(std::move(n));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return negation(conjunction(negation(std::move(lhs)), negation(std::move(rhs))));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return disjunction(negation(std::move(lhs)), std::move(rhs));
}

Formula Formula::equivalence(Formula lhs, Formula rhs) {
  return conjunction(implication(lhs, rhs), implication(rhs, lhs));
}

Formula Formula::aware(std::string agent, Formula f) {
  Formula kf = knows(agent, f);
  Formula inner = negation(knows(agent, std::move(f)));
  Formula knk = knows(std::move(agent), std::move(inner));
  return disjunction(std::move(kf), std::move(knk));
}

Formula Formula::unaware(std::string agent, Formula f) {
  return negation(aware(std::move(agent), std::move(f)));
}

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (is_null() || o.is_null()) return false;
  if (node_->kind != o.node_->kind || node_->depth != o.node_->depth ||
      node_->sym != o.node_->sym)
    return false;
  switch (node_->kind) {
    case Kind::Top:
    case Kind::Atom:
      return true;
    case Kind::Not:
    case Kind::Knows:
      return node_->lhs == o.node_->lhs;
    case Kind::And:
      return node_->lhs == o.node_->lhs && node_->rhs == o.node_->rhs;
  }
  return false;
}

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      return;
    case Formula::Kind::Atom:
      out.insert(f.symbol());
      return;
    case Formula::Kind::Not:
    case Formula::Kind::Knows:
      collect_atoms(f.lhs(), out);
      return;
    case Formula::Kind::And:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
      return;
  }
}

void print_into(const Formula& f, std::string& out) {
  auto wrapped = [&out](const Formula& g) {
    // Only And binds looser than the unary operators.
    if (g.kind() == Formula::Kind::And) {
      out += '(';
      print_into(g, out);
      out += ')';
    } else {
      print_into(g, out);
    }
  };
  switch (f.kind()) {
    case Formula::Kind::Top:
      out += "top";
      return;
    case Formula::Kind::Atom:
      out += f.symbol();
      return;
    case Formula::Kind::Not:
      out += '!';
      wrapped(f.lhs());
      return;
    case Formula::Kind::Knows:
      out += "K{";
      out += f.symbol();
      out += '}';
      wrapped(f.lhs());
      return;
    case Formula::Kind::And:
      // Left-associative: the left child never needs parentheses, the right
      // child does when it is itself a conjunction.
      print_into(f.lhs(), out);
      out += " & ";
      wrapped(f.rhs());
      return;
  }
}

}  // namespace

std::vector<std::string> Formula::atoms() const {
  std::set<std::string> s;
  collect_atoms(*this, s);
  return {s.begin(), s.end()};
}

std::string Formula::to_string() const {
  std::string out;
  print_into(*this, out);
  return out;
}

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

ParseError::ParseError(std::string msg, std::size_t off, std::vector<std::string> exp)
    : std::runtime_error(std::move(msg)), offset(off), expected(std::move(exp)) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula run() {
    Formula f = parse_implies();
    skip_ws();
    if (pos_ != text_.size()) {
      fail("unexpected input after formula", {"end of input", "'&'", "'|'", "'->'"});
    }
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
    std::sort(expected.begin(), expected.end());
    std::ostringstream msg;
    msg << "parse error at offset " << pos_ << ": " << what << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg << (i + 1 == expected.size() ? " or " : ", ");
      msg << expected[i];
    }
    msg << ")";
    throw ParseError(msg.str(), pos_, std::move(expected));
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ == text_.size();
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool eat(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool eat_arrow() {
    skip_ws();
    if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
      pos_ += 2;
      return true;
    }
    return false;
  }

  std::string read_identifier(const char* role) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (pos_ == start || !std::isalpha(static_cast<unsigned char>(text_[start]))) {
      pos_ = start;
      fail(std::string("expected ") + role, {role});
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  // phi -> or_phi ("->" phi)?        right-associative
  Formula parse_implies() {
    Formula lhs = parse_or();
    if (eat_arrow()) return Formula::implication(std::move(lhs), parse_implies());
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (true) {
      skip_ws();
      if (peek() == '|') {
        ++pos_;
        f = Formula::disjunction(std::move(f), parse_and());
      } else {
        return f;
      }
    }
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (true) {
      skip_ws();
      if (peek() == '&') {
        ++pos_;
        f = Formula::conjunction(std::move(f), parse_unary());
      } else {
        return f;
      }
    }
  }

  Formula parse_unary() {
    skip_ws();
    if (at_end()) fail("formula ended early", formula_expectations());
    char c = peek();
    if (c == '!') {
      ++pos_;
      return Formula::negation(parse_unary());
    }
    if ((c == 'K' || c == 'A' || c == 'U') && pos_ + 1 < text_.size() &&
        text_[pos_ + 1] == '{') {
      ++pos_;  // operator letter
      ++pos_;  // '{'
      std::string agent = read_identifier("agent name");
      if (!eat('}')) fail("unterminated agent reference", {"'}'"});
      Formula body = parse_unary();
      switch (c) {
        case 'K': return Formula::knows(std::move(agent), std::move(body));
        case 'A': return Formula::aware(std::move(agent), std::move(body));
        default: return Formula::unaware(std::move(agent), std::move(body));
      }
    }
    if (c == '(') {
      ++pos_;
      Formula f = parse_implies();
      if (!eat(')')) fail("unbalanced parentheses", {"')'"});
      return f;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string name = read_identifier("atom name");
      if (name == "top") return Formula::top();
      return Formula::atom(std::move(name));
    }
    fail("unexpected character", formula_expectations());
  }

  static std::vector<std::string> formula_expectations() {
    return {"'top'", "atom name", "'!'", "'K{'", "'A{'", "'U{'", "'('"};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).run(); }

std::vector<Formula> enumerate_formulas(std::vector<std::string> atoms,
                                        std::vector<std::string> agents,
                                        int max_depth) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  std::sort(agents.begin(), agents.end());
  agents.erase(std::unique(agents.begin(), agents.end()), agents.end());

  std::vector<Formula> all;    // depth <= d so far
  std::vector<Formula> layer;  // depth == d exactly
  layer.push_back(Formula::top());
  for (const auto& a : atoms) layer.push_back(Formula::atom(a));
  all = layer;

  for (int d = 1; d <= max_depth; ++d) {
    std::vector<Formula> next;
    for (const Formula& f : layer) next.push_back(Formula::negation(f));
    std::size_t small = all.size() - layer.size();  // formulas of depth <= d-2
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = 0; j < all.size(); ++j) {
        if (i < small && j < small) continue;  // both too shallow for depth d
        next.push_back(Formula::conjunction(all[i], all[j]));
      }
    }
    for (const auto& a : agents) {
      for (const Formula& f : layer) next.push_back(Formula::knows(a, f));
    }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return all;
}

}  // namespace awmc
