#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace evlogic {

enum class Op { atom, negation, implication, attain, know };

/// Immutable formula over atoms, negation, implication, attainable
/// knowledge ([.]) and knowledge ([]). Copies share structure.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula negation(Formula child);
  static Formula implies(Formula left, Formula right);
  static Formula attain(Formula child);
  static Formula know(Formula child);

  // Derived connectives, desugared into the five core constructors.
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);

  Op op() const;
  bool is(Op o) const { return op() == o; }
  bool is_modal() const { return is(Op::attain) || is(Op::know); }

  /// Atom name; empty for compound formulas.
  const std::string& name() const;
  /// Operand of a unary node.
  const Formula& child() const;
  const Formula& left() const;
  const Formula& right() const;

  std::size_t hash() const;
  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Total order used for canonical containers; consistent with ==.
bool structural_less(const Formula& a, const Formula& b);

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

bool is_identifier(std::string_view s);

Formula parse(std::string_view text);
std::string print(const Formula& f);

std::size_t modal_depth(const Formula& f);
std::set<std::string> atoms(const Formula& f);

/// Replaces each atom for which `map` returns a formula.
Formula substitute(const Formula& f,
                   const std::function<std::optional<Formula>(const std::string&)>& map);

}  // namespace evlogic
