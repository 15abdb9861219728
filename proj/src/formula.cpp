#include "evlogic/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace evlogic {

struct Formula::Node {
  Op op;
  std::string name;
  std::optional<Formula> a;
  std::optional<Formula> b;
  std::size_t hash;
  std::size_t size;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s.front())) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || digit(c); });
}

Formula Formula::atom(std::string name) {
  if (!is_identifier(name)) throw std::invalid_argument("invalid atom name '" + name + "'");
  auto h = mix(std::hash<std::string>{}(name), 0);
  return Formula(std::make_shared<const Node>(Node{Op::atom, std::move(name), std::nullopt, std::nullopt, h, 1}));
}

Formula Formula::negation(Formula child) {
  auto h = mix(child.hash(), 1);
  auto n = child.size() + 1;
  return Formula(std::make_shared<const Node>(Node{Op::negation, {}, std::move(child), std::nullopt, h, n}));
}

Formula Formula::implies(Formula left, Formula right) {
  auto h = mix(mix(left.hash(), 2), right.hash());
  auto n = left.size() + right.size() + 1;
  return Formula(std::make_shared<const Node>(
      Node{Op::implication, {}, std::move(left), std::move(right), h, n}));
}

Formula Formula::attain(Formula child) {
  auto h = mix(child.hash(), 3);
  auto n = child.size() + 1;
  return Formula(std::make_shared<const Node>(Node{Op::attain, {}, std::move(child), std::nullopt, h, n}));
}

Formula Formula::know(Formula child) {
  auto h = mix(child.hash(), 4);
  auto n = child.size() + 1;
  return Formula(std::make_shared<const Node>(Node{Op::know, {}, std::move(child), std::nullopt, h, n}));
}

// a & b == !(a -> !b)
Formula Formula::conj(Formula a, Formula b) {
  return negation(implies(std::move(a), negation(std::move(b))));
}

// a | b == !a -> b
Formula Formula::disj(Formula a, Formula b) {
  return implies(negation(std::move(a)), std::move(b));
}

Formula Formula::iff(Formula a, Formula b) {
  return conj(implies(a, b), implies(b, a));
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
std::size_t Formula::hash() const { return node_->hash; }
std::size_t Formula::size() const { return node_->size; }

const Formula& Formula::child() const {
  if (node_->op == Op::atom || node_->op == Op::implication)
    throw std::logic_error("child() on non-unary formula");
  return *node_->a;
}

const Formula& Formula::left() const {
  if (node_->op != Op::implication) throw std::logic_error("left() on non-implication");
  return *node_->a;
}

const Formula& Formula::right() const {
  if (node_->op != Op::implication) throw std::logic_error("right() on non-implication");
  return *node_->b;
}

bool operator==(const Formula& x, const Formula& y) {
  if (x.node_ == y.node_) return true;
  if (x.hash() != y.hash() || x.size() != y.size() || x.op() != y.op()) return false;
  switch (x.op()) {
    case Op::atom:
      return x.name() == y.name();
    case Op::implication:
      return x.left() == y.left() && x.right() == y.right();
    default:
      return x.child() == y.child();
  }
}

bool structural_less(const Formula& a, const Formula& b) {
  if (a.op() != b.op()) return a.op() < b.op();
  switch (a.op()) {
    case Op::atom:
      return a.name() < b.name();
    case Op::implication:
      if (a.left() != b.left()) return structural_less(a.left(), b.left());
      return structural_less(a.right(), b.right());
    default:
      return structural_less(a.child(), b.child());
  }
}

std::string print(const Formula& f) {
  switch (f.op()) {
    case Op::atom:
      return f.name();
    case Op::negation:
      return "(!" + print(f.child()) + ")";
    case Op::implication:
      return "(" + print(f.left()) + " -> " + print(f.right()) + ")";
    case Op::attain:
      return "([.]" + print(f.child()) + ")";
    case Op::know:
      return "([]" + print(f.child()) + ")";
  }
  return {};
}

std::size_t modal_depth(const Formula& f) {
  switch (f.op()) {
    case Op::atom:
      return 0;
    case Op::implication:
      return std::max(modal_depth(f.left()), modal_depth(f.right()));
    case Op::negation:
      return modal_depth(f.child());
    default:
      return modal_depth(f.child()) + 1;
  }
}

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  switch (f.op()) {
    case Op::atom:
      out.insert(f.name());
      break;
    case Op::implication:
      collect_atoms(f.left(), out);
      collect_atoms(f.right(), out);
      break;
    default:
      collect_atoms(f.child(), out);
  }
}

}  // namespace

std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

Formula substitute(const Formula& f,
                   const std::function<std::optional<Formula>(const std::string&)>& map) {
  switch (f.op()) {
    case Op::atom:
      if (auto r = map(f.name())) return *r;
      return f;
    case Op::negation:
      return Formula::negation(substitute(f.child(), map));
    case Op::implication:
      return Formula::implies(substitute(f.left(), map), substitute(f.right(), map));
    case Op::attain:
      return Formula::attain(substitute(f.child(), map));
    case Op::know:
      return Formula::know(substitute(f.child(), map));
  }
  return f;
}

}  // namespace evlogic
