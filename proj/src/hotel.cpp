#include "evlogic/hotel.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "evlogic/errors.hpp"

namespace evlogic {

namespace {

constexpr std::array<RoomState, 2> states_one = {RoomState::occupied, RoomState::vacant};
constexpr std::array<RoomState, 3> states_two = {RoomState::occupied, RoomState::vacant, RoomState::infested};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

std::optional<RoomIndex> room_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  RoomIndex v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::string_view state_name(RoomState s) {
  switch (s) {
    case RoomState::occupied: return "occupied";
    case RoomState::vacant: return "vacant";
    case RoomState::infested: return "infested";
  }
  return "?";
}

std::optional<RoomState> state_from_name(std::string_view name) {
  for (auto s : states_two)
    if (state_name(s) == name) return s;
  return std::nullopt;
}

std::span<const RoomState> variant_states(HotelVariant v) {
  if (v == HotelVariant::one) return states_one;
  return states_two;
}

std::string_view variant_name(HotelVariant v) { return v == HotelVariant::one ? "I" : "II"; }

std::optional<HotelVariant> variant_from_name(std::string_view name) {
  if (name == "I" || name == "1") return HotelVariant::one;
  if (name == "II" || name == "2") return HotelVariant::two;
  return std::nullopt;
}

HotelWorld parse_world_literal(std::string_view text) {
  HotelWorld w;
  bool have_default = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = trim(text.substr(start, end - start));
    std::size_t column = start + 1;
    start = end + 1;
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected '<room>=<state>' or 'default=<state>'", 1, column);
    auto key = trim(item.substr(0, eq));
    auto value = trim(item.substr(eq + 1));
    auto state = state_from_name(value);
    if (!state) throw ParseError("unknown room state '" + std::string(value) + "'", 1, column);
    if (key == "default") {
      if (have_default) throw ParseError("default given twice", 1, column);
      w.default_state = *state;
      have_default = true;
      continue;
    }
    auto room = room_number(key);
    if (!room) throw ParseError("expected a room number, found '" + std::string(key) + "'", 1, column);
    if (!w.exceptions.emplace(*room, *state).second)
      throw ParseError("room " + std::to_string(*room) + " given twice", 1, column);
  }
  if (!have_default) throw ParseError("world literal lacks 'default=<state>'", 1, 1);
  return w;
}

std::string world_literal(const HotelWorld& w) {
  std::string out = "default=" + std::string(state_name(w.default_state));
  for (const auto& [room, s] : w.exceptions) out += "; " + std::to_string(room) + "=" + std::string(state_name(s));
  return out;
}

std::optional<std::string> validate_world(HotelVariant v, const HotelWorld& w) {
  auto states = variant_states(v);
  auto allowed = [&](RoomState s) { return std::find(states.begin(), states.end(), s) != states.end(); };
  if (!allowed(w.default_state))
    return "state '" + std::string(state_name(w.default_state)) + "' is not part of variant " +
           std::string(variant_name(v));
  bool occupied = w.default_state == RoomState::occupied;
  bool infested = w.default_state == RoomState::infested;
  for (const auto& [room, s] : w.exceptions) {
    if (!allowed(s))
      return "room " + std::to_string(room) + ": state '" + std::string(state_name(s)) +
             "' is not part of variant " + std::string(variant_name(v));
    if (s == w.default_state)
      return "room " + std::to_string(room) + " repeats the default state (non-canonical exception)";
    occupied |= s == RoomState::occupied;
    infested |= s == RoomState::infested;
  }
  if (occupied && infested) return "guests and bedbugs cannot coexist: an infested room evicts every guest";
  return std::nullopt;
}

HotelAtom parse_hotel_atom(std::string_view name, HotelVariant v) {
  auto fail = [&]() -> HotelAtom {
    throw ModelError("'" + std::string(name) + "' is not a hotel atom of variant " + std::string(variant_name(v)) +
                     " (expected exists_<state> or room_<index>_<state>)");
  };
  auto in_variant = [&](RoomState s) {
    auto states = variant_states(v);
    return std::find(states.begin(), states.end(), s) != states.end();
  };
  if (name.starts_with("exists_")) {
    auto s = state_from_name(name.substr(7));
    if (!s || !in_variant(*s)) return fail();
    return {HotelAtom::Kind::exists, *s, 0};
  }
  if (name.starts_with("room_")) {
    auto rest = name.substr(5);
    auto us = rest.find('_');
    if (us == std::string_view::npos) return fail();
    auto room = room_number(rest.substr(0, us));
    auto s = state_from_name(rest.substr(us + 1));
    if (!room || !s || !in_variant(*s)) return fail();
    return {HotelAtom::Kind::room, *s, *room};
  }
  return fail();
}

std::size_t default_cap(const Formula& f) {
  std::size_t exists = 0;
  for (const auto& a : atoms(f))
    if (a.starts_with("exists_")) ++exists;
  return modal_depth(f) + exists + 2;
}

struct HotelEvaluator::Impl {
  // A descriptor is (default state d, counts c) where c[s] counts unnamed
  // rooms in state s != d, saturated at the cap; c[d] = 0. Encoded as
  // d * lattice + sum_s c[s] * stride[s].
  struct Node {
    Op op;
    int a = -1;
    int b = -1;
    HotelAtom atom{};
  };

  struct Tables {
    std::vector<std::vector<char>> value;              // per node, per descriptor
    std::vector<std::vector<std::vector<char>>> cone;  // per node, per d', per count code
  };

  HotelVariant variant;
  Formula formula;
  std::size_t cap;
  std::vector<RoomState> states;
  std::size_t k;
  std::size_t base;
  std::size_t lattice;
  std::vector<std::size_t> stride;
  std::vector<RoomIndex> named;
  std::vector<Node> nodes;
  int root = -1;
  int occupied_index = -1;
  int infested_index = -1;

  mutable std::mutex mu;
  mutable std::map<std::vector<std::uint8_t>, std::shared_ptr<Tables>> cache;

  Impl(HotelVariant v, Formula f, std::size_t b) : variant(v), formula(std::move(f)), cap(b) {
    auto st = variant_states(v);
    states.assign(st.begin(), st.end());
    k = states.size();
    base = cap + 1;
    lattice = 1;
    for (std::size_t s = 0; s < k; ++s) {
      stride.push_back(lattice);
      lattice *= base;
    }
    for (std::size_t s = 0; s < k; ++s) {
      if (states[s] == RoomState::occupied) occupied_index = static_cast<int>(s);
      if (states[s] == RoomState::infested) infested_index = static_cast<int>(s);
    }
    std::unordered_map<Formula, int, FormulaHash> seen;
    root = flatten(formula, seen);
    std::sort(named.begin(), named.end());
    named.erase(std::unique(named.begin(), named.end()), named.end());
  }

  int flatten(const Formula& f, std::unordered_map<Formula, int, FormulaHash>& seen) {
    if (auto it = seen.find(f); it != seen.end()) return it->second;
    Node n{f.op()};
    switch (f.op()) {
      case Op::atom:
        n.atom = parse_hotel_atom(f.name(), variant);
        if (n.atom.kind == HotelAtom::Kind::room) named.push_back(n.atom.room);
        break;
      case Op::implication:
        n.a = flatten(f.left(), seen);
        n.b = flatten(f.right(), seen);
        break;
      default:
        n.a = flatten(f.child(), seen);
    }
    nodes.push_back(n);
    int id = static_cast<int>(nodes.size()) - 1;
    seen.emplace(f, id);
    return id;
  }

  std::size_t state_index(RoomState s) const {
    return static_cast<std::size_t>(std::find(states.begin(), states.end(), s) - states.begin());
  }

  std::size_t count(std::size_t code, std::size_t s) const { return (code / stride[s]) % base; }

  std::size_t saturating_add(std::size_t code, std::size_t s, std::size_t n) const {
    std::size_t c = count(code, s);
    std::size_t next = std::min(cap, c + n);
    return code + (next - c) * stride[s];
  }

  std::size_t project(std::size_t code, std::size_t d) const { return code - count(code, d) * stride[d]; }

  std::uint32_t present_mask(std::size_t d, std::size_t code, std::uint32_t sigma_mask) const {
    std::uint32_t m = sigma_mask | (1u << d);
    for (std::size_t s = 0; s < k; ++s)
      if (count(code, s) > 0) m |= 1u << s;
    return m;
  }

  bool admissible(std::size_t d, std::size_t code, std::uint32_t sigma_mask) const {
    if (occupied_index < 0 || infested_index < 0) return true;
    auto m = present_mask(d, code, sigma_mask);
    return !((m >> occupied_index) & 1u && (m >> infested_index) & 1u);
  }

  // U[code] = every admissible world (d, code + m), m >= 0 with m[d] = 0,
  // satisfies the node. Only codes with count(code, d) = 0 are meaningful.
  std::vector<char> make_cone(const std::vector<char>& value, std::size_t d, std::uint32_t sigma_mask) const {
    std::vector<char> u(lattice, 0);
    for (std::size_t code = lattice; code-- > 0;) {
      if (count(code, d) != 0) continue;
      bool ok = !admissible(d, code, sigma_mask) || value[d * lattice + code];
      for (std::size_t s = 0; ok && s < k; ++s)
        if (s != d && count(code, s) < cap) ok = u[code + stride[s]];
      u[code] = ok;
    }
    return u;
  }

  const std::vector<std::vector<char>>& cone(Tables& t, int node, std::uint32_t sigma_mask) const {
    auto& c = t.cone[node];
    if (c.empty())
      for (std::size_t d = 0; d < k; ++d) c.push_back(make_cone(t.value[node], d, sigma_mask));
    return c;
  }

  // Every world agreeing with the pinned rooms satisfies the node.
  bool universal(const std::vector<std::vector<char>>& u, std::size_t pinned) const {
    for (std::size_t d = 0; d < k; ++d)
      if (!u[d][project(pinned, d)]) return false;
    return true;
  }

  std::uint32_t sigma_mask_of(const std::vector<std::uint8_t>& sigma) const {
    std::uint32_t m = 0;
    for (auto s : sigma) m |= 1u << s;
    return m;
  }

  std::shared_ptr<Tables> tables(const std::vector<std::uint8_t>& sigma) const {
    if (auto it = cache.find(sigma); it != cache.end()) return it->second;
    auto t = std::make_shared<Tables>();
    const std::uint32_t sm = sigma_mask_of(sigma);
    const std::size_t total = k * lattice;
    t->value.resize(nodes.size());
    t->cone.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Node& n = nodes[i];
      auto& out = t->value[i];
      out.assign(total, 0);
      switch (n.op) {
        case Op::atom:
          for (std::size_t idx = 0; idx < total; ++idx) {
            if (n.atom.kind == HotelAtom::Kind::exists) {
              out[idx] = (present_mask(idx / lattice, idx % lattice, sm) >> state_index(n.atom.state)) & 1u;
            } else {
              auto pos = std::lower_bound(named.begin(), named.end(), n.atom.room) - named.begin();
              out[idx] = sigma[pos] == state_index(n.atom.state);
            }
          }
          break;
        case Op::negation:
          for (std::size_t idx = 0; idx < total; ++idx) out[idx] = !t->value[n.a][idx];
          break;
        case Op::implication:
          for (std::size_t idx = 0; idx < total; ++idx) out[idx] = !t->value[n.a][idx] || t->value[n.b][idx];
          break;
        case Op::know:
          out = t->value[n.a];
          break;
        case Op::attain: {
          const auto& u = cone(*t, n.a, sm);
          for (std::size_t d = 0; d < k; ++d)
            for (std::size_t code = 0; code < lattice; ++code) {
              if (count(code, d) != 0) continue;
              // More pinned default rooms only shrink the class, so j = cap decides.
              out[d * lattice + code] = universal(u, saturating_add(code, d, cap));
            }
          break;
        }
      }
    }
    cache.emplace(sigma, t);
    return t;
  }

  std::vector<std::uint8_t> sigma_of(const HotelWorld& w) const {
    std::vector<std::uint8_t> sigma;
    for (auto r : named) sigma.push_back(static_cast<std::uint8_t>(state_index(w.at(r))));
    return sigma;
  }

  void check_world(const HotelWorld& w) const {
    if (auto bad = validate_world(variant, w)) throw ModelError("invalid hotel world: " + *bad);
  }
};

HotelEvaluator::HotelEvaluator(HotelVariant v, Formula f, std::optional<std::size_t> cap) {
  if (modal_depth(f) > hotel_max_modal_depth)
    throw CapacityError("hotel evaluation supports modal depth <= " + std::to_string(hotel_max_modal_depth) +
                        ", formula has " + std::to_string(modal_depth(f)));
  if (atoms(f).size() > hotel_max_atoms)
    throw CapacityError("hotel evaluation supports at most " + std::to_string(hotel_max_atoms) +
                        " atoms, formula has " + std::to_string(atoms(f).size()));
  std::size_t b = cap.value_or(default_cap(f));
  if (b == 0) throw std::invalid_argument("hotel cap must be positive");
  impl_ = std::make_unique<Impl>(v, std::move(f), b);
}

HotelEvaluator::~HotelEvaluator() = default;
HotelEvaluator::HotelEvaluator(HotelEvaluator&&) noexcept = default;
HotelEvaluator& HotelEvaluator::operator=(HotelEvaluator&&) noexcept = default;

HotelVariant HotelEvaluator::variant() const { return impl_->variant; }
const Formula& HotelEvaluator::formula() const { return impl_->formula; }
std::size_t HotelEvaluator::cap() const { return impl_->cap; }

HotelVerdict HotelEvaluator::eval(const HotelWorld& w) const {
  const Impl& m = *impl_;
  m.check_world(w);
  std::lock_guard lock(m.mu);
  auto sigma = m.sigma_of(w);
  auto t = m.tables(sigma);
  const std::size_t d = m.state_index(w.default_state);
  std::size_t code = 0;
  for (const auto& [room, s] : w.exceptions)
    if (!std::binary_search(m.named.begin(), m.named.end(), room)) code = m.saturating_add(code, m.state_index(s), 1);

  HotelVerdict out;
  out.cap = m.cap;
  out.value = t->value[m.root][d * m.lattice + code];
  const auto& root = m.nodes[m.root];
  if (out.value && root.op == Op::attain) {
    const auto& u = m.cone(*t, root.a, m.sigma_mask_of(sigma));
    EvidenceWitness ev;
    ev.tracked.insert(m.named.begin(), m.named.end());
    for (const auto& [room, _] : w.exceptions) ev.tracked.insert(room);
    for (std::size_t j = 0; j <= m.cap; ++j)
      if (m.universal(u, m.saturating_add(code, d, j))) {
        ev.fresh_count = j;
        break;
      }
    out.witness = std::move(ev);
  }
  return out;
}

bool HotelEvaluator::holds_on_class(const HotelWorld& w, const EvidenceWitness& ev) const {
  const Impl& m = *impl_;
  m.check_world(w);
  for (auto r : m.named)
    if (!ev.tracked.count(r))
      throw std::invalid_argument("evidence must examine every named room; room " + std::to_string(r) + " missing");
  std::lock_guard lock(m.mu);
  auto sigma = m.sigma_of(w);
  auto t = m.tables(sigma);
  std::size_t pinned = 0;
  for (auto r : ev.tracked)
    if (!std::binary_search(m.named.begin(), m.named.end(), r)) pinned = m.saturating_add(pinned, m.state_index(w.at(r)), 1);
  pinned = m.saturating_add(pinned, m.state_index(w.default_state), ev.fresh_count);
  return m.universal(m.cone(*t, m.root, m.sigma_mask_of(sigma)), pinned);
}

HotelVerdict hotel_eval(HotelVariant v, const HotelWorld& w, const Formula& f, std::optional<std::size_t> cap) {
  return HotelEvaluator(v, f, cap).eval(w);
}

bool CounterexampleReport::reproduced() const {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.verdict == r.expected; });
}

std::vector<std::string> counterexample_names() { return {"negative-introspection", "weak-negative-introspection"}; }

namespace {

struct ExpectedRow {
  std::string_view world;
  std::string_view formula;
  bool expected;
};

CounterexampleReport build_report(std::string name, HotelVariant v, std::string_view world, std::string_view formula,
                                  std::span<const ExpectedRow> expected) {
  CounterexampleReport r{std::move(name), v, parse_world_literal(world), parse(formula), false, {}};
  r.verdict = hotel_eval(v, r.world, r.formula).value;
  for (const auto& e : expected) {
    auto w = parse_world_literal(e.world);
    auto f = parse(e.formula);
    auto verdict = hotel_eval(v, w, f);
    r.rows.push_back({world_literal(w), print(f), verdict.value, e.expected, verdict.witness});
  }
  return r;
}

}  // namespace

CounterexampleReport counterexample_report(std::string_view which) {
  if (which == "negative-introspection") {
    // Full hotel, phi = "the hotel has vacancies".
    static constexpr ExpectedRow rows[] = {
        {"default=occupied", "exists_vacant", false},
        {"default=occupied", "[.]exists_vacant", false},
        {"default=occupied", "![.]exists_vacant", true},
        {"default=occupied", "[.]![.]exists_vacant", false},
        {"default=occupied", "![.]![.]exists_vacant", true},
        {"default=occupied", "![.]exists_vacant -> [.]![.]exists_vacant", false},
        {"default=occupied", "[]!exists_vacant", true},
        {"default=occupied", "[.]!exists_vacant", false},
        {"default=occupied; 7=vacant", "[.]exists_vacant", true},
    };
    return build_report(std::string(which), HotelVariant::one, "default=occupied",
                        "![.]exists_vacant -> [.]![.]exists_vacant", rows);
  }
  if (which == "weak-negative-introspection") {
    // Empty, bug-free hotel, phi = "the hotel has no visitors".
    static constexpr ExpectedRow rows[] = {
        {"default=vacant", "!exists_occupied", true},
        {"default=vacant", "[.]!exists_occupied", false},
        {"default=vacant", "![.]!exists_occupied", true},
        {"default=vacant", "[.]![.]!exists_occupied", false},
        {"default=vacant", "![.]!exists_occupied -> [.]![.]!exists_occupied", false},
        {"default=vacant", "!exists_occupied -> (![.]!exists_occupied -> [.]![.]!exists_occupied)", false},
        {"default=vacant", "[]!exists_occupied", true},
        {"default=vacant; 3=infested", "[.]!exists_occupied", true},
    };
    return build_report(std::string(which), HotelVariant::two, "default=vacant",
                        "!exists_occupied -> (![.]!exists_occupied -> [.]![.]!exists_occupied)", rows);
  }
  throw std::invalid_argument("unknown counterexample report '" + std::string(which) + "'");
}

}  // namespace evlogic
