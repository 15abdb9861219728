#include "evlogic/proof_script.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include "evlogic/errors.hpp"

namespace evlogic {

namespace {

std::string_view trim(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::size_t> number(std::string_view s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

Formula parse_at(std::string_view text, std::size_t line, std::size_t col_offset) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), line, col_offset + e.column());
  }
}

}  // namespace

Derivation parse_proof_script(std::string_view text) {
  Derivation d;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    std::string_view line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    auto fail = [&](const std::string& what) -> Derivation { throw ParseError(what, line_no, 1); };

    std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) fail("expected '<n>:' or 'hyp <k>:'");
    auto head = words(line.substr(0, colon));
    std::size_t formula_col = static_cast<std::size_t>(line.data() - raw.data()) + colon + 1;

    if (head.size() == 2 && head[0] == "hyp") {
      if (!d.steps.empty()) fail("hypotheses must precede all steps");
      auto k = number(head[1]);
      if (!k || *k != d.hypotheses.size() + 1)
        fail("expected hypothesis number " + std::to_string(d.hypotheses.size() + 1));
      d.hypotheses.push_back(parse_at(line.substr(colon + 1), line_no, formula_col));
      continue;
    }

    if (head.size() != 1) fail("expected step number before ':'");
    auto n = number(head[0]);
    if (!n || *n != d.steps.size() + 1)
      fail("expected step number " + std::to_string(d.steps.size() + 1));
    std::string_view rest = line.substr(colon + 1);
    std::size_t semi = rest.rfind(';');
    if (semi == std::string_view::npos) fail("missing '; <justification>'");
    Formula f = parse_at(rest.substr(0, semi), line_no, formula_col);

    auto just = words(rest.substr(semi + 1));
    auto index = [&](std::string_view w) -> std::size_t {
      auto v = number(w);
      if (!v || *v == 0) fail("expected a positive step or hypothesis number, got '" + std::string(w) + "'");
      return *v - 1;
    };
    Justification j;
    if (just.size() == 1 && just[0] == "taut") {
      j = Justification::taut();
    } else if (just.size() == 2 && just[0] == "ax") {
      auto s = schema_from_name(just[1]);
      if (!s) fail("unknown axiom '" + std::string(just[1]) + "'");
      j = Justification::axiom(*s);
    } else if (just.size() == 3 && just[0] == "mp") {
      j = Justification::mp(index(just[1]), index(just[2]));
    } else if (just.size() == 2 && just[0] == "anec") {
      j = Justification::anec(index(just[1]));
    } else if (just.size() == 2 && just[0] == "hyp") {
      j = Justification::hyp(index(just[1]));
    } else {
      fail("unrecognized justification '" + std::string(trim(rest.substr(semi + 1))) + "'");
    }
    d.steps.push_back({std::move(f), j});
  }
  return d;
}

std::string justification_text(const Justification& j) {
  using K = Justification::Kind;
  switch (j.kind) {
    case K::taut: return "taut";
    case K::axiom: return "ax " + std::string(schema_name(j.schema));
    case K::modus_ponens:
      return "mp " + std::to_string(j.first + 1) + " " + std::to_string(j.second + 1);
    case K::att_nec: return "anec " + std::to_string(j.first + 1);
    case K::hypothesis: return "hyp " + std::to_string(j.first + 1);
  }
  return {};
}

std::string write_proof_script(const Derivation& d) {
  std::ostringstream os;
  for (std::size_t k = 0; k < d.hypotheses.size(); ++k)
    os << "hyp " << k + 1 << ": " << print(d.hypotheses[k]) << '\n';
  for (std::size_t n = 0; n < d.steps.size(); ++n)
    os << n + 1 << ": " << print(d.steps[n].formula) << " ; " << justification_text(d.steps[n].why) << '\n';
  return os.str();
}

}  // namespace evlogic
