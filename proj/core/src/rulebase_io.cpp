#include "fuzzprob/rulebase_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace fuzzprob {

namespace {

std::string describe(ParseError::Kind kind, std::size_t line, const std::string& message) {
  std::string out = "line " + std::to_string(line) + ": " + to_string(kind) + " error: " + message;
  return out;
}

[[noreturn]] void syntax(std::size_t line, const std::string& msg) {
  throw ParseError(ParseError::Kind::Syntax, line, msg);
}

[[noreturn]] void semantic(std::size_t line, const std::string& msg) {
  throw ParseError(ParseError::Kind::Semantic, line, msg);
}

std::vector<std::string_view> tokenize(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos > start) tokens.push_back(line.substr(start, pos - start));
  }
  return tokens;
}

double parse_real(std::string_view tok, std::size_t line) {
  double value = 0.0;
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(value)) {
    syntax(line, "malformed number '" + std::string(tok) + "'");
  }
  return value;
}

std::size_t parse_count(std::string_view tok, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    syntax(line, "malformed point count '" + std::string(tok) + "'");
  }
  return value;
}

void expect_arity(const std::vector<std::string_view>& tokens, std::size_t n, std::size_t line,
                  const char* usage) {
  if (tokens.size() != n) syntax(line, std::string("expected '") + usage + "'");
}

struct UniverseDecl {
  Universe universe;
  NamedSets sets;
};

class Parser {
 public:
  RuleBase run(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t directives = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      std::string_view line = text.substr(pos, nl - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      const auto tokens = tokenize(line);
      if (!tokens.empty()) {
        ++directives;
        directive(tokens, line_no);
      }
      pos = nl + 1;
      if (nl == text.size() || pos == text.size()) break;
    }
    if (directives == 0) throw ParseError(ParseError::Kind::Empty, 0, "empty rule-base file");
    if (universes_.size() < 2) semantic(line_no, "need an input and an output universe");
    if (rules_.empty()) semantic(line_no, "empty rule base");
    try {
      return RuleBase(universes_[0].universe, universes_[1].universe, std::move(universes_[0].sets),
                      std::move(universes_[1].sets), std::move(rules_));
    } catch (const Error& e) {
      semantic(line_no, e.what());
    }
  }

 private:
  void directive(const std::vector<std::string_view>& t, std::size_t line) {
    if (t[0] == "universe") {
      on_universe(t, line);
    } else if (t[0] == "set") {
      on_set(t, line);
    } else if (t[0] == "rule") {
      on_rule(t, line);
    } else {
      syntax(line, "unknown directive '" + std::string(t[0]) + "'");
    }
  }

  void on_universe(const std::vector<std::string_view>& t, std::size_t line) {
    expect_arity(t, 5, line, "universe <name> <lo> <hi> <n>");
    const std::string name(t[1]);
    const double lo = parse_real(t[2], line);
    const double hi = parse_real(t[3], line);
    const std::size_t n = parse_count(t[4], line);
    if (find_universe(name)) semantic(line, "duplicate universe '" + name + "'");
    if (universes_.size() == 2) semantic(line, "more than two universes declared ('" + name + "')");
    try {
      universes_.push_back({Universe(name, lo, hi, n), {}});
    } catch (const Error& e) {
      semantic(line, e.what());
    }
  }

  void on_set(const std::vector<std::string_view>& t, std::size_t line) {
    if (t.size() < 4) syntax(line, "expected 'set <universe> <setname> <kind> <params...>'");
    const std::string kind(t[3]);
    std::size_t params = 0;
    if (kind == "tri") {
      params = 3;
    } else if (kind == "trap") {
      params = 4;
    } else if (kind == "singleton") {
      params = 1;
    } else {
      syntax(line, "unknown membership kind '" + kind + "'");
    }
    if (t.size() != 4 + params) {
      syntax(line, "'" + kind + "' takes " + std::to_string(params) + " parameter(s)");
    }
    std::vector<double> p;
    for (std::size_t k = 0; k < params; ++k) p.push_back(parse_real(t[4 + k], line));

    const std::string uname(t[1]);
    const std::string sname(t[2]);
    UniverseDecl* decl = find_universe(uname);
    if (decl == nullptr) semantic(line, "undeclared universe '" + uname + "'");
    if (decl->sets.contains(sname)) {
      semantic(line, "duplicate set '" + sname + "' on universe '" + uname + "'");
    }
    try {
      auto mf = kind == "tri"    ? MembershipFunction::triangular(p[0], p[1], p[2])
                : kind == "trap" ? MembershipFunction::trapezoidal(p[0], p[1], p[2], p[3])
                                 : MembershipFunction::singleton(p[0]);
      decl->sets.emplace(sname, mf);
    } catch (const Error& e) {
      semantic(line, "set '" + sname + "': " + e.what());
    }
  }

  void on_rule(const std::vector<std::string_view>& t, std::size_t line) {
    if (t.size() != 5 || t[1] != "if" || t[3] != "then") {
      syntax(line, "expected 'rule if <inset> then <outset>'");
    }
    if (universes_.size() < 2) semantic(line, "rule before both universes are declared");
    const std::string in(t[2]);
    const std::string out(t[4]);
    if (!universes_[0].sets.contains(in)) {
      semantic(line, "undeclared set '" + in + "' on input universe '" +
                         universes_[0].universe.name() + "'");
    }
    if (!universes_[1].sets.contains(out)) {
      semantic(line, "undeclared set '" + out + "' on output universe '" +
                         universes_[1].universe.name() + "'");
    }
    rules_.push_back({in, out});
  }

  UniverseDecl* find_universe(const std::string& name) {
    for (auto& d : universes_) {
      if (d.universe.name() == name) return &d;
    }
    return nullptr;
  }

  std::vector<UniverseDecl> universes_;
  std::vector<RuleSpec> rules_;
};

constexpr std::string_view kReferenceText =
#include "reference_rules.inc"

}  // namespace

ParseError::ParseError(Kind kind, std::size_t line, const std::string& message)
    : Error(describe(kind, line, message)), kind_(kind), line_(line) {}

const char* to_string(ParseError::Kind kind) noexcept {
  switch (kind) {
    case ParseError::Kind::Syntax:
      return "syntax";
    case ParseError::Kind::Semantic:
      return "semantic";
    case ParseError::Kind::Empty:
      return "empty";
  }
  return "unknown";
}

RuleBase parse_rulebase(std::string_view text) { return Parser{}.run(text); }

RuleBase load_rulebase(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open rule-base file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_rulebase(buf.str());
}

std::string_view reference_rulebase_text() noexcept { return kReferenceText; }

RuleBase reference_rulebase() { return parse_rulebase(kReferenceText); }

PlantConfig reference_plant() {
  return PlantConfig{.a = 1.0, .b = 1.0, .dt = 0.1, .x0 = 0.0, .setpoint = 2.0, .steps = 200};
}

}  // namespace fuzzprob
