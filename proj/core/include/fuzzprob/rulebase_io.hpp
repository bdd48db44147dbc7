#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "fuzzprob/controller.hpp"
#include "fuzzprob/error.hpp"

namespace fuzzprob {

/// Rule-base file error. line is 1-based; 0 for an empty file.
class ParseError : public Error {
 public:
  enum class Kind { Syntax, Semantic, Empty };

  ParseError(Kind kind, std::size_t line, const std::string& message);

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

const char* to_string(ParseError::Kind kind) noexcept;

/**
 * Parses the line-oriented rule-base format:
 *
 *     universe <name> <lo> <hi> <n>
 *     set <universe> <setname> tri <a> <b> <c>
 *     set <universe> <setname> trap <a> <b> <c> <d>
 *     set <universe> <setname> singleton <p>
 *     rule if <inset> then <outset>
 *
 * '#' starts a comment. Exactly two universes are declared; the first is the
 * input, the second the output. Names must be declared before use.
 */
RuleBase parse_rulebase(std::string_view text);

RuleBase load_rulebase(const std::string& path);

/// The canonical NB/NS/ZE/PS/PB fixture (identical to data/reference.rules).
std::string_view reference_rulebase_text() noexcept;
RuleBase reference_rulebase();

/// Plant used with the reference rule base: a = 1, b = 1, dt = 0.1, 200 steps,
/// x0 = 0, setpoint = 2.
PlantConfig reference_plant();

}  // namespace fuzzprob
