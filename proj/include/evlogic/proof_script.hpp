#pragma once

#include <string>
#include <string_view>

#include "evlogic/proof.hpp"

namespace evlogic {

/// Reads the line-oriented script format:
///   hyp <k>: <formula>
///   <n>: <formula> ; <justification>
/// Step and hypothesis numbers are 1-based and must be consecutive.
/// Throws ParseError with the offending line.
Derivation parse_proof_script(std::string_view text);

std::string write_proof_script(const Derivation& d);

std::string justification_text(const Justification& j);

}  // namespace evlogic
