#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "dcprop/ir.hpp"

namespace dcprop {

/// Location of a token in the source text.
struct SourceSpan {
  int line = 1;
  int column = 1;
  std::size_t offset = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, SourceSpan span)
      : std::runtime_error(message + " at line " + std::to_string(span.line) +
                           ", column " + std::to_string(span.column)),
        span_(span) {}

  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

/// Parses the .dc format. Guards are normalized during parsing; the result
/// is a Dynamic-dialect circuit. Throws ParseError on malformed input,
/// out-of-range references, or probabilistic constructs.
Circuit parse_dynamic(std::string_view text);

/// Parses the .pdc format (all instruction variants). Unbound probabilistic
/// controls are accepted here and reported by validate instead.
Circuit parse_probabilistic(std::string_view text);

/// Canonical text form. Printing then parsing reproduces the circuit
/// structurally, and printing is a fixed point of parse-then-print.
std::string print_circuit(const Circuit& circuit);

std::string print_condition(const Condition& condition);

/// Shortest-width decimal with 17 significant digits; round-trips binary64.
std::string format_double(double value);

std::string format_state(const SparseState& state);

}  // namespace dcprop
