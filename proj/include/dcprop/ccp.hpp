#pragma once

#include <vector>

#include "dcprop/qcp.hpp"

namespace dcprop {

/// Abstract value of one classical bit.
enum class Token {
  Zero,  // certainly 0
  One,   // certainly 1
  Prob,  // random with a known distribution, tied to a probabilistic control
  Top,   // no information
};

const char* token_name(Token t);

/// Abstract state of the classical register; one token per bit. Updated only
/// at measurements, everything else leaves it unchanged.
class AbstractClassicalState {
 public:
  explicit AbstractClassicalState(int num_bits)
      : tokens_(num_bits, Token::Zero) {}

  int num_bits() const { return static_cast<int>(tokens_.size()); }
  Token token(int bit) const { return tokens_.at(bit); }

  /// CCP update for measure(q_j, c_i), driven by the measured qubit's
  /// abstract status.
  void update_measure(int bit, QubitStatus status);

 private:
  std::vector<Token> tokens_;
};

}  // namespace dcprop
