#include "dcprop/ccp.hpp"

namespace dcprop {

const char* token_name(Token t) {
  switch (t) {
    case Token::Zero: return "ZERO";
    case Token::One: return "ONE";
    case Token::Prob: return "PROB";
    case Token::Top: return "TOP";
  }
  return "?";
}

void AbstractClassicalState::update_measure(int bit, QubitStatus status) {
  switch (status.kind) {
    case QubitStatusKind::Ket0:
      tokens_.at(bit) = Token::Zero;
      break;
    case QubitStatusKind::Ket1:
      tokens_.at(bit) = Token::One;
      break;
    case QubitStatusKind::Top:
      tokens_.at(bit) = Token::Top;
      break;
    case QubitStatusKind::Superposition:
      tokens_.at(bit) = Token::Prob;
      break;
  }
}

}  // namespace dcprop
