#include <cctype>
#include <charconv>
#include <cstdlib>
#include <string>
#include <vector>

#include "dcprop/frontend.hpp"

namespace dcprop {

namespace {

enum class TokKind {
  Ident,
  Int,
  Float,
  LBracket,
  RBracket,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Semicolon,
  Colon,
  Arrow,
  EqEq,
  Eq,
  Bang,
  Amp,
  Caret,
  Pipe,
  Dollar,
  Newline,
  End,
};

struct Token {
  TokKind kind;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      if (c == '\n') {
        tokens.push_back({TokKind::Newline, "\n", span()});
        advance();
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        tokens.push_back(ident());
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '-' && pos_ + 1 < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
            text_[pos_ + 1] == '.'))) {
        tokens.push_back(number());
        continue;
      }
      tokens.push_back(punct());
    }
    tokens.push_back({TokKind::End, "", span()});
    return tokens;
  }

 private:
  SourceSpan span() const { return {line_, column_, pos_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  Token ident() {
    const SourceSpan start = span();
    std::string s;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      s += text_[pos_];
      advance();
    }
    return {TokKind::Ident, std::move(s), start};
  }

  Token number() {
    const SourceSpan start = span();
    std::string s;
    bool is_float = false;
    if (text_[pos_] == '-') {
      s += '-';
      advance();
    }
    auto take_digits = [&] {
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        s += text_[pos_];
        advance();
      }
    };
    take_digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      is_float = true;
      s += '.';
      advance();
      take_digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      is_float = true;
      s += text_[pos_];
      advance();
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        s += text_[pos_];
        advance();
      }
      take_digits();
    }
    return {is_float ? TokKind::Float : TokKind::Int, std::move(s), start};
  }

  Token punct() {
    const SourceSpan start = span();
    const char c = text_[pos_];
    advance();
    switch (c) {
      case '[': return {TokKind::LBracket, "[", start};
      case ']': return {TokKind::RBracket, "]", start};
      case '(': return {TokKind::LParen, "(", start};
      case ')': return {TokKind::RParen, ")", start};
      case '{': return {TokKind::LBrace, "{", start};
      case '}': return {TokKind::RBrace, "}", start};
      case ',': return {TokKind::Comma, ",", start};
      case ';': return {TokKind::Semicolon, ";", start};
      case ':': return {TokKind::Colon, ":", start};
      case '!': return {TokKind::Bang, "!", start};
      case '&': return {TokKind::Amp, "&", start};
      case '^': return {TokKind::Caret, "^", start};
      case '|': return {TokKind::Pipe, "|", start};
      case '$': return {TokKind::Dollar, "$", start};
      case '=':
        if (pos_ < text_.size() && text_[pos_] == '=') {
          advance();
          return {TokKind::EqEq, "==", start};
        }
        return {TokKind::Eq, "=", start};
      case '-':
        if (pos_ < text_.size() && text_[pos_] == '>') {
          advance();
          return {TokKind::Arrow, "->", start};
        }
        throw ParseError("stray '-'", start);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'",
                         start);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, bool probabilistic)
      : tokens_(Lexer(text).run()), probabilistic_(probabilistic) {}

  Circuit run() {
    Circuit circuit;
    circuit.dialect =
        probabilistic_ ? Dialect::Probabilistic : Dialect::Dynamic;

    skip_newlines();
    circuit.num_qubits = header_line("qreg", "q");
    skip_newlines();
    circuit.num_bits = header_line("creg", "c");
    num_qubits_ = circuit.num_qubits;
    num_bits_ = circuit.num_bits;
    if (num_qubits_ < 1) {
      throw ParseError("circuit needs at least one qubit", peek().span);
    }

    while (true) {
      skip_separators();
      if (peek().kind == TokKind::End) break;
      circuit.instructions.push_back(instruction());
      if (peek().kind != TokKind::End) {
        expect_separator();
      }
    }
    return circuit;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  Token next() {
    const Token& t = peek();
    if (t.kind != TokKind::End) ++pos_;
    return t;
  }

  Token expect(TokKind kind, const char* what) {
    if (peek().kind != kind) {
      throw ParseError(std::string("expected ") + what, peek().span);
    }
    return next();
  }

  void expect_keyword(const char* word) {
    if (peek().kind != TokKind::Ident || peek().text != word) {
      throw ParseError(std::string("expected '") + word + "'", peek().span);
    }
    next();
  }

  void skip_newlines() {
    while (peek().kind == TokKind::Newline) next();
  }

  void skip_separators() {
    while (peek().kind == TokKind::Newline ||
           peek().kind == TokKind::Semicolon) {
      next();
    }
  }

  void expect_separator() {
    if (peek().kind != TokKind::Newline &&
        peek().kind != TokKind::Semicolon) {
      throw ParseError("expected end of instruction", peek().span);
    }
  }

  long long parse_int() {
    const Token t = expect(TokKind::Int, "an integer");
    return std::strtoll(t.text.c_str(), nullptr, 10);
  }

  std::uint64_t parse_uint() {
    const Token t = expect(TokKind::Int, "a nonnegative integer");
    if (!t.text.empty() && t.text[0] == '-') {
      throw ParseError("expected a nonnegative integer", t.span);
    }
    return std::strtoull(t.text.c_str(), nullptr, 10);
  }

  double parse_number() {
    if (peek().kind != TokKind::Int && peek().kind != TokKind::Float) {
      throw ParseError("expected a number", peek().span);
    }
    return std::strtod(next().text.c_str(), nullptr);
  }

  int header_line(const char* keyword, const char* reg) {
    expect_keyword(keyword);
    expect_keyword(reg);
    expect(TokKind::LBracket, "'['");
    const long long size = parse_int();
    expect(TokKind::RBracket, "']'");
    if (size < 0 || size > 4096) {
      throw ParseError("register size out of range", peek().span);
    }
    return static_cast<int>(size);
  }

  QubitRef qubit_ref() {
    const Token t = peek();
    expect_keyword("q");
    expect(TokKind::LBracket, "'['");
    const long long index = parse_int();
    expect(TokKind::RBracket, "']'");
    if (index < 0 || index >= num_qubits_) {
      throw ParseError("qubit index out of range", t.span);
    }
    return QubitRef{static_cast<int>(index)};
  }

  BitRef bit_ref() {
    const Token t = peek();
    expect_keyword("c");
    expect(TokKind::LBracket, "'['");
    const long long index = parse_int();
    expect(TokKind::RBracket, "']'");
    if (index < 0 || index >= num_bits_) {
      throw ParseError("bit index out of range", t.span);
    }
    return BitRef{static_cast<int>(index)};
  }

  std::vector<QubitRef> operand_list() {
    std::vector<QubitRef> operands;
    operands.push_back(qubit_ref());
    while (peek().kind == TokKind::Comma) {
      next();
      operands.push_back(qubit_ref());
    }
    return operands;
  }

  Instruction instruction() {
    const Token t = peek();
    if (t.kind != TokKind::Ident) {
      throw ParseError("expected an instruction", t.span);
    }
    if (t.text == "measure") return measure();
    if (t.text == "reset") return reset();
    if (t.text == "if") return if_else();
    if (t.text == "rot" || t.text == "pgate" || t.text == "pbind") {
      if (!probabilistic_) {
        throw ParseError("probabilistic instruction in dynamic circuit",
                         t.span);
      }
      if (t.text == "rot") return rotation();
      if (t.text == "pgate") return pgate();
      return pbind();
    }
    return Instruction{unitary()};
  }

  UnitaryInst unitary() {
    const Token t = expect(TokKind::Ident, "a gate name");
    const auto op = gate_from_name(t.text);
    if (!op) {
      throw ParseError("unknown gate '" + t.text + "'", t.span);
    }
    UnitaryInst inst;
    inst.gate.op = *op;
    if (gate_param_count(*op) == 1) {
      expect(TokKind::LParen, "'('");
      inst.gate.params.push_back(parse_number());
      expect(TokKind::RParen, "')'");
    }
    inst.operands = operand_list();
    if (static_cast<int>(inst.operands.size()) != gate_arity(*op)) {
      throw ParseError("gate '" + t.text + "' expects " +
                           std::to_string(gate_arity(*op)) + " operand(s)",
                       t.span);
    }
    return inst;
  }

  Instruction measure() {
    expect_keyword("measure");
    const QubitRef q = qubit_ref();
    expect(TokKind::Arrow, "'->'");
    const BitRef c = bit_ref();
    return MeasureInst{q, c};
  }

  Instruction reset() {
    expect_keyword("reset");
    return ResetInst{qubit_ref()};
  }

  Instruction if_else() {
    expect_keyword("if");
    expect(TokKind::LParen, "'('");
    const Token guard_tok = peek();
    SurfaceGuard guard = surface_guard();
    expect(TokKind::RParen, "')'");

    IfElseInst inst;
    try {
      inst.condition = normalize_condition(guard, num_bits_);
    } catch (const std::out_of_range& e) {
      throw ParseError(e.what(), guard_tok.span);
    }
    inst.then_branch = block();
    skip_newlines_if([&] {
      return peek_after_newlines().kind == TokKind::Ident &&
             peek_after_newlines().text == "else";
    });
    if (peek().kind == TokKind::Ident && peek().text == "else") {
      next();
      inst.else_branch = block();
    }
    return inst;
  }

  const Token& peek_after_newlines() const {
    std::size_t ahead = 0;
    while (peek(ahead).kind == TokKind::Newline) ++ahead;
    return peek(ahead);
  }

  template <typename Pred>
  void skip_newlines_if(Pred pred) {
    if (pred()) skip_newlines();
  }

  std::vector<UnitaryInst> block() {
    expect(TokKind::LBrace, "'{'");
    std::vector<UnitaryInst> body;
    skip_separators();
    while (peek().kind != TokKind::RBrace) {
      const Token t = peek();
      if (t.kind == TokKind::Ident &&
          (t.text == "measure" || t.text == "reset" || t.text == "if" ||
           t.text == "rot" || t.text == "pgate" || t.text == "pbind")) {
        throw ParseError(
            "branches of a classically controlled operation may contain "
            "unitary gates only",
            t.span);
      }
      body.push_back(unitary());
      skip_separators();
    }
    expect(TokKind::RBrace, "'}'");
    return body;
  }

  SurfaceGuard surface_guard() {
    if (peek().kind == TokKind::Ident && peek().text == "c") {
      if (peek(1).kind == TokKind::EqEq) {
        next();
        next();
        return RegisterCompare{parse_uint()};
      }
      if (peek(1).kind == TokKind::LBracket &&
          peek(2).kind == TokKind::Int &&
          peek(3).kind == TokKind::RBracket &&
          peek(4).kind == TokKind::EqEq) {
        const BitRef bit = bit_ref();
        next();  // ==
        const Token value_tok = peek();
        const long long value = parse_int();
        if (value != 0 && value != 1) {
          throw ParseError("single-bit comparison value must be 0 or 1",
                           value_tok.span);
        }
        return BitCompare{bit.index, static_cast<int>(value)};
      }
    }
    return Predicate{or_expr()};
  }

  // precedence, tightest to loosest: ! & ^ |, all left-associative
  Condition or_expr() {
    Condition lhs = xor_expr();
    while (peek().kind == TokKind::Pipe) {
      next();
      lhs = cond::disjunction(std::move(lhs), xor_expr());
    }
    return lhs;
  }

  Condition xor_expr() {
    Condition lhs = and_expr();
    while (peek().kind == TokKind::Caret) {
      next();
      lhs = cond::exclusive(std::move(lhs), and_expr());
    }
    return lhs;
  }

  Condition and_expr() {
    Condition lhs = not_expr();
    while (peek().kind == TokKind::Amp) {
      next();
      lhs = cond::conjunction(std::move(lhs), not_expr());
    }
    return lhs;
  }

  Condition not_expr() {
    if (peek().kind == TokKind::Bang) {
      next();
      return cond::negate(not_expr());
    }
    return cond_primary();
  }

  Condition cond_primary() {
    const Token t = peek();
    if (t.kind == TokKind::LParen) {
      next();
      Condition inner = or_expr();
      expect(TokKind::RParen, "')'");
      return inner;
    }
    if (t.kind == TokKind::Dollar) {
      if (!probabilistic_) {
        throw ParseError("probabilistic control in dynamic circuit", t.span);
      }
      next();
      const long long index = parse_int();
      if (index < 0 || index >= num_bits_) {
        throw ParseError("probabilistic control index out of range", t.span);
      }
      return cond::prob(static_cast<int>(index));
    }
    if (t.kind == TokKind::Ident && t.text == "c") {
      return cond::bit(bit_ref().index);
    }
    if (t.kind == TokKind::Ident && t.text == "true") {
      next();
      return cond::constant(true);
    }
    if (t.kind == TokKind::Ident && t.text == "false") {
      next();
      return cond::constant(false);
    }
    throw ParseError("expected a condition", t.span);
  }

  SparseState state_literal(int num_qubits) {
    const Token t = expect(TokKind::LBrace, "'{'");
    SparseState::AmplitudeMap amps;
    if (peek().kind != TokKind::RBrace) {
      while (true) {
        const Token index_tok = peek();
        const std::uint64_t index = parse_uint();
        if (num_qubits < 62 && index >= (std::uint64_t{1} << num_qubits)) {
          throw ParseError("basis index out of range", index_tok.span);
        }
        expect(TokKind::Colon, "':'");
        expect(TokKind::LParen, "'('");
        const double re = parse_number();
        expect(TokKind::Comma, "','");
        const double im = parse_number();
        expect(TokKind::RParen, "')'");
        if (!amps.emplace(index, Complex{re, im}).second) {
          throw ParseError("duplicate basis index", index_tok.span);
        }
        if (peek().kind != TokKind::Comma) break;
        next();
      }
    }
    expect(TokKind::RBrace, "'}'");
    if (amps.empty()) {
      throw ParseError("state literal needs at least one amplitude", t.span);
    }
    return SparseState(num_qubits, std::move(amps));
  }

  Instruction rotation() {
    expect_keyword("rot");
    RotationSpec spec;
    spec.qubits = operand_list();
    const Token t = expect(TokKind::Ident, "'from' or 'to'");
    if (t.text == "from") {
      spec.direction = RotationDirection::ToZero;
    } else if (t.text == "to") {
      spec.direction = RotationDirection::FromZero;
    } else {
      throw ParseError("expected 'from' or 'to'", t.span);
    }
    expect(TokKind::Eq, "'='");
    spec.state = state_literal(static_cast<int>(spec.qubits.size()));
    return RotationInst{std::move(spec)};
  }

  PGateBranch branch(int prep_qubits) {
    expect_keyword("branch");
    PGateBranch b;
    b.prob = parse_number();
    expect_keyword("lead");
    expect(TokKind::Eq, "'='");
    const Token lead = expect(TokKind::Ident, "'I' or 'X'");
    if (lead.text == "I") {
      b.lead = PGateBranch::Lead::I;
    } else if (lead.text == "X") {
      b.lead = PGateBranch::Lead::X;
    } else {
      throw ParseError("expected lead 'I' or 'X'", lead.span);
    }
    expect_keyword("prep");
    expect(TokKind::Eq, "'='");
    b.prep = state_literal(prep_qubits);
    return b;
  }

  Instruction pgate() {
    expect_keyword("pgate");
    PGateInst inst;
    inst.operands = operand_list();
    expect(TokKind::Colon, "':'");
    const int prep_qubits = static_cast<int>(inst.operands.size()) - 1;
    inst.branches[0] = branch(prep_qubits);
    inst.branches[1] = branch(prep_qubits);
    return inst;
  }

  Instruction pbind() {
    expect_keyword("pbind");
    PBindInst inst;
    inst.operands = operand_list();
    expect(TokKind::Arrow, "'->'");
    const Token t = expect(TokKind::Dollar, "'$'");
    const long long control = parse_int();
    if (control < 0 || control >= num_bits_) {
      throw ParseError("probabilistic control index out of range", t.span);
    }
    inst.control = ProbControlId{static_cast<int>(control)};
    expect(TokKind::Colon, "':'");
    const int prep_qubits = static_cast<int>(inst.operands.size()) - 1;
    inst.branches[0] = branch(prep_qubits);
    inst.branches[1] = branch(prep_qubits);
    return inst;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  bool probabilistic_;
  int num_qubits_ = 0;
  int num_bits_ = 0;
};

}  // namespace

Circuit parse_dynamic(std::string_view text) {
  return Parser(text, /*probabilistic=*/false).run();
}

Circuit parse_probabilistic(std::string_view text) {
  return Parser(text, /*probabilistic=*/true).run();
}

}  // namespace dcprop
