#include "opgp/orealg/parser.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "opgp/errors.hpp"

namespace opgp {

namespace {

enum class TokenType { Number, Identifier, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  TokenType type;
  std::string text;
  std::size_t position;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      tokens.push_back({TokenType::Number, std::string(text.substr(start, i - start)), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        ++i;
      }
      tokens.push_back({TokenType::Identifier, std::string(text.substr(start, i - start)), start});
      continue;
    }
    TokenType type;
    switch (c) {
      case '+': type = TokenType::Plus; break;
      case '-': type = TokenType::Minus; break;
      case '*': type = TokenType::Star; break;
      case '/': type = TokenType::Slash; break;
      case '^': type = TokenType::Caret; break;
      case '(': type = TokenType::LParen; break;
      case ')': type = TokenType::RParen; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    tokens.push_back({type, std::string(1, c), start});
    ++i;
  }
  tokens.push_back({TokenType::End, "", text.size()});
  return tokens;
}

// Parsed value plus whether its outermost operation was a sum, so that
// "(x+y)^2" can be rejected.
struct Value {
  OrePoly poly;
  bool is_sum = false;
};

constexpr int kSumPower = 10;
constexpr int kProductPower = 20;
constexpr int kUnaryPower = 30;
constexpr int kPowerPower = 40;
constexpr unsigned kMaxExponent = 4096;

class PrattParser {
 public:
  PrattParser(std::vector<Token> tokens, RingPtr ring) : tokens_(std::move(tokens)), ring_(std::move(ring)) {}

  OrePoly parse() {
    if (Peek().type == TokenType::End) throw ParseError("empty expression", Peek().position);
    Value v = ParseExpression(0);
    if (Peek().type != TokenType::End) throw ParseError("unexpected '" + Peek().text + "'", Peek().position);
    return std::move(v.poly);
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }
  const Token& Advance() { return tokens_[pos_++]; }

  static int InfixPower(TokenType type) {
    switch (type) {
      case TokenType::Plus:
      case TokenType::Minus: return kSumPower;
      case TokenType::Star:
      case TokenType::Slash: return kProductPower;
      case TokenType::Caret: return kPowerPower;
      default: return -1;
    }
  }

  Value ParseExpression(int min_power) {
    Value lhs = ParsePrefix();
    while (true) {
      const Token& op = Peek();
      const int power = InfixPower(op.type);
      if (power < 0 || power <= min_power) break;
      Advance();
      if (op.type == TokenType::Caret) {
        lhs = ParsePower(std::move(lhs), op);
        continue;
      }
      Value rhs = ParseExpression(power);
      switch (op.type) {
        case TokenType::Plus: lhs = Value{lhs.poly + rhs.poly, true}; break;
        case TokenType::Minus: lhs = Value{lhs.poly - rhs.poly, true}; break;
        case TokenType::Star: lhs = Value{mul(lhs.poly, rhs.poly), false}; break;
        case TokenType::Slash: {
          if (!rhs.poly.is_constant()) throw ParseError("division by a non-constant", op.position);
          const Rational divisor = rhs.poly.constant_coeff();
          if (divisor == 0) throw ParseError("division by zero", op.position);
          lhs = Value{lhs.poly.scaled(1 / divisor), lhs.is_sum};
          break;
        }
        default: break;
      }
    }
    return lhs;
  }

  Value ParsePower(Value base, const Token& op) {
    if (base.is_sum) throw ParseError("exponent on a sum is not supported", op.position);
    const Token& exponent_token = Peek();
    Value exponent = ParseExpression(kPowerPower - 1);
    if (!exponent.poly.is_constant()) {
      throw ParseError("exponent must be a constant", exponent_token.position);
    }
    const Rational e = exponent.poly.constant_coeff();
    if (e < 0 || e.get_den() != 1 || e > kMaxExponent) {
      throw ParseError("exponent must be a non-negative integer", exponent_token.position);
    }
    const unsigned n = static_cast<unsigned>(e.get_num().get_ui());
    OrePoly result = OrePoly::constant(ring_, 1);
    for (unsigned k = 0; k < n; ++k) result = mul(result, base.poly);
    return Value{std::move(result), false};
  }

  Value ParsePrefix() {
    const Token& tok = Advance();
    switch (tok.type) {
      case TokenType::Number:
        return Value{OrePoly::constant(ring_, parse_rational(tok.text)), false};
      case TokenType::Identifier: {
        const auto index = ring_->index_of(tok.text);
        if (!index) throw ParseError("unknown identifier '" + tok.text + "'", tok.position);
        return Value{OrePoly::generator(ring_, *index), false};
      }
      case TokenType::Minus: {
        Value operand = ParseExpression(kUnaryPower);
        return Value{-operand.poly, operand.is_sum};
      }
      case TokenType::LParen: {
        Value inner = ParseExpression(0);
        if (Peek().type != TokenType::RParen) throw ParseError("expected ')'", Peek().position);
        Advance();
        return inner;
      }
      case TokenType::End: throw ParseError("unexpected end of expression", tok.position);
      default: throw ParseError("unexpected '" + tok.text + "'", tok.position);
    }
  }

  std::vector<Token> tokens_;
  RingPtr ring_;
  std::size_t pos_ = 0;
};

}  // namespace

OrePoly parse_operator(std::string_view text, const RingPtr& ring) {
  return PrattParser(tokenize(text), ring).parse();
}

}  // namespace opgp
