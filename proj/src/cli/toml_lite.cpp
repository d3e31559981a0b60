#include "opgp/cli/toml_lite.hpp"

#include <cctype>
#include <charconv>

#include <fmt/format.h>

#include "opgp/errors.hpp"

namespace opgp {

namespace {

using Json = nlohmann::ordered_json;

class Parser {
 public:
  Parser(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  Json parse() {
    Json root = Json::object();
    Json* current = &root;
    while (true) {
      skip_blank_lines();
      if (at_end()) break;
      if (peek() == '[') {
        current = header(root);
      } else {
        key_value(*current);
      }
      end_of_line();
    }
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw InputError(fmt::format("{}:{}: {}", source_, line_, message));
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char next() {
    const char c = text_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  void skip_spaces() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  void skip_comment() {
    if (peek() == '#') {
      while (!at_end() && peek() != '\n') ++pos_;
    }
  }

  void skip_blank_lines() {
    while (!at_end()) {
      skip_spaces();
      skip_comment();
      if (peek() == '\r') ++pos_;
      if (peek() != '\n') return;
      next();
    }
  }

  /// Whitespace, comments and newlines inside arrays and inline tables.
  void skip_all() {
    while (!at_end()) {
      skip_spaces();
      skip_comment();
      if (peek() == '\n' || peek() == '\r') {
        next();
      } else {
        return;
      }
    }
  }

  void end_of_line() {
    skip_spaces();
    skip_comment();
    if (peek() == '\r') ++pos_;
    if (at_end()) return;
    if (peek() != '\n') fail(fmt::format("unexpected '{}' after value", peek()));
    next();
  }

  std::string key() {
    skip_spaces();
    if (peek() == '"') return basic_string();
    if (peek() == '\'') return literal_string();
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) ++pos_;
    if (start == pos_) fail("expected a key");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::vector<std::string> dotted_key() {
    std::vector<std::string> parts{key()};
    skip_spaces();
    while (peek() == '.') {
      ++pos_;
      parts.push_back(key());
      skip_spaces();
    }
    return parts;
  }

  Json* descend(Json& root, const std::vector<std::string>& path, std::size_t count) {
    Json* node = &root;
    for (std::size_t i = 0; i < count; ++i) {
      Json& child = (*node)[path[i]];
      if (child.is_null()) child = Json::object();
      if (child.is_array()) {
        if (child.empty() || !child.back().is_object()) fail("'" + path[i] + "' is not a table");
        node = &child.back();
      } else if (child.is_object()) {
        node = &child;
      } else {
        fail("'" + path[i] + "' is not a table");
      }
    }
    return node;
  }

  Json* header(Json& root) {
    ++pos_;
    const bool array = peek() == '[';
    if (array) ++pos_;
    const auto path = dotted_key();
    if (peek() != ']') fail("expected ']' after table name");
    ++pos_;
    if (array) {
      if (peek() != ']') fail("expected ']]' after table name");
      ++pos_;
    }
    Json* parent = descend(root, path, path.size() - 1);
    Json& slot = (*parent)[path.back()];
    if (array) {
      if (slot.is_null()) slot = Json::array();
      if (!slot.is_array()) fail("'" + path.back() + "' is already defined as a non-array");
      slot.push_back(Json::object());
      return &slot.back();
    }
    if (!slot.is_null()) fail("table '" + path.back() + "' defined twice");
    slot = Json::object();
    return &slot;
  }

  void key_value(Json& table) {
    const auto path = dotted_key();
    if (peek() != '=') fail("expected '=' after key");
    ++pos_;
    skip_spaces();
    Json* target = descend(table, path, path.size() - 1);
    if (target->contains(path.back())) fail("duplicate key '" + path.back() + "'");
    (*target)[path.back()] = value();
  }

  Json value() {
    skip_spaces();
    const char c = peek();
    if (c == '"') return basic_string();
    if (c == '\'') return literal_string();
    if (c == '[') return array();
    if (c == '{') return inline_table();
    if (text_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return true;
    }
    if (text_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return false;
    }
    return number();
  }

  std::string basic_string() {
    ++pos_;
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      const char c = next();
      if (c == '"') return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (at_end()) fail("unterminated string");
      switch (const char e = next()) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: fail(fmt::format("unknown escape '\\{}'", e));
      }
    }
  }

  std::string literal_string() {
    ++pos_;
    const std::size_t start = pos_;
    while (!at_end() && peek() != '\'' && peek() != '\n') ++pos_;
    if (peek() != '\'') fail("unterminated string");
    std::string out(text_.substr(start, pos_ - start));
    ++pos_;
    return out;
  }

  Json number() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+' || peek() == '-' ||
                         peek() == '.' || peek() == '_')) {
      ++pos_;
    }
    std::string token(text_.substr(start, pos_ - start));
    std::erase(token, '_');
    if (token.empty()) fail("expected a value");
    const std::string_view body = token.front() == '+' ? std::string_view(token).substr(1) : std::string_view(token);
    if (body.find_first_of(".eE") == std::string_view::npos && body != "inf" && body != "-inf") {
      std::int64_t v = 0;
      const auto [end, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
      if (ec == std::errc() && end == body.data() + body.size()) return v;
      fail("malformed value '" + token + "'");
    }
    double v = 0.0;
    const auto [end, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec != std::errc() || end != body.data() + body.size()) fail("malformed value '" + token + "'");
    return v;
  }

  Json array() {
    ++pos_;
    Json out = Json::array();
    while (true) {
      skip_all();
      if (at_end()) fail("unterminated array");
      if (peek() == ']') {
        ++pos_;
        return out;
      }
      out.push_back(value());
      skip_all();
      if (at_end()) fail("unterminated array");
      if (peek() == ',') {
        ++pos_;
      } else if (peek() != ']') {
        fail("expected ',' or ']' in array");
      }
    }
  }

  Json inline_table() {
    ++pos_;
    Json out = Json::object();
    while (true) {
      skip_all();
      if (at_end()) fail("unterminated inline table");
      if (peek() == '}') {
        ++pos_;
        return out;
      }
      key_value(out);
      skip_all();
      if (at_end()) fail("unterminated inline table");
      if (peek() == ',') {
        ++pos_;
      } else if (peek() != '}') {
        fail("expected ',' or '}' in inline table");
      }
    }
  }

  std::string_view text_;
  std::string source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

nlohmann::ordered_json parse_toml(std::string_view text, const std::string& source) {
  return Parser(text, source).parse();
}

}  // namespace opgp
