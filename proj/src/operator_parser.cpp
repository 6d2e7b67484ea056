// Copyright 2026 The isinggeo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Recursive-descent parser for product-operator text:
//
//   expr   := [+|-] term { (+|-) term }
//   term   := factor { * factor }
//   factor := number | 'i' | 'I' site axis | '(' expr ')' | '-' factor

#include <cctype>
#include <charconv>

#include "isinggeo/product_operators.hpp"

namespace isinggeo {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  OperatorSum parse_all() {
    OperatorSum result = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  OperatorSum expr() {
    OperatorSum acc;
    bool negate = false;
    if (peek() == '+' || peek() == '-') negate = text_[pos_++] == '-';
    OperatorSum first = term();
    acc += negate ? first * Complex{-1.0, 0.0} : first;
    while (peek() == '+' || peek() == '-') {
      const bool minus = text_[pos_++] == '-';
      OperatorSum t = term();
      acc += minus ? t * Complex{-1.0, 0.0} : t;
    }
    return acc;
  }

  OperatorSum term() {
    OperatorSum acc = factor();
    while (peek() == '*') {
      ++pos_;
      acc = acc * factor();
    }
    return acc;
  }

  OperatorSum factor() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      OperatorSum inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return factor() * Complex{-1.0, 0.0};
    }
    if (c == 'i') {
      ++pos_;
      return OperatorSum::identity(Complex{0.0, 1.0});
    }
    if (c == 'I') {
      ++pos_;
      int site = 0;
      const char* begin = text_.data() + pos_;
      const char* end = text_.data() + text_.size();
      auto [ptr, ec] = std::from_chars(begin, end, site);
      if (ec != std::errc{} || ptr == begin) fail("expected site index after 'I'");
      pos_ += static_cast<std::size_t>(ptr - begin);
      if (site < 1) fail("site indices are 1-based");
      if (pos_ >= text_.size()) fail("expected axis x, y or z");
      const char a = text_[pos_++];
      Axis axis;
      switch (a) {
        case 'x': axis = Axis::x; break;
        case 'y': axis = Axis::y; break;
        case 'z': axis = Axis::z; break;
        default: --pos_; fail("expected axis x, y or z");
      }
      return OperatorSum::spin(site, axis);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const char* begin = text_.data() + pos_;
      const char* end = text_.data() + text_.size();
      auto [ptr, ec] = std::from_chars(begin, end, v);
      if (ec != std::errc{}) fail("malformed number");
      pos_ += static_cast<std::size_t>(ptr - begin);
      return OperatorSum::identity(v);
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected character");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

OperatorSum OperatorSum::parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace isinggeo
