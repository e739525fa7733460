#include <cctype>
#include <limits>

#include "qdissect/eta.hpp"

namespace qdissect {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  EtaExpression parse_all() {
    EtaExpression e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  std::uint64_t uint_literal() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected integer");
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const auto digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (std::numeric_limits<std::int64_t>::max() - digit) / 10) fail_at("integer overflow", start);
      v = v * 10 + digit;
      ++pos_;
    }
    return v;
  }

  EtaExpression expr() {
    EtaExpression e = term();
    for (;;) {
      const std::size_t at = pos_;
      if (accept('+')) {
        e = guarded([&] { return e + term(); }, at);
      } else if (accept('-')) {
        e = guarded([&] { return e - term(); }, at);
      } else {
        return e;
      }
    }
  }

  EtaExpression term() {
    bool negative = false;
    if (accept('-')) negative = true;
    else accept('+');
    EtaExpression e = factor();
    for (;;) {
      const std::size_t at = (skip_ws(), pos_);
      if (accept('*')) {
        EtaExpression rhs = factor();
        e = guarded([&] { return e * rhs; }, at);
      } else if (accept('/')) {
        const std::size_t divisor_at = (skip_ws(), pos_);
        EtaExpression rhs = factor();
        if (rhs.terms().size() != 1 || rhs.terms()[0].qpow != 0 ||
            (rhs.terms()[0].coeff != 1 && rhs.terms()[0].coeff != -1))
          fail_at("divisor must be a single eta quotient", divisor_at);
        const EtaTerm& d = rhs.terms()[0];
        e = guarded([&] { return e * EtaExpression::of(EtaTerm{d.coeff, 0, d.quotient.inverse()}); }, at);
      } else {
        break;
      }
    }
    return negative ? -e : e;
  }

  EtaExpression factor() {
    const char c = peek();
    const std::size_t at = pos_;
    if (c == 'q') {
      ++pos_;
      std::uint64_t k = 1;
      if (accept('^')) k = uint_literal();
      return EtaExpression::of(EtaTerm{1, k, {}});
    }
    if (c == 'f') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected eta index after 'f'");
      const std::uint64_t r = uint_literal();
      if (r == 0) fail_at("eta index must be positive", at);
      std::int64_t e = 1;
      if (accept('^')) {
        const std::size_t exp_at = (skip_ws(), pos_);
        const bool negative = accept('-');
        const std::uint64_t mag = uint_literal();
        if (mag > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max()))
          fail_at("exponent overflow", exp_at);
        e = negative ? -static_cast<std::int64_t>(mag) : static_cast<std::int64_t>(mag);
      }
      return EtaExpression::of(EtaTerm{1, 0, EtaQuotient::single(static_cast<std::int64_t>(r), e)});
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return EtaExpression::constant(static_cast<std::int64_t>(uint_literal()));
    }
    if (c == '(') {
      ++pos_;
      EtaExpression e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  template <typename F>
  EtaExpression guarded(F&& f, std::size_t at) {
    try {
      return f();
    } catch (const std::overflow_error& err) {
      fail_at(err.what(), at);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

EtaExpression parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace qdissect
