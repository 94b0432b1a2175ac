#include "ksmooth/scalar.hpp"

#include <cctype>
#include <cmath>
#include <optional>

#include "ksmooth/error.hpp"

namespace ksmooth {

std::string_view field_tag_name(FieldTag tag) {
  return tag == FieldTag::Rational ? "rational" : "quad-sqrt2";
}

FieldTag parse_field_tag(std::string_view text) {
  if (text == "rational") return FieldTag::Rational;
  if (text == "quad-sqrt2") return FieldTag::QuadSqrt2;
  fail(ErrorCode::InvalidInput, "unknown field '" + std::string(text) +
                                    "' (expected \"rational\" or \"quad-sqrt2\")");
}

namespace {

// Recursive-descent cursor over a literal. On failure, `error_pos` records the
// furthest offset reached so the caller can report it.
struct Cursor {
  explicit Cursor(std::string_view t) : text(t) {}

  std::string_view text;
  std::size_t pos = 0;
  std::size_t error_pos = 0;
  std::string error;

  bool at_end() const { return pos == text.size(); }
  bool peek(char c) const { return pos < text.size() && text[pos] == c; }
  bool peek_r2() const { return text.substr(pos, 2) == "r2"; }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }

  void note(std::string message) {
    if (pos >= error_pos) {
      error_pos = pos;
      error = std::move(message);
    }
  }

  std::optional<mpz_class> digits() {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) {
      note("expected digits");
      return std::nullopt;
    }
    return mpz_class(std::string(text.substr(start, pos - start)), 10);
  }

  // rational := '-'? digits ('/' digits)?
  std::optional<Rational> rational() {
    bool neg = accept('-');
    auto num = digits();
    if (!num) return std::nullopt;
    mpz_class den = 1;
    if (accept('/')) {
      std::size_t den_pos = pos;
      auto d = digits();
      if (!d) return std::nullopt;
      if (*d == 0) {
        pos = den_pos;
        note("zero denominator");
        return std::nullopt;
      }
      den = *d;
    }
    mpq_class q(neg ? mpz_class(-*num) : *num, den);
    q.canonicalize();
    return Rational(q);
  }

  bool r2() {
    if (!peek_r2()) {
      note("expected 'r2'");
      return false;
    }
    pos += 2;
    return true;
  }

  bool end() {
    if (!at_end()) {
      note("unexpected character '" + std::string(1, text[pos]) + "'");
      return false;
    }
    return true;
  }
};

// rational (('+'|'-') (rational '*')? 'r2')?
std::optional<QuadSqrt2> quad_first(Cursor& c) {
  auto a = c.rational();
  if (!a) return std::nullopt;
  if (c.at_end()) return QuadSqrt2(*a);
  bool neg = false;
  if (c.accept('-')) {
    neg = true;
  } else if (!c.accept('+')) {
    c.note("expected '+' or '-'");
    return std::nullopt;
  }
  Rational b(1);
  if (!c.peek_r2()) {
    auto coeff = c.rational();
    if (!coeff) return std::nullopt;
    if (!c.accept('*')) {
      c.note("expected '*'");
      return std::nullopt;
    }
    b = *coeff;
  }
  if (!c.r2() || !c.end()) return std::nullopt;
  return QuadSqrt2(*a, neg ? -b : b);
}

// '-'? (rational '*')? 'r2' (('+'|'-') rational)?
// The trailing rational term admits literals such as "r2-1".
std::optional<QuadSqrt2> quad_second(Cursor& c) {
  bool neg = c.accept('-');
  Rational b(1);
  if (!c.peek_r2()) {
    auto coeff = c.rational();
    if (!coeff) return std::nullopt;
    if (!c.accept('*')) {
      c.note("expected '*'");
      return std::nullopt;
    }
    b = *coeff;
  }
  if (!c.r2()) return std::nullopt;
  Rational a(0);
  if (!c.at_end()) {
    bool minus = false;
    if (c.accept('-')) {
      minus = true;
    } else if (!c.accept('+')) {
      c.note("expected '+' or '-'");
      return std::nullopt;
    }
    auto tail = c.rational();
    if (!tail || !c.end()) return std::nullopt;
    a = minus ? -*tail : *tail;
  }
  return QuadSqrt2(a, neg ? -b : b);
}

[[noreturn]] void syntax_error(std::string_view text, const Cursor& c) {
  fail(ErrorCode::Syntax, "invalid literal '" + std::string(text) + "' at position " +
                              std::to_string(c.error_pos) + ": " + c.error);
}

}  // namespace

Rational::Rational(long num, long den) {
  require(den != 0, ErrorCode::DivisionByZero, "rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  if (text.find("r2") != std::string_view::npos) {
    fail(ErrorCode::QuadraticUnderRational,
         "literal '" + std::string(text) + "' uses r2 but the field is rational");
  }
  Cursor c(text);
  auto r = c.rational();
  if (!r || !c.end()) syntax_error(text, c);
  return *r;
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(v_))); }

Rational Rational::inverse() const {
  require(!is_zero(), ErrorCode::DivisionByZero, "inverse of zero");
  return Rational(mpq_class(1 / v_));
}

std::size_t Rational::bit_size() const {
  return mpz_sizeinbase(v_.get_num_mpz_t(), 2) + mpz_sizeinbase(v_.get_den_mpz_t(), 2);
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  require(!o.is_zero(), ErrorCode::DivisionByZero, "division by zero");
  v_ /= o.v_;
  return *this;
}

QuadSqrt2 QuadSqrt2::parse(std::string_view text) {
  Cursor first(text);
  if (auto q = quad_first(first)) return *q;
  Cursor second(text);
  if (auto q = quad_second(second)) return *q;
  syntax_error(text, first.error_pos >= second.error_pos ? first : second);
}

int QuadSqrt2::sign() const {
  int sa = a_.sign();
  int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  Rational a2 = a_ * a_;
  Rational b2 = Rational(2) * b_ * b_;
  return a2 > b2 ? sa : sb;
}

QuadSqrt2 QuadSqrt2::inverse() const {
  require(!is_zero(), ErrorCode::DivisionByZero, "inverse of zero");
  Rational norm = a_ * a_ - Rational(2) * b_ * b_;
  return QuadSqrt2(a_ / norm, -b_ / norm);
}

double QuadSqrt2::to_double() const { return a_.to_double() + b_.to_double() * std::sqrt(2.0); }

std::string QuadSqrt2::to_string() const {
  if (b_.is_zero()) return a_.to_string();
  std::string tail;
  Rational mag = b_.abs();
  tail = (mag == Rational(1)) ? "r2" : mag.to_string() + "*r2";
  if (a_.is_zero()) return (b_.sign() < 0 ? "-" : "") + tail;
  return a_.to_string() + (b_.sign() < 0 ? "-" : "+") + tail;
}

QuadSqrt2& QuadSqrt2::operator+=(const QuadSqrt2& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}
QuadSqrt2& QuadSqrt2::operator-=(const QuadSqrt2& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}
QuadSqrt2& QuadSqrt2::operator*=(const QuadSqrt2& o) {
  // (a + b r)(c + d r) = (ac + 2bd) + (ad + bc) r
  Rational a = a_ * o.a_ + Rational(2) * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}
QuadSqrt2& QuadSqrt2::operator/=(const QuadSqrt2& o) { return *this *= o.inverse(); }

}  // namespace ksmooth
