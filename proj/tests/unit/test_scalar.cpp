#include <doctest.h>

#include <cmath>

#include "ksmooth/error.hpp"
#include "ksmooth/random.hpp"
#include "ksmooth/scalar.hpp"

using namespace ksmooth;

namespace {

QuadSqrt2 q(long a_num, long a_den, long b_num, long b_den) {
  return QuadSqrt2(Rational(a_num, a_den), Rational(b_num, b_den));
}

template <typename A, typename B>
concept Addable = requires(A a, B b) { a + b; };

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InternalInconsistency;
}

QuadSqrt2 random_quad(Rng& rng) {
  return QuadSqrt2(rng.rational(20, rng.uniform(1, 9)), rng.rational(20, rng.uniform(1, 9)));
}

}  // namespace

TEST_CASE("arithmetic examples") {
  CHECK(q(1, 2, 1, 2) * q(-1, 1, 1, 1) == q(1, 2, 0, 1));
  CHECK(Rational(3, 4) + Rational(1, 4) == Rational(1));
  CHECK(QuadSqrt2::sqrt2() * QuadSqrt2::sqrt2() == QuadSqrt2(2));
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(6, -4).denominator() == 2);
  CHECK(Rational(0, 5).to_string() == "0");
}

TEST_CASE("sign examples") {
  CHECK(q(3, 1, -2, 1).sign() == 1);
  CHECK(QuadSqrt2(0).sign() == 0);
  CHECK(q(1, 1, -1, 1).sign() == -1);
  CHECK(q(-3, 1, 2, 1).sign() == -1);
  CHECK(q(-1, 1, 1, 1).sign() == 1);
  CHECK(Rational(-1, 7).sign() == -1);
}

TEST_CASE("parse examples") {
  CHECK(QuadSqrt2::parse("1/2+1/2*r2") == q(1, 2, 1, 2));
  CHECK(Rational::parse("-3/7") == Rational(-3, 7));
  CHECK(QuadSqrt2::parse("r2-1") == q(-1, 1, 1, 1));
  CHECK(QuadSqrt2::parse("-r2") == q(0, 1, -1, 1));
  CHECK(QuadSqrt2::parse("3/4*r2") == q(0, 1, 3, 4));
  CHECK(QuadSqrt2::parse("-2-3*r2") == q(-2, 1, -3, 1));
  CHECK(QuadSqrt2::parse("5") == QuadSqrt2(5));
  CHECK(Rational::parse("4/6") == Rational(2, 3));
}

TEST_CASE("serialization") {
  CHECK(q(1, 2, 1, 2).to_string() == "1/2+1/2*r2");
  CHECK(q(-1, 1, 1, 1).to_string() == "-1+r2");
  CHECK(q(0, 1, -1, 1).to_string() == "-r2");
  CHECK(q(0, 1, 1, 1).to_string() == "r2");
  CHECK(q(2, 1, -3, 4).to_string() == "2-3/4*r2");
  CHECK(QuadSqrt2(0).to_string() == "0");
  CHECK(Rational(-3, 7).to_string() == "-3/7");
}

TEST_CASE("parse errors") {
  CHECK(code_of([] { Rational::parse("r2"); }) == ErrorCode::QuadraticUnderRational);
  CHECK(code_of([] { Rational::parse("1+r2"); }) == ErrorCode::QuadraticUnderRational);
  CHECK(code_of([] { Rational::parse("1 /2"); }) == ErrorCode::Syntax);
  CHECK(code_of([] { Rational::parse(""); }) == ErrorCode::Syntax);
  CHECK(code_of([] { Rational::parse("1/0"); }) == ErrorCode::Syntax);
  CHECK(code_of([] { QuadSqrt2::parse("1+"); }) == ErrorCode::Syntax);
  CHECK(code_of([] { QuadSqrt2::parse("r3"); }) == ErrorCode::Syntax);
  CHECK(code_of([] { QuadSqrt2::parse("1/2*"); }) == ErrorCode::Syntax);
  CHECK(code_of([] { QuadSqrt2::parse("--1"); }) == ErrorCode::Syntax);
  try {
    QuadSqrt2::parse("1/2+1/x*r2");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}

TEST_CASE("division by zero") {
  CHECK(code_of([] { (void)(Rational(1) / Rational(0)); }) == ErrorCode::DivisionByZero);
  CHECK(code_of([] { (void)QuadSqrt2(0).inverse(); }) == ErrorCode::DivisionByZero);
}

TEST_CASE("mixed-field arithmetic does not compile") {
  static_assert(!Addable<Rational, QuadSqrt2>);
  static_assert(!Addable<QuadSqrt2, Rational>);
  static_assert(!std::is_convertible_v<Rational, QuadSqrt2>);
  static_assert(Addable<QuadSqrt2, QuadSqrt2>);
  CHECK(field_cast<QuadSqrt2>(Rational(1, 3)) == q(1, 3, 0, 1));
  CHECK(parse_field_tag("quad-sqrt2") == FieldTag::QuadSqrt2);
  CHECK(code_of([] { parse_field_tag("reals"); }) == ErrorCode::InvalidInput);
}

TEST_CASE("property: field axioms on random triples") {
  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_quad(rng), b = random_quad(rng), c = random_quad(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a - a == QuadSqrt2(0));
    if (!a.is_zero()) CHECK(a * a.inverse() == QuadSqrt2(1));
  }
}

TEST_CASE("property: ordering is total and compatible") {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_quad(rng), b = random_quad(rng), c = random_quad(rng);
    CHECK(((a < b) + (a == b) + (a > b)) == 1);
    if (a < b) {
      CHECK(a + c < b + c);
      if (c.sign() > 0) CHECK(a * c < b * c);
    }
  }
}

TEST_CASE("property: exact sign agrees with floating point") {
  Rng rng(13);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto x = random_quad(rng);
    const double d = x.rational_part().to_double() + x.sqrt2_part().to_double() * std::sqrt(2.0);
    if (std::abs(d) < 1e-9) continue;
    CHECK(x.sign() == (d > 0 ? 1 : -1));
    ++checked;
  }
  CHECK(checked > 9000);
}

TEST_CASE("property: serialization round-trips") {
  Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    const auto x = random_quad(rng);
    CHECK(QuadSqrt2::parse(x.to_string()) == x);
    const auto r = x.rational_part();
    CHECK(Rational::parse(r.to_string()) == r);
  }
}
