#pragma once

// Exact ordered fields: the rationals and the real quadratic field Q(sqrt 2).
//
// Both types keep canonical form after every operation. Mixing the two in an
// arithmetic expression does not compile: QuadSqrt2 only converts from a
// Rational explicitly, via field_cast.

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ksmooth {

enum class FieldTag { Rational, QuadSqrt2 };

std::string_view field_tag_name(FieldTag tag);   // "rational" | "quad-sqrt2"
FieldTag parse_field_tag(std::string_view text);

class Rational {
 public:
  static constexpr FieldTag tag = FieldTag::Rational;

  Rational() = default;
  Rational(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpq_class value);

  /// Parses `'-'? digits ('/' digits)?`. Rejects quadratic literals.
  static Rational parse(std::string_view text);

  const mpq_class& value() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  Rational abs() const;
  Rational inverse() const;
  double to_double() const { return v_.get_d(); }
  std::size_t bit_size() const;
  std::string to_string() const { return v_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

/// a + b*sqrt(2) with rational a, b.
class QuadSqrt2 {
 public:
  static constexpr FieldTag tag = FieldTag::QuadSqrt2;

  QuadSqrt2() = default;
  QuadSqrt2(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  explicit QuadSqrt2(Rational a, Rational b = Rational()) : a_(std::move(a)), b_(std::move(b)) {}

  static QuadSqrt2 sqrt2() { return QuadSqrt2(Rational(0), Rational(1)); }

  /// Parses the quadratic literal grammar, where `r2` denotes sqrt(2).
  static QuadSqrt2 parse(std::string_view text);

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }

  /// Exact sign. With a, b of opposite signs the term with the larger
  /// square (a^2 against 2 b^2) wins.
  int sign() const;
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  QuadSqrt2 abs() const { return sign() < 0 ? -*this : *this; }
  QuadSqrt2 conjugate() const { return QuadSqrt2(a_, -b_); }
  QuadSqrt2 inverse() const;
  double to_double() const;
  std::size_t bit_size() const { return a_.bit_size() + b_.bit_size(); }
  std::string to_string() const;

  QuadSqrt2 operator-() const { return QuadSqrt2(-a_, -b_); }
  QuadSqrt2& operator+=(const QuadSqrt2& o);
  QuadSqrt2& operator-=(const QuadSqrt2& o);
  QuadSqrt2& operator*=(const QuadSqrt2& o);
  QuadSqrt2& operator/=(const QuadSqrt2& o);

  friend QuadSqrt2 operator+(QuadSqrt2 a, const QuadSqrt2& b) { return a += b; }
  friend QuadSqrt2 operator-(QuadSqrt2 a, const QuadSqrt2& b) { return a -= b; }
  friend QuadSqrt2 operator*(QuadSqrt2 a, const QuadSqrt2& b) { return a *= b; }
  friend QuadSqrt2 operator/(QuadSqrt2 a, const QuadSqrt2& b) { return a /= b; }

  friend bool operator==(const QuadSqrt2& x, const QuadSqrt2& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const QuadSqrt2& x, const QuadSqrt2& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational a_;
  Rational b_;
};

template <class K>
concept ExactField = requires(const K& x, std::string_view s) {
  { K::tag } -> std::convertible_to<FieldTag>;
  { K::parse(s) } -> std::same_as<K>;
  { x.sign() } -> std::convertible_to<int>;
  { x.is_zero() } -> std::convertible_to<bool>;
  { x.inverse() } -> std::same_as<K>;
  { x.to_string() } -> std::convertible_to<std::string>;
  { x.bit_size() } -> std::convertible_to<std::size_t>;
  { x + x } -> std::same_as<K>;
  { x * x } -> std::same_as<K>;
  { x / x } -> std::same_as<K>;
  { x <=> x } -> std::convertible_to<std::strong_ordering>;
};

/// Embeds a rational into K.
template <ExactField K>
K field_cast(const Rational& r) {
  if constexpr (std::same_as<K, Rational>) {
    return r;
  } else {
    return K(r);
  }
}

template <ExactField K>
K abs(const K& x) {
  return x.abs();
}

}  // namespace ksmooth
