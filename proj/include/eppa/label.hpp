#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace eppa {

/// Exact non-negative rational in canonical reduced form.
///
/// Edge labels are strictly positive; zero is representable only so that
/// differences and accumulated path lengths can share the type. Arithmetic
/// is checked: an intermediate that does not fit in 64 bits throws
/// std::overflow_error rather than wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t numerator, std::int64_t denominator = 1);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_positive() const { return num_ > 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator+(const Rational& other) const;
  Rational operator-(const Rational& other) const;
  Rational operator*(const Rational& other) const;
  Rational operator/(const Rational& other) const;
  Rational& operator+=(const Rational& other) { return *this = *this + other; }
  Rational& operator-=(const Rational& other) { return *this = *this - other; }

  /// Largest integer not exceeding the value.
  std::int64_t floor() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "p" or "p/q".
  std::string to_string() const;

  /// Parses "p" or "p/q". Only the canonical spelling is accepted: no sign,
  /// no leading zeros, q > 1 and gcd(p, q) = 1. Throws std::invalid_argument
  /// with a message naming the defect.
  static Rational parse(std::string_view text);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Edge label: a strictly positive rational distance.
using Label = Rational;

/// Parses a label and additionally rejects zero.
Label parse_label(std::string_view text);

}  // namespace eppa

template <>
struct std::hash<eppa::Rational> {
  std::size_t operator()(const eppa::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.numerator()) * 1000003u ^
           std::hash<std::int64_t>{}(r.denominator());
  }
};
