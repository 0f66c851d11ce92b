#include "eppa/label.hpp"

#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace eppa {

namespace {

using Wide = __int128;

std::int64_t narrow(Wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("rational arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make(Wide num, Wide den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(narrow(num), narrow(den));
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  Wide n = numerator, d = denominator;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Wide g = wide_gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = narrow(n);
  den_ = narrow(d);
}

Rational Rational::operator+(const Rational& o) const {
  if (den_ == o.den_) return make(Wide(num_) + o.num_, den_);
  return make(Wide(num_) * o.den_ + Wide(o.num_) * den_, Wide(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  if (den_ == o.den_) return make(Wide(num_) - o.num_, den_);
  return make(Wide(num_) * o.den_ - Wide(o.num_) * den_, Wide(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return make(Wide(num_) * o.num_, Wide(den_) * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  return make(Wide(num_) * o.den_, Wide(den_) * o.num_);
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  Wide lhs = Wide(a.num_) * b.den_;
  Wide rhs = Wide(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {

std::int64_t parse_natural(std::string_view digits, std::string_view whole) {
  if (digits.empty())
    throw std::invalid_argument("label '" + std::string(whole) + "': missing digits");
  if (digits.size() > 1 && digits.front() == '0')
    throw std::invalid_argument("label '" + std::string(whole) + "': leading zero");
  Wide v = 0;
  for (char c : digits) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("label '" + std::string(whole) +
                                  "': unexpected character '" + std::string(1, c) + "'");
    v = v * 10 + (c - '0');
    if (v > std::numeric_limits<std::int64_t>::max())
      throw std::invalid_argument("label '" + std::string(whole) + "': value too large");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_natural(text, text));
  std::int64_t p = parse_natural(text.substr(0, slash), text);
  std::int64_t q = parse_natural(text.substr(slash + 1), text);
  if (q == 0)
    throw std::invalid_argument("label '" + std::string(text) + "': zero denominator");
  if (q == 1)
    throw std::invalid_argument("label '" + std::string(text) +
                                "': not in lowest terms (write the integer)");
  if (std::gcd(p, q) != 1)
    throw std::invalid_argument("label '" + std::string(text) + "': not in lowest terms");
  return Rational(p, q);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Label parse_label(std::string_view text) {
  Rational r = Rational::parse(text);
  if (!r.is_positive())
    throw std::invalid_argument("label '" + std::string(text) + "': must be positive");
  return r;
}

}  // namespace eppa
