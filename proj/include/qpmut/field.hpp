#pragma once

// Exact scalar fields. Elements are self-contained values (a prime-field
// element remembers its modulus), while the field objects construct
// constants, parse and print, and draw random elements.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <concepts>
#include <cstdint>
#include <random>
#include <string>

#include "error.hpp"

namespace qpmut {

class Fp {
 public:
  Fp() = default;
  Fp(std::uint32_t value, std::uint32_t modulus) : v_(value % modulus), p_(modulus) {}

  std::uint32_t value() const noexcept { return v_; }
  std::uint32_t modulus() const noexcept { return p_; }
  bool is_zero() const noexcept { return v_ == 0; }

  friend Fp operator+(Fp a, Fp b) {
    std::uint64_t s = std::uint64_t(a.v_) + b.v_;
    if (s >= a.p_) s -= a.p_;
    return raw(std::uint32_t(s), a.p_);
  }
  friend Fp operator-(Fp a, Fp b) { return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_, a.p_); }
  friend Fp operator*(Fp a, Fp b) { return raw(std::uint32_t(std::uint64_t(a.v_) * b.v_ % a.p_), a.p_); }
  Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }

  Fp inverse() const {
    if (v_ == 0) fail(ErrorKind::DivisionByZero, "inverse of zero in F_" + std::to_string(p_));
    // Extended Euclid on (v, p).
    std::int64_t t = 0, new_t = 1, r = p_, new_r = v_;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      t -= q * new_t;
      std::swap(t, new_t);
      r -= q * new_r;
      std::swap(r, new_r);
    }
    if (t < 0) t += p_;
    return raw(std::uint32_t(t), p_);
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }

  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }

  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
  friend auto operator<=>(Fp a, Fp b) { return a.v_ <=> b.v_; }

  std::string to_string() const { return std::to_string(v_); }

 private:
  static Fp raw(std::uint32_t v, std::uint32_t p) {
    Fp r;
    r.v_ = v;
    r.p_ = p;
    return r;
  }
  std::uint32_t v_ = 0;
  std::uint32_t p_ = 1;
};

using BigRational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

class Rational {
 public:
  Rational() = default;
  Rational(long long n) : q_(n) {}
  explicit Rational(BigRational q) : q_(std::move(q)) {}

  const BigRational& value() const noexcept { return q_; }
  bool is_zero() const { return q_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.q_ + b.q_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.q_ - b.q_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.q_ * b.q_); }
  Rational operator-() const { return Rational(-q_); }
  Rational inverse() const {
    if (q_ == 0) fail(ErrorKind::DivisionByZero, "inverse of rational zero");
    return Rational(1 / q_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.q_ < b.q_) return std::strong_ordering::less;
    if (b.q_ < a.q_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    auto num = boost::multiprecision::numerator(q_);
    auto den = boost::multiprecision::denominator(q_);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }

 private:
  BigRational q_;
};

namespace detail {

inline bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline BigInt parse_bigint(const std::string& s) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
  if (i == s.size()) fail(ErrorKind::ParseError, "empty integer in '" + s + "'");
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') fail(ErrorKind::ParseError, "bad digit in '" + s + "'");
    v = v * 10 + (s[i] - '0');
  }
  return neg ? BigInt(-v) : v;
}

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace detail

/// F_p for a runtime prime p.
class PrimeField {
 public:
  using Elem = Fp;
  static constexpr std::uint32_t default_prime = 32003;

  explicit PrimeField(std::uint32_t p = default_prime) : p_(p) {
    if (!detail::is_prime(p) || p > (1u << 31))
      fail(ErrorKind::ParseError, "modulus " + std::to_string(p) + " is not a prime below 2^31");
  }

  std::uint32_t characteristic() const noexcept { return p_; }
  bool is_finite() const noexcept { return true; }
  std::string name() const { return "fp:" + std::to_string(p_); }

  Elem zero() const { return Fp(0, p_); }
  Elem one() const { return Fp(1, p_); }
  Elem from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return Fp(static_cast<std::uint32_t>(r), p_);
  }

  /// Accepts integers and fractions "a/b"; the result is reduced mod p.
  Elem parse(const std::string& text) const {
    std::string s = detail::trim(text);
    auto slash = s.find('/');
    auto reduce = [&](const std::string& part) {
      BigInt v = detail::parse_bigint(detail::trim(part));
      BigInt r = v % p_;
      if (r < 0) r += p_;
      return Fp(static_cast<std::uint32_t>(r), p_);
    };
    if (slash == std::string::npos) return reduce(s);
    return reduce(s.substr(0, slash)) / reduce(s.substr(slash + 1));
  }

  std::string format(const Elem& x) const { return x.to_string(); }

  template <class Rng>
  Elem random(Rng& rng) const {
    std::uniform_int_distribution<std::uint32_t> d(0, p_ - 1);
    return Fp(d(rng), p_);
  }
  template <class Rng>
  Elem random_nonzero(Rng& rng) const {
    std::uniform_int_distribution<std::uint32_t> d(1, p_ - 1);
    return Fp(d(rng), p_);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

/// The rationals, with arbitrary-precision numerators and denominators.
class RationalField {
 public:
  using Elem = Rational;

  bool is_finite() const noexcept { return false; }
  std::uint32_t characteristic() const noexcept { return 0; }
  std::string name() const { return "rational"; }

  Elem zero() const { return Rational(0); }
  Elem one() const { return Rational(1); }
  Elem from_int(long long n) const { return Rational(n); }

  Elem parse(const std::string& text) const {
    std::string s = detail::trim(text);
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigRational(detail::parse_bigint(s)));
    BigInt num = detail::parse_bigint(detail::trim(s.substr(0, slash)));
    BigInt den = detail::parse_bigint(detail::trim(s.substr(slash + 1)));
    if (den == 0) fail(ErrorKind::DivisionByZero, "zero denominator in '" + text + "'");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return Rational(BigRational(num, den));
  }

  std::string format(const Elem& x) const { return x.to_string(); }

  // Small integers keep rational instances readable; genericity arguments
  // only need a large enough sample set.
  template <class Rng>
  Elem random(Rng& rng) const {
    std::uniform_int_distribution<int> d(-9, 9);
    return Rational(d(rng));
  }
  template <class Rng>
  Elem random_nonzero(Rng& rng) const {
    std::uniform_int_distribution<int> d(1, 9);
    std::bernoulli_distribution sign(0.5);
    int v = d(rng);
    return Rational(sign(rng) ? v : -v);
  }

  friend bool operator==(const RationalField&, const RationalField&) = default;
};

template <class F>
concept ExactField = requires(const F& f, typename F::Elem a, std::mt19937_64& rng, std::string s) {
  { f.zero() } -> std::same_as<typename F::Elem>;
  { f.one() } -> std::same_as<typename F::Elem>;
  { f.from_int(1) } -> std::same_as<typename F::Elem>;
  { f.parse(s) } -> std::same_as<typename F::Elem>;
  { f.format(a) } -> std::convertible_to<std::string>;
  { f.random(rng) } -> std::same_as<typename F::Elem>;
  { a + a } -> std::same_as<typename F::Elem>;
  { a * a } -> std::same_as<typename F::Elem>;
  { a.inverse() } -> std::same_as<typename F::Elem>;
  { a.is_zero() } -> std::convertible_to<bool>;
};

static_assert(ExactField<PrimeField>);
static_assert(ExactField<RationalField>);

}  // namespace qpmut
