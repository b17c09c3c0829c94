// Copyright 2026 The nspoly Authors
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

#pragma once

// Exact rational numbers.
//
// Values whose numerator and denominator fit in a signed 64-bit word are
// stored inline and operated on with 128-bit intermediates. Anything larger
// is promoted to a heap-allocated GMP rational and demoted again as soon as
// a result fits. The representation is always canonical (reduced, positive
// denominator, small whenever possible), so equality and hashing can work on
// the raw fields.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace nspoly {

using Integer = mpz_class;

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline constexpr std::int64_t kSmallMax = std::numeric_limits<std::int64_t>::max();

inline bool fits_small(i128 v) { return v <= kSmallMax && v >= -kSmallMax; }

inline u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

inline u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0)
      return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline mpz_class mpz_from_i128(i128 v) {
  const bool neg = v < 0;
  u128 m = abs128(v);
  mpz_class hi(static_cast<unsigned long>(m >> 64));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(m)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace detail

class Rational {
 public:
  Rational() noexcept : num_(0), den_(1) {}
  Rational(int n) noexcept : num_(n), den_(1) {}                         // NOLINT
  Rational(long n) : Rational(static_cast<long long>(n)) {}             // NOLINT
  Rational(long long n) { assign(static_cast<detail::i128>(n), 1); }    // NOLINT

  // Canonical n/d. Throws std::domain_error("division by zero") for d == 0.
  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("division by zero");
    assign(static_cast<detail::i128>(n), static_cast<detail::i128>(d));
  }

  explicit Rational(const mpq_class& q) { assign_big(q); }
  explicit Rational(const mpz_class& z) { assign_big(mpq_class(z)); }

  Rational(const Rational& o) : den_(o.den_) {
    if (o.den_ == 0)
      big_ = new mpq_class(*o.big_);
    else
      num_ = o.num_;
  }
  Rational(Rational&& o) noexcept : den_(o.den_) {
    if (o.den_ == 0) {
      big_ = o.big_;
      o.den_ = 1;
      o.num_ = 0;
    } else {
      num_ = o.num_;
    }
  }
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      Rational tmp(o);
      swap(tmp);
    }
    return *this;
  }
  Rational& operator=(Rational&& o) noexcept {
    if (this != &o) {
      release();
      den_ = o.den_;
      if (o.den_ == 0) {
        big_ = o.big_;
        o.den_ = 1;
        o.num_ = 0;
      } else {
        num_ = o.num_;
      }
    }
    return *this;
  }
  ~Rational() { release(); }

  void swap(Rational& o) noexcept {
    std::swap(den_, o.den_);
    std::swap(num_, o.num_);  // union storage: swapping the wider member suffices
  }

  bool is_small() const noexcept { return den_ != 0; }
  bool is_zero() const noexcept { return den_ == 1 && num_ == 0; }
  bool is_integer() const { return den_ == 1 || (den_ == 0 && big_->get_den() == 1); }
  int sign() const {
    if (den_ != 0) return (num_ > 0) - (num_ < 0);
    return sgn(*big_);
  }

  Integer numerator() const { return den_ != 0 ? Integer(static_cast<long>(num_)) : Integer(big_->get_num()); }
  Integer denominator() const { return den_ != 0 ? Integer(static_cast<long>(den_)) : Integer(big_->get_den()); }

  // Inline fields; valid only when is_small().
  std::int64_t small_num() const noexcept { return num_; }
  std::int64_t small_den() const noexcept { return den_; }

  mpq_class to_mpq() const {
    if (den_ == 0) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  }

  double to_double() const {
    return den_ != 0 ? static_cast<double>(num_) / static_cast<double>(den_) : big_->get_d();
  }

  // "n/d", or "n" when the denominator is 1.
  std::string str() const {
    if (den_ != 0) {
      return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }
    return big_->get_den() == 1 ? big_->get_num().get_str() : big_->get_str();
  }

  // Parses "n", "-n" or "n/d" with arbitrary-precision integers.
  static Rational parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty rational token");
    for (char c : text) {
      if (!(c == '-' || c == '+' || c == '/' || (c >= '0' && c <= '9')))
        throw std::invalid_argument("malformed rational token '" + std::string(text) + "'");
    }
    std::string s(text);
    if (s.front() == '+') s.erase(0, 1);
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational token '" + std::string(text) + "'");
    if (q.get_den() == 0) throw std::domain_error("division by zero");
    q.canonicalize();
    return Rational(q);
  }

  Rational operator-() const {
    if (den_ != 0) return Rational(RawTag{}, -num_, den_);
    return Rational(mpq_class(-*big_));
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ != 0 && b.den_ != 0) {
      using detail::i128;
      if (a.den_ == b.den_) {
        i128 n = static_cast<i128>(a.num_) + b.num_;
        if (a.den_ == 1) return from_i128(n, 1);
        std::int64_t g = static_cast<std::int64_t>(std::gcd(static_cast<std::uint64_t>(detail::abs128(n) % static_cast<detail::u128>(a.den_)),
                                                            static_cast<std::uint64_t>(a.den_)));
        if (g == 0) g = a.den_;
        return from_i128(n / g, a.den_ / g);
      }
      std::int64_t g = std::gcd(a.den_, b.den_);
      i128 n = static_cast<i128>(a.num_) * (b.den_ / g) + static_cast<i128>(b.num_) * (a.den_ / g);
      i128 d = static_cast<i128>(a.den_ / g) * b.den_;
      if (g != 1) {
        std::int64_t g2 = static_cast<std::int64_t>(std::gcd(static_cast<std::uint64_t>(detail::abs128(n) % static_cast<detail::u128>(g)),
                                                             static_cast<std::uint64_t>(g)));
        if (g2 == 0) g2 = g;
        n /= g2;
        d /= g2;
      }
      return from_i128(n, d);
    }
    return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
  }

  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.den_ != 0 && b.den_ != 0) {
      using detail::i128;
      if (a.num_ == 0 || b.num_ == 0) return Rational();
      if (a.den_ == 1 && b.den_ == 1) return from_i128(static_cast<i128>(a.num_) * b.num_, 1);
      std::int64_t g1 = std::gcd(a.num_, b.den_);
      std::int64_t g2 = std::gcd(b.num_, a.den_);
      i128 n = static_cast<i128>(a.num_ / g1) * (b.num_ / g2);
      i128 d = static_cast<i128>(a.den_ / g2) * (b.den_ / g1);
      return from_i128(n, d);
    }
    return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    return a * b.reciprocal();
  }

  Rational reciprocal() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (den_ != 0) return num_ > 0 ? Rational(RawTag{}, den_, num_) : Rational(RawTag{}, -den_, -num_);
    return Rational(mpq_class(1 / *big_));
  }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (a.den_ != 0 && b.den_ != 0) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.den_ != 0 || b.den_ != 0) return false;  // canonical: big never equals small
    return *a.big_ == *b.big_;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.den_ != 0 && b.den_ != 0) {
      if (a.den_ == b.den_) return a.num_ <=> b.num_;
      detail::i128 l = static_cast<detail::i128>(a.num_) * b.den_;
      detail::i128 r = static_cast<detail::i128>(b.num_) * a.den_;
      return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const noexcept {
    if (den_ != 0) {
      std::uint64_t h = static_cast<std::uint64_t>(num_) * 0x9E3779B97F4A7C15ULL;
      h ^= static_cast<std::uint64_t>(den_) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    }
    return std::hash<std::string>{}(big_->get_str());
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  struct RawTag {};
  Rational(RawTag, std::int64_t n, std::int64_t d) noexcept : num_(n), den_(d) {}

  static Rational from_i128(detail::i128 n, detail::i128 d) {
    if (detail::fits_small(n) && detail::fits_small(d)) return Rational(RawTag{}, static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    mpq_class q(detail::mpz_from_i128(n), detail::mpz_from_i128(d));
    q.canonicalize();
    return Rational(q);
  }

  void assign(detail::i128 n, detail::i128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    detail::u128 g = detail::gcd128(detail::abs128(n), static_cast<detail::u128>(d));
    if (g > 1) {
      n /= static_cast<detail::i128>(g);
      d /= static_cast<detail::i128>(g);
    }
    if (n == 0) d = 1;
    if (detail::fits_small(n) && detail::fits_small(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
    } else {
      mpq_class q(detail::mpz_from_i128(n), detail::mpz_from_i128(d));
      den_ = 0;
      big_ = new mpq_class(q);
    }
  }

  void assign_big(const mpq_class& q) {
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != std::numeric_limits<long>::min() &&
        d.get_si() != std::numeric_limits<long>::min()) {
      num_ = n.get_si();
      den_ = d.get_si();
      if (num_ == 0) den_ = 1;
    } else {
      den_ = 0;
      big_ = new mpq_class(q);
    }
  }

  void release() noexcept {
    if (den_ == 0) {
      delete big_;
      den_ = 1;
      num_ = 0;
    }
  }

  union {
    std::int64_t num_;
    mpq_class* big_;
  };
  std::int64_t den_;  // 0 marks the GMP representation
};

inline Rational operator""_q(unsigned long long v) { return Rational(static_cast<long long>(v)); }

inline Rational abs(const Rational& r) { return r.abs(); }

struct RationalHash {
  std::size_t operator()(const Rational& r) const noexcept { return r.hash(); }
};

}  // namespace nspoly

template <>
struct std::hash<nspoly::Rational> {
  std::size_t operator()(const nspoly::Rational& r) const noexcept { return r.hash(); }
};
