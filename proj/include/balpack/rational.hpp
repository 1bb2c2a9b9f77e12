#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

#include "balpack/errors.hpp"

namespace balpack {

/// Exact arbitrary-precision fraction, always stored in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long long n) : v_(mpz_from_ll(n)) {}
  Rational(long n) : v_(n) {}
  Rational(int n) : v_(n) {}
  Rational(long long num, long long den) {
    if (den == 0) throw Error(Errc::invalid_input, "zero denominator");
    v_ = mpq_class(mpz_from_ll(num), mpz_from_ll(den));
    v_.canonicalize();
  }
  explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw Error(Errc::invalid_input, "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  static mpz_class mpz_from_ll(long long x) {
    static_assert(sizeof(long) == sizeof(long long));
    return mpz_class(static_cast<long>(x));
  }

  static mpz_class mpz_from_i128(__int128 x) {
    bool neg = x < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
    mpz_class hi(static_cast<unsigned long>(u >> 64));
    mpz_class lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
    mpz_class z = (hi << 64) + lo;
    return neg ? mpz_class(-z) : z;
  }

  static Rational from_i128(__int128 num, __int128 den) {
    if (den == 0) throw Error(Errc::invalid_input, "zero denominator");
    return Rational(mpz_from_i128(num), mpz_from_i128(den));
  }

  /// Parses "p", "-p" or "p/q".
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
      return Rational(from_string_(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (num.empty() || den.empty()) throw Error(Errc::invalid_input, "bad rational '" + s + "'");
    mpq_class q(from_string_(num), from_string_(den));
    if (q.get_den() == 0) throw Error(Errc::invalid_input, "zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(std::move(q));
  }

  /// "p/q" in lowest terms, or just "p" when the denominator is 1.
  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }

  long long num_ll() const { return to_ll_(v_.get_num()); }
  long long den_ll() const { return to_ll_(v_.get_den()); }

  const mpq_class& raw() const { return v_; }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.v_ == 0) throw Error(Errc::invalid_input, "division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

 private:
  static mpz_class from_string_(const std::string& s) {
    mpz_class z;
    if (mpz_set_str(z.get_mpz_t(), s.c_str(), 10) != 0)
      throw Error(Errc::invalid_input, "bad integer '" + s + "'");
    return z;
  }
  static long long to_ll_(const mpz_class& z) {
    if (!z.fits_slong_p()) throw Error(Errc::instance_too_large, "value exceeds 64 bits");
    return z.get_si();
  }

  mpq_class v_;
};

/// Ceiling of a/b over exact integers, b > 0.
inline mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace balpack
