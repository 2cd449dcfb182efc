#pragma once

#include <cstdint>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>

namespace keplerreg {

/// Thrown when exact integer arithmetic would overflow 64 bits.
struct RationalOverflow : std::runtime_error {
  RationalOverflow() : std::runtime_error("rational arithmetic overflow") {}
};

/// Exact rational number on int64 with gcd normalization (den > 0).
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }

  double to_double() const { return double(num_) / double(den_); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  using i128 = __int128;

  static Rational from128(i128 n, i128 d) {
    if (d < 0) { n = -n; d = -d; }
    if (n == 0) return Rational();
    i128 g = gcd128(n < 0 ? -n : n, d);
    n /= g;
    d /= g;
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) throw RationalOverflow();
    Rational r;
    r.num_ = std::int64_t(n);
    r.den_ = std::int64_t(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    return a;
  }

  void normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    if (num_ == 0) { den_ = 1; return; }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    num_ /= g;
    den_ /= g;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Gaussian rational: exact complex number with rational real/imaginary parts.
class CRational {
 public:
  CRational() = default;
  CRational(Rational re) : re_(re) {}
  CRational(std::int64_t re) : re_(re) {}
  CRational(Rational re, Rational im) : re_(re), im_(im) {}

  static CRational i() { return CRational(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  friend CRational operator+(const CRational& a, const CRational& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend CRational operator-(const CRational& a, const CRational& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend CRational operator*(const CRational& a, const CRational& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend CRational operator/(const CRational& a, const CRational& b) {
    Rational n = b.re_ * b.re_ + b.im_ * b.im_;
    if (n.is_zero()) throw std::domain_error("complex rational division by zero");
    return {(a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n};
  }
  CRational operator-() const { return {-re_, -im_}; }
  CRational conj() const { return {re_, -im_}; }
  CRational& operator+=(const CRational& o) { return *this = *this + o; }
  CRational& operator-=(const CRational& o) { return *this = *this - o; }
  CRational& operator*=(const CRational& o) { return *this = *this * o; }

  friend bool operator==(const CRational& a, const CRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const CRational& a, const CRational& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

  std::string str() const {
    if (im_.is_zero()) return re_.str();
    if (re_.is_zero()) return im_.str() + "*i";
    return "(" + re_.str() + (im_ < Rational(0) ? "" : "+") + im_.str() + "*i)";
  }

 private:
  Rational re_;
  Rational im_;
};

}  // namespace keplerreg
