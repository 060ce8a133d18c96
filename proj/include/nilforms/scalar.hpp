#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nilforms {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error
{
public:
  DivisionByZero() : Error("division by zero") {}
};

class ParseError : public Error
{
public:
  using Error::Error;
};

// Exact Gaussian rational a + b*i with a, b in Q. Both parts are kept as
// canonical GMP fractions, so equality is structural.
class Scalar
{
public:
  Scalar() = default;
  Scalar(long re) : re_(re) {}  // NOLINT: implicit integer promotion is convenient
  Scalar(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im))
  {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Scalar i() { return Scalar(0, 1); }
  static Scalar rational(long num, long den);

  // Accepts RAT | RAT(+|-)RAT"i" | RAT"i" with RAT = ["-"]digits["/"digits].
  // A bare "i" / "-i" is also accepted.
  static Scalar parse(std::string_view text);

  const mpq_class &re() const { return re_; }
  const mpq_class &im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_positive_real() const { return sgn(im_) == 0 && sgn(re_) > 0; }
  bool is_negative_real() const { return sgn(im_) == 0 && sgn(re_) < 0; }
  bool is_one() const { return sgn(im_) == 0 && re_ == 1; }

  Scalar conj() const { return Scalar(re_, -im_); }
  // |z|^2, always a non-negative rational.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar &operator+=(const Scalar &o);
  Scalar &operator-=(const Scalar &o);
  Scalar &operator*=(const Scalar &o);
  Scalar &operator/=(const Scalar &o);

  friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }
  friend bool operator==(const Scalar &a, const Scalar &b) { return a.re_ == b.re_ && a.im_ == b.im_; }

  std::string to_string() const;

private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream &operator<<(std::ostream &os, const Scalar &s);

/// i^k for any integer k.
Scalar i_power(long k);

/// sigma_p = i^{p^2} 2^{-p}, the normalisation making sigma_p psi ^ conj(psi) real.
Scalar sigma_const(int p);

}  // namespace nilforms
