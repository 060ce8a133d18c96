#include "nilforms/scalar.hpp"

#include <cctype>
#include <ostream>

namespace nilforms {

namespace {

bool all_digits(std::string_view s)
{
  if (s.empty())
    return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      return false;
  return true;
}

// RAT = ["-"] digits ["/" digits]; an empty body is allowed only when
// allow_unit is set (for the "i" / "-i" shorthand) and then means 1.
mpq_class parse_rational(std::string_view s, bool allow_unit, std::string_view whole)
{
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty() && allow_unit)
    return neg ? mpq_class(-1) : mpq_class(1);

  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw ParseError("bad coefficient '" + std::string(whole) + "'");
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0)
    throw ParseError("zero denominator in coefficient '" + std::string(whole) + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

}  // namespace

Scalar Scalar::rational(long num, long den)
{
  if (den == 0)
    throw DivisionByZero();
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::parse(std::string_view text)
{
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      compact.push_back(c);
  std::string_view s = compact;
  if (s.empty())
    throw ParseError("empty coefficient");

  if (s.back() != 'i')
    return Scalar(parse_rational(s, false, text));

  s.remove_suffix(1);
  // Split "re(+|-)im" at the last sign that is not the leading one.
  std::size_t split = std::string_view::npos;
  for (std::size_t pos = s.size(); pos-- > 1;) {
    if (s[pos] == '+' || s[pos] == '-') {
      split = pos;
      break;
    }
  }
  if (split == std::string_view::npos)
    return Scalar(0, parse_rational(s, true, text));
  return Scalar(parse_rational(s.substr(0, split), false, text), parse_rational(s.substr(split), true, text));
}

Scalar &Scalar::operator+=(const Scalar &o)
{
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar &Scalar::operator-=(const Scalar &o)
{
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar &Scalar::operator*=(const Scalar &o)
{
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar &Scalar::operator/=(const Scalar &o)
{
  if (o.is_zero())
    throw DivisionByZero();
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  mpq_class den = o.norm();
  *this *= o.conj();
  re_ /= den;
  im_ /= den;
  return *this;
}

std::string Scalar::to_string() const
{
  if (sgn(im_) == 0)
    return re_.get_str();
  mpq_class abs_im = abs(im_);
  if (sgn(re_) == 0)
    return im_.get_str() + "i";
  return re_.get_str() + (sgn(im_) > 0 ? "+" : "-") + abs_im.get_str() + "i";
}

std::ostream &operator<<(std::ostream &os, const Scalar &s) { return os << s.to_string(); }

Scalar i_power(long k)
{
  switch (((k % 4) + 4) % 4) {
  case 0: return Scalar(1);
  case 1: return Scalar(0, 1);
  case 2: return Scalar(-1);
  default: return Scalar(0, -1);
  }
}

Scalar sigma_const(int p)
{
  if (p < 0)
    throw Error("sigma_p requires p >= 0");
  mpq_class scale(1);
  scale.get_den() <<= p;  // 2^{-p}
  scale.canonicalize();
  return i_power(static_cast<long>(p) * p) * Scalar(scale);
}

}  // namespace nilforms
