#include "nilforms/form.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace nilforms {

namespace {

// Parity of #{(x, y) : x in a, y in b, x > y}.
int merge_parity(MultiIndex a, MultiIndex b)
{
  int count = 0;
  const int na = a.size();
  for (std::uint64_t rest = b.bits(); rest != 0; rest &= rest - 1) {
    int y = __builtin_ctzll(rest) + 1;
    count += na - a.count_below(y);
  }
  return count & 1;
}

void check_generator(int n, SignedIndex e)
{
  if (e == 0 || e > n || -e > n)
    throw Error("generator index " + std::to_string(e) + " out of range for n = " + std::to_string(n));
}

}  // namespace

MultiIndex::MultiIndex(std::initializer_list<int> indices)
  : MultiIndex(from(std::span<const int>(indices.begin(), indices.size())))
{
}

MultiIndex MultiIndex::from(std::span<const int> indices)
{
  std::uint64_t bits = 0;
  int last = 0;
  for (int i : indices) {
    if (i <= last || i > kMaxGenerators)
      throw Error("multi-index must be strictly increasing within 1.." + std::to_string(kMaxGenerators));
    bits |= bit(i);
    last = i;
  }
  return MultiIndex(bits);
}

MultiIndex MultiIndex::range(int first, int last)
{
  std::uint64_t bits = 0;
  for (int i = std::max(first, 1); i <= last; ++i)
    bits |= bit(i);
  return MultiIndex(bits);
}

std::vector<int> MultiIndex::indices() const
{
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1)
    out.push_back(__builtin_ctzll(rest) + 1);
  return out;
}

int wedge_sign(const Monomial &a, const Monomial &b)
{
  if (a.hol.intersects(b.hol) || a.anti.intersects(b.anti))
    return 0;
  int parity = (a.anti.size() * b.hol.size()) & 1;
  parity ^= merge_parity(a.hol, b.hol);
  parity ^= merge_parity(a.anti, b.anti);
  return parity ? -1 : 1;
}

Form::Form(int n) : n_(n)
{
  if (n < 0 || n > kMaxGenerators)
    throw Error("complex dimension must lie in 0.." + std::to_string(kMaxGenerators));
}

Form Form::monomial(int n, MultiIndex hol, MultiIndex anti, Scalar c)
{
  Form f(n);
  if (hol.max() > n || anti.max() > n)
    throw Error("monomial index exceeds n = " + std::to_string(n));
  f.add_term({hol, anti}, c);
  return f;
}

Form Form::constant(int n, Scalar c) { return monomial(n, {}, {}, std::move(c)); }

Form Form::generator(int n, SignedIndex e)
{
  check_generator(n, e);
  MultiIndex single = MultiIndex::range(std::abs(e), std::abs(e));
  return e > 0 ? monomial(n, single, {}) : monomial(n, {}, single);
}

Form Form::from_factors(int n, std::initializer_list<SignedIndex> factors, Scalar c)
{
  return from_factors(n, std::span<const SignedIndex>(factors.begin(), factors.size()), std::move(c));
}

Form Form::from_factors(int n, std::span<const SignedIndex> factors, Scalar c)
{
  Form acc = constant(n, std::move(c));
  for (SignedIndex e : factors)
    acc = wedge(acc, generator(n, e));
  return acc;
}

Scalar Form::coefficient(const Monomial &m) const
{
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

void Form::add_term(const Monomial &m, const Scalar &c)
{
  if (c.is_zero())
    return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

std::optional<int> Form::degree() const
{
  std::optional<int> deg;
  for (const auto &[m, c] : terms_) {
    if (deg && *deg != m.degree())
      return std::nullopt;
    deg = m.degree();
  }
  return deg;
}

std::optional<std::pair<int, int>> Form::bidegree() const
{
  std::optional<std::pair<int, int>> bideg;
  for (const auto &[m, c] : terms_) {
    std::pair<int, int> here{m.hol.size(), m.anti.size()};
    if (bideg && *bideg != here)
      return std::nullopt;
    bideg = here;
  }
  return bideg;
}

Form Form::component(int p, int q) const
{
  Form out(n_);
  for (const auto &[m, c] : terms_)
    if (m.hol.size() == p && m.anti.size() == q)
      out.terms_.emplace_hint(out.terms_.end(), m, c);
  return out;
}

Form &Form::operator+=(const Form &o)
{
  check_same_dimension(*this, o);
  for (const auto &[m, c] : o.terms_)
    add_term(m, c);
  return *this;
}

Form &Form::operator-=(const Form &o)
{
  check_same_dimension(*this, o);
  for (const auto &[m, c] : o.terms_)
    add_term(m, -c);
  return *this;
}

Form &Form::operator*=(const Scalar &c)
{
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto &[m, coeff] : terms_)
    coeff *= c;
  return *this;
}

Form Form::operator-() const
{
  Form out = *this;
  for (auto &[m, c] : out.terms_)
    c = -c;
  return out;
}

void check_same_dimension(const Form &a, const Form &b)
{
  if (a.n() != b.n())
    throw DimensionMismatch("forms over different dimensions: " + std::to_string(a.n()) + " vs " +
                            std::to_string(b.n()));
}

Form wedge(const Form &a, const Form &b)
{
  check_same_dimension(a, b);
  Form out(a.n());
  for (const auto &[ma, ca] : a.terms())
    for (const auto &[mb, cb] : b.terms()) {
      int s = wedge_sign(ma, mb);
      if (s == 0)
        continue;
      Scalar c = ca * cb;
      out.add_term({MultiIndex(ma.hol.bits() | mb.hol.bits()), MultiIndex(ma.anti.bits() | mb.anti.bits())},
                   s > 0 ? c : -c);
    }
  return out;
}

Form wedge_power(const Form &omega, int m)
{
  if (m < 0)
    throw Error("wedge power must be non-negative");
  Form acc = Form::constant(omega.n(), 1);
  for (int i = 0; i < m; ++i)
    acc = wedge(acc, omega);
  return acc;
}

Form conjugate_form(const Form &a)
{
  Form out(a.n());
  for (const auto &[m, c] : a.terms()) {
    Scalar cc = c.conj();
    if ((m.hol.size() * m.anti.size()) & 1)
      cc = -cc;
    out.add_term({m.anti, m.hol}, cc);
  }
  return out;
}

std::map<std::pair<int, int>, Form> bidegree_split(const Form &a)
{
  std::map<std::pair<int, int>, Form> out;
  for (const auto &[m, c] : a.terms()) {
    auto [it, inserted] = out.try_emplace({m.hol.size(), m.anti.size()}, a.n());
    it->second.add_term(m, c);
  }
  return out;
}

bool is_real_form(const Form &a) { return conjugate_form(a) == a; }

Form volume_form(int n)
{
  MultiIndex all = MultiIndex::range(1, n);
  return Form::monomial(n, all, all, sigma_const(n));
}

Scalar volume_coefficient(const Form &a)
{
  if (a.is_zero())
    return Scalar();
  auto bideg = a.bidegree();
  if (!bideg || bideg->first != a.n() || bideg->second != a.n())
    throw Error("volume coefficient needs an (n,n)-form");
  MultiIndex all = MultiIndex::range(1, a.n());
  return a.coefficient({all, all}) / sigma_const(a.n());
}

TopClass classify_top(const Form &a)
{
  Scalar c = volume_coefficient(a);
  if (!c.is_real())
    return TopClass::Other;
  int s = sgn(c.re());
  if (s > 0)
    return TopClass::StrictlyPositive;
  return s == 0 ? TopClass::Positive : TopClass::Other;
}

Form covector_form(const Covector &v)
{
  const int n = static_cast<int>(v.size());
  Form out(n);
  for (int j = 1; j <= n; ++j)
    out.add_term({MultiIndex::range(j, j), {}}, v[j - 1]);
  return out;
}

Form simple_form(int n, std::span<const Covector> factors)
{
  Form acc = Form::constant(n, 1);
  for (const Covector &v : factors) {
    if (static_cast<int>(v.size()) != n)
      throw DimensionMismatch("covector length differs from n");
    acc = wedge(acc, covector_form(v));
  }
  return acc;
}

Form pairing(const Form &psi)
{
  auto deg = psi.degree();
  if (psi.is_zero())
    return psi;
  if (!deg)
    throw Error("pairing needs a homogeneous form");
  return sigma_const(*deg) * wedge(psi, conjugate_form(psi));
}

std::optional<Scalar> proportionality_constant(const Form &a, const Form &b)
{
  check_same_dimension(a, b);
  if (b.is_zero())
    return std::nullopt;
  const auto &[m0, c0] = *b.terms().begin();
  Scalar ratio = a.coefficient(m0) / c0;
  if (a == ratio * b)
    return ratio;
  return std::nullopt;
}

}  // namespace nilforms
