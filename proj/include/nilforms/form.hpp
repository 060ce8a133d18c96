#pragma once

#include "nilforms/scalar.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace nilforms {

/// Largest supported number of (1,0) generators; multi-indices are bitsets.
inline constexpr int kMaxGenerators = 64;

class DimensionMismatch : public Error
{
public:
  using Error::Error;
};

// Strictly increasing set of generator indices in 1..n, stored as a bitset
// (bit i-1 <-> index i).
class MultiIndex
{
public:
  constexpr MultiIndex() = default;
  constexpr explicit MultiIndex(std::uint64_t bits) : bits_(bits) {}
  MultiIndex(std::initializer_list<int> indices);
  static MultiIndex from(std::span<const int> indices);
  /// {first, ..., last}; empty when last < first.
  static MultiIndex range(int first, int last);

  constexpr std::uint64_t bits() const { return bits_; }
  int size() const { return __builtin_popcountll(bits_); }
  bool empty() const { return bits_ == 0; }
  bool contains(int i) const { return (bits_ >> (i - 1)) & 1U; }
  /// Largest index present, 0 when empty.
  int max() const { return bits_ == 0 ? 0 : 64 - __builtin_clzll(bits_); }
  std::vector<int> indices() const;

  MultiIndex with(int i) const { return MultiIndex(bits_ | bit(i)); }
  MultiIndex without(int i) const { return MultiIndex(bits_ & ~bit(i)); }
  MultiIndex without(MultiIndex o) const { return MultiIndex(bits_ & ~o.bits_); }
  bool intersects(MultiIndex o) const { return (bits_ & o.bits_) != 0; }
  /// Number of elements of *this strictly below i.
  int count_below(int i) const { return __builtin_popcountll(bits_ & (bit(i) - 1)); }

  friend constexpr auto operator<=>(MultiIndex, MultiIndex) = default;

private:
  static std::uint64_t bit(int i) { return std::uint64_t{1} << (i - 1); }
  std::uint64_t bits_ = 0;
};

/// phi^I ^ conj(phi)^J in canonical order: holomorphic factors ascending,
/// then antiholomorphic factors ascending.
struct Monomial
{
  MultiIndex hol;
  MultiIndex anti;

  int degree() const { return hol.size() + anti.size(); }
  friend constexpr auto operator<=>(const Monomial &, const Monomial &) = default;
};

/// Sign of a ^ b relative to the canonical monomial of a u b, or 0 when a
/// factor repeats.
int wedge_sign(const Monomial &a, const Monomial &b);

/// Signed generator index: +m is phi^m, -m is conj(phi^m).
using SignedIndex = int;

class Form
{
public:
  using Terms = std::map<Monomial, Scalar>;

  Form() = default;
  explicit Form(int n);
  /// c * phi^I ^ conj(phi)^J.
  static Form monomial(int n, MultiIndex hol, MultiIndex anti, Scalar c = 1);
  static Form constant(int n, Scalar c);
  /// The wedge of the listed factors in the given order, e.g. {1,-1,2,-2}
  /// is phi^1 ^ conj(phi^1) ^ phi^2 ^ conj(phi^2).
  static Form from_factors(int n, std::initializer_list<SignedIndex> factors, Scalar c = 1);
  static Form from_factors(int n, std::span<const SignedIndex> factors, Scalar c = 1);
  static Form generator(int n, SignedIndex e);

  int n() const { return n_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of a canonical monomial (zero when absent).
  Scalar coefficient(const Monomial &m) const;
  /// Adds c to the coefficient of m, dropping it if it cancels.
  void add_term(const Monomial &m, const Scalar &c);

  /// Total degree, if all terms share one.
  std::optional<int> degree() const;
  /// (p,q), if all terms share one.
  std::optional<std::pair<int, int>> bidegree() const;
  /// The (p,q) part.
  Form component(int p, int q) const;

  Form &operator+=(const Form &o);
  Form &operator-=(const Form &o);
  Form &operator*=(const Scalar &c);
  Form operator-() const;
  friend Form operator+(Form a, const Form &b) { return a += b; }
  friend Form operator-(Form a, const Form &b) { return a -= b; }
  friend Form operator*(Form a, const Scalar &c) { return a *= c; }
  friend Form operator*(const Scalar &c, Form a) { return a *= c; }
  friend bool operator==(const Form &a, const Form &b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

private:
  int n_ = 0;
  Terms terms_;
};

void check_same_dimension(const Form &a, const Form &b);

Form wedge(const Form &a, const Form &b);
/// omega^m (m >= 0); omega^0 = 1.
Form wedge_power(const Form &omega, int m);
/// Coefficientwise conjugation with the swap I <-> J and sign (-1)^{|I||J|}.
Form conjugate_form(const Form &a);
std::map<std::pair<int, int>, Form> bidegree_split(const Form &a);
bool is_real_form(const Form &a);

/// sigma_n phi^{1..n} ^ conj(phi)^{1..n}.
Form volume_form(int n);

enum class TopClass
{
  StrictlyPositive,
  Positive,
  Other
};

/// c with a = c * vol; a must be of bidegree (n,n) or zero.
Scalar volume_coefficient(const Form &a);
TopClass classify_top(const Form &a);

/// A (1,0)-covector sum_j coeffs[j-1] phi^j.
using Covector = std::vector<Scalar>;

Form covector_form(const Covector &v);
Form simple_form(int n, std::span<const Covector> factors);
/// sigma_p psi ^ conj(psi), p the degree of psi.
Form pairing(const Form &psi);

/// c with a = c * b when such a c exists and b is non-zero.
std::optional<Scalar> proportionality_constant(const Form &a, const Form &b);

}  // namespace nilforms
