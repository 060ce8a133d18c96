#pragma once

#include "nilforms/form.hpp"
#include "nilforms/linalg.hpp"

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace nilforms {

/// One summand c * e_a ^ e_b of d phi^j, with e_{+m} = phi^m, e_{-m} = conj(phi^m).
struct StructureTerm
{
  SignedIndex a = 0;
  SignedIndex b = 0;
  Scalar c;
  friend bool operator==(const StructureTerm &, const StructureTerm &) = default;
};

// d phi^j for the holomorphic generators; d conj(phi^j) follows by conjugation.
// Terms are canonical: holomorphic factor first, then ascending |index|, with
// duplicates merged and zero terms dropped.
struct StructureEquations
{
  std::string name;
  int n = 0;
  std::map<int, std::vector<StructureTerm>> d;

  /// d phi^j as a form; zero when j is absent.
  Form differential(int j) const;
  friend bool operator==(const StructureEquations &, const StructureEquations &) = default;
};

/// Puts terms in canonical order, merges duplicates, drops zeros, checks ranges.
StructureEquations canonicalize(StructureEquations se);

StructureEquations parse_structure(std::string_view json_text);
std::string serialize_structure(const StructureEquations &se);

class NotIntegrable : public Error
{
public:
  NotIntegrable(int j, StructureTerm term);
  int generator;
  StructureTerm term;
};

class JacobiFailure : public Error
{
public:
  JacobiFailure(int j, Form residual);
  int generator;
  Form residual;  // d^2 phi^j
};

class NotTriangular : public Error
{
public:
  NotTriangular() : Error("co-frame is not triangular") {}
};

enum class Operator
{
  D,
  Del,
  Delbar
};

// Validated structure equations together with the operator tables on the
// generators. Immutable after construction.
class StructureModel
{
public:
  const StructureEquations &equations() const { return se_; }
  int n() const { return se_.n; }
  const std::string &name() const { return se_.name; }
  bool triangular() const { return triangular_; }
  bool closed_first() const { return closed_first_; }
  /// Number of closed generators.
  int closed_count() const { return closed_count_; }
  bool is_closed(int j) const;

  Form apply(Operator op, const Form &a) const;
  Form d(const Form &a) const { return apply(Operator::D, a); }
  Form del(const Form &a) const { return apply(Operator::Del, a); }
  Form delbar(const Form &a) const { return apply(Operator::Delbar, a); }
  /// The operator on one canonical monomial (coefficient 1).
  void apply_monomial(Operator op, const Monomial &m, const Scalar &c, Form &out) const;

private:
  friend StructureModel validate(const StructureEquations &se);
  using TermList = std::vector<std::pair<Monomial, Scalar>>;
  const TermList &table(Operator op, SignedIndex e) const;

  StructureEquations se_;
  bool triangular_ = false;
  bool closed_first_ = false;
  int closed_count_ = 0;
  // [op][slot]: slot 2(j-1) is phi^j, 2(j-1)+1 is conj(phi^j).
  std::array<std::vector<TermList>, 3> tables_;
};

/// Checks integrability and d^2 = 0; throws NotIntegrable / JacobiFailure.
StructureModel validate(const StructureEquations &se);

bool is_triangular(const StructureEquations &se);

/// perm[new - 1] = old generator index.
struct SortedEquations
{
  StructureEquations equations;
  std::vector<int> permutation;
};

/// Stable partition putting the closed generators first.
SortedEquations sort_closed_first(const StructureEquations &se);
/// Relabels the generators: new index of old generator i is position of i in perm, plus one.
StructureEquations relabel(const StructureEquations &se, const std::vector<int> &perm);

/// Number of closed generators of a triangular, closed-first model.
int k_index(const StructureModel &model);

/// Real dimensions of g_1^J, g_2^J, ... until the series stops growing.
std::vector<int> ascending_series(const StructureModel &model);
bool is_nilpotent_J(const StructureModel &model);

/// Real Lie bracket structure constants on the basis X_1, Y_1, ..., X_n, Y_n
/// where phi^j = x^j + i y^j: bracket[a][b] is the coordinate vector of [E_a, E_b].
std::vector<std::vector<std::vector<mpq_class>>> real_brackets(const StructureModel &model);

}  // namespace nilforms
