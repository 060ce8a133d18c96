#pragma once

#include "nilforms/scalar.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace nilforms {

/// Sorted (index, value) pairs with non-zero values.
using SparseVector = std::vector<std::pair<int, Scalar>>;

/// x + c*y for sorted sparse vectors.
SparseVector axpy(const SparseVector &x, const Scalar &c, const SparseVector &y);
Scalar entry(const SparseVector &v, int index);

class ExactMatrix
{
public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols);
  static ExactMatrix identity(int n);
  static ExactMatrix from_dense(const std::vector<std::vector<Scalar>> &rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nonzeros() const;

  Scalar at(int r, int c) const;
  void set(int r, int c, const Scalar &v);
  void add(int r, int c, const Scalar &v);
  const SparseVector &row(int r) const { return rows_data_[static_cast<std::size_t>(r)]; }

  ExactMatrix transpose() const;
  ExactMatrix conj_transpose() const;
  SparseVector apply(const SparseVector &x) const;
  friend ExactMatrix operator*(const ExactMatrix &a, const ExactMatrix &b);
  bool is_zero() const { return nonzeros() == 0; }
  friend bool operator==(const ExactMatrix &, const ExactMatrix &) = default;

private:
  void check(int r, int c) const;

  int rows_ = 0;
  int cols_ = 0;
  std::vector<SparseVector> rows_data_;
};

// Subspace of Q(i)^ambient kept in reduced row echelon form: each basis vector
// has leading coefficient 1 at its pivot and zeros at every other pivot.
class Subspace
{
public:
  Subspace() = default;
  explicit Subspace(int ambient_dim) : ambient_(ambient_dim) {}
  static Subspace span(int ambient_dim, std::span<const SparseVector> vectors);
  static Subspace whole(int ambient_dim);
  /// Span of the standard basis vectors at the listed coordinates.
  static Subspace coordinate(int ambient_dim, std::span<const int> coords);

  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<SparseVector> &basis() const { return basis_; }
  const std::vector<int> &pivots() const { return pivots_; }

  /// v minus its projection along the pivots; zero iff v lies in the span.
  SparseVector reduce(const SparseVector &v) const;
  bool contains(const SparseVector &v) const { return reduce(v).empty(); }
  bool contains(const Subspace &other) const;
  /// Adds v; returns false when v was already in the span.
  bool insert(const SparseVector &v);

  friend bool operator==(const Subspace &a, const Subspace &b)
  {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

private:
  int ambient_ = 0;
  std::vector<SparseVector> basis_;
  std::vector<int> pivots_;
  std::vector<int> pivot_slot_;  // column -> basis position, -1 if not a pivot
};

int rank(const ExactMatrix &m);
Subspace kernel_basis(const ExactMatrix &m);
/// Column space.
Subspace image(const ExactMatrix &m);
/// Row space in reduced echelon form.
Subspace row_space(const ExactMatrix &m);
/// Some x with m x = b, or nothing if inconsistent.
std::optional<SparseVector> solve(const ExactMatrix &m, const SparseVector &b);

class SubspaceMismatch : public Error
{
public:
  using Error::Error;
};

Subspace subspace_sum(const Subspace &a, const Subspace &b);
Subspace subspace_intersect(const Subspace &a, const Subspace &b);
/// dim A - dim B; requires B to be a subspace of A.
int quotient_dim(const Subspace &a, const Subspace &b);
/// The image of every basis vector of s under m.
Subspace apply(const ExactMatrix &m, const Subspace &s);

class NotHermitian : public Error
{
public:
  NotHermitian() : Error("matrix is not Hermitian") {}
};

/// Outcome of exact LDL* without pivoting.
struct LdlResult
{
  std::vector<Scalar> pivots;     // d_1 .. d_k computed so far (real)
  std::optional<int> failed_at;   // first non-positive pivot
  /// When failed_at is set: a vector v with v* H v = pivots.back() <= 0.
  std::vector<Scalar> witness;
};

LdlResult ldl_decompose(const ExactMatrix &h);
bool hermitian_pd(const ExactMatrix &h);
bool is_hermitian(const ExactMatrix &h);

// Deterministic source of small random Gaussian rationals.
class SeededRandom
{
public:
  explicit SeededRandom(std::uint64_t seed, int max_num = 10, int max_den = 10)
    : engine_(seed), max_num_(max_num), max_den_(max_den)
  {
  }

  int integer(int lo, int hi);
  mpq_class rational();
  Scalar scalar();
  Scalar real_scalar();
  /// A non-zero vector; regenerated until non-zero.
  std::vector<Scalar> vector(int length);
  std::mt19937_64 &engine() { return engine_; }

private:
  std::mt19937_64 engine_;
  int max_num_;
  int max_den_;
};

}  // namespace nilforms
