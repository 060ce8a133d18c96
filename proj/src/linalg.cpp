#include "nilforms/linalg.hpp"

#include <algorithm>
#include <string>

namespace nilforms {

SparseVector axpy(const SparseVector &x, const Scalar &c, const SparseVector &y)
{
  if (c.is_zero())
    return x;
  SparseVector out;
  out.reserve(x.size() + y.size());
  auto xi = x.begin();
  auto yi = y.begin();
  while (xi != x.end() || yi != y.end()) {
    if (yi == y.end() || (xi != x.end() && xi->first < yi->first)) {
      out.push_back(*xi++);
    } else if (xi == x.end() || yi->first < xi->first) {
      out.emplace_back(yi->first, c * yi->second);
      ++yi;
    } else {
      Scalar v = xi->second + c * yi->second;
      if (!v.is_zero())
        out.emplace_back(xi->first, std::move(v));
      ++xi;
      ++yi;
    }
  }
  return out;
}

Scalar entry(const SparseVector &v, int index)
{
  auto it = std::lower_bound(v.begin(), v.end(), index, [](const auto &e, int i) { return e.first < i; });
  return (it != v.end() && it->first == index) ? it->second : Scalar();
}

// ---------------------------------------------------------------------------
// ExactMatrix

ExactMatrix::ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), rows_data_(static_cast<std::size_t>(rows))
{
  if (rows < 0 || cols < 0)
    throw Error("negative matrix shape");
}

ExactMatrix ExactMatrix::identity(int n)
{
  ExactMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    m.set(i, i, 1);
  return m;
}

ExactMatrix ExactMatrix::from_dense(const std::vector<std::vector<Scalar>> &rows)
{
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
  ExactMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw Error("ragged matrix rows");
    for (int j = 0; j < c; ++j)
      m.set(i, j, rows[i][j]);
  }
  return m;
}

std::size_t ExactMatrix::nonzeros() const
{
  std::size_t total = 0;
  for (const auto &r : rows_data_)
    total += r.size();
  return total;
}

void ExactMatrix::check(int r, int c) const
{
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw Error("matrix index (" + std::to_string(r) + "," + std::to_string(c) + ") out of range");
}

Scalar ExactMatrix::at(int r, int c) const
{
  check(r, c);
  return entry(rows_data_[r], c);
}

void ExactMatrix::set(int r, int c, const Scalar &v)
{
  check(r, c);
  auto &row = rows_data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto &e, int i) { return e.first < i; });
  if (it != row.end() && it->first == c) {
    if (v.is_zero())
      row.erase(it);
    else
      it->second = v;
  } else if (!v.is_zero()) {
    row.insert(it, {c, v});
  }
}

void ExactMatrix::add(int r, int c, const Scalar &v)
{
  check(r, c);
  if (v.is_zero())
    return;
  auto &row = rows_data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto &e, int i) { return e.first < i; });
  if (it != row.end() && it->first == c) {
    it->second += v;
    if (it->second.is_zero())
      row.erase(it);
  } else {
    row.insert(it, {c, v});
  }
}

ExactMatrix ExactMatrix::transpose() const
{
  ExactMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (const auto &[c, v] : rows_data_[r])
      t.rows_data_[c].emplace_back(r, v);
  return t;
}

ExactMatrix ExactMatrix::conj_transpose() const
{
  ExactMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (const auto &[c, v] : rows_data_[r])
      t.rows_data_[c].emplace_back(r, v.conj());
  return t;
}

SparseVector ExactMatrix::apply(const SparseVector &x) const
{
  SparseVector out;
  for (int r = 0; r < rows_; ++r) {
    Scalar acc;
    const auto &row = rows_data_[r];
    auto ri = row.begin();
    auto xi = x.begin();
    while (ri != row.end() && xi != x.end()) {
      if (ri->first < xi->first)
        ++ri;
      else if (xi->first < ri->first)
        ++xi;
      else {
        acc += ri->second * xi->second;
        ++ri;
        ++xi;
      }
    }
    if (!acc.is_zero())
      out.emplace_back(r, std::move(acc));
  }
  return out;
}

ExactMatrix operator*(const ExactMatrix &a, const ExactMatrix &b)
{
  if (a.cols_ != b.rows_)
    throw Error("matrix product shape mismatch");
  ExactMatrix out(a.rows_, b.cols_);
  for (int r = 0; r < a.rows_; ++r) {
    SparseVector acc;
    for (const auto &[k, v] : a.rows_data_[r])
      acc = axpy(acc, v, b.rows_data_[k]);
    out.rows_data_[r] = std::move(acc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::span(int ambient_dim, std::span<const SparseVector> vectors)
{
  Subspace s(ambient_dim);
  for (const auto &v : vectors)
    s.insert(v);
  return s;
}

Subspace Subspace::whole(int ambient_dim)
{
  std::vector<int> coords(static_cast<std::size_t>(ambient_dim));
  for (int i = 0; i < ambient_dim; ++i)
    coords[i] = i;
  return coordinate(ambient_dim, coords);
}

Subspace Subspace::coordinate(int ambient_dim, std::span<const int> coords)
{
  Subspace s(ambient_dim);
  for (int c : coords)
    s.insert(SparseVector{{c, Scalar(1)}});
  return s;
}

SparseVector Subspace::reduce(const SparseVector &v) const
{
  SparseVector out = v;
  for (const auto &[col, val] : v) {
    if (col < 0 || col >= ambient_)
      throw SubspaceMismatch("vector index outside the ambient space");
    if (col < static_cast<int>(pivot_slot_.size()) && pivot_slot_[col] >= 0)
      out = axpy(out, -val, basis_[pivot_slot_[col]]);
  }
  return out;
}

bool Subspace::contains(const Subspace &other) const
{
  if (other.ambient_ != ambient_)
    throw SubspaceMismatch("subspaces of different ambient dimension");
  for (const auto &v : other.basis_)
    if (!contains(v))
      return false;
  return true;
}

bool Subspace::insert(const SparseVector &v)
{
  SparseVector w = reduce(v);
  if (w.empty())
    return false;
  const int pivot = w.front().first;
  Scalar lead = w.front().second;
  if (!lead.is_one())
    for (auto &[c, x] : w)
      x /= lead;
  for (auto &b : basis_) {
    Scalar coeff = entry(b, pivot);
    if (!coeff.is_zero())
      b = axpy(b, -coeff, w);
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
  auto offset = pos - pivots_.begin();
  pivots_.insert(pos, pivot);
  basis_.insert(basis_.begin() + offset, std::move(w));
  pivot_slot_.assign(static_cast<std::size_t>(ambient_), -1);
  for (std::size_t i = 0; i < pivots_.size(); ++i)
    pivot_slot_[pivots_[i]] = static_cast<int>(i);
  return true;
}

// ---------------------------------------------------------------------------
// Matrix factorisations

namespace {

// Non-reduced echelon form keyed by leading column; enough for ranks.
class Echelon
{
public:
  explicit Echelon(int width) : rows_(static_cast<std::size_t>(width)) {}

  bool insert(SparseVector v)
  {
    while (!v.empty()) {
      const int lead = v.front().first;
      auto &slot = rows_[lead];
      if (!slot) {
        slot = std::move(v);
        ++rank_;
        return true;
      }
      v = axpy(v, -(v.front().second / slot->front().second), *slot);
    }
    return false;
  }

  int rank() const { return rank_; }

private:
  std::vector<std::optional<SparseVector>> rows_;
  int rank_ = 0;
};

}  // namespace

int rank(const ExactMatrix &m)
{
  // Eliminate along the shorter side; sparser rows first keeps fill-in low.
  const ExactMatrix *src = &m;
  ExactMatrix t;
  if (m.rows() > m.cols()) {
    t = m.transpose();
    src = &t;
  }
  std::vector<int> order(static_cast<std::size_t>(src->rows()));
  for (int i = 0; i < src->rows(); ++i)
    order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return src->row(a).size() < src->row(b).size(); });
  Echelon e(src->cols());
  for (int r : order)
    e.insert(src->row(r));
  return e.rank();
}

Subspace row_space(const ExactMatrix &m)
{
  Subspace s(m.cols());
  for (int r = 0; r < m.rows(); ++r)
    s.insert(m.row(r));
  return s;
}

Subspace kernel_basis(const ExactMatrix &m)
{
  Subspace rows = row_space(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int p : rows.pivots())
    is_pivot[p] = true;
  Subspace ker(m.cols());
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f])
      continue;
    SparseVector v{{f, Scalar(1)}};
    for (std::size_t i = 0; i < rows.pivots().size(); ++i) {
      Scalar c = entry(rows.basis()[i], f);
      if (!c.is_zero())
        v.emplace_back(rows.pivots()[i], -c);
    }
    std::sort(v.begin(), v.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    ker.insert(v);
  }
  return ker;
}

Subspace image(const ExactMatrix &m) { return row_space(m.transpose()); }

std::optional<SparseVector> solve(const ExactMatrix &m, const SparseVector &b)
{
  const int cols = m.cols();
  Subspace aug(cols + 1);
  for (int r = 0; r < m.rows(); ++r) {
    SparseVector row = m.row(r);
    Scalar rhs = entry(b, r);
    if (!rhs.is_zero())
      row.emplace_back(cols, rhs);
    aug.insert(row);
  }
  for (const auto &[idx, v] : b)
    if (idx < 0 || idx >= m.rows())
      throw Error("right-hand side length differs from row count");
  SparseVector x;
  for (std::size_t i = 0; i < aug.pivots().size(); ++i) {
    const int p = aug.pivots()[i];
    if (p == cols)
      return std::nullopt;
    Scalar v = entry(aug.basis()[i], cols);
    if (!v.is_zero())
      x.emplace_back(p, std::move(v));
  }
  return x;
}

Subspace subspace_sum(const Subspace &a, const Subspace &b)
{
  if (a.ambient_dim() != b.ambient_dim())
    throw SubspaceMismatch("subspaces of different ambient dimension");
  Subspace s = a.dim() >= b.dim() ? a : b;
  for (const auto &v : (a.dim() >= b.dim() ? b : a).basis())
    s.insert(v);
  return s;
}

// Zassenhaus: reduce rows (a|a) and (b|0); rows with empty left half span A n B.
Subspace subspace_intersect(const Subspace &a, const Subspace &b)
{
  const int n = a.ambient_dim();
  if (n != b.ambient_dim())
    throw SubspaceMismatch("subspaces of different ambient dimension");
  Subspace z(2 * n);
  for (const auto &v : a.basis()) {
    SparseVector row = v;
    for (const auto &[i, x] : v)
      row.emplace_back(i + n, x);
    z.insert(row);
  }
  for (const auto &v : b.basis())
    z.insert(v);
  Subspace out(n);
  for (std::size_t i = 0; i < z.pivots().size(); ++i) {
    if (z.pivots()[i] < n)
      continue;
    SparseVector shifted;
    for (const auto &[idx, x] : z.basis()[i])
      shifted.emplace_back(idx - n, x);
    out.insert(shifted);
  }
  return out;
}

int quotient_dim(const Subspace &a, const Subspace &b)
{
  if (!a.contains(b))
    throw SubspaceMismatch("quotient requires B to be contained in A");
  return a.dim() - b.dim();
}

Subspace apply(const ExactMatrix &m, const Subspace &s)
{
  if (m.cols() != s.ambient_dim())
    throw SubspaceMismatch("operator source differs from the subspace ambient");
  Subspace out(m.rows());
  for (const auto &v : s.basis())
    out.insert(m.apply(v));
  return out;
}

bool is_hermitian(const ExactMatrix &h) { return h.rows() == h.cols() && h == h.conj_transpose(); }

LdlResult ldl_decompose(const ExactMatrix &h)
{
  if (!is_hermitian(h))
    throw NotHermitian();
  const int n = h.rows();
  std::vector<std::vector<Scalar>> a(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n)));
  for (int r = 0; r < n; ++r)
    for (const auto &[c, v] : h.row(r))
      a[r][c] = v;
  std::vector<std::vector<Scalar>> l(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n)));

  LdlResult out;
  for (int k = 0; k < n; ++k) {
    const Scalar d = a[k][k];
    out.pivots.push_back(d);
    if (!d.is_positive_real()) {
      out.failed_at = k;
      // v = L^{-*} e_k gives v* H v = d.
      std::vector<Scalar> v(static_cast<std::size_t>(n));
      v[k] = 1;
      for (int j = k - 1; j >= 0; --j) {
        Scalar acc;
        for (int i = j + 1; i <= k; ++i)
          acc += l[i][j].conj() * v[i];
        v[j] = -acc;
      }
      out.witness = std::move(v);
      return out;
    }
    for (int i = k + 1; i < n; ++i)
      l[i][k] = a[i][k] / d;
    for (int i = k + 1; i < n; ++i) {
      if (l[i][k].is_zero())
        continue;
      for (int j = k + 1; j < n; ++j)
        if (!l[j][k].is_zero())
          a[i][j] -= l[i][k] * d * l[j][k].conj();
    }
  }
  return out;
}

bool hermitian_pd(const ExactMatrix &h) { return !ldl_decompose(h).failed_at.has_value(); }

// ---------------------------------------------------------------------------
// SeededRandom

int SeededRandom::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

mpq_class SeededRandom::rational()
{
  mpq_class q(integer(-max_num_, max_num_), integer(1, max_den_));
  q.canonicalize();
  return q;
}

Scalar SeededRandom::scalar()
{
  mpq_class re = rational();
  return Scalar(re, rational());
}

Scalar SeededRandom::real_scalar() { return Scalar(rational()); }

std::vector<Scalar> SeededRandom::vector(int length)
{
  if (length <= 0)
    return {};
  for (;;) {
    std::vector<Scalar> v;
    v.reserve(static_cast<std::size_t>(length));
    bool nonzero = false;
    for (int i = 0; i < length; ++i) {
      v.push_back(scalar());
      nonzero = nonzero || !v.back().is_zero();
    }
    if (nonzero)
      return v;
  }
}

}  // namespace nilforms
