#include "nilforms/frolicher.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>
#include <string>

namespace nilforms {

namespace {

// k-subsets of {1..n} as bitsets, increasing.
std::vector<MultiIndex> subsets(int n, int k)
{
  std::vector<MultiIndex> out;
  if (k < 0 || k > n)
    return out;
  if (k == 0)
    return {MultiIndex()};
  std::uint64_t s = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  while (s <= limit) {
    out.emplace_back(s);
    std::uint64_t c = s & -s;
    std::uint64_t r = s + c;
    if (r == 0)
      break;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return out;
}

class UnionFind
{
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x)
  {
    while (parent_[x] != x)
      x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
  std::vector<std::size_t> parent_;
};

// One d-connected block of monomials; its span is a subcomplex compatible
// with the bidegree filtration, so the spectral sequence splits over blocks.
class Block
{
public:
  Block(int n, std::vector<std::vector<int>> coords_p, std::vector<ExactMatrix> d)
    : n_(n), p_of_(std::move(coords_p)), d_(std::move(d))
  {
  }

  void accumulate(std::vector<PageTable> &pages)
  {
    const int r_max = static_cast<int>(pages.size()) - 1;
    for (int m = 0; m < static_cast<int>(p_of_.size()); ++m) {
      std::vector<int> ps = p_of_[m];
      std::sort(ps.begin(), ps.end());
      ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
      for (int p : ps) {
        const Bidegree pq{p, m - p};
        for (int r = 0; r <= r_max; ++r) {
          const Subspace &zr = z(r, p, m);
          Subspace boundary = z(r - 1, p + 1, m);
          if (m > 0)
            boundary = subspace_sum(boundary, apply(d_[m - 1], z(r - 1, p - r + 1, m - 1)));
          pages[r].dims[pq] += quotient_dim(zr, boundary);
          const int kernel = subspace_sum(z(r + 1, p, m), z(r - 1, p + 1, m)).dim();
          pages[r].diff_ranks[pq] += zr.dim() - kernel;
        }
      }
    }
  }

private:
  // Z_r^{p, m-p} = { x in F^p C^m : dx in F^{p+r} C^{m+1} }; r <= 0 gives F^p.
  // Negative p must survive unclamped: F^p is everything but p + r still bites.
  const Subspace &z(int r, int p, int m)
  {
    r = std::max(r, 0);
    if (p > n_)
      p = n_ + 1, r = 0;
    auto key = std::tuple(r, p, m);
    if (auto it = cache_.find(key); it != cache_.end())
      return it->second;
    const auto &here = p_of_[m];
    const int width = static_cast<int>(here.size());
    std::vector<SparseVector> rows;
    for (int i = 0; i < width; ++i)
      if (here[i] < p)
        rows.push_back({{i, Scalar(1)}});
    if (r > 0 && m + 1 < static_cast<int>(p_of_.size())) {
      const auto &next = p_of_[m + 1];
      for (int t = 0; t < static_cast<int>(next.size()); ++t)
        if (next[t] < p + r && !d_[m].row(t).empty())
          rows.push_back(d_[m].row(t));
    }
    ExactMatrix constraints(static_cast<int>(rows.size()), width);
    for (int i = 0; i < constraints.rows(); ++i)
      for (const auto &[c, v] : rows[i])
        constraints.set(i, c, v);
    return cache_.emplace(key, kernel_basis(constraints)).first->second;
  }

  int n_;
  std::vector<std::vector<int>> p_of_;  // [m][local coord] -> p
  std::vector<ExactMatrix> d_;          // [m]: C^m -> C^{m+1}
  std::map<std::tuple<int, int, int>, Subspace> cache_;
};

PageTable empty_page(int n, int r)
{
  PageTable t;
  t.r = r;
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      t.dims[{p, q}] = 0;
      t.diff_ranks[{p, q}] = 0;
    }
  return t;
}

std::map<Bidegree, int> cohomology_dims(const StructureModel &model, Operator op)
{
  const int n = model.n();
  // rank of op leaving (p,q)
  std::map<Bidegree, int> out_rank;
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      const int tp = op == Operator::Del ? p + 1 : p;
      const int tq = op == Operator::Del ? q : q + 1;
      out_rank[{p, q}] =
        (tp > n || tq > n)
          ? 0
          : rank(operator_matrix(model, op, bidegree_basis(n, p, q), bidegree_basis(n, tp, tq)));
    }
  std::map<Bidegree, int> h;
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      const int dim = static_cast<int>(bidegree_basis(n, p, q).size());
      int incoming = 0;
      if (op == Operator::Del && p > 0)
        incoming = out_rank[{p - 1, q}];
      if (op == Operator::Delbar && q > 0)
        incoming = out_rank[{p, q - 1}];
      h[{p, q}] = dim - out_rank[{p, q}] - incoming;
    }
  return h;
}

}  // namespace

std::vector<Monomial> bidegree_basis(int n, int p, int q)
{
  std::vector<Monomial> out;
  auto hol = subsets(n, p);
  auto anti = subsets(n, q);
  out.reserve(hol.size() * anti.size());
  for (auto i : hol)
    for (auto j : anti)
      out.push_back({i, j});
  return out;
}

std::vector<Monomial> degree_basis(int n, int m)
{
  std::vector<Monomial> out;
  for (int p = std::max(0, m - n); p <= std::min(m, n); ++p) {
    auto block = bidegree_basis(n, p, m - p);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

ExactMatrix operator_matrix(const StructureModel &model, Operator op, const std::vector<Monomial> &source,
                            const std::vector<Monomial> &target)
{
  std::map<Monomial, int> row_of;
  for (int i = 0; i < static_cast<int>(target.size()); ++i)
    row_of.emplace(target[i], i);
  ExactMatrix m(static_cast<int>(target.size()), static_cast<int>(source.size()));
  for (int c = 0; c < static_cast<int>(source.size()); ++c) {
    Form image(model.n());
    model.apply_monomial(op, source[c], Scalar(1), image);
    for (const auto &[mono, v] : image.terms()) {
      auto it = row_of.find(mono);
      if (it == row_of.end())
        throw Error("operator image leaves the target basis");
      m.set(it->second, c, v);
    }
  }
  return m;
}

std::vector<ExactMatrix> cochain_matrices(const StructureModel &model)
{
  const int n = model.n();
  std::vector<ExactMatrix> out;
  std::vector<Monomial> source = degree_basis(n, 0);
  for (int m = 0; m < 2 * n; ++m) {
    std::vector<Monomial> target = degree_basis(n, m + 1);
    out.push_back(operator_matrix(model, Operator::D, source, target));
    source = std::move(target);
  }
  return out;
}

std::map<Bidegree, int> dolbeault_dims(const StructureModel &model) { return cohomology_dims(model, Operator::Delbar); }

std::map<Bidegree, int> del_dims(const StructureModel &model) { return cohomology_dims(model, Operator::Del); }

std::vector<int> de_rham_dims(const StructureModel &model)
{
  const int n = model.n();
  auto mats = cochain_matrices(model);
  std::vector<int> ranks;
  for (const auto &m : mats)
    ranks.push_back(rank(m));
  std::vector<int> b;
  for (int m = 0; m <= 2 * n; ++m) {
    const int dim = static_cast<int>(degree_basis(n, m).size());
    const int out = m < 2 * n ? ranks[m] : 0;
    const int in = m > 0 ? ranks[m - 1] : 0;
    b.push_back(dim - out - in);
  }
  return b;
}

bool PageTable::all_ranks_zero() const
{
  return std::all_of(diff_ranks.begin(), diff_ranks.end(), [](const auto &e) { return e.second == 0; });
}

std::vector<int> PageTable::totals(int n) const
{
  std::vector<int> out(static_cast<std::size_t>(2 * n + 1), 0);
  for (const auto &[pq, dim] : dims)
    out[pq.first + pq.second] += dim;
  return out;
}

long PageTable::euler_characteristic() const
{
  long chi = 0;
  for (const auto &[pq, dim] : dims)
    chi += ((pq.first + pq.second) % 2 == 0) ? dim : -dim;
  return chi;
}

std::vector<PageTable> pages(const StructureModel &model, int r_max)
{
  if (r_max < 0)
    throw Error("page index must be non-negative");
  const int n = model.n();
  std::vector<PageTable> out;
  for (int r = 0; r <= r_max; ++r)
    out.push_back(empty_page(n, r));

  std::vector<Monomial> all;
  std::vector<int> degree_start;
  for (int m = 0; m <= 2 * n; ++m) {
    degree_start.push_back(static_cast<int>(all.size()));
    auto block = degree_basis(n, m);
    all.insert(all.end(), block.begin(), block.end());
  }
  std::map<Monomial, std::size_t> id_of;
  for (std::size_t i = 0; i < all.size(); ++i)
    id_of.emplace(all[i], i);

  std::vector<std::vector<std::pair<std::size_t, Scalar>>> edges(all.size());
  UnionFind uf(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    Form image(n);
    model.apply_monomial(Operator::D, all[i], Scalar(1), image);
    for (const auto &[mono, v] : image.terms()) {
      std::size_t j = id_of.at(mono);
      edges[i].emplace_back(j, v);
      uf.unite(i, j);
    }
  }

  std::map<std::size_t, std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < all.size(); ++i)
    blocks[uf.find(i)].push_back(i);

  for (const auto &[root, members] : blocks) {
    if (members.size() == 1) {
      const Monomial &mono = all[members.front()];
      for (auto &pg : out)
        pg.dims[{mono.hol.size(), mono.anti.size()}] += 1;
      continue;
    }
    // Members are already in global order: by degree, then by p.
    std::vector<std::vector<int>> p_of(static_cast<std::size_t>(2 * n + 1));
    std::map<std::size_t, std::pair<int, int>> local;  // global id -> (degree, coord)
    for (std::size_t g : members) {
      const int m = all[g].degree();
      local[g] = {m, static_cast<int>(p_of[m].size())};
      p_of[m].push_back(all[g].hol.size());
    }
    std::vector<ExactMatrix> d;
    for (int m = 0; m < 2 * n; ++m)
      d.emplace_back(static_cast<int>(p_of[m + 1].size()), static_cast<int>(p_of[m].size()));
    for (std::size_t g : members)
      for (const auto &[t, v] : edges[g]) {
        auto [m, c] = local.at(g);
        d[m].set(local.at(t).second, c, v);
      }
    Block(n, std::move(p_of), std::move(d)).accumulate(out);
  }
  return out;
}

PageTable page(const StructureModel &model, int r) { return pages(model, r).back(); }

DegenerationReport degeneration_step(const StructureModel &model, int r_max)
{
  if (r_max <= 0)
    r_max = model.n() + 1;
  auto all = pages(model, r_max);
  DegenerationReport report;
  report.pages.assign(all.begin() + 1, all.end());
  report.step = r_max + 1;
  for (int r = r_max; r >= 1 && all[r].all_ranks_zero(); --r)
    report.step = r;
  report.de_rham_dims = de_rham_dims(model);
  return report;
}

}  // namespace nilforms
