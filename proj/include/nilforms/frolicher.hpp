#pragma once

#include "nilforms/structure.hpp"

#include <map>
#include <utility>
#include <vector>

namespace nilforms {

using Bidegree = std::pair<int, int>;

/// Canonical monomials of bidegree (p,q), ordered by (hol, anti) bitsets.
std::vector<Monomial> bidegree_basis(int n, int p, int q);
/// Monomials of total degree m, grouped by increasing p.
std::vector<Monomial> degree_basis(int n, int m);

/// Matrix of op from span(source) to span(target) in the given monomial bases.
ExactMatrix operator_matrix(const StructureModel &model, Operator op, const std::vector<Monomial> &source,
                            const std::vector<Monomial> &target);

/// d : A^m -> A^{m+1} on degree_basis, for m = 0 .. 2n-1.
std::vector<ExactMatrix> cochain_matrices(const StructureModel &model);

/// dim ker delbar - rank delbar on each (p,q) block.
std::map<Bidegree, int> dolbeault_dims(const StructureModel &model);
/// The same for del; h_del^{q,p} equals h_delbar^{p,q} by conjugation.
std::map<Bidegree, int> del_dims(const StructureModel &model);
/// Betti numbers b_0 .. b_{2n} of the complex of invariant forms.
std::vector<int> de_rham_dims(const StructureModel &model);

struct PageTable
{
  int r = 0;
  std::map<Bidegree, int> dims;
  /// Rank of d_r leaving E_r^{p,q}.
  std::map<Bidegree, int> diff_ranks;

  bool all_ranks_zero() const;
  /// sum over p+q = k of dims.
  std::vector<int> totals(int n) const;
  /// sum of (-1)^{p+q} dims.
  long euler_characteristic() const;
};

/// Pages E_0 .. E_{r_max} of the Frolicher spectral sequence of the invariant complex.
std::vector<PageTable> pages(const StructureModel &model, int r_max);
PageTable page(const StructureModel &model, int r);

struct DegenerationReport
{
  int step = 1;
  std::vector<PageTable> pages;  // E_1 .. E_{r_max}
  std::vector<int> de_rham_dims;
};

/// r_max <= 0 means n + 1, the page where the filtration forces stabilisation.
DegenerationReport degeneration_step(const StructureModel &model, int r_max = 0);

}  // namespace nilforms
