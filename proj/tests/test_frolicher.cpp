#include "oracles.hpp"
#include "support.hpp"

#include "nilforms/catalog.hpp"
#include "nilforms/frolicher.hpp"

#include <doctest.h>

using namespace nilforms;

namespace {

long binom(int n, int k)
{
  long r = 1;
  for (int i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

std::map<Bidegree, int> grid(const std::vector<std::vector<int>> &rows)
{
  std::map<Bidegree, int> out;
  for (int p = 0; p < static_cast<int>(rows.size()); ++p)
    for (int q = 0; q < static_cast<int>(rows[p].size()); ++q)
      out[{p, q}] = rows[p][q];
  return out;
}

}  // namespace

TEST_CASE("bases")
{
  CHECK(bidegree_basis(4, 2, 1).size() == 24);
  CHECK(degree_basis(3, 2).size() == 15);
  CHECK(bidegree_basis(3, 4, 0).empty());
}

TEST_CASE("cochain matrices compose to zero")
{
  for (const char *id : {"torus-2", "ex-2.6", "br-2"}) {
    auto mats = cochain_matrices(validate(catalog_entry(id).se));
    for (std::size_t m = 0; m + 1 < mats.size(); ++m)
      CHECK((mats[m + 1] * mats[m]).is_zero());
    if (std::string(id) == "torus-2")
      for (const auto &x : mats)
        CHECK(x.is_zero());
  }
}

TEST_CASE("degree-one matrix of br-2 carries the structure table")
{
  auto model = validate(catalog_br(2));
  auto mats = cochain_matrices(model);
  auto src = degree_basis(6, 1);
  auto dst = degree_basis(6, 2);
  int nonzero_cols = 0;
  for (std::size_t c = 0; c < src.size(); ++c) {
    Form image(6);
    for (int r = 0; r < mats[1].rows(); ++r)
      image.add_term(dst[r], mats[1].at(r, static_cast<int>(c)));
    CHECK(image == model.d(Form::monomial(6, src[c].hol, src[c].anti)));
    nonzero_cols += !image.is_zero();
  }
  CHECK(nonzero_cols == 4);
  CHECK(mats[1].nonzeros() == 6);
}

TEST_CASE("dolbeault dimensions")
{
  for (int n = 1; n <= 3; ++n) {
    auto h = dolbeault_dims(validate(catalog_torus(n)));
    for (const auto &[pq, v] : h)
      CHECK(v == binom(n, pq.first) * binom(n, pq.second));
  }
  auto ex25 = dolbeault_dims(validate(catalog_entry("ex-2.5").se));
  CHECK(ex25.at({0, 1}) == 3);
}

TEST_CASE("conjugation symmetry between delbar and del cohomology")
{
  for (const auto &e : catalog_examples()) {
    auto m = validate(e.se);
    auto hbar = dolbeault_dims(m);
    auto hdel = del_dims(m);
    for (const auto &[pq, v] : hbar)
      CHECK(v == hdel.at({pq.second, pq.first}));
  }
}

TEST_CASE("br-2 dolbeault table (frozen, dense-elimination oracle)")
{
  const auto frozen = grid({{1, 5, 11, 14, 11, 5, 1},
                            {4, 20, 44, 56, 44, 20, 4},
                            {8, 40, 88, 112, 88, 40, 8},
                            {10, 50, 110, 140, 110, 50, 10},
                            {8, 40, 88, 112, 88, 40, 8},
                            {4, 20, 44, 56, 44, 20, 4},
                            {1, 5, 11, 14, 11, 5, 1}});
  CHECK(dolbeault_dims(validate(catalog_br(2))) == frozen);
}

TEST_CASE("de Rham dimensions")
{
  for (int n = 1; n <= 3; ++n) {
    auto b = de_rham_dims(validate(catalog_torus(n)));
    for (int k = 0; k <= 2 * n; ++k)
      CHECK(b[k] == binom(2 * n, k));
  }
  auto b = de_rham_dims(validate(catalog_br(2)));
  CHECK(b == std::vector<int>{1, 8, 32, 84, 160, 232, 262, 232, 160, 84, 32, 8, 1});
  long euler = 0;
  for (std::size_t k = 0; k < b.size(); ++k)
    euler += (k % 2 ? -1 : 1) * b[k];
  CHECK(euler == 0);
}

TEST_CASE("torus pages are constant")
{
  auto m = validate(catalog_torus(2));
  for (const auto &pg : pages(m, 3)) {
    CHECK(pg.all_ranks_zero());
    for (const auto &[pq, v] : pg.dims)
      CHECK(v == binom(2, pq.first) * binom(2, pq.second));
  }
  CHECK(degeneration_step(m).step == 1);
}

TEST_CASE("br-2 pages (frozen, full-space oracle)")
{
  auto m = validate(catalog_br(2));
  auto report = degeneration_step(m, 4);
  CHECK(report.step == 3);
  REQUIRE(report.pages.size() == 4);
  CHECK_FALSE(report.pages[1].all_ranks_zero());
  CHECK(report.pages[1].totals(6) == std::vector<int>{1, 9, 37, 96, 179, 255, 286, 255, 179, 96, 37, 9, 1});
  CHECK(report.pages[2].totals(6) == report.de_rham_dims);
  CHECK(report.pages[0].dims == dolbeault_dims(m));
}

TEST_CASE("small models: degeneration steps (frozen, full-space oracle)")
{
  CHECK(degeneration_step(validate(catalog_entry("ex-2.5").se)).step == 2);
  CHECK(degeneration_step(validate(catalog_entry("ex-2.6").se)).step == 1);
  CHECK(degeneration_step(validate(catalog_entry("aux-del").se)).step == 2);
  auto ex25 = pages(validate(catalog_entry("ex-2.5").se), 2);
  CHECK(ex25[1].totals(3) == std::vector<int>{1, 5, 11, 14, 11, 5, 1});
  CHECK(ex25[2].totals(3) == std::vector<int>{1, 4, 8, 10, 8, 4, 1});
}

TEST_CASE("page arguments")
{
  auto m = validate(catalog_torus(1));
  CHECK_THROWS(pages(m, -1));
  CHECK(page(m, 0).dims.at({0, 0}) == 1);
}
