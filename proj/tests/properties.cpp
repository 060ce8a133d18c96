// Seeded property suites; every suite runs at least 100 cases.
#include "oracles.hpp"
#include "support.hpp"

#include "nilforms/catalog.hpp"
#include "nilforms/frolicher.hpp"
#include "nilforms/special.hpp"

#include <doctest.h>

#include <algorithm>

using namespace nilforms;
using testing::case_seed;
using testing::random_degree_form;

namespace {

constexpr int kCases = 100;

std::vector<std::pair<std::string, StructureModel>> catalog_models()
{
  std::vector<std::pair<std::string, StructureModel>> out;
  for (const auto &e : catalog_examples())
    out.emplace_back(e.id, validate(e.se));
  return out;
}

// Random two-step models: k closed generators, the rest with d in the span
// of the closed ones and no (0,2) part, so d^2 = 0 holds automatically.
StructureEquations random_model(SeededRandom &rng, int n)
{
  const int k = rng.integer(1, n);
  StructureEquations se{"random", n, {}};
  for (int j = k + 1; j <= n; ++j) {
    std::vector<StructureTerm> terms;
    const int count = rng.integer(1, 3);
    for (int t = 0; t < count; ++t) {
      int a = rng.integer(1, k);
      int b = rng.integer(1, k) * (rng.integer(0, 1) ? 1 : -1);
      if (a == b)
        continue;
      terms.push_back({a, b, Scalar(rng.integer(-2, 2), rng.integer(-1, 1))});
    }
    se.d[j] = terms;
  }
  return canonicalize(se);
}

int form_degree(const Form &a) { return a.degree().value_or(0); }

}  // namespace

TEST_CASE("property: d^2 = 0 on every catalog model")
{
  for (const auto &[id, m] : catalog_models())
    for (int i = 0; i < kCases; ++i) {
      SeededRandom rng(case_seed(1, i));
      Form a = random_degree_form(rng, m.n(), rng.integer(0, std::min(2 * m.n(), 6)));
      CAPTURE(id);
      CAPTURE(i);
      CHECK(m.d(m.d(a)).is_zero());
    }
}

TEST_CASE("property: del^2 = delbar^2 = del delbar + delbar del = 0")
{
  for (const auto &[id, m] : catalog_models())
    for (int i = 0; i < kCases; ++i) {
      SeededRandom rng(case_seed(2, i));
      Form a = random_degree_form(rng, m.n(), rng.integer(0, std::min(2 * m.n(), 6)));
      CAPTURE(id);
      CAPTURE(i);
      CHECK(m.del(m.del(a)).is_zero());
      CHECK(m.delbar(m.delbar(a)).is_zero());
      CHECK((m.del(m.delbar(a)) + m.delbar(m.del(a))).is_zero());
      CHECK(m.d(a) == m.del(a) + m.delbar(a));
    }
}

TEST_CASE("property: Leibniz rule")
{
  for (const auto &[id, m] : catalog_models())
    for (int i = 0; i < kCases; ++i) {
      SeededRandom rng(case_seed(3, i));
      Form a = random_degree_form(rng, m.n(), rng.integer(0, 3), 3);
      Form b = random_degree_form(rng, m.n(), rng.integer(0, 3), 3);
      const Scalar sign = form_degree(a) % 2 ? Scalar(-1) : Scalar(1);
      CAPTURE(id);
      CAPTURE(i);
      CHECK(m.d(wedge(a, b)) == wedge(m.d(a), b) + sign * wedge(a, m.d(b)));
    }
}

TEST_CASE("property: d commutes with conjugation")
{
  for (const auto &[id, m] : catalog_models())
    for (int i = 0; i < kCases; ++i) {
      SeededRandom rng(case_seed(4, i));
      Form a = random_degree_form(rng, m.n(), rng.integer(0, std::min(2 * m.n(), 6)));
      CAPTURE(id);
      CAPTURE(i);
      CHECK(m.d(conjugate_form(a)) == conjugate_form(m.d(a)));
      CHECK(m.del(conjugate_form(a)) == conjugate_form(m.delbar(a)));
    }
}

TEST_CASE("property: wedge is graded commutative and associative")
{
  for (int i = 0; i < kCases * 2; ++i) {
    SeededRandom rng(case_seed(5, i));
    const int n = rng.integer(1, 6);
    Form a = random_degree_form(rng, n, rng.integer(0, 4), 3);
    Form b = random_degree_form(rng, n, rng.integer(0, 4), 3);
    Form c = random_degree_form(rng, n, rng.integer(0, 3), 3);
    const int sign = (form_degree(a) * form_degree(b)) % 2 ? -1 : 1;
    CAPTURE(i);
    CHECK(wedge(a, b) == Scalar(sign) * wedge(b, a));
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    CHECK(wedge(a, b + c) == wedge(a, b) + wedge(a, c));
  }
}

TEST_CASE("property: conjugation is an involutive ring homomorphism")
{
  for (int i = 0; i < kCases * 2; ++i) {
    SeededRandom rng(case_seed(6, i));
    const int n = rng.integer(1, 6);
    Form a = random_degree_form(rng, n, rng.integer(0, 4), 3);
    Form b = random_degree_form(rng, n, rng.integer(0, 4), 3);
    CAPTURE(i);
    CHECK(conjugate_form(conjugate_form(a)) == a);
    CHECK(conjugate_form(wedge(a, b)) == wedge(conjugate_form(a), conjugate_form(b)));
    CHECK(is_real_form(a + conjugate_form(a)));
  }
}

TEST_CASE("property: sigma_p psi ^ conj(psi) is real for simple psi")
{
  for (int i = 0; i < kCases * 2; ++i) {
    SeededRandom rng(case_seed(7, i));
    const int n = rng.integer(1, 5);
    const int p = rng.integer(1, n);
    std::vector<Covector> factors;
    for (int f = 0; f < p; ++f)
      factors.push_back(rng.vector(n));
    Form psi = simple_form(n, factors);
    CAPTURE(i);
    CHECK(is_real_form(pairing(psi)));
    if (p == n && !psi.is_zero())
      CHECK(classify_top(pairing(psi)) == TopClass::StrictlyPositive);
  }
}

TEST_CASE("property: volume coefficient is linear")
{
  for (int i = 0; i < kCases; ++i) {
    SeededRandom rng(case_seed(8, i));
    const int n = rng.integer(1, 5);
    Form a = testing::random_form(rng, n, n, n, 1), b = testing::random_form(rng, n, n, n, 1);
    Scalar s = rng.scalar();
    CHECK(volume_coefficient(a + s * b) == volume_coefficient(a) + s * volume_coefficient(b));
  }
}

namespace {

ExactMatrix random_matrix(SeededRandom &rng, int rows, int cols)
{
  ExactMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (rng.integer(0, 2) == 0)
        m.set(r, c, rng.scalar());
  // Occasionally force dependent rows.
  if (rows > 1 && rng.integer(0, 1))
    for (const auto &[c, v] : m.row(0))
      m.set(rows - 1, c, v * Scalar(3));
  return m;
}

oracle::Matrix dense(const ExactMatrix &m)
{
  oracle::Matrix out(static_cast<std::size_t>(m.rows()), std::vector<Scalar>(static_cast<std::size_t>(m.cols())));
  for (int r = 0; r < m.rows(); ++r)
    for (const auto &[c, v] : m.row(r))
      out[r][c] = v;
  return out;
}

}  // namespace

TEST_CASE("property: rank invariants")
{
  for (int i = 0; i < kCases; ++i) {
    SeededRandom rng(case_seed(9, i));
    auto m = random_matrix(rng, rng.integer(1, 7), rng.integer(1, 7));
    const int rk = rank(m);
    CAPTURE(i);
    CHECK(rk == rank(m.conj_transpose()));
    CHECK(rk == oracle::rank(dense(m)));
    CHECK(rk + kernel_basis(m).dim() == m.cols());
    CHECK(image(m).dim() == rk);
    const Subspace ker = kernel_basis(m);
    for (const auto &v : ker.basis())
      CHECK(m.apply(v).empty());
  }
}

TEST_CASE("property: solve recovers consistent systems")
{
  for (int i = 0; i < kCases; ++i) {
    SeededRandom rng(case_seed(10, i));
    auto m = random_matrix(rng, rng.integer(1, 6), rng.integer(1, 6));
    SparseVector x0;
    for (int c = 0; c < m.cols(); ++c)
      x0.emplace_back(c, rng.scalar());
    x0.erase(std::remove_if(x0.begin(), x0.end(), [](const auto &e) { return e.second.is_zero(); }), x0.end());
    auto b = m.apply(x0);
    auto x = solve(m, b);
    REQUIRE(x);
    CHECK(m.apply(*x) == b);
  }
}

TEST_CASE("property: subspace dimension identity")
{
  for (int i = 0; i < kCases; ++i) {
    SeededRandom rng(case_seed(11, i));
    const int dim = rng.integer(1, 7);
    auto make = [&] {
      std::vector<SparseVector> vs;
      const int count = rng.integer(0, dim);
      for (int k = 0; k < count; ++k) {
        SparseVector v;
        for (int c = 0; c < dim; ++c)
          if (rng.integer(0, 1))
            v.emplace_back(c, rng.scalar());
        v.erase(std::remove_if(v.begin(), v.end(), [](const auto &e) { return e.second.is_zero(); }), v.end());
        vs.push_back(v);
      }
      return Subspace::span(dim, vs);
    };
    Subspace a = make(), b = make();
    Subspace s = subspace_sum(a, b), x = subspace_intersect(a, b);
    CAPTURE(i);
    CHECK(s.dim() + x.dim() == a.dim() + b.dim());
    CHECK(s.contains(a));
    CHECK(s.contains(b));
    CHECK(a.contains(x));
    CHECK(b.contains(x));
    CHECK(quotient_dim(s, a) == s.dim() - a.dim());
  }
}

TEST_CASE("property: hermitian_pd agrees with leading minors")
{
  int positives = 0;
  for (int i = 0; i < kCases * 2; ++i) {
    SeededRandom rng(case_seed(12, i));
    const int n = rng.integer(1, 5);
    ExactMatrix h(n, n);
    for (int r = 0; r < n; ++r) {
      h.set(r, r, Scalar(rng.integer(-2, 12)));
      for (int c = r + 1; c < n; ++c) {
        Scalar v = rng.integer(0, 1) ? rng.scalar() : Scalar(0);
        h.set(r, c, v);
        h.set(c, r, v.conj());
      }
    }
    const bool pd = hermitian_pd(h);
    positives += pd;
    CAPTURE(i);
    CHECK(pd == oracle::pd_by_minors(dense(h)));
  }
  CHECK(positives > 10);
}

TEST_CASE("property: transversality in degree n-p = 1 is exactly positive definiteness")
{
  for (int i = 0; i < kCases; ++i) {
    SeededRandom rng(case_seed(13, i));
    const int n = 3;
    ExactMatrix h(n, n);
    for (int r = 0; r < n; ++r) {
      h.set(r, r, Scalar(rng.integer(-1, 6)));
      for (int c = r + 1; c < n; ++c) {
        Scalar v = rng.scalar();
        h.set(r, c, v);
        h.set(c, r, v.conj());
      }
    }
    Form omega(n);
    for (int r = 0; r < n; ++r)
      for (const auto &[c, v] : h.row(r))
        omega += Scalar::i() * v * Form::from_factors(n, {r + 1, -(c + 1)});
    Form big = wedge(omega, omega);
    auto torus = validate(catalog_torus(n));
    auto v = transversality(big, 2, torus, 50, case_seed(13, i));
    CAPTURE(i);
    CHECK(v.status != Transversality::Indeterminate);
    CHECK((v.status == Transversality::TransversePD) == hermitian_pd(v.q));
    if (v.status == Transversality::NotTransverse) {
      REQUIRE(v.witness);
      CHECK(transverse_value(big, 2, *v.witness) == v.witness_value);
      CHECK_FALSE(v.witness_value.is_positive_real());
    } else {
      for (int k = 0; k < 5; ++k) {
        Form alpha = covector_form(rng.vector(n));
        CHECK(transverse_value(big, 2, alpha).is_positive_real());
      }
    }
    if (hermitian_pd(h))
      CHECK(v.status == Transversality::TransversePD);
  }
}

TEST_CASE("property: sampling verdicts are deterministic per seed")
{
  auto model = validate(catalog_entry("ex-2.6").se);
  Form omega = example_26_omega();
  for (int i = 0; i < kCases; ++i) {
    auto a = transversality(omega, 2, model, 5, case_seed(14, i));
    auto b = transversality(omega, 2, model, 5, case_seed(14, i));
    CHECK(a.status == b.status);
    CHECK(a.samples_passed == b.samples_passed);
  }
}

TEST_CASE("property: random models validate and their pages behave")
{
  int checked = 0;
  for (int i = 0; i < kCases; ++i) {
    SeededRandom rng(case_seed(15, i));
    const int n = rng.integer(2, 4);
    auto se = random_model(rng, n);
    auto m = validate(se);
    CAPTURE(i);
    CHECK(m.triangular());
    CHECK(is_nilpotent_J(m));
    auto all = pages(m, n + 1);
    auto b = de_rham_dims(m);
    for (int r = 0; r + 1 <= n + 1; ++r)
      for (const auto &[pq, v] : all[r + 1].dims)
        CHECK(v <= all[r].dims.at(pq));
    CHECK(all[1].dims == dolbeault_dims(m));
    CHECK(all[n + 1].totals(n) == b);
    for (int r = 1; r <= n + 1; ++r)
      CHECK(all[r].euler_characteristic() == all[1].euler_characteristic());
    for (int k = 0; k <= 2 * n; ++k)
      CHECK(b[k] == b[2 * n - k]);
    CHECK(b.front() == 1);
    CHECK(b.back() == 1);
    ++checked;
  }
  CHECK(checked == kCases);
}

TEST_CASE("property: pages on catalog models")
{
  for (const auto &[id, m] : catalog_models()) {
    const int n = m.n();
    auto all = pages(m, n + 2);
    auto b = de_rham_dims(m);
    CAPTURE(id);
    for (int r = 0; r <= n + 1; ++r) {
      for (const auto &[pq, v] : all[r + 1].dims)
        CHECK(v <= all[r].dims.at(pq));
      for (const auto &[pq, rk] : all[r].diff_ranks) {
        CHECK(rk <= all[r].dims.at(pq));
        const Bidegree target{pq.first + r, pq.second - r + 1};
        if (all[r].dims.count(target))
          CHECK(rk <= all[r].dims.at(target));
        else
          CHECK(rk == 0);
      }
    }
    for (int r = n + 1; r <= n + 2; ++r)
      CHECK(all[r].all_ranks_zero());
    CHECK(all[n + 1].totals(n) == b);
    CHECK(all[1].dims == dolbeault_dims(m));
    for (int k = 0; k <= 2 * n; ++k)
      CHECK(b[k] == b[2 * n - k]);
  }
}

TEST_CASE("property: no model is both p-Kaehler and obstructed at the same p")
{
  auto certified = [](const StructureModel &m, const std::string &id, int p) {
    try {
      if (auto n = br_parameter(id))
        return hmt_verify(build_eta_br(m, *n, p).certificate, m).valid;
      auto c = build_eta_nilpotent(m);
      return c.p == p && hmt_verify(c, m).valid;
    } catch (const Error &) {
      return false;
    }
  };
  auto check_model = [&](const StructureModel &m, const std::string &id, std::vector<CandidateForm> candidates,
                         SeededRandom &rng) {
    const int n = m.n();
    std::vector<Scalar> diag;
    for (int j = 0; j < n; ++j)
      diag.push_back(Scalar(rng.integer(1, 5)));
    Form omega = fundamental_form(HermitianMetric::diagonal(diag), m);
    for (int p = 1; p < n; ++p)
      candidates.push_back({"omega^p", p, wedge_power(omega, p)});
    int yes = 0;
    for (const auto &c : candidates) {
      auto v = is_p_kahler(c.form, c.p, m, 20, 1);
      if (v.status == PKahlerStatus::Yes) {
        ++yes;
        CAPTURE(id);
        CAPTURE(c.p);
        CHECK_FALSE(certified(m, id, c.p));
      }
    }
    return yes;
  };
  int yes = 0;
  for (const auto &e : catalog_examples()) {
    SeededRandom rng(case_seed(16, 0));
    yes += check_model(validate(e.se), e.id, e.candidates, rng);
  }
  for (int i = 0; i < kCases; ++i) {
    SeededRandom rng(case_seed(16, i + 1));
    auto m = validate(random_model(rng, rng.integer(2, 4)));
    yes += check_model(m, "random", {}, rng);
  }
  CHECK(yes > 0);
}
