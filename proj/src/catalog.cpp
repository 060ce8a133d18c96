#include "nilforms/catalog.hpp"

#include "nilforms/frolicher.hpp"
#include "nilforms/special.hpp"

#include <charconv>

namespace nilforms {

namespace {

std::optional<int> numeric_suffix(const std::string &id, std::string_view prefix)
{
  if (id.size() <= prefix.size() || id.compare(0, prefix.size(), prefix) != 0)
    return std::nullopt;
  int value = 0;
  const char *first = id.data() + prefix.size();
  const char *last = id.data() + id.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || *first == '0' || *first == '+')
    return std::nullopt;
  return value;
}

StructureEquations example_25_equations()
{
  StructureEquations se{"ex-2.5", 3, {}};
  se.d[3] = {{1, -2, Scalar(1)}};
  return se;
}

StructureEquations example_26_equations()
{
  StructureEquations se{"ex-2.6", 4, {}};
  for (int j = 2; j <= 4; ++j)
    se.d[j] = {{1, -1, Scalar(1)}};
  return se;
}

StructureEquations aux_del_equations()
{
  StructureEquations se{"aux-del", 3, {}};
  se.d[3] = {{1, 2, Scalar(1)}};
  return se;
}

std::vector<int> range_list(int first, int last)
{
  std::vector<int> out;
  for (int p = first; p <= last; ++p)
    out.push_back(p);
  return out;
}

CatalogEntry br_entry(int n)
{
  CatalogEntry e{"br-" + std::to_string(n), catalog_br(n), {}, {}};
  e.expected.k = 3 * n - 2;
  e.expected.balanced_diagonal = true;
  e.expected.degeneration_step_lower_bound = n + 1;
  e.expected.obstruction_p = range_list(1, 4 * n - 4);
  return e;
}

CatalogEntry torus_entry(int n)
{
  CatalogEntry e{"torus-" + std::to_string(n), catalog_torus(n), {}, {}};
  e.expected.k = n;
  e.expected.balanced_diagonal = true;
  e.expected.degeneration_step = 1;
  return e;
}

CatalogEntry ex25_entry()
{
  CatalogEntry e{"ex-2.5", example_25_equations(), {}, {}};
  e.expected.k = 2;
  e.expected.balanced_diagonal = true;
  e.expected.degeneration_step = 2;
  e.expected.obstruction_p = {1};
  e.candidates.push_back({"Omega", 2, example_25_omega()});
  return e;
}

CatalogEntry ex26_entry()
{
  CatalogEntry e{"ex-2.6", example_26_equations(), {}, {}};
  e.expected.k = 1;
  e.expected.balanced_diagonal = false;
  e.expected.degeneration_step = 1;
  e.expected.obstruction_p = {3};
  e.candidates.push_back({"Omega", 2, example_26_omega()});
  return e;
}

CatalogEntry aux_del_entry()
{
  CatalogEntry e{"aux-del", aux_del_equations(), {}, {}};
  e.expected.k = 2;
  e.expected.balanced_diagonal = true;
  e.expected.degeneration_step = 2;
  e.expected.obstruction_p = {1};
  return e;
}

std::string join(const std::vector<int> &v)
{
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

}  // namespace

StructureEquations catalog_br(int n)
{
  if (n < 2)
    throw Error("catalog_br needs n >= 2");
  StructureEquations se{"br-" + std::to_string(n), 4 * n - 2, {}};
  se.d[3 * n - 1] = {{2 * n, -n, Scalar(1)}};
  for (int j = 3 * n; j <= 4 * n - 2; ++j)
    se.d[j] = {{j - 3 * n + 1, j - 2 * n + 1, Scalar(1)}, {j - 2 * n, -(j - n), Scalar(1)}};
  return canonicalize(std::move(se));
}

StructureEquations catalog_torus(int n)
{
  if (n < 1 || n > kMaxGenerators)
    throw Error("torus dimension out of range");
  return {"torus-" + std::to_string(n), n, {}};
}

Form example_25_omega()
{
  Form omega(3);
  for (auto [a, b] : {std::pair{1, 2}, {1, 3}, {2, 3}})
    omega -= Form::from_factors(3, {a, -a, b, -b});
  return omega;
}

Form example_25_metric_form()
{
  Form omega(3);
  for (int j = 1; j <= 3; ++j)
    omega += Scalar::i() * Form::from_factors(3, {j, -j});
  return omega;
}

Form example_26_omega()
{
  Form omega(4);
  for (int a = 1; a <= 4; ++a)
    for (int b = a + 1; b <= 4; ++b)
      omega -= Form::from_factors(4, {a, -a, b, -b});
  for (std::initializer_list<SignedIndex> f : {std::initializer_list<SignedIndex>{2, -2, 3, -4},
                                               {2, -2, 4, -3},
                                               {2, -4, 3, -3},
                                               {4, -2, 3, -3},
                                               {2, -3, 4, -4},
                                               {3, -2, 4, -4}})
    omega += Form::from_factors(4, f);
  return omega;
}

ConstantReport example_25_constant()
{
  Form omega = example_25_metric_form();
  return {"omega^2 = c Omega", Scalar(1), proportionality_constant(wedge(omega, omega), example_25_omega())};
}

std::vector<CatalogEntry> catalog_examples()
{
  return {ex25_entry(), ex26_entry(), torus_entry(1), torus_entry(2), torus_entry(3), aux_del_entry(), br_entry(2)};
}

std::optional<int> br_parameter(const std::string &id) { return numeric_suffix(id, "br-"); }

CatalogEntry catalog_entry(const std::string &id)
{
  if (id == "ex-2.5")
    return ex25_entry();
  if (id == "ex-2.6")
    return ex26_entry();
  if (id == "aux-del")
    return aux_del_entry();
  if (auto n = br_parameter(id); n && *n >= 2 && 4 * *n - 2 <= kMaxGenerators)
    return br_entry(*n);
  if (auto n = numeric_suffix(id, "torus-"); n && *n >= 1 && *n <= kMaxGenerators)
    return torus_entry(*n);
  throw Error("unknown catalog id: " + id);
}

std::vector<std::string> catalog_ids()
{
  std::vector<std::string> out;
  for (const auto &e : catalog_examples())
    out.push_back(e.id);
  return out;
}

std::vector<FixtureCheck> recheck_fixtures(const CatalogEntry &entry)
{
  std::vector<FixtureCheck> out;
  auto record = [&](std::string what, bool ok, std::string detail) {
    out.push_back({std::move(what), ok, std::move(detail)});
  };

  StructureModel model = [&] {
    try {
      return validate(entry.se);
    } catch (const Error &e) {
      record("validate", false, e.what());
      throw;
    }
  }();
  record("validate", true, "");
  const int n = model.n();
  const auto &want = entry.expected;

  int k = -1;
  try {
    k = k_index(model);
  } catch (const Error &e) {
    record("k", false, e.what());
  }
  if (k >= 0)
    record("k", k == want.k, "computed " + std::to_string(k) + ", frozen " + std::to_string(want.k));

  const bool balanced = is_balanced(HermitianMetric::identity(n), model).holds;
  record("balanced_diagonal", balanced == want.balanced_diagonal,
         std::string("computed ") + (balanced ? "true" : "false"));

  // Page computations are only cheap enough for small dimension.
  if (n <= 6) {
    auto report = degeneration_step(model);
    bool ok = report.step >= want.degeneration_step_lower_bound;
    if (want.degeneration_step)
      ok = ok && report.step == *want.degeneration_step;
    record("degeneration_step", ok, "computed " + std::to_string(report.step));
  }

  auto br_n = br_parameter(entry.id);
  std::vector<int> certified;
  for (int p = 1; p <= n; ++p) {
    try {
      ObstructionCertificate cert =
        br_n ? build_eta_br(model, *br_n, p).certificate : build_eta_nilpotent(model);
      if (cert.p == p && hmt_verify(cert, model).valid)
        certified.push_back(p);
    } catch (const Error &) {
    }
  }
  record("obstruction_p", certified == want.obstruction_p, "computed {" + join(certified) + "}");

  for (const auto &cand : entry.candidates) {
    auto verdict = is_p_kahler(cand.form, cand.p, model);
    record("candidate " + cand.label, verdict.status != PKahlerStatus::No, verdict.reason);
  }
  return out;
}

}  // namespace nilforms
