#include "nilforms/structure.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace nilforms {

namespace {

std::pair<int, int> order_key(SignedIndex e) { return {e > 0 ? 0 : 1, std::abs(e)}; }

std::size_t slot(SignedIndex e) { return static_cast<std::size_t>(2 * (std::abs(e) - 1) + (e < 0 ? 1 : 0)); }

std::string describe_term(const StructureTerm &t)
{
  std::ostringstream os;
  os << "(" << t.a << ", " << t.b << ", " << t.c << ")";
  return os.str();
}

}  // namespace

Form StructureEquations::differential(int j) const
{
  Form out(n);
  auto it = d.find(j);
  if (it == d.end())
    return out;
  for (const auto &t : it->second)
    out += Form::from_factors(n, {t.a, t.b}, t.c);
  return out;
}

StructureEquations canonicalize(StructureEquations se)
{
  if (se.n < 1 || se.n > kMaxGenerators)
    throw ParseError("n must lie in 1.." + std::to_string(kMaxGenerators));
  std::map<int, std::vector<StructureTerm>> out;
  for (auto &[j, terms] : se.d) {
    if (j < 1 || j > se.n)
      throw ParseError("generator index " + std::to_string(j) + " out of range");
    std::map<std::pair<SignedIndex, SignedIndex>, Scalar> merged;
    for (auto t : terms) {
      if (t.a == 0 || t.b == 0 || std::abs(t.a) > se.n || std::abs(t.b) > se.n)
        throw ParseError("malformed index in d phi^" + std::to_string(j) + ": " + describe_term(t));
      if (t.a == t.b)
        continue;  // e ^ e = 0
      if (order_key(t.b) < order_key(t.a)) {
        std::swap(t.a, t.b);
        t.c = -t.c;
      }
      merged[{t.a, t.b}] += t.c;
    }
    std::vector<std::pair<std::pair<SignedIndex, SignedIndex>, Scalar>> sorted(merged.begin(), merged.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto &x, const auto &y) {
      return std::pair(order_key(x.first.first), order_key(x.first.second)) <
             std::pair(order_key(y.first.first), order_key(y.first.second));
    });
    std::vector<StructureTerm> canon;
    for (auto &[ab, c] : sorted)
      if (!c.is_zero())
        canon.push_back({ab.first, ab.second, c});
    if (!canon.empty())
      out[j] = std::move(canon);
  }
  se.d = std::move(out);
  return se;
}

StructureEquations parse_structure(std::string_view json_text)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw ParseError("structure file must be a JSON object");
  StructureEquations se;
  if (doc.contains("name")) {
    if (!doc["name"].is_string())
      throw ParseError("\"name\" must be a string");
    se.name = doc["name"].get<std::string>();
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long>() < 1)
    throw ParseError("\"n\" must be a positive integer");
  se.n = doc["n"].get<int>();
  if (doc.contains("d")) {
    const auto &d = doc["d"];
    if (!d.is_object())
      throw ParseError("\"d\" must be an object");
    for (const auto &[key, terms] : d.items()) {
      int j = 0;
      std::size_t used = 0;
      try {
        j = std::stoi(key, &used);
      } catch (const std::exception &) {
        used = 0;
      }
      if (used != key.size() || used == 0)
        throw ParseError("malformed generator key \"" + key + "\"");
      if (!terms.is_array())
        throw ParseError("d[\"" + key + "\"] must be an array");
      auto &list = se.d[j];
      for (const auto &t : terms) {
        if (!t.is_object() || !t.contains("a") || !t.contains("b") || !t.contains("c"))
          throw ParseError("term of d[\"" + key + "\"] needs a, b, c");
        if (!t["a"].is_number_integer() || !t["b"].is_number_integer())
          throw ParseError("malformed index in d[\"" + key + "\"]");
        Scalar c;
        if (t["c"].is_string())
          c = Scalar::parse(t["c"].get<std::string>());
        else if (t["c"].is_number_integer())
          c = Scalar(t["c"].get<long>());
        else
          throw ParseError("coefficient must be a string");
        list.push_back({t["a"].get<int>(), t["b"].get<int>(), c});
      }
    }
  }
  return canonicalize(std::move(se));
}

std::string serialize_structure(const StructureEquations &se)
{
  nlohmann::ordered_json doc;
  doc["name"] = se.name;
  doc["n"] = se.n;
  nlohmann::ordered_json d = nlohmann::ordered_json::object();
  for (const auto &[j, terms] : se.d) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto &t : terms)
      list.push_back({{"a", t.a}, {"b", t.b}, {"c", t.c.to_string()}});
    d[std::to_string(j)] = std::move(list);
  }
  doc["d"] = std::move(d);
  return doc.dump(2);
}

NotIntegrable::NotIntegrable(int j, StructureTerm t)
  : Error("not integrable: d phi^" + std::to_string(j) + " has the (0,2) term " + describe_term(t)), generator(j),
    term(std::move(t))
{
}

JacobiFailure::JacobiFailure(int j, Form r)
  : Error("d^2 phi^" + std::to_string(j) + " is non-zero (" + std::to_string(r.size()) + " terms)"), generator(j),
    residual(std::move(r))
{
}

bool StructureModel::is_closed(int j) const { return se_.d.find(j) == se_.d.end(); }

const StructureModel::TermList &StructureModel::table(Operator op, SignedIndex e) const
{
  return tables_[static_cast<std::size_t>(op)][slot(e)];
}

void StructureModel::apply_monomial(Operator op, const Monomial &m, const Scalar &c, Form &out) const
{
  // d(e_1 ^ ... ^ e_r) = sum_t (-1)^t de_{t} ^ (monomial without e_t), since de_t is even.
  int position = 0;
  auto visit = [&](SignedIndex e, Monomial rest) {
    const auto &terms = table(op, e);
    const bool odd = position & 1;
    ++position;
    for (const auto &[tm, tc] : terms) {
      int s = wedge_sign(tm, rest);
      if (s == 0)
        continue;
      Scalar coeff = c * tc;
      if ((s < 0) != odd)
        coeff = -coeff;
      out.add_term({MultiIndex(tm.hol.bits() | rest.hol.bits()), MultiIndex(tm.anti.bits() | rest.anti.bits())},
                   coeff);
    }
  };
  for (int j : m.hol.indices())
    visit(j, {m.hol.without(j), m.anti});
  for (int j : m.anti.indices())
    visit(-j, {m.hol, m.anti.without(j)});
}

Form StructureModel::apply(Operator op, const Form &a) const
{
  if (a.n() != n())
    throw DimensionMismatch("form dimension " + std::to_string(a.n()) + " differs from model dimension " +
                            std::to_string(n()));
  Form out(n());
  for (const auto &[m, c] : a.terms())
    apply_monomial(op, m, c, out);
  return out;
}

StructureModel validate(const StructureEquations &input)
{
  StructureModel model;
  model.se_ = canonicalize(input);
  const auto &se = model.se_;
  const int n = se.n;

  for (const auto &[j, terms] : se.d)
    for (const auto &t : terms)
      if (t.a < 0 && t.b < 0)
        throw NotIntegrable(j, t);

  for (auto &t : model.tables_)
    t.assign(static_cast<std::size_t>(2 * n), {});
  for (int j = 1; j <= n; ++j) {
    Form dphi = se.differential(j);
    Form dconj = conjugate_form(dphi);
    for (const auto &[m, c] : dphi.terms()) {
      model.tables_[0][slot(j)].emplace_back(m, c);
      model.tables_[m.hol.size() == 2 ? 1 : 2][slot(j)].emplace_back(m, c);
    }
    for (const auto &[m, c] : dconj.terms()) {
      model.tables_[0][slot(-j)].emplace_back(m, c);
      model.tables_[m.hol.size() == 1 ? 1 : 2][slot(-j)].emplace_back(m, c);
    }
  }

  for (int j = 1; j <= n; ++j) {
    Form dd = model.d(se.differential(j));
    if (!dd.is_zero())
      throw JacobiFailure(j, std::move(dd));
  }

  model.triangular_ = is_triangular(se);
  model.closed_count_ = n - static_cast<int>(se.d.size());
  model.closed_first_ = true;
  for (const auto &[j, terms] : se.d)
    if (j <= model.closed_count_)
      model.closed_first_ = false;
  return model;
}

bool is_triangular(const StructureEquations &se)
{
  for (const auto &[j, terms] : se.d)
    for (const auto &t : terms)
      if (std::abs(t.a) >= j || std::abs(t.b) >= j)
        return false;
  return true;
}

StructureEquations relabel(const StructureEquations &se, const std::vector<int> &perm)
{
  if (static_cast<int>(perm.size()) != se.n)
    throw Error("permutation length differs from n");
  std::vector<int> new_of(static_cast<std::size_t>(se.n) + 1, 0);
  for (int k = 0; k < se.n; ++k) {
    if (perm[k] < 1 || perm[k] > se.n || new_of[perm[k]] != 0)
      throw Error("not a permutation of 1..n");
    new_of[perm[k]] = k + 1;
  }
  auto map_index = [&](SignedIndex e) { return e > 0 ? new_of[e] : -new_of[-e]; };
  StructureEquations out;
  out.name = se.name;
  out.n = se.n;
  for (const auto &[j, terms] : se.d) {
    auto &list = out.d[new_of[j]];
    for (const auto &t : terms)
      list.push_back({map_index(t.a), map_index(t.b), t.c});
  }
  return canonicalize(std::move(out));
}

SortedEquations sort_closed_first(const StructureEquations &se)
{
  std::vector<int> perm;
  for (int j = 1; j <= se.n; ++j)
    if (!se.d.contains(j))
      perm.push_back(j);
  for (int j = 1; j <= se.n; ++j)
    if (se.d.contains(j))
      perm.push_back(j);
  return {relabel(se, perm), perm};
}

int k_index(const StructureModel &model)
{
  if (!model.triangular())
    throw NotTriangular();
  if (!model.closed_first())
    throw Error("co-frame is not in closed-first order");
  return model.closed_count();
}

std::vector<std::vector<std::vector<mpq_class>>> real_brackets(const StructureModel &model)
{
  const int n = model.n();
  const int dim = 2 * n;
  // phi^j(X_j) = 1, phi^j(Y_j) = i; conj(phi^j) gets the conjugate values.
  auto pair = [](SignedIndex e, int basis) -> Scalar {
    const int j = basis / 2 + 1;
    if (std::abs(e) != j)
      return Scalar();
    if (basis % 2 == 0)
      return Scalar(1);
    return e > 0 ? Scalar(0, 1) : Scalar(0, -1);
  };
  std::vector<std::vector<std::vector<mpq_class>>> br(
    static_cast<std::size_t>(dim),
    std::vector<std::vector<mpq_class>>(static_cast<std::size_t>(dim), std::vector<mpq_class>(dim, 0)));
  for (const auto &[j, terms] : model.equations().d)
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        Scalar val;
        for (const auto &t : terms)
          val += t.c * (pair(t.a, a) * pair(t.b, b) - pair(t.a, b) * pair(t.b, a));
        // d alpha(U,V) = -alpha([U,V]) with x^j = Re phi^j, y^j = Im phi^j.
        br[a][b][2 * (j - 1)] = -val.re();
        br[a][b][2 * (j - 1) + 1] = -val.im();
      }
  return br;
}

std::vector<int> ascending_series(const StructureModel &model)
{
  const int dim = 2 * model.n();
  const auto br = real_brackets(model);
  // J X_j = Y_j, J Y_j = -X_j.
  auto j_image = [](int a) { return a % 2 == 0 ? std::pair{a + 1, 1} : std::pair{a - 1, -1}; };

  std::vector<int> dims;
  Subspace current(dim);
  for (;;) {
    ExactMatrix span_rows(current.dim(), dim);
    for (int r = 0; r < current.dim(); ++r)
      for (const auto &[c, v] : current.basis()[r])
        span_rows.set(r, c, v);
    Subspace annihilator = kernel_basis(span_rows);

    std::vector<SparseVector> constraints;
    for (int b = 0; b < dim; ++b)
      for (const auto &f : annihilator.basis()) {
        SparseVector plain, rotated;
        for (int a = 0; a < dim; ++a) {
          mpq_class acc = 0, acc_j = 0;
          auto [a2, s] = j_image(a);
          for (const auto &[c, fc] : f) {
            acc += fc.re() * br[a][b][c];
            acc_j += fc.re() * br[a2][b][c];
          }
          if (acc != 0)
            plain.emplace_back(a, Scalar(acc));
          if (acc_j != 0)
            rotated.emplace_back(a, Scalar(s > 0 ? mpq_class(acc_j) : mpq_class(-acc_j)));
        }
        constraints.push_back(std::move(plain));
        constraints.push_back(std::move(rotated));
      }
    ExactMatrix system(static_cast<int>(constraints.size()), dim);
    for (int r = 0; r < system.rows(); ++r)
      for (const auto &[c, v] : constraints[r])
        system.set(r, c, v);
    Subspace next = kernel_basis(system);
    if (next.dim() <= current.dim())
      break;
    dims.push_back(next.dim());
    current = std::move(next);
    if (current.dim() == dim)
      break;
  }
  return dims;
}

bool is_nilpotent_J(const StructureModel &model)
{
  auto dims = ascending_series(model);
  return !dims.empty() && dims.back() == 2 * model.n();
}

}  // namespace nilforms
