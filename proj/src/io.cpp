#include "nilforms/io.hpp"

#include <algorithm>

namespace nilforms {

namespace {

Json parse_text(std::string_view text)
{
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::vector<int> index_list(const Json &j, int n, const char *key)
{
  if (!j.contains(key))
    return {};
  const Json &v = j.at(key);
  if (!v.is_array())
    throw ParseError(std::string("\"") + key + "\" must be an array");
  std::vector<int> out;
  for (const auto &x : v) {
    if (!x.is_number_integer())
      throw ParseError(std::string("\"") + key + "\" entries must be integers");
    const int i = x.get<int>();
    if (i < 1 || i > n)
      throw ParseError("generator index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
    out.push_back(i);
  }
  auto sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParseError(std::string("repeated index in \"") + key + "\"");
  return out;
}

}  // namespace

Json scalar_json(const Scalar &s) { return s.to_string(); }

Scalar parse_scalar_json(const Json &j)
{
  if (j.is_string())
    return Scalar::parse(j.get<std::string>());
  if (j.is_number_integer())
    return Scalar(j.get<long>());
  throw ParseError("coefficient must be a string or an integer");
}

Json form_terms_json(const Form &a)
{
  Json out = Json::array();
  for (const auto &[m, c] : a.terms())
    out.push_back({{"I", m.hol.indices()}, {"J", m.anti.indices()}, {"c", scalar_json(c)}});
  return out;
}

Form parse_form(const Json &j, int n)
{
  const Json *terms = &j;
  if (j.is_object()) {
    if (j.contains("n") && (!j.at("n").is_number_integer() || j.at("n").get<int>() != n))
      throw ParseError("form dimension differs from the model dimension " + std::to_string(n));
    if (!j.contains("terms"))
      throw ParseError("form object needs \"terms\"");
    terms = &j.at("terms");
  }
  if (!terms->is_array())
    throw ParseError("form terms must be an array");
  Form out(n);
  for (const auto &t : *terms) {
    if (!t.is_object() || !t.contains("c"))
      throw ParseError("form term needs \"I\", \"J\" and \"c\"");
    std::vector<SignedIndex> factors = index_list(t, n, "I");
    for (int j2 : index_list(t, n, "J"))
      factors.push_back(-j2);
    out += Form::from_factors(n, factors, parse_scalar_json(t.at("c")));
  }
  return out;
}

Form parse_form_text(std::string_view text, int n) { return parse_form(parse_text(text), n); }

Json covector_json(const Covector &v)
{
  Json out = Json::array();
  for (const auto &x : v)
    out.push_back(scalar_json(x));
  return out;
}

Json certificate_json(const ObstructionCertificate &cert)
{
  Json terms = Json::array();
  for (const auto &t : cert.terms) {
    Json factors = Json::array();
    for (const auto &f : t.psi_factors)
      factors.push_back(covector_json(f));
    terms.push_back({{"c", scalar_json(t.c)}, {"psi_factors", factors}});
  }
  return {{"p", cert.p}, {"eta", form_terms_json(cert.eta)}, {"terms", terms}};
}

ObstructionCertificate parse_certificate(std::string_view text, int n)
{
  Json j = parse_text(text);
  if (!j.is_object() || !j.contains("p") || !j.contains("eta") || !j.contains("terms"))
    throw ParseError("certificate needs \"p\", \"eta\" and \"terms\"");
  if (!j.at("p").is_number_integer())
    throw ParseError("\"p\" must be an integer");
  ObstructionCertificate cert;
  cert.p = j.at("p").get<int>();
  cert.eta = parse_form(j.at("eta"), n);
  if (!j.at("terms").is_array())
    throw ParseError("\"terms\" must be an array");
  for (const auto &t : j.at("terms")) {
    if (!t.is_object() || !t.contains("c") || !t.contains("psi_factors") || !t.at("psi_factors").is_array())
      throw ParseError("certificate term needs \"c\" and \"psi_factors\"");
    CertificateTerm term;
    term.c = parse_scalar_json(t.at("c"));
    for (const auto &f : t.at("psi_factors")) {
      if (!f.is_array())
        throw ParseError("covector must be an array");
      Covector v;
      for (const auto &x : f)
        v.push_back(parse_scalar_json(x));
      term.psi_factors.push_back(std::move(v));
    }
    cert.terms.push_back(std::move(term));
  }
  return cert;
}

ExactMatrix parse_matrix(std::string_view text)
{
  Json j = parse_text(text);
  if (!j.is_object() || !j.contains("H") || !j.at("H").is_array())
    throw ParseError("matrix file needs \"H\": [[...]]");
  const Json &rows = j.at("H");
  const int n = static_cast<int>(rows.size());
  ExactMatrix h(n, n);
  for (int r = 0; r < n; ++r) {
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != n)
      throw ParseError("\"H\" must be square");
    for (int c = 0; c < n; ++c)
      h.set(r, c, parse_scalar_json(rows[r][c]));
  }
  return h;
}

Json bidegree_table_json(const std::map<Bidegree, int> &table)
{
  Json out = Json::object();
  for (const auto &[pq, v] : table)
    out[std::to_string(pq.first) + "," + std::to_string(pq.second)] = v;
  return out;
}

Json page_json(const PageTable &page, int n)
{
  return {{"r", page.r},
          {"dims", bidegree_table_json(page.dims)},
          {"diff_ranks", bidegree_table_json(page.diff_ranks)},
          {"totals", page.totals(n)},
          {"euler_characteristic", page.euler_characteristic()}};
}

Json degeneration_json(const DegenerationReport &report, int n)
{
  Json pages = Json::array();
  for (const auto &p : report.pages)
    pages.push_back(page_json(p, n));
  return {{"schema_version", kSchemaVersion},
          {"degeneration_step", report.step},
          {"betti", report.de_rham_dims},
          {"pages", pages}};
}

}  // namespace nilforms
