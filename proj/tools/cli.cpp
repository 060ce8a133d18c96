#include "cli.hpp"

#include "nilforms/catalog.hpp"
#include "nilforms/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

namespace nilforms {

namespace {

struct ResolvedModel
{
  StructureEquations se;
  std::optional<CatalogEntry> entry;
};

class UsageError : public Error
{
public:
  using Error::Error;
};

std::string read_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ResolvedModel resolve(const std::string &ref, bool allow_bare_id = false)
{
  std::string id;
  if (ref.rfind("catalog:", 0) == 0)
    id = ref.substr(8);
  else if (allow_bare_id) {
    try {
      auto e = catalog_entry(ref);
      return {e.se, e};
    } catch (const Error &) {
    }
  }
  if (!id.empty()) {
    auto e = catalog_entry(id);
    return {e.se, e};
  }
  return {parse_structure(read_file(ref)), std::nullopt};
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

void print_grid(std::ostream &out, const std::map<Bidegree, int> &table, int n)
{
  out << "  p\\q";
  for (int q = 0; q <= n; ++q)
    out << '\t' << q;
  out << '\n';
  for (int p = 0; p <= n; ++p) {
    out << "  " << p;
    for (int q = 0; q <= n; ++q) {
      auto it = table.find({p, q});
      out << '\t' << (it == table.end() ? 0 : it->second);
    }
    out << '\n';
  }
}

std::vector<Scalar> parse_diag(const std::string &text)
{
  std::vector<Scalar> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ','))
    out.push_back(Scalar::parse(item));
  return out;
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string &file, std::ostream &out)
{
  StructureEquations se = parse_structure(read_file(file));
  StructureModel model = [&]() {
    try {
      return validate(se);
    } catch (const NotIntegrable &e) {
      out << "invalid: " << e.what() << '\n';
      throw;
    } catch (const JacobiFailure &e) {
      out << "invalid: " << e.what() << '\n';
      throw;
    }
  }();
  out << "valid\n";
  out << "n: " << model.n() << '\n';
  out << "triangular: " << bool_text(model.triangular()) << '\n';
  out << "closed_first: " << bool_text(model.closed_first()) << '\n';
  if (model.triangular() && !model.closed_first()) {
    auto sorted = sort_closed_first(se);
    out << "closed-first permutation (new <- old):";
    for (std::size_t i = 0; i < sorted.permutation.size(); ++i)
      out << ' ' << i + 1 << "<-" << sorted.permutation[i];
    out << '\n';
  }
  return kHolds;
}

Json notes_for(const CatalogEntry &entry, const StructureModel &model)
{
  Json notes = Json::array();
  if (entry.id == "ex-2.5") {
    auto r = example_25_constant();
    notes.push_back({{"relation", r.relation},
                     {"stated", scalar_json(r.stated)},
                     {"computed", r.computed ? scalar_json(*r.computed) : Json(nullptr)},
                     {"agrees", r.matches()},
                     {"positive_multiple", r.positive_rational()}});
  }
  if (auto n = br_parameter(entry.id); n && *n <= 4) {
    Json eps = Json::object();
    for (int p = 1; p <= 4 * *n - 4; ++p)
      eps[std::to_string(p)] = build_eta_br(model, *n, p).epsilon;
    notes.push_back({{"relation", "(d eta_p)^(n-p,n-p) = eps_p psi_p ^ conj(psi_p)"}, {"stated", "+-1"}, {"computed", eps}});
    auto f = skt_current_fixture(model, *n);
    notes.push_back({{"relation", "del delbar chi = s psi"}, {"stated", "+-1"}, {"computed", f.sign}});
  }
  return notes;
}

int cmd_describe(const std::string &ref, bool json, std::ostream &out)
{
  auto rm = resolve(ref, true);
  StructureModel model = validate(rm.se);
  Json j{{"schema_version", kSchemaVersion}, {"name", model.name()}, {"n", model.n()}};
  j["triangular"] = model.triangular();
  j["closed_first"] = model.closed_first();
  try {
    j["k"] = k_index(model);
  } catch (const Error &e) {
    j["k"] = nullptr;
  }
  auto series = ascending_series(model);
  j["nilpotent"] = !series.empty() && series.back() == 2 * model.n();
  j["ascending_series"] = series;
  if (rm.entry)
    j["notes"] = notes_for(*rm.entry, model);
  if (json) {
    out << j.dump(2) << '\n';
    return kHolds;
  }
  out << "name: " << model.name() << '\n' << "n: " << model.n() << '\n';
  out << "k: " << (j["k"].is_null() ? std::string("n/a (not triangular or not closed-first)") : j["k"].dump()) << '\n';
  out << "triangular: " << bool_text(model.triangular()) << '\n';
  out << "closed_first: " << bool_text(model.closed_first()) << '\n';
  out << "nilpotent: " << bool_text(j["nilpotent"].get<bool>()) << '\n';
  out << "ascending series (real dims):";
  for (int d : series)
    out << ' ' << d;
  out << '\n';
  if (j.contains("notes"))
    for (const auto &note : j["notes"])
      out << "note: " << note.dump() << '\n';
  return kHolds;
}

int cmd_frolicher(const std::string &ref, int max_page, bool json, std::ostream &out)
{
  StructureModel model = validate(resolve(ref).se);
  auto report = degeneration_step(model, max_page);
  const int n = model.n();
  if (json) {
    out << degeneration_json(report, n).dump(2) << '\n';
    return kHolds;
  }
  for (const auto &pg : report.pages) {
    out << "E_" << pg.r << " dims:\n";
    print_grid(out, pg.dims, n);
    out << "d_" << pg.r << " ranks:\n";
    print_grid(out, pg.diff_ranks, n);
  }
  out << "betti:";
  for (int b : report.de_rham_dims)
    out << ' ' << b;
  out << '\n';
  if (report.step > static_cast<int>(report.pages.size()))
    out << "degeneration step: > " << report.pages.size() << '\n';
  else
    out << "degeneration step: " << report.step << '\n';
  return kHolds;
}

int cmd_dolbeault(const std::string &ref, bool json, std::ostream &out)
{
  StructureModel model = validate(resolve(ref).se);
  auto dims = dolbeault_dims(model);
  if (json)
    out << Json{{"schema_version", kSchemaVersion}, {"dolbeault", bidegree_table_json(dims)}}.dump(2) << '\n';
  else {
    out << "h^{p,q} (delbar):\n";
    print_grid(out, dims, model.n());
  }
  return kHolds;
}

int cmd_metric(const std::string &ref, const std::string &diag, const std::string &matrix_file,
               const std::string &check, const std::string &theta_file, std::ostream &out)
{
  StructureModel model = validate(resolve(ref).se);
  if (diag.empty() == matrix_file.empty())
    throw UsageError("give exactly one of --diag and --matrix");
  std::optional<HermitianMetric> h;
  try {
    if (!diag.empty()) {
      auto entries = parse_diag(diag);
      h.emplace(HermitianMetric::diagonal(entries));
    } else
      h.emplace(parse_matrix(read_file(matrix_file)));
  } catch (const NotPositiveDefinite &e) {
    throw UsageError(e.what());
  } catch (const NotHermitian &e) {
    throw UsageError(e.what());
  }
  if (h->n() != model.n())
    throw UsageError("metric size " + std::to_string(h->n()) + " differs from n = " + std::to_string(model.n()));

  Form omega = fundamental_form(*h, model);
  out << "omega: " << form_terms_json(omega).dump() << '\n';
  if (check.empty())
    return kHolds;
  IdentityCheck result;
  if (check == "balanced")
    result = is_balanced(*h, model);
  else if (check == "skt")
    result = is_skt(*h, model);
  else if (check == "lck") {
    if (theta_file.empty())
      throw UsageError("--check lck needs --theta");
    result = verify_lck(*h, parse_form_text(read_file(theta_file), model.n()), model);
  } else
    throw UsageError("unknown check " + check);
  out << check << ": " << bool_text(result.holds) << '\n';
  if (!result.holds)
    out << "residual: " << form_terms_json(result.residual).dump() << '\n';
  return result.holds ? kHolds : kFails;
}

int cmd_pkahler(const std::string &ref, int p, const std::string &form_file, int samples, std::uint64_t seed,
                std::ostream &out)
{
  auto rm = resolve(ref);
  StructureModel model = validate(rm.se);
  std::optional<Form> omega;
  if (!form_file.empty())
    omega = parse_form_text(read_file(form_file), model.n());
  else if (rm.entry)
    for (const auto &c : rm.entry->candidates)
      if (c.p == p)
        omega = c.form;
  if (!omega)
    throw UsageError("--form is required (no catalog candidate of this degree)");
  auto v = is_p_kahler(*omega, p, model, samples, seed);
  const char *status = v.status == PKahlerStatus::Yes ? "yes" : v.status == PKahlerStatus::No ? "no" : "indeterminate";
  out << "p-kahler (p = " << p << "): " << status << '\n' << "reason: " << v.reason << '\n';
  if (v.transversality && v.transversality->witness) {
    out << "witness: " << form_terms_json(*v.transversality->witness).dump() << '\n';
    out << "witness value: " << v.transversality->witness_value.to_string() << '\n';
  }
  switch (v.status) {
  case PKahlerStatus::Yes: return kHolds;
  case PKahlerStatus::No: return kFails;
  case PKahlerStatus::Indeterminate: return kIndeterminate;
  }
  return kFails;
}

int cmd_obstruct(const std::string &ref, std::optional<int> p, std::ostream &out, std::ostream &err)
{
  auto rm = resolve(ref);
  StructureModel model = validate(rm.se);
  auto br_n = rm.entry ? br_parameter(rm.entry->id) : std::nullopt;

  auto emit = [&](const ObstructionCertificate &cert, std::optional<int> eps) {
    Json j = certificate_json(cert);
    auto check = hmt_verify(cert, model);
    j["verified"] = check.valid;
    if (!check.valid)
      j["failure"] = to_string(check.failure);
    if (eps)
      j["epsilon"] = *eps;
    return std::pair{j, check.valid};
  };

  if (br_n) {
    std::vector<int> ps;
    if (p)
      ps = {*p};
    else
      for (int q = 1; q <= 4 * *br_n - 4; ++q)
        ps.push_back(q);
    Json list = Json::array();
    bool all = true;
    for (int q : ps) {
      if (q < 1 || q > 4 * *br_n - 4) {
        err << "no certificate for p = " << q << " (available: 1.." << 4 * *br_n - 4 << ")\n";
        return kFails;
      }
      auto c = build_eta_br(model, *br_n, q);
      auto [j, ok] = emit(c.certificate, c.epsilon);
      all = all && ok;
      list.push_back(j);
    }
    if (p) {
      Json j = list.front();
      j["schema_version"] = kSchemaVersion;
      out << j.dump(2) << '\n';
    } else
      out << Json{{"schema_version", kSchemaVersion}, {"certificates", list}}.dump(2) << '\n';
    return all ? kHolds : kFails;
  }

  ObstructionCertificate cert;
  try {
    cert = build_eta_nilpotent(model);
  } catch (const ObstructionUnavailable &e) {
    err << e.what() << '\n';
    return kFails;
  } catch (const NotTriangular &e) {
    err << e.what() << '\n';
    return kFails;
  }
  if (p && *p != cert.p) {
    err << "no certificate for p = " << *p << " (available: " << cert.p << ")\n";
    return kFails;
  }
  auto [j, ok] = emit(cert, std::nullopt);
  j["schema_version"] = kSchemaVersion;
  out << j.dump(2) << '\n';
  return ok ? kHolds : kFails;
}

int cmd_potential(const std::string &ref, bool br_fixture, const std::string &form_file, std::ostream &out)
{
  auto rm = resolve(ref);
  StructureModel model = validate(rm.se);
  if (br_fixture) {
    auto n = rm.entry ? br_parameter(rm.entry->id) : std::nullopt;
    if (!n)
      throw UsageError("--br-fixture needs a catalog:br-N model");
    auto f = skt_current_fixture(model, *n);
    out << "del delbar chi = s psi: " << (f.verified ? "verified" : "not proportional") << '\n';
    out << "s (computed): " << f.sign << '\n';
    return f.verified ? kHolds : kFails;
  }
  if (form_file.empty())
    throw UsageError("give --form or --br-fixture");
  auto x = ddbar_potential(parse_form_text(read_file(form_file), model.n()), model);
  if (!x) {
    out << "no potential\n";
    return kFails;
  }
  out << "potential: " << form_terms_json(*x).dump() << '\n';
  return kHolds;
}

int cmd_catalog(const std::string &action, const std::string &id, bool recheck, std::ostream &out, std::ostream &err)
{
  if (action == "list" || action.empty()) {
    if (!recheck) {
      for (const auto &e : catalog_examples())
        out << e.id << "\tn=" << e.se.n << '\n';
      out << "(also br-N for N >= 2 and torus-N for N >= 1)\n";
      return kHolds;
    }
    bool all = true;
    for (const auto &e : catalog_examples())
      for (const auto &c : recheck_fixtures(e)) {
        out << e.id << '\t' << c.what << '\t' << (c.ok ? "ok" : "FAIL") << '\t' << c.detail << '\n';
        all = all && c.ok;
      }
    auto r = example_25_constant();
    out << "ex-2.5\tconstant " << r.relation << "\tstated " << r.stated.to_string() << ", computed "
        << (r.computed ? r.computed->to_string() : "none") << '\n';
    return all ? kHolds : kFails;
  }
  if (action == "emit") {
    if (id.empty())
      throw UsageError("catalog emit needs an id");
    auto e = catalog_entry(id);
    out << serialize_structure(e.se) << '\n';
    if (!recheck)
      return kHolds;
    bool all = true;
    for (const auto &c : recheck_fixtures(e)) {
      err << e.id << '\t' << c.what << '\t' << (c.ok ? "ok" : "FAIL") << '\t' << c.detail << '\n';
      all = all && c.ok;
    }
    return all ? kHolds : kFails;
  }
  throw UsageError("unknown catalog action " + action);
}

}  // namespace

int cli_dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Exact invariant-form computations on nilmanifolds", "nilforms"};
  app.require_subcommand(1);

  std::string model, file, format = "text", diag, matrix, check, theta, form, action, id;
  int max_page = 0, p = 0, samples = 10000;
  std::uint64_t seed = 1;
  bool br_fixture = false, recheck = false;

  auto *validate_cmd = app.add_subcommand("validate", "Validate a structure file");
  validate_cmd->add_option("file", file)->required();

  auto *describe_cmd = app.add_subcommand("describe", "n, k, triangularity, nilpotency, ascending series");
  describe_cmd->add_option("model", model)->required();
  describe_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto *frolicher_cmd = app.add_subcommand("frolicher", "Frolicher spectral sequence pages");
  frolicher_cmd->add_option("model", model)->required();
  frolicher_cmd->add_option("--max-page", max_page)->check(CLI::NonNegativeNumber);
  frolicher_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto *dolbeault_cmd = app.add_subcommand("dolbeault", "Dolbeault cohomology dimensions");
  dolbeault_cmd->add_option("model", model)->required();
  dolbeault_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto *metric_cmd = app.add_subcommand("metric", "Hermitian metric checks");
  metric_cmd->add_option("model", model)->required();
  metric_cmd->add_option("--diag", diag, "comma separated diagonal entries");
  metric_cmd->add_option("--matrix", matrix, "JSON file {\"H\": [[...]]}");
  metric_cmd->add_option("--check", check)->check(CLI::IsMember({"balanced", "skt", "lck"}));
  metric_cmd->add_option("--theta", theta, "JSON form file for the Lee form");

  auto *pkahler_cmd = app.add_subcommand("pkahler", "Decide whether a (p,p)-form is p-Kaehler");
  pkahler_cmd->add_option("model", model)->required();
  pkahler_cmd->add_option("--p", p)->required();
  pkahler_cmd->add_option("--form", form, "JSON form file (defaults to the catalog candidate)");
  pkahler_cmd->add_option("--samples", samples)->check(CLI::NonNegativeNumber);
  pkahler_cmd->add_option("--seed", seed);

  auto *obstruct_cmd = app.add_subcommand("obstruct", "Emit obstruction certificates as JSON");
  obstruct_cmd->add_option("model", model)->required();
  auto *p_opt = obstruct_cmd->add_option("--p", p);

  auto *potential_cmd = app.add_subcommand("potential", "Solve del delbar X = psi");
  potential_cmd->add_option("model", model)->required();
  potential_cmd->add_flag("--br-fixture", br_fixture);
  potential_cmd->add_option("--form", form, "JSON form file for psi");

  auto *catalog_cmd = app.add_subcommand("catalog", "Built-in models");
  catalog_cmd->add_option("action", action)->check(CLI::IsMember({"list", "emit"}));
  catalog_cmd->add_option("id", id);
  catalog_cmd->add_flag("--recheck-fixtures", recheck);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    return kHolds;
  } catch (const CLI::CallForAllHelp &e) {
    app.exit(e, out, err);
    return kHolds;
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*validate_cmd)
      return cmd_validate(file, out);
    if (*describe_cmd)
      return cmd_describe(model, format == "json", out);
    if (*frolicher_cmd)
      return cmd_frolicher(model, max_page, format == "json", out);
    if (*dolbeault_cmd)
      return cmd_dolbeault(model, format == "json", out);
    if (*metric_cmd)
      return cmd_metric(model, diag, matrix, check, theta, out);
    if (*pkahler_cmd)
      return cmd_pkahler(model, p, form, samples, seed, out);
    if (*obstruct_cmd)
      return cmd_obstruct(model, p_opt->count() ? std::optional<int>(p) : std::nullopt, out, err);
    if (*potential_cmd)
      return cmd_potential(model, br_fixture, form, out);
    if (*catalog_cmd)
      return cmd_catalog(action, id, recheck, out, err);
  } catch (const NotIntegrable &e) {
    err << "error: " << e.what() << '\n';
    return *validate_cmd ? kFails : kUsage;
  } catch (const JacobiFailure &e) {
    err << "error: " << e.what() << '\n';
    return *validate_cmd ? kFails : kUsage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace nilforms
