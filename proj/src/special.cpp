#include "nilforms/special.hpp"

#include "nilforms/catalog.hpp"
#include "nilforms/frolicher.hpp"

#include <algorithm>
#include <map>

namespace nilforms {

namespace {

void check_model_dimension(int n, const StructureModel &model)
{
  if (n != model.n())
    throw DimensionMismatch("dimension " + std::to_string(n) + " differs from model dimension " +
                            std::to_string(model.n()));
}

// Every (s,0)-form in n variables is simple when s <= 1 or s >= n-1.
bool every_form_simple(int s, int n) { return s <= 1 || s >= n - 1; }

Form unit_covector_product(int n, MultiIndex indices) { return Form::monomial(n, indices, {}); }

std::vector<Covector> unit_covectors(int n, MultiIndex indices)
{
  std::vector<Covector> out;
  for (int j : indices.indices()) {
    Covector v(static_cast<std::size_t>(n));
    v[j - 1] = 1;
    out.push_back(std::move(v));
  }
  return out;
}

Scalar hermitian_value(const ExactMatrix &q, const std::vector<Scalar> &a)
{
  // sum_{A,B} a_A Q(A,B) conj(a_B)
  Scalar total;
  for (int r = 0; r < q.rows(); ++r) {
    if (a[r].is_zero())
      continue;
    Scalar row;
    for (const auto &[c, v] : q.row(r))
      row += v * a[c].conj();
    total += a[r] * row;
  }
  return total;
}

std::vector<Scalar> coefficients_on(const Form &alpha, const std::vector<Monomial> &basis)
{
  std::vector<Scalar> a;
  a.reserve(basis.size());
  for (const auto &m : basis)
    a.push_back(alpha.coefficient(m));
  return a;
}

Form form_on(int n, const std::vector<Monomial> &basis, const std::vector<Scalar> &a)
{
  Form out(n);
  for (std::size_t i = 0; i < basis.size(); ++i)
    out.add_term(basis[i], a[i]);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Metrics

HermitianMetric::HermitianMetric(ExactMatrix h) : h_(std::move(h))
{
  if (!hermitian_pd(h_))
    throw NotPositiveDefinite();
}

HermitianMetric HermitianMetric::identity(int n) { return HermitianMetric(ExactMatrix::identity(n)); }

HermitianMetric HermitianMetric::diagonal(std::span<const Scalar> entries)
{
  const int n = static_cast<int>(entries.size());
  ExactMatrix h(n, n);
  for (int i = 0; i < n; ++i)
    h.set(i, i, entries[i]);
  return HermitianMetric(std::move(h));
}

Form fundamental_form(const HermitianMetric &h, const StructureModel &model)
{
  check_model_dimension(h.n(), model);
  const int n = h.n();
  Form omega(n);
  for (int j = 0; j < n; ++j)
    for (const auto &[k, v] : h.matrix().row(j))
      omega.add_term({MultiIndex::range(j + 1, j + 1), MultiIndex::range(k + 1, k + 1)}, Scalar::i() * v);
  return omega;
}

IdentityCheck is_balanced(const HermitianMetric &h, const StructureModel &model)
{
  Form omega = fundamental_form(h, model);
  Form residual = model.d(wedge_power(omega, std::max(model.n() - 1, 0)));
  return {residual.is_zero(), std::move(residual)};
}

IdentityCheck is_skt(const HermitianMetric &h, const StructureModel &model)
{
  Form residual = model.del(model.delbar(fundamental_form(h, model)));
  return {residual.is_zero(), std::move(residual)};
}

IdentityCheck verify_lck(const HermitianMetric &h, const Form &theta, const StructureModel &model)
{
  check_model_dimension(theta.n(), model);
  if (!theta.is_zero() && theta.degree() != 1)
    throw Error("Lee form must be a 1-form");
  if (!is_real_form(theta))
    throw Error("Lee form must be real");
  Form dtheta = model.d(theta);
  if (!dtheta.is_zero())
    return {false, std::move(dtheta)};
  Form omega = fundamental_form(h, model);
  Form residual = model.d(omega) - wedge(theta, omega);
  return {residual.is_zero(), std::move(residual)};
}

// ---------------------------------------------------------------------------
// Transversality

ExactMatrix transverse_pairing(const Form &omega, int p, std::vector<Monomial> *basis_out)
{
  const int n = omega.n();
  if (p < 0 || p > n)
    throw Error("degree p out of range");
  auto bideg = omega.bidegree();
  if (!omega.is_zero() && (!bideg || bideg->first != p || bideg->second != p))
    throw Error("expected a form of bidegree (" + std::to_string(p) + "," + std::to_string(p) + ")");
  const int s = n - p;
  std::vector<Monomial> basis = bidegree_basis(n, s, 0);
  std::map<MultiIndex, int> slot;
  for (int i = 0; i < static_cast<int>(basis.size()); ++i)
    slot[basis[i].hol] = i;

  const MultiIndex all = MultiIndex::range(1, n);
  const Scalar scale = sigma_const(s) / sigma_const(n);
  ExactMatrix q(static_cast<int>(basis.size()), static_cast<int>(basis.size()));
  for (const auto &[m, c] : omega.terms()) {
    Monomial partner{all.without(m.hol), all.without(m.anti)};
    int sign = wedge_sign(m, partner);
    q.add(slot.at(partner.hol), slot.at(partner.anti), sign > 0 ? c * scale : -(c * scale));
  }
  if (basis_out)
    *basis_out = std::move(basis);
  return q;
}

Scalar transverse_value(const Form &omega, int p, const Form &alpha)
{
  const int s = omega.n() - p;
  return volume_coefficient(sigma_const(s) * wedge(omega, wedge(alpha, conjugate_form(alpha))));
}

TransversalityVerdict transversality(const Form &omega, int p, const StructureModel &model, int samples,
                                     std::uint64_t seed)
{
  check_model_dimension(omega.n(), model);
  if (!is_real_form(omega))
    throw Error("transversality needs a real form");
  const int n = model.n();
  const int s = n - p;

  TransversalityVerdict v;
  v.q = transverse_pairing(omega, p, &v.basis);
  LdlResult ldl = ldl_decompose(v.q);
  if (!ldl.failed_at) {
    v.status = Transversality::TransversePD;
    return v;
  }

  auto refute = [&](Form alpha, Scalar value) {
    v.status = Transversality::NotTransverse;
    v.witness = std::move(alpha);
    v.witness_value = std::move(value);
    return v;
  };

  // Monomials are simple: a non-positive diagonal entry is an exact witness.
  for (int i = 0; i < v.q.rows(); ++i) {
    Scalar diag = v.q.at(i, i);
    if (!diag.is_positive_real())
      return refute(Form::monomial(n, v.basis[i].hol, {}), diag);
  }
  if (every_form_simple(s, n)) {
    std::vector<Scalar> a;
    for (const auto &x : ldl.witness)
      a.push_back(x.conj());
    return refute(form_on(n, v.basis, a), ldl.pivots.back());
  }

  for (int i = 0; i < samples; ++i) {
    SeededRandom rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(i + 1)));
    Form alpha(n);
    while (alpha.is_zero()) {
      std::vector<Covector> factors;
      for (int f = 0; f < s; ++f)
        factors.push_back(rng.vector(n));
      alpha = simple_form(n, factors);
    }
    Scalar value = hermitian_value(v.q, coefficients_on(alpha, v.basis));
    if (!value.is_positive_real())
      return refute(std::move(alpha), std::move(value));
    ++v.samples_passed;
  }
  v.status = Transversality::Indeterminate;
  return v;
}

PKahlerVerdict is_p_kahler(const Form &omega, int p, const StructureModel &model, int samples, std::uint64_t seed)
{
  check_model_dimension(omega.n(), model);
  auto bideg = omega.bidegree();
  if (!omega.is_zero() && (!bideg || bideg->first != p || bideg->second != p))
    throw Error("expected a form of bidegree (" + std::to_string(p) + "," + std::to_string(p) + ")");
  PKahlerVerdict out;
  if (!is_real_form(omega)) {
    out.reason = "not real";
    return out;
  }
  if (!model.d(omega).is_zero()) {
    out.reason = "not closed";
    return out;
  }
  auto t = transversality(omega, p, model, samples, seed);
  switch (t.status) {
  case Transversality::TransversePD:
    out.status = PKahlerStatus::Yes;
    out.reason = "closed, real, transverse (pairing positive definite)";
    break;
  case Transversality::NotTransverse:
    out.reason = "not transverse";
    break;
  case Transversality::Indeterminate:
    out.status = PKahlerStatus::Indeterminate;
    out.reason = "closed and real; pairing not positive definite but " + std::to_string(t.samples_passed) +
                 " sampled simple forms paired positively";
    break;
  }
  out.transversality = std::move(t);
  return out;
}

// ---------------------------------------------------------------------------
// Obstruction certificates

const char *to_string(CertificateFailure f)
{
  switch (f) {
  case CertificateFailure::None: return "none";
  case CertificateFailure::NoTerms: return "no terms";
  case CertificateFailure::NonRealCoefficient: return "non-real coefficient";
  case CertificateFailure::ZeroCoefficient: return "zero coefficient";
  case CertificateFailure::MixedSigns: return "mixed signs";
  case CertificateFailure::ZeroPsi: return "psi is zero";
  case CertificateFailure::BidegreeMismatch: return "bidegree mismatch";
  case CertificateFailure::EtaClosed: return "eta closed";
  case CertificateFailure::ComponentMismatch: return "component mismatch";
  }
  return "unknown";
}

CertificateCheck hmt_verify(const ObstructionCertificate &cert, const StructureModel &model)
{
  check_model_dimension(cert.eta.n(), model);
  const int n = model.n();
  const int s = n - cert.p;
  auto fail = [](CertificateFailure f, std::string detail) { return CertificateCheck{false, f, std::move(detail)}; };

  if (cert.p < 1 || cert.p > n)
    return fail(CertificateFailure::BidegreeMismatch, "p out of range");
  if (cert.terms.empty())
    return fail(CertificateFailure::NoTerms, "empty decomposition");
  int sign = 0;
  Form expected(n);
  for (std::size_t k = 0; k < cert.terms.size(); ++k) {
    const auto &t = cert.terms[k];
    if (!t.c.is_real())
      return fail(CertificateFailure::NonRealCoefficient, "c_" + std::to_string(k) + " = " + t.c.to_string());
    const int here = sgn(t.c.re());
    if (here == 0)
      return fail(CertificateFailure::ZeroCoefficient, "c_" + std::to_string(k) + " = 0");
    if (sign != 0 && here != sign)
      return fail(CertificateFailure::MixedSigns, "c_k do not share one sign");
    sign = here;
    if (static_cast<int>(t.psi_factors.size()) != s)
      return fail(CertificateFailure::BidegreeMismatch,
                  "psi_" + std::to_string(k) + " has " + std::to_string(t.psi_factors.size()) + " factors, expected " +
                    std::to_string(s));
    for (const auto &f : t.psi_factors)
      if (static_cast<int>(f.size()) != n)
        return fail(CertificateFailure::BidegreeMismatch, "covector length differs from n");
    Form psi = simple_form(n, t.psi_factors);
    if (psi.is_zero())
      return fail(CertificateFailure::ZeroPsi, "psi_" + std::to_string(k) + " vanishes");
    expected += t.c * wedge(psi, conjugate_form(psi));
  }
  if (cert.eta.degree().value_or(2 * s - 1) != 2 * s - 1)
    return fail(CertificateFailure::BidegreeMismatch, "eta must have degree " + std::to_string(2 * s - 1));
  Form deta = model.d(cert.eta);
  if (deta.is_zero())
    return fail(CertificateFailure::EtaClosed, "eta closed");
  if (deta.component(s, s) != expected)
    return fail(CertificateFailure::ComponentMismatch,
                "(d eta)^(" + std::to_string(s) + "," + std::to_string(s) + ") differs from sum c_k psi_k ^ conj(psi_k)");
  return {true, CertificateFailure::None, {}};
}

ObstructionCertificate build_eta_nilpotent(const StructureModel &model)
{
  const int k = k_index(model);
  const int n = model.n();
  if (k >= n)
    throw ObstructionUnavailable("all generators are closed (torus): no obstruction exists");
  const auto &terms = model.equations().d.at(k + 1);

  auto mixed = std::find_if(terms.begin(), terms.end(), [](const StructureTerm &t) { return t.a > 0 && t.b < 0; });
  Form eta(n);
  if (mixed != terms.end()) {
    // delbar phi^{k+1} = sum C_{l mbar} phi^{l mbar}, pick C_{i jbar} != 0.
    const int i = mixed->a;
    const int j = -mixed->b;
    eta = Form::monomial(n, MultiIndex::range(1, k + 1).without(i), MultiIndex::range(1, k).without(j));
  } else {
    // del phi^{k+1} = sum A_{lm} phi^{lm}, pick A_{ij} != 0.
    const auto &t = terms.front();
    eta = Form::monomial(n, MultiIndex::range(1, k + 1).without(t.a).without(t.b), MultiIndex::range(1, k));
  }

  const MultiIndex head = MultiIndex::range(1, k);
  Form top = model.d(eta).component(k, k);
  if (top.size() != 1 || top.terms().begin()->first != Monomial{head, head})
    throw Error("internal: d eta is not a single top monomial");
  eta *= Scalar(1) / top.terms().begin()->second;

  ObstructionCertificate cert;
  cert.p = n - k;
  cert.eta = std::move(eta);
  cert.terms.push_back({Scalar(1), unit_covectors(n, head)});
  return cert;
}

BrCertificate build_eta_br(int n, int p)
{
  if (n < 2)
    throw Error("the BR family needs n >= 2");
  return build_eta_br(validate(catalog_br(n)), n, p);
}

BrCertificate build_eta_br(const StructureModel &br_model, int n, int p)
{
  const int dim = 4 * n - 2;
  check_model_dimension(dim, br_model);
  if (p < 1 || p > 4 * n - 4)
    throw Error("p must satisfy 1 <= p <= 4n-4");

  MultiIndex hol, anti, psi;
  if (p < n) {
    hol = MultiIndex::range(1, dim).without(2 * n - 2);
    anti = MultiIndex::range(1, 4 * n - 3).without(3 * n - 2);
    const MultiIndex dropped = MultiIndex::range(3 * n - 1, 3 * n + p - 3);
    hol = hol.without(dropped);
    anti = anti.without(dropped);
    psi = MultiIndex(MultiIndex::range(1, 3 * n - 2).bits() | MultiIndex::range(3 * n + p - 2, 4 * n - 3).bits());
  } else if (p == n) {
    hol = MultiIndex::range(1, 3 * n - 2).without(2 * n - 2).with(4 * n - 2);
    anti = MultiIndex::range(1, 3 * n - 3);
    psi = MultiIndex::range(1, 3 * n - 2);
  } else if (p < 3 * n - 3) {
    hol = MultiIndex::range(p - n + 1, 3 * n - 2).without(2 * n - 2).with(4 * n - 2);
    anti = MultiIndex::range(p - n + 1, 3 * n - 3);
    psi = MultiIndex::range(p - n + 1, 3 * n - 2);
  } else {
    // conj(phi)^{2n-2} is kept once the removals pass it.
    hol = MultiIndex::range(p - n + 2, 3 * n - 2).with(4 * n - 2);
    anti = MultiIndex::range(p - n + 2, 3 * n - 3).with(2 * n - 2);
    psi = MultiIndex::range(p - n + 2, 3 * n - 2).with(2 * n - 2);
  }

  Form eta = Form::monomial(dim, hol, anti);
  const int s = dim - p;
  Form top = br_model.d(eta).component(s, s);
  Form psi_form = unit_covector_product(dim, psi);
  auto eps = proportionality_constant(top, wedge(psi_form, conjugate_form(psi_form)));
  if (!eps || !(eps->is_one() || (-*eps).is_one()))
    throw Error("internal: (d eta_p) top component is not +-psi ^ conj(psi) for p = " + std::to_string(p));

  BrCertificate out;
  out.epsilon = eps->is_one() ? 1 : -1;
  out.certificate.p = p;
  out.certificate.eta = std::move(eta);
  out.certificate.terms.push_back({Scalar(out.epsilon), unit_covectors(dim, psi)});
  return out;
}

// ---------------------------------------------------------------------------
// del delbar potentials

std::optional<Form> ddbar_potential(const Form &psi, const StructureModel &model)
{
  check_model_dimension(psi.n(), model);
  const int n = model.n();
  if (psi.is_zero())
    return Form(n);
  auto bideg = psi.bidegree();
  if (!bideg || bideg->first != bideg->second || bideg->first < 1)
    throw Error("ddbar potential needs a form of bidegree (s,s) with s >= 1");
  const int s = bideg->first;
  std::vector<Monomial> source = bidegree_basis(n, s - 1, s - 1);
  std::vector<Monomial> target = bidegree_basis(n, s, s);
  std::map<Monomial, int> row_of;
  for (int i = 0; i < static_cast<int>(target.size()); ++i)
    row_of.emplace(target[i], i);

  ExactMatrix m(static_cast<int>(target.size()), static_cast<int>(source.size()));
  for (int c = 0; c < static_cast<int>(source.size()); ++c) {
    Form image = model.del(model.delbar(Form::monomial(n, source[c].hol, source[c].anti)));
    for (const auto &[mono, v] : image.terms())
      m.set(row_of.at(mono), c, v);
  }
  SparseVector rhs;
  for (const auto &[mono, v] : psi.terms())
    rhs.emplace_back(row_of.at(mono), v);
  std::sort(rhs.begin(), rhs.end(), [](const auto &a, const auto &b) { return a.first < b.first; });

  auto x = solve(m, rhs);
  if (!x)
    return std::nullopt;
  Form out(n);
  for (const auto &[c, v] : *x)
    out.add_term(source[c], v);
  return out;
}

SktCurrentFixture skt_current_fixture(int n)
{
  if (n < 2)
    throw Error("the BR family needs n >= 2");
  return skt_current_fixture(validate(catalog_br(n)), n);
}

SktCurrentFixture skt_current_fixture(const StructureModel &br_model, int n)
{
  const int dim = 4 * n - 2;
  check_model_dimension(dim, br_model);
  std::vector<SignedIndex> psi_factors, chi_factors;
  for (int j = 1; j <= dim; ++j) {
    if (j <= 4 * n - 3) {
      psi_factors.push_back(j);
      psi_factors.push_back(-j);
    }
    if (j != n - 1 && j != 2 * n - 1) {
      chi_factors.push_back(j);
      chi_factors.push_back(-j);
    }
  }
  SktCurrentFixture f;
  f.psi = Form::from_factors(dim, psi_factors);
  f.chi = Form::from_factors(dim, chi_factors);
  f.ddbar = br_model.del(br_model.delbar(f.chi));
  auto ratio = proportionality_constant(f.ddbar, f.psi);
  if (ratio && ratio->is_one())
    f.sign = 1;
  else if (ratio && (-*ratio).is_one())
    f.sign = -1;
  f.verified = f.sign != 0;
  return f;
}

}  // namespace nilforms
