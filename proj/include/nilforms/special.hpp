#pragma once

#include "nilforms/structure.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nilforms {

class NotPositiveDefinite : public Error
{
public:
  NotPositiveDefinite() : Error("metric matrix is not positive definite") {}
};

// Positive definite Hermitian matrix h; the fundamental form is
// omega = i sum h_{jk} phi^j ^ conj(phi^k).
class HermitianMetric
{
public:
  explicit HermitianMetric(ExactMatrix h);
  static HermitianMetric identity(int n);
  static HermitianMetric diagonal(std::span<const Scalar> entries);

  int n() const { return h_.rows(); }
  const ExactMatrix &matrix() const { return h_; }

private:
  ExactMatrix h_;
};

Form fundamental_form(const HermitianMetric &h, const StructureModel &model);

/// Outcome of an exact identity check; residual is zero iff it holds.
struct IdentityCheck
{
  bool holds = false;
  Form residual;
};

/// d(omega^{n-1}) = 0.
IdentityCheck is_balanced(const HermitianMetric &h, const StructureModel &model);
/// del delbar omega = 0.
IdentityCheck is_skt(const HermitianMetric &h, const StructureModel &model);
/// d theta = 0 and d omega = theta ^ omega; the residual is d theta when theta
/// is not closed, else d omega - theta ^ omega.
IdentityCheck verify_lck(const HermitianMetric &h, const Form &theta, const StructureModel &model);

enum class Transversality
{
  TransversePD,
  NotTransverse,
  Indeterminate
};

struct TransversalityVerdict
{
  Transversality status = Transversality::Indeterminate;
  /// Omega ^ sigma_{n-p} alpha ^ conj(beta) = Q(alpha, beta) vol on the monomial basis of (n-p,0)-forms.
  ExactMatrix q;
  std::vector<Monomial> basis;
  /// NotTransverse: a non-zero simple (n-p,0)-form with non-positive pairing.
  std::optional<Form> witness;
  Scalar witness_value;
  /// Indeterminate: number of sampled simple forms that all paired positively.
  int samples_passed = 0;
};

/// The pairing matrix Q of a real (p,p)-form.
ExactMatrix transverse_pairing(const Form &omega, int p, std::vector<Monomial> *basis = nullptr);
/// Omega ^ sigma_{n-p} alpha ^ conj(alpha) / vol.
Scalar transverse_value(const Form &omega, int p, const Form &alpha);

TransversalityVerdict transversality(const Form &omega, int p, const StructureModel &model, int samples = 10000,
                                     std::uint64_t seed = 1);

enum class PKahlerStatus
{
  Yes,
  No,
  Indeterminate
};

struct PKahlerVerdict
{
  PKahlerStatus status = PKahlerStatus::No;
  std::string reason;
  std::optional<TransversalityVerdict> transversality;
};

PKahlerVerdict is_p_kahler(const Form &omega, int p, const StructureModel &model, int samples = 10000,
                           std::uint64_t seed = 1);

struct CertificateTerm
{
  Scalar c;
  std::vector<Covector> psi_factors;
};

/// An (2n-2p-1)-form eta with (d eta)^{(n-p,n-p)} = sum c_k psi_k ^ conj(psi_k),
/// psi_k simple, c_k real of one sign: no p-Kaehler form can exist.
struct ObstructionCertificate
{
  int p = 0;
  Form eta;
  std::vector<CertificateTerm> terms;
};

enum class CertificateFailure
{
  None,
  NoTerms,
  NonRealCoefficient,
  ZeroCoefficient,
  MixedSigns,
  ZeroPsi,
  BidegreeMismatch,
  EtaClosed,
  ComponentMismatch
};

const char *to_string(CertificateFailure f);

struct CertificateCheck
{
  bool valid = false;
  CertificateFailure failure = CertificateFailure::None;
  std::string detail;
  explicit operator bool() const { return valid; }
};

CertificateCheck hmt_verify(const ObstructionCertificate &cert, const StructureModel &model);

class ObstructionUnavailable : public Error
{
public:
  using Error::Error;
};

/// Certificate for p = n - k on a triangular closed-first model with k < n,
/// with eta scaled so the surviving coefficient is exactly +1.
ObstructionCertificate build_eta_nilpotent(const StructureModel &model);

struct BrCertificate
{
  ObstructionCertificate certificate;
  int epsilon = 0;
};

/// Certificate for 1 <= p <= 4n-4 on catalog_br(n); epsilon is computed.
BrCertificate build_eta_br(int n, int p);
BrCertificate build_eta_br(const StructureModel &br_model, int n, int p);

/// Some X of bidegree (s-1,s-1) with del delbar X = psi, if one exists.
std::optional<Form> ddbar_potential(const Form &psi, const StructureModel &model);

struct SktCurrentFixture
{
  Form psi;    // product of phi^j ^ conj(phi^j) for j = 1 .. 4n-3
  Form chi;    // product over j = 1 .. 4n-2 without n-1 and 2n-1
  Form ddbar;  // del delbar chi
  int sign = 0;
  bool verified = false;
};

SktCurrentFixture skt_current_fixture(int n);
SktCurrentFixture skt_current_fixture(const StructureModel &br_model, int n);

}  // namespace nilforms
