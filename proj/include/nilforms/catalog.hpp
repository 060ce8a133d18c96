#pragma once

#include "nilforms/structure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilforms {

/// A candidate p-Kaehler form shipped with a catalog model.
struct CandidateForm
{
  std::string label;
  int p = 0;
  Form form;
};

/// Values frozen for an entry and re-derived by recheck_fixtures().
struct CatalogFixtures
{
  int k = 0;
  bool balanced_diagonal = false;
  /// Degeneration step of the invariant complex is at least this.
  int degeneration_step_lower_bound = 1;
  /// Exact degeneration step when it has been frozen.
  std::optional<int> degeneration_step;
  /// Degrees p for which an obstruction certificate is available.
  std::vector<int> obstruction_p;
};

struct CatalogEntry
{
  std::string id;
  StructureEquations se;
  CatalogFixtures expected;
  std::vector<CandidateForm> candidates;
};

/// The Bigalke-Rollenske structure equations in complex dimension 4n-2.
StructureEquations catalog_br(int n);
StructureEquations catalog_torus(int n);

/// Example models: ex-2.5, ex-2.6, torus-1..3, aux-del, br-2.
std::vector<CatalogEntry> catalog_examples();
/// Ids: br-N (N >= 2), torus-N (N >= 1), ex-2.5, ex-2.6, aux-del.
CatalogEntry catalog_entry(const std::string &id);
std::vector<std::string> catalog_ids();

/// The BR parameter n when id is "br-N".
std::optional<int> br_parameter(const std::string &id);

/// Omega of the 2-Kaehler example in complex dimension 3.
Form example_25_omega();
/// i(phi^{11bar} + phi^{22bar} + phi^{33bar}).
Form example_25_metric_form();
/// Omega of the 2-Kaehler example in complex dimension 4.
Form example_26_omega();

/// A proportionality a = c b stated with constant `stated`; `computed` is the
/// exact c (empty when a and b are not proportional).
struct ConstantReport
{
  std::string relation;
  Scalar stated;
  std::optional<Scalar> computed;

  bool positive_rational() const { return computed && computed->is_positive_real(); }
  bool matches() const { return computed && *computed == stated; }
};

/// omega^2 against Omega on ex-2.5, stated constant 1.
ConstantReport example_25_constant();

struct FixtureCheck
{
  std::string what;
  bool ok = false;
  std::string detail;
};

/// Re-derives every frozen fixture of the entry from scratch.
std::vector<FixtureCheck> recheck_fixtures(const CatalogEntry &entry);

}  // namespace nilforms
