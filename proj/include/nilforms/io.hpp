#pragma once

#include "nilforms/frolicher.hpp"
#include "nilforms/special.hpp"

#include <nlohmann/json.hpp>

#include <string_view>

namespace nilforms {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// [{"I": [...], "J": [...], "c": "..."}] in canonical order.
Json form_terms_json(const Form &a);
/// Accepts a term list or {"n": n, "terms": [...]}; I and J may be unsorted,
/// the sign of reordering phi^I ^ conj(phi)^J is applied.
Form parse_form(const Json &j, int n);
Form parse_form_text(std::string_view text, int n);

Json covector_json(const Covector &v);
Json certificate_json(const ObstructionCertificate &cert);
ObstructionCertificate parse_certificate(std::string_view text, int n);

/// {"H": [[...], ...]} with string or integer entries.
ExactMatrix parse_matrix(std::string_view text);

/// {"p,q": value} for every bidegree.
Json bidegree_table_json(const std::map<Bidegree, int> &table);
Json page_json(const PageTable &page, int n);
Json degeneration_json(const DegenerationReport &report, int n);

Json scalar_json(const Scalar &s);
Scalar parse_scalar_json(const Json &j);

}  // namespace nilforms
