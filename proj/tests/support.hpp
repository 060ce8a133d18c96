#pragma once

#include "nilforms/linalg.hpp"
#include "nilforms/structure.hpp"

#include <cstdint>

namespace testing {

using namespace nilforms;

inline Form random_monomial(SeededRandom &rng, int n, int p, int q)
{
  MultiIndex hol, anti;
  while (hol.size() < p)
    hol = hol.with(rng.integer(1, n));
  while (anti.size() < q)
    anti = anti.with(rng.integer(1, n));
  return Form::monomial(n, hol, anti, rng.scalar());
}

/// Homogeneous (p,q)-form with up to `terms` random monomials.
inline Form random_form(SeededRandom &rng, int n, int p, int q, int terms = 4)
{
  Form out(n);
  for (int t = 0; t < terms; ++t)
    out += random_monomial(rng, n, p, q);
  return out;
}

/// Homogeneous of total degree m with a random split per term.
inline Form random_degree_form(SeededRandom &rng, int n, int m, int terms = 4)
{
  Form out(n);
  m = std::min(m, 2 * n);
  for (int t = 0; t < terms; ++t) {
    const int lo = std::max(0, m - n), hi = std::min(m, n);
    const int p = rng.integer(lo, hi);
    out += random_monomial(rng, n, p, m - p);
  }
  return out;
}

inline int random_degree(SeededRandom &rng, int n, int max_deg) { return rng.integer(0, std::min(2 * n, max_deg)); }

/// Per-case seed derived from a suite seed.
inline std::uint64_t case_seed(std::uint64_t suite, int i)
{
  return suite * 0x100000001B3ULL + static_cast<std::uint64_t>(i) * 0x9E3779B97F4A7C15ULL;
}

}  // namespace testing
