#pragma once

#include "params.hpp"

// Parameter arithmetic for the composition that turns one Hadamard PDF into an
// infinite series of PDFs: integer components, the admissibility gate, and the
// descendant parameter sets.  Only parameters are produced here; constructing
// the descendant families themselves is out of scope.

namespace hpdf {

struct ComponentSet {
  long long source = 0;
  std::vector<long long> components;  // maximal prime-power factors, ascending
};

inline ComponentSet components(long long m) {
  if (m < 2) throw std::invalid_argument("components: m must be >= 2");
  ComponentSet out;
  out.source = m;
  long long rest = m;
  for (long long p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    long long q = 1;
    while (rest % p == 0) {
      q *= p;
      rest /= p;
    }
    out.components.push_back(q);
  }
  if (rest > 1) out.components.push_back(rest);
  std::sort(out.components.begin(), out.components.end());
  return out;
}

struct DescendantParams {
  ParamSet base;
  long long n = 0;
  ParamSet result;  // (2*lambda*(2n+1), [(2k)^n per k in K, 2*lambda], 2*lambda)
};

// Gate: every component of 2n+1 must strictly exceed 2*max(K).  Returns the
// descendant parameters when the gate passes, nothing otherwise.
inline std::optional<DescendantParams> descendant_params(const ParamSet& base, long long n) {
  if (n < 1) throw std::invalid_argument("descendant_params: n must be >= 1");
  if (!param_identities_hold(base))
    throw std::invalid_argument("descendant_params: base parameters are inconsistent");
  if (base.v != 2 * base.lambda)
    throw std::invalid_argument("descendant_params: base must satisfy v = 2*lambda");
  const long long bound = 2 * base.max_size();
  for (long long c : components(2 * n + 1).components)
    if (c <= bound) return std::nullopt;

  std::vector<long long> sizes;
  for (const auto& [size, mult] : base.K)
    for (long long i = 0; i < mult * n; ++i) sizes.push_back(2 * size);
  sizes.push_back(2 * base.lambda);
  DescendantParams d;
  d.base = base;
  d.n = n;
  d.result = make_param_set(sizes, 2 * base.lambda);
  return d;
}

inline long long min_descendant_n(const ParamSet& base) {
  for (long long n = 1;; ++n)
    if (descendant_params(base, n)) return n;
}

}  // namespace hpdf
