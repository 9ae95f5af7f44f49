#pragma once

#include <map>
#include <sstream>

#include "group.hpp"

// Lists of differences as multisets, and exact verification of the design
// structures built from them (difference families, partitioned difference
// families and their Hadamard case, difference sets, partial and relative
// difference sets).  All verdicts are exact integer computations; failures are
// reported as data, never as approximations.

namespace hpdf {

// Block: strictly increasing list of distinct element indices.
using Block = std::vector<int>;

struct Family {
  std::vector<Block> blocks;
};

struct Multiset {
  std::vector<long long> counts;  // indexed by group element

  long long at(int g) const { return counts[g]; }
  long long total_nonidentity() const {
    long long s = 0;
    for (size_t g = 1; g < counts.size(); ++g) s += counts[g];
    return s;
  }
  bool operator==(const Multiset& o) const { return counts == o.counts; }
};

inline void validate_block(const FiniteGroup& G, const Block& B) {
  for (size_t i = 0; i < B.size(); ++i) {
    if (B[i] < 0 || B[i] >= G.order())
      throw std::out_of_range("block element " + std::to_string(B[i]) + " out of range");
    if (i > 0 && B[i] <= B[i - 1])
      throw std::invalid_argument("block elements must be strictly increasing");
  }
}

inline Block sorted_block(std::vector<int> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return elems;
}

// Multiset of x * y^-1 over ordered pairs of distinct elements of B.
// counts[0] is always zero: x != y forces x * y^-1 != identity.
inline Multiset delta_block(const FiniteGroup& G, const Block& B) {
  validate_block(G, B);
  Multiset d;
  d.counts.assign(G.order(), 0);
  for (int x : B)
    for (int y : B)
      if (x != y) d.counts[G.difference(x, y)]++;
  return d;
}

inline Multiset delta_family(const FiniteGroup& G, const Family& F) {
  Multiset d;
  d.counts.assign(G.order(), 0);
  for (const Block& B : F.blocks) {
    const Multiset db = delta_block(G, B);
    for (int g = 0; g < G.order(); ++g) d.counts[g] += db.counts[g];
  }
  return d;
}

inline Block complement(const FiniteGroup& G, const Block& B) {
  validate_block(G, B);
  std::vector<char> in(G.order(), 0);
  for (int b : B) in[b] = 1;
  Block out;
  for (int g = 0; g < G.order(); ++g)
    if (!in[g]) out.push_back(g);
  return out;
}

// Self-test oracle: the multiplicity of every nonzero g in the complement's
// difference list equals v - 2|B| + (multiplicity of g in delta B).
inline bool complement_multiplicity_check(const FiniteGroup& G, const Block& B) {
  const Multiset db = delta_block(G, B);
  const Multiset dc = delta_block(G, complement(G, B));
  const long long v = G.order(), k = static_cast<long long>(B.size());
  for (int g = 1; g < G.order(); ++g)
    if (dc.counts[g] != v - 2 * k + db.counts[g]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

enum class DesignKind { none, df, pdf, hpdf, ds, pds, rds };

inline const char* design_kind_name(DesignKind k) {
  switch (k) {
    case DesignKind::df: return "DF";
    case DesignKind::pdf: return "PDF";
    case DesignKind::hpdf: return "HPDF";
    case DesignKind::ds: return "DS";
    case DesignKind::pds: return "PDS";
    case DesignKind::rds: return "RDS";
    default: return "none";
  }
}

struct Deviation {
  int element;
  long long observed;
  long long expected;
};

struct VerificationReport {
  DesignKind kind = DesignKind::none;
  long long v = 0;
  std::vector<long long> block_sizes;  // ascending
  long long lambda = -1;               // df/pdf/hpdf/ds/rds
  long long alpha = -1, beta = -1;     // pds
  long long rds_quotient = 0, rds_forbidden_order = 0;
  bool partition_ok = true;
  std::vector<Deviation> deviations;

  bool passed() const { return kind != DesignKind::none; }
};

namespace detail {

// True iff d is constant on elems; on failure appends deviations against the
// truncated average and leaves *fitted at that average.
inline bool fit_constant(const Multiset& d, const std::vector<int>& elems, long long* fitted,
                         std::vector<Deviation>* devs) {
  if (elems.empty()) {
    *fitted = 0;
    return true;
  }
  const long long first = d.counts[elems.front()];
  bool constant = true;
  long long sum = 0;
  for (int g : elems) {
    sum += d.counts[g];
    if (d.counts[g] != first) constant = false;
  }
  if (constant) {
    *fitted = first;
    return true;
  }
  const long long avg = sum / static_cast<long long>(elems.size());
  *fitted = avg;
  for (int g : elems)
    if (d.counts[g] != avg) devs->push_back({g, d.counts[g], avg});
  return false;
}

inline std::vector<long long> sorted_sizes(const Family& F) {
  std::vector<long long> sizes;
  for (const Block& B : F.blocks) sizes.push_back(static_cast<long long>(B.size()));
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

inline std::vector<int> nonzero_elements(int v) {
  std::vector<int> out;
  for (int g = 1; g < v; ++g) out.push_back(g);
  return out;
}

}  // namespace detail

// Difference family: combined difference list constant on G \ {0}.
// Blocks may overlap; no partition requirement.
inline VerificationReport verify_df(const FiniteGroup& G, const Family& F) {
  VerificationReport rep;
  rep.v = G.order();
  rep.block_sizes = detail::sorted_sizes(F);
  const Multiset d = delta_family(G, F);
  if (detail::fit_constant(d, detail::nonzero_elements(G.order()), &rep.lambda, &rep.deviations))
    rep.kind = DesignKind::df;
  return rep;
}

// Partitioned difference family: blocks partition G and the combined
// difference list is constant on G \ {0}.
inline VerificationReport verify_pdf(const FiniteGroup& G, const Family& F) {
  VerificationReport rep;
  rep.v = G.order();
  rep.block_sizes = detail::sorted_sizes(F);

  std::vector<long long> cover(G.order(), 0);
  for (const Block& B : F.blocks) {
    validate_block(G, B);
    for (int e : B) cover[e]++;
  }
  for (int g = 0; g < G.order(); ++g)
    if (cover[g] != 1) {
      rep.partition_ok = false;
      rep.deviations.push_back({g, cover[g], 1});
    }
  if (!rep.partition_ok) return rep;

  const Multiset d = delta_family(G, F);
  if (detail::fit_constant(d, detail::nonzero_elements(G.order()), &rep.lambda, &rep.deviations))
    rep.kind = DesignKind::pdf;
  return rep;
}

// Hadamard PDF: a PDF in a group of order exactly 2*lambda.
inline VerificationReport verify_hpdf(const FiniteGroup& G, const Family& F) {
  VerificationReport rep = verify_pdf(G, F);
  if (rep.kind == DesignKind::pdf && rep.v == 2 * rep.lambda) rep.kind = DesignKind::hpdf;
  return rep;
}

// Difference set: a single block whose difference list is constant on G \ {0}.
inline VerificationReport verify_ds(const FiniteGroup& G, const Block& B) {
  VerificationReport rep;
  rep.v = G.order();
  rep.block_sizes = {static_cast<long long>(B.size())};
  const Multiset d = delta_block(G, B);
  if (detail::fit_constant(d, detail::nonzero_elements(G.order()), &rep.lambda, &rep.deviations))
    rep.kind = DesignKind::ds;
  return rep;
}

// Partial difference set: delta B constant alpha on B \ {0} and constant beta
// on (G \ B) \ {0}.  Whether 0 lies in B is irrelevant; both regions exclude
// the identity.
inline VerificationReport verify_pds(const FiniteGroup& G, const Block& B) {
  VerificationReport rep;
  rep.v = G.order();
  rep.block_sizes = {static_cast<long long>(B.size())};
  const Multiset d = delta_block(G, B);
  std::vector<int> inside, outside;
  std::vector<char> in(G.order(), 0);
  for (int b : B) in[b] = 1;
  for (int g = 1; g < G.order(); ++g) (in[g] ? inside : outside).push_back(g);
  const bool a_ok = detail::fit_constant(d, inside, &rep.alpha, &rep.deviations);
  const bool b_ok = detail::fit_constant(d, outside, &rep.beta, &rep.deviations);
  if (a_ok && b_ok) rep.kind = DesignKind::pds;
  return rep;
}

// Relative difference set with forbidden subgroup N: delta B misses N \ {0}
// entirely and covers G \ N a constant number of times.  Parameters are
// reported as (|G|/|N|, |N|, k, lambda).
inline VerificationReport verify_rds(const FiniteGroup& G, const Block& B, const Subgroup& N) {
  if (N.parent_order != G.order() || !is_subgroup(G, N.members))
    throw std::invalid_argument("verify_rds: N is not a subgroup of G");
  VerificationReport rep;
  rep.v = G.order();
  rep.block_sizes = {static_cast<long long>(B.size())};
  rep.rds_forbidden_order = N.order();
  rep.rds_quotient = G.order() / N.order();
  const Multiset d = delta_block(G, B);
  bool ok = true;
  std::vector<int> outside;
  for (int g = 1; g < G.order(); ++g) {
    if (N.contains(g)) {
      if (d.counts[g] != 0) {
        rep.deviations.push_back({g, d.counts[g], 0});
        ok = false;
      }
    } else {
      outside.push_back(g);
    }
  }
  if (!detail::fit_constant(d, outside, &rep.lambda, &rep.deviations)) ok = false;
  if (ok) rep.kind = DesignKind::rds;
  return rep;
}

// Plain-text pairwise difference table of a block: cell (row r, column c)
// holds the label of r * c^-1, "-" on the diagonal.
inline std::string render_difference_table(const FiniteGroup& G, const Block& B) {
  validate_block(G, B);
  size_t w = 1;
  for (int x : B)
    for (int y : B) {
      if (x != y) w = std::max(w, G.label(G.difference(x, y)).size());
      w = std::max(w, G.label(x).size());
    }
  std::ostringstream os;
  auto cell = [&](const std::string& s) {
    os << ' ';
    for (size_t i = s.size(); i < w; ++i) os << ' ';
    os << s;
  };
  cell("");
  for (int c : B) cell(G.label(c));
  os << '\n';
  for (int r : B) {
    cell(G.label(r));
    for (int c : B) cell(r == c ? "-" : G.label(G.difference(r, c)));
    os << '\n';
  }
  return os.str();
}

}  // namespace hpdf
