#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Small finite groups represented by explicit operation tables.
//
// Element 0 is always the identity.  Each constructor fixes a deterministic
// element encoding (documented next to it) so that element indices are stable
// across runs and can be used in data files and fixtures.  All groups are
// treated multiplicatively; "difference" uniformly means x * y^-1.

namespace hpdf {

// ---------------------------------------------------------------------------
// Table validation
// ---------------------------------------------------------------------------

struct ValidationIssue {
  std::string category;  // "shape" | "identity" | "latin" | "associativity" | "inverse"
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;  // details, capped per category
  long long total_violations = 0;       // full count, never capped
  bool ok() const { return total_violations == 0; }

  std::string summary() const {
    if (ok()) return "valid";
    std::string s = std::to_string(total_violations) + " violation(s)";
    for (const auto& is : issues) s += "; " + is.category + ": " + is.detail;
    return s;
  }
};

// Checks every group axiom on a raw table: identity at index 0, Latin square
// rows/columns, associativity (O(v^3)) and two-sided inverses.  Violations are
// data, not exceptions.
inline ValidationReport validate_table(int order, const std::vector<int>& table) {
  ValidationReport rep;
  constexpr int kMaxDetails = 8;
  auto add = [&rep](const char* cat, std::string detail) {
    rep.total_violations++;
    int seen = 0;
    for (const auto& is : rep.issues)
      if (is.category == cat) seen++;
    if (seen < kMaxDetails) rep.issues.push_back({cat, std::move(detail)});
  };

  if (order <= 0) {
    add("shape", "order must be positive");
    return rep;
  }
  if (table.size() != static_cast<size_t>(order) * order) {
    add("shape", "table has " + std::to_string(table.size()) + " entries, expected " +
                     std::to_string(static_cast<long long>(order) * order));
    return rep;
  }
  bool in_range = true;
  for (size_t i = 0; i < table.size(); ++i) {
    if (table[i] < 0 || table[i] >= order) {
      add("shape", "entry " + std::to_string(i) + " = " + std::to_string(table[i]) +
                       " is out of range");
      in_range = false;
    }
  }
  if (!in_range) return rep;

  const int v = order;
  auto at = [&](int i, int j) { return table[static_cast<size_t>(i) * v + j]; };

  for (int j = 0; j < v; ++j)
    if (at(0, j) != j)
      add("identity", "table[0][" + std::to_string(j) + "] = " + std::to_string(at(0, j)));
  for (int i = 0; i < v; ++i)
    if (at(i, 0) != i)
      add("identity", "table[" + std::to_string(i) + "][0] = " + std::to_string(at(i, 0)));

  std::vector<char> seen(v);
  for (int i = 0; i < v; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < v; ++j) {
      if (seen[at(i, j)])
        add("latin", "row " + std::to_string(i) + " repeats value " + std::to_string(at(i, j)));
      seen[at(i, j)] = 1;
    }
  }
  for (int j = 0; j < v; ++j) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int i = 0; i < v; ++i) {
      if (seen[at(i, j)])
        add("latin", "column " + std::to_string(j) + " repeats value " + std::to_string(at(i, j)));
      seen[at(i, j)] = 1;
    }
  }

  for (int i = 0; i < v; ++i)
    for (int j = 0; j < v; ++j)
      for (int k = 0; k < v; ++k)
        if (at(at(i, j), k) != at(i, at(j, k)))
          add("associativity", "(" + std::to_string(i) + "," + std::to_string(j) + "," +
                                   std::to_string(k) + ")");

  for (int i = 0; i < v; ++i) {
    bool has = false;
    for (int j = 0; j < v && !has; ++j)
      if (at(i, j) == 0 && at(j, i) == 0) has = true;
    if (!has) add("inverse", "element " + std::to_string(i) + " has no inverse");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// FiniteGroup
// ---------------------------------------------------------------------------

class FiniteGroup {
 public:
  // Tables up to this order are fully validated on construction; larger ones
  // (file imports) are validated on demand by the loader.
  static constexpr int kEagerValidationBound = 256;

  FiniteGroup(int order, std::vector<int> table, std::vector<std::string> labels,
              std::string descriptor)
      : order_(order),
        table_(std::move(table)),
        labels_(std::move(labels)),
        descriptor_(std::move(descriptor)) {
    if (order_ <= 0) throw std::invalid_argument("group order must be positive");
    if (table_.size() != static_cast<size_t>(order_) * order_)
      throw std::invalid_argument("operation table size does not match order");
    if (labels_.size() != static_cast<size_t>(order_))
      throw std::invalid_argument("label count does not match order");
    for (int t : table_)
      if (t < 0 || t >= order_) throw std::invalid_argument("operation table entry out of range");
    if (order_ <= kEagerValidationBound) {
      ValidationReport rep = validate_table(order_, table_);
      if (!rep.ok()) throw std::invalid_argument("invalid operation table: " + rep.summary());
    }
    inverse_.assign(order_, -1);
    for (int i = 0; i < order_; ++i) {
      for (int j = 0; j < order_; ++j)
        if (op(i, j) == 0 && op(j, i) == 0) {
          inverse_[i] = j;
          break;
        }
      if (inverse_[i] < 0)
        throw std::invalid_argument("element " + std::to_string(i) + " has no inverse");
    }
  }

  int order() const { return order_; }
  int op(int a, int b) const { return table_[static_cast<size_t>(a) * order_ + b]; }
  int inverse(int a) const { return inverse_[a]; }
  // x * y^-1, the fixed difference convention of the whole library.
  int difference(int x, int y) const { return op(x, inverse_[y]); }

  int power(int g, long long e) const {
    if (e < 0) {
      g = inverse_[g];
      e = -e;
    }
    int acc = 0, base = g;
    while (e > 0) {
      if (e & 1) acc = op(acc, base);
      base = op(base, base);
      e >>= 1;
    }
    return acc;
  }

  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& descriptor() const { return descriptor_; }
  const std::vector<int>& flat_table() const { return table_; }

 private:
  int order_;
  std::vector<int> table_;
  std::vector<std::string> labels_;
  std::string descriptor_;
  std::vector<int> inverse_;
};

inline ValidationReport validate_group(const FiniteGroup& G) {
  return validate_table(G.order(), G.flat_table());
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

namespace detail {

inline std::string power_label(const std::string& base, long long e) {
  if (e == 0) return "";
  if (e == 1) return base;
  return base + "^" + std::to_string(e);
}

inline std::string join_factors(const std::string& a, const std::string& b) {
  if (a.empty() && b.empty()) return "1";
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "*" + b;
}

inline long long mod_pow(long long base, long long exp, long long mod) {
  base %= mod;
  if (base < 0) base += mod;
  long long acc = 1 % mod;
  while (exp > 0) {
    if (exp & 1) acc = acc * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return acc;
}

inline long long mod_inverse(long long a, long long m) {
  // extended Euclid; caller guarantees gcd(a, m) == 1
  long long old_r = a % m, r = m, old_s = 1, s = 0;
  if (old_r < 0) old_r += m;
  while (r != 0) {
    long long q = old_r / r;
    long long tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  long long inv = old_s % m;
  if (inv < 0) inv += m;
  return inv;
}

}  // namespace detail

// Z_n with element i = residue i; table[i][j] = (i+j) mod n.
inline FiniteGroup make_cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic: order must be >= 1");
  std::vector<int> table(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[static_cast<size_t>(i) * n + j] = (i + j) % n;
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return FiniteGroup(n, std::move(table), std::move(labels), "cyclic(" + std::to_string(n) + ")");
}

// Dihedral group of order 2n: x^n = 1, y^2 = 1, y x^i = x^-i y.
// Indices 0..n-1 are the rotations x^i, indices n..2n-1 are x^i y.
inline FiniteGroup make_dihedral(int two_n) {
  if (two_n < 2 || two_n % 2 != 0)
    throw std::invalid_argument("dihedral: order must be a positive even integer");
  const int n = two_n / 2;
  auto idx = [&](bool refl, int r) { return (refl ? n : 0) + r; };
  std::vector<int> table(static_cast<size_t>(two_n) * two_n);
  for (int a = 0; a < two_n; ++a) {
    const bool ra = a >= n;
    const int ea = ra ? a - n : a;
    for (int b = 0; b < two_n; ++b) {
      const bool rb = b >= n;
      const int eb = rb ? b - n : b;
      int res;
      if (!ra && !rb) res = idx(false, (ea + eb) % n);
      else if (!ra && rb) res = idx(true, (ea + eb) % n);
      else if (ra && !rb) res = idx(true, (ea - eb + n) % n);
      else res = idx(false, (ea - eb + n) % n);
      table[static_cast<size_t>(a) * two_n + b] = res;
    }
  }
  std::vector<std::string> labels(two_n);
  for (int i = 0; i < n; ++i) {
    labels[i] = detail::join_factors(detail::power_label("x", i), "");
    labels[n + i] = detail::join_factors(detail::power_label("x", i), "y");
  }
  return FiniteGroup(two_n, std::move(table), std::move(labels),
                     "dihedral(" + std::to_string(two_n) + ")");
}

// Dicyclic group of order 4n: x^(2n) = 1, y^2 = x^n, y x^i = x^-i y.
// Indices 0..2n-1 are x^i, indices 2n..4n-1 are x^i y.
inline FiniteGroup make_dicyclic(int four_n) {
  if (four_n < 4 || four_n % 4 != 0)
    throw std::invalid_argument("dicyclic: order must be a positive multiple of 4");
  const int n = four_n / 4;
  const int two_n = 2 * n;
  auto idx = [&](bool refl, int r) { return (refl ? two_n : 0) + r; };
  std::vector<int> table(static_cast<size_t>(four_n) * four_n);
  for (int a = 0; a < four_n; ++a) {
    const bool ra = a >= two_n;
    const int ea = ra ? a - two_n : a;
    for (int b = 0; b < four_n; ++b) {
      const bool rb = b >= two_n;
      const int eb = rb ? b - two_n : b;
      int res;
      if (!ra && !rb) res = idx(false, (ea + eb) % two_n);
      else if (!ra && rb) res = idx(true, (ea + eb) % two_n);
      else if (ra && !rb) res = idx(true, (ea - eb + two_n) % two_n);
      else res = idx(false, (ea - eb + two_n + n) % two_n);
      table[static_cast<size_t>(a) * four_n + b] = res;
    }
  }
  std::vector<std::string> labels(four_n);
  for (int i = 0; i < two_n; ++i) {
    labels[i] = detail::join_factors(detail::power_label("x", i), "");
    labels[two_n + i] = detail::join_factors(detail::power_label("x", i), "y");
  }
  return FiniteGroup(four_n, std::move(table), std::move(labels),
                     "dicyclic(" + std::to_string(four_n) + ")");
}

// Direct product on pairs; (a, b) is encoded as index a*|H| + b.
inline FiniteGroup make_direct_product(const FiniteGroup& G, const FiniteGroup& H) {
  const int vg = G.order(), vh = H.order();
  const int v = vg * vh;
  std::vector<int> table(static_cast<size_t>(v) * v);
  for (int a = 0; a < vg; ++a)
    for (int b = 0; b < vh; ++b)
      for (int c = 0; c < vg; ++c)
        for (int d = 0; d < vh; ++d) {
          const int lhs = a * vh + b, rhs = c * vh + d;
          table[static_cast<size_t>(lhs) * v + rhs] = G.op(a, c) * vh + H.op(b, d);
        }
  std::vector<std::string> labels(v);
  for (int a = 0; a < vg; ++a)
    for (int b = 0; b < vh; ++b) labels[a * vh + b] = "(" + G.label(a) + "," + H.label(b) + ")";
  return FiniteGroup(v, std::move(table), std::move(labels),
                     "product(" + G.descriptor() + "," + H.descriptor() + ")");
}

// Semidirect product <a, b | a^n = b^m = 1, a b a^-1 = b^r> of order m*n.
// Element a^i b^j (0 <= i < n, 0 <= j < m) is encoded as index i*m + j.
// Requires r^n == 1 (mod m) and gcd(r, m) == 1.
inline FiniteGroup make_semidirect_cyclic(int m, int n, int r) {
  if (m < 1 || n < 1)
    throw std::invalid_argument("semidirect: both cyclic orders must be >= 1");
  long long rr = ((static_cast<long long>(r) % m) + m) % m;
  if (std::gcd(rr, static_cast<long long>(m)) != 1)
    throw std::invalid_argument("semidirect: gcd(r, m) = " +
                                std::to_string(std::gcd(rr, static_cast<long long>(m))) +
                                ", expected 1");
  const long long pw = detail::mod_pow(rr, n, m);
  if (pw != 1 % m)
    throw std::invalid_argument("semidirect: r^n mod m = " + std::to_string(pw) +
                                ", expected 1 (r=" + std::to_string(r) +
                                ", n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")");
  // b a = a b^s with s = r^-1 (mod m); powers of s drive the multiplication.
  const long long s = detail::mod_inverse(rr, m);
  std::vector<long long> spow(n);
  spow[0] = 1 % m;
  for (int i = 1; i < n; ++i) spow[i] = spow[i - 1] * s % m;

  const int v = m * n;
  std::vector<int> table(static_cast<size_t>(v) * v);
  for (int i1 = 0; i1 < n; ++i1)
    for (int j1 = 0; j1 < m; ++j1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < m; ++j2) {
          const int i = (i1 + i2) % n;
          const int j = static_cast<int>((j1 * spow[i2] + j2) % m);
          table[static_cast<size_t>(i1 * m + j1) * v + (i2 * m + j2)] = i * m + j;
        }
  std::vector<std::string> labels(v);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      labels[i * m + j] =
          detail::join_factors(detail::power_label("a", i), detail::power_label("b", j));
  return FiniteGroup(v, std::move(table), std::move(labels),
                     "semidirect(" + std::to_string(m) + "," + std::to_string(n) + "," +
                         std::to_string(r) + ")");
}

namespace detail {

// The 24 matrices [[a,b],[c,d]] over Z_3 with determinant 1: identity first,
// the rest in row-major lexicographic order of (a,b,c,d).
inline const std::vector<std::array<int, 4>>& sl23_elements() {
  static const std::vector<std::array<int, 4>> elems = [] {
    std::vector<std::array<int, 4>> out;
    out.push_back({1, 0, 0, 1});
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
          for (int d = 0; d < 3; ++d) {
            if (((a * d - b * c) % 3 + 3) % 3 == 1) {
              std::array<int, 4> mm = {a, b, c, d};
              if (mm != std::array<int, 4>{1, 0, 0, 1}) out.push_back(mm);
            }
          }
    return out;
  }();
  return elems;
}

}  // namespace detail

inline int sl23_element_index(int a, int b, int c, int d) {
  const auto& elems = detail::sl23_elements();
  const std::array<int, 4> key = {((a % 3) + 3) % 3, ((b % 3) + 3) % 3, ((c % 3) + 3) % 3,
                                  ((d % 3) + 3) % 3};
  for (size_t i = 0; i < elems.size(); ++i)
    if (elems[i] == key) return static_cast<int>(i);
  throw std::invalid_argument("sl23: matrix has determinant != 1");
}

// SL(2,3): the 24 2x2 matrices over Z_3 with determinant 1, multiplied mod 3.
inline FiniteGroup make_sl23() {
  const auto& elems = detail::sl23_elements();
  const int v = static_cast<int>(elems.size());
  std::vector<int> table(static_cast<size_t>(v) * v);
  for (int i = 0; i < v; ++i)
    for (int j = 0; j < v; ++j) {
      const auto& A = elems[i];
      const auto& B = elems[j];
      const int a = (A[0] * B[0] + A[1] * B[2]) % 3;
      const int b = (A[0] * B[1] + A[1] * B[3]) % 3;
      const int c = (A[2] * B[0] + A[3] * B[2]) % 3;
      const int d = (A[2] * B[1] + A[3] * B[3]) % 3;
      table[static_cast<size_t>(i) * v + j] = sl23_element_index(a, b, c, d);
    }
  std::vector<std::string> labels(v);
  for (int i = 0; i < v; ++i) {
    const auto& M = elems[i];
    labels[i] = "[[" + std::to_string(M[0]) + "," + std::to_string(M[1]) + "],[" +
                std::to_string(M[2]) + "," + std::to_string(M[3]) + "]]";
  }
  return FiniteGroup(v, std::move(table), std::move(labels), "sl23");
}

// ---------------------------------------------------------------------------
// Element and subgroup queries
// ---------------------------------------------------------------------------

inline std::vector<int> involutions(const FiniteGroup& G) {
  std::vector<int> out;
  for (int g = 1; g < G.order(); ++g)
    if (G.op(g, g) == 0) out.push_back(g);
  return out;
}

inline int element_order(const FiniteGroup& G, int g) {
  if (g < 0 || g >= G.order()) throw std::out_of_range("element index out of range");
  int acc = g, k = 1;
  while (acc != 0) {
    acc = G.op(acc, g);
    ++k;
  }
  return k;
}

struct Subgroup {
  std::vector<int> members;  // sorted ascending, contains 0
  int parent_order = 0;

  int order() const { return static_cast<int>(members.size()); }
  bool contains(int g) const { return std::binary_search(members.begin(), members.end(), g); }
};

inline bool is_subgroup(const FiniteGroup& G, const std::vector<int>& members) {
  if (members.empty()) return false;
  std::vector<char> in(G.order(), 0);
  for (int g : members) {
    if (g < 0 || g >= G.order()) return false;
    in[g] = 1;
  }
  if (!in[0]) return false;
  for (int a : members)
    for (int b : members)
      if (!in[G.op(a, b)]) return false;
  return true;
}

// Subgroup generated by the given elements, as a sorted member list.
inline std::vector<int> generated_subgroup(const FiniteGroup& G, const std::vector<int>& gens) {
  std::vector<char> in(G.order(), 0);
  std::vector<int> members;
  auto push = [&](int x) {
    if (!in[x]) {
      in[x] = 1;
      members.push_back(x);
    }
  };
  push(0);
  for (int g : gens) push(g);
  bool grew = true;
  while (grew) {
    grew = false;
    const size_t sz = members.size();
    for (size_t i = 0; i < sz; ++i)
      for (size_t j = 0; j < sz; ++j) {
        const int p = G.op(members[i], members[j]);
        if (!in[p]) {
          push(p);
          grew = true;
        }
      }
  }
  std::sort(members.begin(), members.end());
  return members;
}

// All subgroups of index exactly 2, in lexicographic member order.
//
// Index-2 subgroups contain every square and every commutator, so they
// correspond to the index-2 subgroups of the quotient by N = <squares,
// commutators>, which is an elementary abelian 2-group.  Those are the kernels
// of the nonzero F_2-linear functionals, enumerated directly.  This is exact
// for every group and avoids subset enumeration.
inline std::vector<Subgroup> index2_subgroups(const FiniteGroup& G) {
  const int v = G.order();
  if (v % 2 != 0) return {};

  std::vector<int> gens;
  gens.reserve(static_cast<size_t>(v) * (v + 1));
  for (int g = 0; g < v; ++g) gens.push_back(G.op(g, g));
  for (int g = 0; g < v; ++g)
    for (int h = 0; h < v; ++h)
      gens.push_back(G.op(G.op(g, h), G.op(G.inverse(g), G.inverse(h))));
  const std::vector<int> N = generated_subgroup(G, gens);
  if (static_cast<int>(N.size()) == v) return {};

  // left cosets gN
  std::vector<int> coset(v, -1);
  std::vector<int> reps;
  for (int g = 0; g < v; ++g) {
    if (coset[g] >= 0) continue;
    const int id = static_cast<int>(reps.size());
    for (int n : N) coset[G.op(g, n)] = id;
    reps.push_back(g);
  }
  const int q = static_cast<int>(reps.size());
  if ((q & (q - 1)) != 0)
    throw std::logic_error("index2_subgroups: quotient is not a 2-group");

  // F_2 coordinates on the quotient
  std::vector<uint32_t> coord(q, UINT32_MAX);
  std::vector<int> known;
  coord[coset[0]] = 0;
  known.push_back(coset[0]);
  int dim = 0;
  for (int c = 0; c < q; ++c) {
    if (coord[c] != UINT32_MAX) continue;
    const int bit = dim++;
    const size_t base = known.size();
    for (size_t i = 0; i < base; ++i) {
      const int kc = known[i];
      const int nc = coset[G.op(reps[c], reps[kc])];
      coord[nc] = coord[kc] | (1u << bit);
      known.push_back(nc);
    }
  }

  std::vector<Subgroup> out;
  for (uint32_t mask = 1; mask < (1u << dim); ++mask) {
    Subgroup H;
    H.parent_order = v;
    for (int g = 0; g < v; ++g)
      if (__builtin_popcount(coord[coset[g]] & mask) % 2 == 0) H.members.push_back(g);
    out.push_back(std::move(H));
  }
  std::sort(out.begin(), out.end(),
            [](const Subgroup& a, const Subgroup& b) { return a.members < b.members; });
  return out;
}

}  // namespace hpdf
