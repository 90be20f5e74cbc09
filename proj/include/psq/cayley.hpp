#pragma once

#include "psq/group.hpp"

#include <optional>
#include <string>
#include <vector>

namespace psq {

// Arc colors on n vertices, 0 = no arc. Plain digraphs use color 1.
struct Digraph {
  int n = 0;
  std::vector<int> color;

  explicit Digraph(int n_ = 0) : n(n_), color(static_cast<std::size_t>(n_) * n_, 0) {}
  int at(int x, int y) const { return color[static_cast<std::size_t>(x) * n + y]; }
  void set(int x, int y, int c = 1) { color[static_cast<std::size_t>(x) * n + y] = c; }
  bool arc(int x, int y) const { return at(x, y) != 0; }
  bool operator==(Digraph const &o) const { return n == o.n && color == o.color; }
};

bool is_automorphism(Digraph const &g, Perm const &x);
// Arcs (d(x), d(y)) for every arc (x, y).
Digraph image(Digraph const &g, Perm const &d);

enum class SearchMode {
  Backtrack,  // partition refinement with orbit pruning
  Exhaustive, // every bijection consistent with the arcs, n <= 10
};

PermGroup digraph_automorphisms(Digraph const &g, SearchMode mode = SearchMode::Backtrack);
// Number of automorphisms found by the exhaustive scan, for certification.
unsigned long long count_automorphisms_exhaustive(Digraph const &g);

enum class GroupKind { Cyclic, Elementary };
std::string kind_name(GroupKind k);

// Z_{p^2} on 0..p^2-1, or Z_p x Z_p on a + b p <-> (a, b).
int group_add(int p, GroupKind kind, int x, int y);
int group_neg(int p, GroupKind kind, int x);
PermGroup left_regular(int p, GroupKind kind);
// The subgroups of order p, each sorted.
std::vector<std::vector<int>> order_p_subgroups(int p, GroupKind kind);

struct CayleyDigraph {
  int p;
  GroupKind kind;
  std::vector<int> S; // sorted, 0 not included
};

CayleyDigraph make_cayley(int p, GroupKind kind, std::vector<int> S);
Digraph to_digraph(CayleyDigraph const &c); // x -> x + s
PermGroup digraph_automorphisms(CayleyDigraph const &c, SearchMode mode = SearchMode::Backtrack);

// Orbits of G on ordered pairs; the diagonal is kept apart.
struct OrbitalSet {
  int n;
  std::vector<std::pair<int, int>> diagonal;
  std::vector<std::vector<std::pair<int, int>>> orbitals; // sorted by least arc
  Digraph digraph(std::size_t i) const;
  Digraph colored() const; // arc color = orbital index + 1
};

OrbitalSet orbital_digraphs(PermGroup const &g);
PermGroup two_closure(PermGroup const &g);

bool is_normal_cayley(CayleyDigraph const &c);
bool is_normal_cayley(CayleyDigraph const &c, PermGroup const &aut);

// G1 on the blocks, G2 inside each block, on a + j p.
PermGroup wreath_product_group(PermGroup const &g1, PermGroup const &g2);
// Gamma1 on the blocks, Gamma2 inside each block, on a + j p.
Digraph wreath_digraph(Digraph const &g1, Digraph const &g2);

struct TwoClosedCase {
  int theorem; // 14: regular Z_p x Z_p, 15: regular Z_{p^2}
  int case_no;
  std::string detail;
  std::optional<PermGroup> factor1, factor2; // wreath or direct factors
  std::optional<Perm> frame;                 // conjugator to the witnessing coordinates
  std::string label() const;
};

// G must contain a regular subgroup of the given kind.
TwoClosedCase classify_2closed(PermGroup const &g, GroupKind kind);

// "1".."4" for the nonnormal families, "normal" otherwise.
std::string corollary3_predicate(CayleyDigraph const &c);
// Gamma = Gamma1 wr Gamma2 for the cosets of some order-p subgroup.
bool is_wreath_decomposable(CayleyDigraph const &c);

struct IsoResult {
  std::optional<Perm> map; // map(X) = Y
  int candidates_tried = 0;
};

// Isomorphism search over the normalizer coset representatives: P_i
// (2 <= i <= p-1) for Z_{p^2}, conjugates of P'_i for Z_p x Z_p.
IsoResult iso_by_normalizer(CayleyDigraph const &x, CayleyDigraph const &y);

struct CatalogRecord {
  int p;
  GroupKind kind;
  std::vector<int> S;
  BigInt aut_order;
  bool normal;
  std::string case_label;
  std::string corollary3;
};

CatalogRecord catalog_record(CayleyDigraph const &c);
// Every connection set (p <= 3), sorted lexicographically.
std::vector<CatalogRecord> catalog(int p, GroupKind kind);
// count random connection sets from seed, sorted and deduplicated.
std::vector<CatalogRecord> catalog_sample(int p, GroupKind kind, int count, std::uint64_t seed);
std::string catalog_json_line(CatalogRecord const &r);

} // namespace psq
