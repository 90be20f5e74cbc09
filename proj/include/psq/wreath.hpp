#pragma once

#include "psq/codes.hpp"
#include "psq/group.hpp"

#include <optional>
#include <vector>

namespace psq {

// (Z_n)^p / K with H acting by (h.v)_i = v_{h^-1(i)}. Elements are indices
// of canonical coset representatives (least vector of the coset).
class QuotientModule {
public:
  QuotientModule() = default;
  QuotientModule(int p, long long n, std::vector<Vec> const &k_gens);

  int p() const { return p_; }
  long long n() const { return n_; }
  std::vector<Vec> const &subgroup() const { return k_; } // all of K, sorted
  std::vector<Vec> subgroup_generators() const { return k_gens_; }
  int size() const { return static_cast<int>(reps_.size()); }
  Vec const &rep(int a) const { return reps_[a]; }
  int index(Vec const &v) const;
  int zero() const { return 0; }
  int add(int a, int b) const;
  int neg(int a) const;
  int sub(int a, int b) const { return add(a, neg(b)); }
  int act(Perm const &h, int a) const;
  bool is_invariant(std::vector<Perm> const &gens) const;
  bool operator==(QuotientModule const &o) const {
    return p_ == o.p_ && n_ == o.n_ && k_ == o.k_;
  }

private:
  long long encode(Vec const &v) const;
  int p_ = 0;
  long long n_ = 1;
  std::vector<Vec> k_gens_, k_, reps_;
  std::vector<int> index_; // by encoded vector
};

// Subgroups of (Z_n)^p invariant under the coordinate permutations gens.
std::vector<std::vector<Vec>> invariant_subgroups(int p, long long n,
                                                  std::vector<Perm> const &gens);

// A crossed homomorphism stored as a full table over the elements of H.
// In the left-to-right product x*y (x applied first) the identity reads
// phi(x*y) = phi(x) + x^-1 . phi(y); with h1 h2 = h1 o h2 (h2 applied first)
// it is phi(h1 h2) = h2^-1 . phi(h1) + phi(h2).
struct CrossedHom {
  PermGroup H;
  QuotientModule module;
  std::vector<Perm> elements; // sorted
  std::vector<int> values;
  int value(Perm const &h) const;
};

CrossedHom zero_crossed_hom(PermGroup const &H, QuotientModule const &m);
// h -> h^-1 a - a.
CrossedHom principal_crossed_hom(PermGroup const &H, QuotientModule const &m, int a);
bool validate_crossed_hom(CrossedHom const &phi);
std::optional<int> cohomologous(CrossedHom const &a, CrossedHom const &b);
// Every crossed homomorphism, from all assignments on the generators of H.
std::vector<CrossedHom> all_crossed_homs(PermGroup const &H, QuotientModule const &m);
// A cocycle cohomologous to phi with values in (C_0 + K)/K, if one exists.
std::optional<int> repetition_valued_witness(CrossedHom const &phi);

// Hypothesis on n under which every cocycle has a repetition-valued
// representative: n = 2, n | p - 1, or n | m for p = (q^m - 1)/(q - 1).
bool normal_form_hypothesis(int p, long long n);

// Representative cocycles for H <= AGL(1,p) containing Z_p, H = S_p or H = A_p:
// one per admissible constant c.
std::vector<CrossedHom> standard_crossed_homs(PermGroup const &H, long long n,
                                              std::vector<Vec> const &k_gens);

bool is_simple_group(PermGroup const &g);

struct WreathTuple {
  int p;
  PermGroup H;    // on blocks
  PermGroup L;    // within a block, transitive and simple
  PermGroup NL;   // normalizer of L in S_p
  Perm coset_gen; // image generates N(L)/L, of order n
  long long n;
  CrossedHom phi; // into (Z_n)^p / (K / L^p)
};

// Element of N(L) -> its class in N(L)/L = Z_n.
long long coset_class(WreathTuple const &t, Perm const &x);
// Normalizer data for L: N(L), a canonical coset generator and n.
void normalizer_data(PermGroup const &L, PermGroup &nl, Perm &gen, long long &n);
WreathTuple make_wreath_tuple(PermGroup const &H, PermGroup const &L, std::vector<Vec> const &k,
                              CrossedHom const &phi);
// K as a permutation group: L^p together with lifts of the module subgroup.
PermGroup wreath_kernel(WreathTuple const &t);
BigInt wreath_kernel_order(WreathTuple const &t);

// {(h, v) : v K = phi(h)} with (h, v)(a, j) = (h(a), v_a(j)) on a + j p.
PermGroup build_G(WreathTuple const &t);

struct WreathDecomposition {
  WreathTuple tuple;
  Perm frame; // G.conjugate(frame) == build_G(tuple)
};

WreathDecomposition decompose_G(PermGroup const &G);

struct TupleEquivalence {
  Perm g;     // on blocks
  int a;      // cohomology witness in the second module
  Perm conjugator; // build_G(t1).conjugate(conjugator) == build_G(t2)
};

std::optional<TupleEquivalence> equivalent_tuples(WreathTuple const &t1, WreathTuple const &t2);

// G <= S_p x S_p on a + b p <-> (a, b).
struct ProductDecomposition {
  PermGroup H; // image on the first coordinate
  PermGroup K; // second-coordinate part of G meet (1 x S_p)
  // f(sigma) = tau K: one representative tau for every sigma in H.
  std::vector<std::pair<Perm, Perm>> f;
};

ProductDecomposition product_decompose(PermGroup const &G);
PermGroup product_reconstruct(ProductDecomposition const &d);
// Pairs (sigma, tau) -> permutation of a + b p.
Perm product_pair(Perm const &sigma, Perm const &tau);

// Hsub <= S_p x AGL(1, p) (uniform multiplier on the second coordinate)
// together with the sum-zero z-subgroup.
PermGroup dual_overgroup(PermGroup const &hsub);

} // namespace psq
