#pragma once

#include "psq/codes.hpp"
#include "psq/field.hpp"

#include <set>
#include <vector>

namespace psq {

using TupleH = std::vector<int>;
using PosetIdeal = std::set<TupleH>;

// t-tuples with 1 <= s_j <= d-1, 0 <= r s_{j+1} - s_j <= (r-1) d and
// s_{j+c} = s_j, in lexicographic order.
std::vector<TupleH> hyperplane_tuples(int r, int t, int d, int c);
// The same with the zero tuple prepended.
std::vector<TupleH> hyperplane_tuples_zero(int r, int t, int d, int c);
// Componentwise order; the zero tuple is comparable only to itself.
bool tuple_leq(TupleH const &a, TupleH const &b);

// Exponent vectors (b_1..b_d), 0 <= b_i < q, sum divisible by q-1, not all q-1.
std::vector<std::vector<int>> basis_monomials(int q, int d);

// Rotation of the t base-r digits of k (including leading zeros).
int digit_rotation(int k, int r, int t);
TupleH tuple_of_monomial(std::vector<int> const &x, FieldTower const &f, int d);

bool is_poset_ideal(PosetIdeal const &i, std::vector<TupleH> const &poset);
// All down-sets of the poset, ordered by size and then lexicographically.
std::vector<PosetIdeal> poset_ideals(std::vector<TupleH> const &poset);

// Values of the monomial on the projective points of F_q^d.
std::vector<int> evaluate_monomial(std::vector<int> const &x, FieldTower const &f, int d);

// F_r-span of the evaluations of basis monomials X with s(X) in the ideal,
// as a code of length (q^d - 1)/(q - 1) over F_r. Monomials whose values
// leave F_r contribute through the F_r-rational part of their F_q-span.
Code module_from_ideal(PosetIdeal const &ideal, FieldTower const &f, int d);

struct InvariantModule {
  PosetIdeal ideal;
  Code module;
};

// One module per ideal of H_0^(t); each is checked to be invariant under
// PSL(d, q) and the modules are checked to be pairwise distinct.
std::vector<InvariantModule> all_invariant_modules(FieldTower const &f, int d);

} // namespace psq
